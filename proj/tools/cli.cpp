#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "bkhopf/error.hpp"
#include "bkhopf/serialize.hpp"

namespace bkhopf::cli {

namespace {

struct JobSpec {
  std::uint64_t p = 0;
  int d = 1;
  int n = 1;
  std::string eisenstein;
  bool cyclotomic = false;
  std::int64_t precision = 0;  // 0 selects the default
  int family_max = 4;
  bool two_term = false;
  bool json = false;
  std::string out_file;
  std::string f_text, h_text, check_file;
};

std::vector<std::int64_t> parse_coeff_list(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<std::int64_t> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Error(ErrorCode::ParseError, "bad Eisenstein coefficient '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty Eisenstein coefficient list");
  return out;
}

EisensteinPoly make_E(const JobSpec& js, int witt_length) {
  if (js.cyclotomic && !js.eisenstein.empty())
    throw Error(ErrorCode::InvalidArgument, "give either --eisenstein or --cyclotomic, not both");
  if (js.cyclotomic) {
    EisensteinPoly E = cyclotomic_eisenstein(js.p, js.n);
    return eisenstein_validate(js.p, witt_length, E.coeffs());
  }
  if (js.eisenstein.empty()) throw Error(ErrorCode::InvalidArgument, "missing --eisenstein or --cyclotomic");
  return eisenstein_validate(js.p, witt_length, parse_coeff_list(js.eisenstein));
}

std::int64_t working_precision(const JobSpec& js, int e) {
  if (js.precision < 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
  return js.precision ? js.precision : default_precision(js.p, e);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string poly_text(const EisensteinPoly& E) {
  std::ostringstream os;
  bool first = true;
  for (int i = E.e(); i >= 0; --i) {
    std::int64_t c = E.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    const std::int64_t a = c < 0 ? -c : c;
    if (i == 0 || a != 1) os << a;
    if (i > 0) os << 'u';
    if (i > 1) os << '^' << i;
    first = false;
  }
  return os.str();
}

Json header(const char* command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

int cmd_solve(const JobSpec& js, std::ostream& out) {
  const RingPtr k = Ring::field(js.p, js.d);
  const Series f = parse_series(js.f_text, k);
  const Series h = parse_series(js.h_text, k);
  SolveOptions opts;
  opts.precision = js.precision ? js.precision : kDefaultPrecision;
  if (js.precision < 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
  const bool laurent = (f.min_degree() && *f.min_degree() < 0) || (h.min_degree() && *h.min_degree() < 0);
  const Solution s = laurent ? solve_laurent(f, h, opts) : solve_k(f, h, opts);
  if (js.json) {
    Json j = header("solve");
    j["field"] = ring_to_json(*k);
    j["g"] = series_to_json(s.g);
    j["g_text"] = format_series(s.g);
    j["verified_prec"] = s.verified_prec;
    out << j.dump(2) << '\n';
  } else {
    out << "g = " << format_series(s.g) << '\n';
    out << "verified: f*g - phi(g)*h = O(u^" << s.verified_prec << ")\n";
  }
  return kOk;
}

int cmd_orders_kcp(const JobSpec& js, std::ostream& out) {
  const RingPtr k = Ring::field(js.p, js.d);
  const EisensteinPoly E = make_E(js, 1);
  const auto orders = enumerate_kcp_orders(E, k);
  if (js.json) {
    Json j = header("orders-kcp");
    j["field"] = ring_to_json(*k);
    j["eisenstein"] = E.coeffs();
    Json rows = Json::array();
    for (const auto& o : orders) {
      Json row = to_json(o);
      row["label"] = to_json(breuil_functor_n1(o.form, E));
      rows.push_back(std::move(row));
    }
    j["orders"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else {
    out << "E = " << poly_text(E) << ", e = " << E.e() << ", " << orders.size() << " orders\n";
    out << "r\tj\tb\tlarson\n";
    for (const auto& o : orders)
      out << o.form.r << '\t' << o.larson.j << '\t' << o.form.b.to_string() << '\t' << o.larson.presentation << '\n';
  }
  return kOk;
}

struct Kcp2Verdict {
  Conditions conditions;
  bool built = false;
  bool bk = false;
  bool generic = false;
  std::optional<KCp2Module> module;
};

Kcp2Verdict evaluate(const KCp2Params& P) {
  Kcp2Verdict v;
  v.conditions = check_conditions(P);
  if (!v.conditions.cond1 || !v.conditions.cond2) return v;
  v.module = build_module(P);
  v.built = true;
  v.bk = verify_bk(*v.module);
  v.generic = generic_fiber_witness(*v.module);
  return v;
}

Json verdict_json(const KCp2Params& P, const Kcp2Verdict& v) {
  Json row;
  row["j1"] = P.j1;
  row["j2"] = P.j2;
  row["f"] = series_to_json(P.f);
  row["f_text"] = format_series(P.f);
  row["cond1"] = v.conditions.cond1;
  row["cond2"] = v.conditions.cond2;
  row["pj_condition"] = P.j1 >= static_cast<int>(P.k->p()) * P.j2;
  row["bprime"] = v.module ? series_to_json(v.module->bprime) : Json(nullptr);
  row["verify_bk"] = v.bk;
  row["generic_fiber_witness"] = v.generic;
  row["verified"] = v.bk && v.generic;
  return row;
}

int cmd_orders_kcp2(const JobSpec& js, std::ostream& out) {
  if (js.family_max < 0) throw Error(ErrorCode::InvalidArgument, "--family-max must be >= 0");
  const RingPtr k = Ring::field(js.p, js.d);
  const EisensteinPoly E = make_E(js, 2);
  EnumerationOptions opts;
  opts.family_max = js.family_max;
  opts.two_term = js.two_term;
  opts.precision = working_precision(js, E.e());
  const auto cands = enumerate_kcp2(E, k, opts);
  bool all_verified = true;
  Json rows = Json::array();
  std::ostringstream text;
  for (const auto& c : cands) {
    const Kcp2Verdict v = evaluate(c.params);
    all_verified &= v.bk && v.generic;
    if (js.json) {
      rows.push_back(verdict_json(c.params, v));
    } else {
      text << "j1=" << c.params.j1 << " j2=" << c.params.j2 << " f=" << format_series(c.params.f)
           << " cond1=" << bool_str(v.conditions.cond1) << " cond2=" << bool_str(v.conditions.cond2)
           << " pj=" << bool_str(c.pj_condition) << " verified=" << bool_str(v.bk && v.generic) << '\n';
    }
  }
  if (js.json) {
    Json j = header("orders-kcp2");
    j["field"] = ring_to_json(*k);
    j["eisenstein"] = E.coeffs();
    j["family_max"] = js.family_max;
    j["orders"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else {
    out << "E = " << poly_text(E) << ", " << cands.size() << " parameter sets\n" << text.str();
  }
  return all_verified ? kOk : kVerificationFailed;
}

int cmd_check(const JobSpec& js, std::ostream& out) {
  std::ifstream in(js.check_file);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + js.check_file);
  Json spec;
  try {
    spec = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
  KCp2Params params = [&] {
    try {
      JobSpec local;
      local.p = spec.at("p").get<std::uint64_t>();
      local.d = spec.value("d", 1);
      local.n = spec.value("n", 1);
      const Json& e = spec.at("eisenstein");
      if (e.is_string() && e.get<std::string>() == "cyclotomic") {
        local.cyclotomic = true;
      } else {
        std::ostringstream os;
        for (const auto& c : e) os << c.get<std::int64_t>() << ' ';
        local.eisenstein = os.str();
      }
      const RingPtr k = Ring::field(local.p, local.d);
      const EisensteinPoly E = make_E(local, 2);
      const Json& fj = spec.value("f", Json("0"));
      const Series f = fj.is_string() ? parse_series(fj.get<std::string>(), k) : series_from_json(fj, k);
      const std::int64_t prec = spec.value("precision", default_precision(local.p, E.e()));
      return make_kcp2_params(E, k, spec.at("j1").get<int>(), spec.at("j2").get<int>(), f, prec);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::ParseError, ex.what());
    }
  }();
  const Kcp2Verdict v = evaluate(params);
  if (js.json) {
    Json j = header("check");
    Json row = verdict_json(params, v);
    j["verdicts"] = std::move(row);
    out << j.dump(2) << '\n';
  } else {
    out << "cond1: " << bool_str(v.conditions.cond1) << '\n'
        << "cond2: " << bool_str(v.conditions.cond2) << '\n'
        << "verify_bk: " << bool_str(v.bk) << '\n'
        << "generic_fiber_witness: " << bool_str(v.generic) << '\n';
    if (v.module)
      out << "phi(e1) = (" << format_series(v.module->phi_e1.a) << ")*e1 + ["
          << format_series(teichmuller_lift(v.module->phi_e1.b, params.w2)) << "]*e2\n"
          << "phi(e2) = (" << format_series(v.module->phi_e2.a) << ")*e1 + ["
          << format_series(teichmuller_lift(v.module->phi_e2.b, params.w2)) << "]*e2\n"
          << "bprime = " << format_series(v.module->bprime) << '\n';
  }
  return v.built && v.bk && v.generic ? kOk : kVerificationFailed;
}

int cmd_verify_cyclotomic(const JobSpec& js, std::ostream& out) {
  const std::int64_t prec = js.precision ? js.precision : 30;
  if (prec <= 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
  const CyclotomicReport r = verify_cyclotomic_iso(js.p, js.n, prec);
  if (js.json) {
    Json j = header("verify-cyclotomic");
    j["p"] = js.p;
    j["n"] = js.n;
    j["ok"] = r.ok;
    j["verified_window"] = Json::array({r.window.lo, r.window.hi ? Json(*r.window.hi) : Json("inf")});
    out << j.dump(2) << '\n';
  } else {
    out << "cyclotomic isomorphism p=" << js.p << " n=" << js.n << ": " << (r.ok ? "verified" : "FAILED")
        << " on [" << r.window.lo << ", " << (r.window.hi ? std::to_string(*r.window.hi) : "inf") << ")\n";
  }
  return r.ok ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Breuil-Kisin module classification and Hopf order enumeration"};
  app.require_subcommand(1);
  JobSpec js;

  auto common = [&](CLI::App* sub, bool needs_E) {
    sub->add_option("--p", js.p, "residue characteristic")->required();
    sub->add_option("--d", js.d, "residue field degree")->capture_default_str();
    sub->add_option("--n", js.n, "cyclotomic level / Witt length")->capture_default_str();
    sub->add_option("--precision", js.precision, "working precision");
    sub->add_flag("--json", js.json, "machine-readable output");
    sub->add_option("--out", js.out_file, "write output to FILE");
    if (needs_E) {
      sub->add_option("--eisenstein", js.eisenstein, "coefficients a_0,...,a_e ascending");
      sub->add_flag("--cyclotomic", js.cyclotomic, "use ((u+1)^{p^n}-1)/((u+1)^{p^{n-1}}-1)");
    }
  };

  auto* solve = app.add_subcommand("solve", "solve f g = phi(g) h over k");
  solve->set_help_flag("--help", "print this help message and exit");
  common(solve, false);
  solve->add_option("--f", js.f_text)->required();
  solve->add_option("--h", js.h_text)->required();

  auto* kcp = app.add_subcommand("orders-kcp", "Hopf orders in KC_p");
  common(kcp, true);

  auto* kcp2 = app.add_subcommand("orders-kcp2", "Hopf orders in KC_{p^2}");
  common(kcp2, true);
  kcp2->add_option("--family-max", js.family_max, "largest m in the family a u^{-m}")->capture_default_str();
  kcp2->add_flag("--two-term", js.two_term, "include a u^{-m} + a' u^{-m'}");

  auto* check = app.add_subcommand("check", "verify a KC_{p^2} module spec file");
  check->add_option("file", js.check_file)->required();
  check->add_flag("--json", js.json);
  check->add_option("--out", js.out_file);

  auto* cyc = app.add_subcommand("verify-cyclotomic", "check the cyclotomic isomorphism");
  cyc->add_option("--p", js.p)->required();
  cyc->add_option("--n", js.n)->capture_default_str();
  cyc->add_option("--precision", js.precision);
  cyc->add_flag("--json", js.json);
  cyc->add_option("--out", js.out_file);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kInvalidInput;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    if (*solve) code = cmd_solve(js, buffer);
    else if (*kcp) code = cmd_orders_kcp(js, buffer);
    else if (*kcp2) code = cmd_orders_kcp2(js, buffer);
    else if (*check) code = cmd_check(js, buffer);
    else if (*cyc) code = cmd_verify_cyclotomic(js, buffer);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kInvalidInput;
  }
  if (js.out_file.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(js.out_file);
    if (!f) {
      err << "error: cannot write " << js.out_file << '\n';
      return kInvalidInput;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace bkhopf::cli
