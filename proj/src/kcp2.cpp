#include "bkhopf/kcp2.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "bkhopf/error.hpp"

namespace bkhopf {

namespace {

std::int64_t pm1_of(const KCp2Params& P) { return static_cast<std::int64_t>(P.k->p() - 1); }

Series one_over(const RingPtr& R) { return Series::constant(Elem::from_int(R, 1)); }

}  // namespace

KCp2Params make_kcp2_params(const EisensteinPoly& E, const RingPtr& k, int j1, int j2, Series f,
                            std::int64_t precision) {
  if (!k->is_field()) throw Error(ErrorCode::InvalidArgument, "k must be the residue field");
  if (E.p() != k->p()) throw Error(ErrorCode::InvalidArgument, "E and k have different p");
  if (!(*f.ring() == *k)) throw Error(ErrorCode::InvalidArgument, "f must be a series over k");
  const auto pm1 = static_cast<int>(k->p() - 1);
  if (!(0 <= j2 && j2 < j1 && j1 * pm1 <= E.e()))
    throw Error(ErrorCode::InvalidArgument, "need 0 <= j2 < j1 <= e/(p-1), got j1 = " + std::to_string(j1) +
                                                ", j2 = " + std::to_string(j2));
  return KCp2Params{E, k, j1, j2, std::move(f), precision, Ring::witt(k, 2)};
}

bool ModElem::in_lattice() const {
  auto la = a.min_degree(), lb = b.min_degree();
  return (!la || *la >= 0) && (!lb || *lb >= 0);
}

ModElem normalize(const KCp2Params& P, const Series& a, const Series& B) {
  const Series bbar = reduce_to(B, P.k);
  const Series carry = divide_by_p(B - teichmuller_lift(bbar, P.w2));
  return {a + carry.shift(P.j1 - P.j2), bbar};
}

ModElem add(const KCp2Params& P, const ModElem& x, const ModElem& y) {
  return normalize(P, x.a + y.a, teichmuller_lift(x.b, P.w2) + teichmuller_lift(y.b, P.w2));
}

ModElem scale(const KCp2Params& P, const Series& s, const ModElem& x) {
  return normalize(P, reduce_to(s, P.k) * x.a, s * teichmuller_lift(x.b, P.w2));
}

bool equal(const ModElem& x, const ModElem& y) { return compare(x.a, y.a).equal && compare(x.b, y.b).equal; }

Series kcp2_difference(const KCp2Params& P) {
  const std::int64_t e = P.E.e();
  return phi(P.f).shift(e + P.j1) - P.f.shift(e + P.j1 - pm1_of(P) * P.j2);
}

namespace {

Series cond2_series(const KCp2Params& P, const Series& D) {
  const auto p = static_cast<std::int64_t>(P.k->p());
  const Series Fbar = reduce_to(P.E.F(P.w2), P.k);
  return Fbar.shift(P.j1 - p * P.j2) + D;
}

}  // namespace

Conditions check_conditions(const KCp2Params& P) {
  const Series D = kcp2_difference(P);
  Conditions c;
  c.cond1 = valuation_at_least(D.valuation(), P.E.e() - pm1_of(P) * (P.j1 + P.j2));
  c.cond2 = valuation_at_least(cond2_series(P, D).valuation(), 0);
  return c;
}

KCp2Module build_module(const KCp2Params& P) {
  const Conditions c = check_conditions(P);
  if (!c.cond1 || !c.cond2)
    throw Error(ErrorCode::ConditionsFailed, std::string("cond1 = ") + (c.cond1 ? "true" : "false") +
                                                 ", cond2 = " + (c.cond2 ? "true" : "false"));
  const std::int64_t e = P.E.e(), pm1 = pm1_of(P);
  const Elem c0inv = P.E.c0(P.w2).inverse();
  const Elem c0inv_bar = reduce(c0inv, P.k);
  const Series D = kcp2_difference(P);

  const ModElem zero{Series(P.k), Series(P.k)};
  KCp2Module m{P, zero, zero, Series(P.k)};
  m.phi_e1 = normalize(P, Series::monomial(c0inv_bar, e - pm1 * P.j1), Series(P.w2));
  m.phi_e2 = normalize(P, cond2_series(P, D).scale(c0inv_bar), Series::monomial(c0inv, e - pm1 * P.j2));
  // E e2 = c0 b' u^{(p-1)j2} phi(e1) + c0 u^{(p-1)j2} phi(e2) forces
  // b' u^{e-(p-1)j1} = -D.
  m.bprime = -D.shift(pm1 * P.j1 - e);
  return m;
}

bool verify_bk(const KCp2Module& m) {
  const KCp2Params& P = m.params;
  const std::int64_t pm1 = pm1_of(P);
  const Elem c0 = P.E.c0(P.w2);
  const Series EW = P.E.series(P.w2);
  const ModElem e1{one_over(P.k), Series(P.k)};
  const ModElem e2{Series(P.k), one_over(P.k)};

  const Series s11 = Series::monomial(c0, pm1 * P.j1);
  const Series s21 = (teichmuller_lift(m.bprime, P.w2) * Series::monomial(c0, pm1 * P.j2));
  const Series s22 = Series::monomial(c0, pm1 * P.j2);
  if (!valuation_at_least(reduce_to(s21, P.k).valuation(), 0)) return false;
  if (!m.phi_e1.in_lattice() || !m.phi_e2.in_lattice()) return false;

  const bool first = equal(scale(P, EW, e1), scale(P, s11, m.phi_e1));
  const bool second = equal(scale(P, EW, e2), add(P, scale(P, s21, m.phi_e1), scale(P, s22, m.phi_e2)));
  return first && second;
}

Series default_alpha_e2(const KCp2Params& P) {
  return Series::monomial(Elem::from_int(P.w2, 1), -P.j2) + times_p(P.f, P.w2);
}

Series alpha(const KCp2Params& P, const ModElem& x, const std::optional<Series>& alpha_e2) {
  const Series img2 = alpha_e2 ? *alpha_e2 : default_alpha_e2(P);
  return times_p(x.a.shift(-P.j1), P.w2) + teichmuller_lift(x.b, P.w2) * img2;
}

bool contains(const KCp2Params& P, const Series& x) {
  if (!(*x.ring() == *P.w2)) throw Error(ErrorCode::InvalidArgument, "x must be a series over W_2(k)");
  const Series xbar = reduce_to(x, P.k);
  if (!valuation_at_least(xbar.valuation(), -P.j2)) return false;
  const Series bbar = xbar.shift(P.j2);
  const Series z = divide_by_p(x - teichmuller_lift(bbar, P.w2) * default_alpha_e2(P));
  return valuation_at_least(z.valuation(), -P.j1);
}

RemarkShortcut remark_shortcut(int e, std::uint64_t p, int j1, int j2) {
  const auto pm1 = static_cast<std::int64_t>(p - 1);
  if (e - pm1 * (j1 + j2) < 0) return {false, false};
  return {true, j1 >= static_cast<std::int64_t>(p) * j2};
}

std::vector<Series> kcp2_family(const RingPtr& k, const EnumerationOptions& opts) {
  if (opts.family_max < 0) throw Error(ErrorCode::InvalidArgument, "family bound must be >= 0");
  const std::uint64_t q = k->field_size();
  const auto M = static_cast<std::uint64_t>(opts.family_max);
  unsigned __int128 size = 1 + static_cast<unsigned __int128>(M + 1) * (q - 1);
  if (opts.two_term) size += static_cast<unsigned __int128>(M + 1) * M / 2 * (q - 1) * (q - 1);
  if (size > opts.budget)
    throw Error(ErrorCode::InvalidArgument, "family size exceeds the budget of " + std::to_string(opts.budget));

  // Nonzero elements of k in lexicographic order of (c0, c1, ...).
  std::vector<Elem> units;
  const int d = k->degree();
  for (std::uint64_t idx = 1; idx < q; ++idx) {
    Coords c{};
    std::uint64_t rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      c[i] = rest % k->p();
      rest /= k->p();
    }
    units.emplace_back(k, c);
  }
  std::vector<Series> family{Series(k)};
  for (std::uint64_t m = 0; m <= M; ++m)
    for (const auto& a : units) family.push_back(Series::monomial(a, -static_cast<std::int64_t>(m)));
  if (opts.two_term)
    for (std::uint64_t m = 0; m <= M; ++m)
      for (std::uint64_t m2 = m + 1; m2 <= M; ++m2)
        for (const auto& a : units)
          for (const auto& a2 : units)
            family.push_back(Series::monomial(a, -static_cast<std::int64_t>(m)) +
                             Series::monomial(a2, -static_cast<std::int64_t>(m2)));
  return family;
}

std::vector<KCp2Candidate> enumerate_kcp2(const EisensteinPoly& E, const RingPtr& k, const EnumerationOptions& opts) {
  const auto family = kcp2_family(k, opts);
  const int pm1 = static_cast<int>(k->p() - 1);
  std::vector<std::pair<int, int>> grid;
  for (int j1 = 1; j1 * pm1 <= E.e(); ++j1)
    for (int j2 = 0; j2 < j1; ++j2) grid.emplace_back(j1, j2);
  if (grid.empty()) return {};
  const RingPtr w2 = Ring::witt(k, 2);

  std::vector<std::vector<KCp2Candidate>> results(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const auto [j1, j2] = grid[i];
        for (const auto& f : family) {
          KCp2Params P{E, k, j1, j2, f, opts.precision, w2};
          Conditions c = check_conditions(P);
          if (c.cond1 && c.cond2) results[i].push_back({std::move(P), c, j1 >= static_cast<int>(k->p()) * j2});
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t nthreads =
      std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < nthreads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::vector<KCp2Candidate> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& c : results[i]) out.push_back(std::move(c));
  }
  return out;
}

bool generic_fiber_witness(const KCp2Module& m, const std::optional<Series>& alpha_e2) {
  const KCp2Params& P = m.params;
  const Series img2 = alpha_e2 ? *alpha_e2 : default_alpha_e2(P);
  const Elem c0inv = P.E.c0(P.w2).inverse();
  const Series EW = P.E.series(P.w2);
  auto phi0 = [&](const Series& x) { return (EW * phi(x)).scale(c0inv); };
  const Series img1 = times_p(Series::monomial(Elem::from_int(P.k, 1), -P.j1), P.w2);
  return compare(alpha(P, m.phi_e1, img2), phi0(img1)).equal && compare(alpha(P, m.phi_e2, img2), phi0(img2)).equal;
}

}  // namespace bkhopf
