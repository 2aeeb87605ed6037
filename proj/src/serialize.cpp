#include "bkhopf/serialize.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "bkhopf/error.hpp"

namespace bkhopf {

std::string format_series(const Series& s) {
  const Ring& R = *s.ring();
  std::ostringstream os;
  bool first = true;
  for (const auto& [deg, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    const bool unit_coeff = c == R.one();
    if (deg == 0) {
      os << R.format(c);
      continue;
    }
    if (!unit_coeff) os << R.format(c) << '*';
    os << 'u';
    if (deg != 1) os << '^' << deg;
  }
  if (s.precision()) {
    if (!first) os << " + ";
    os << "O(u^" << *s.precision() << ')';
  } else if (first) {
    os << '0';
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : ring_(ring) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  Series run() {
    Series acc(ring_);
    std::optional<std::int64_t> prec;
    if (s_.empty()) fail("empty series");
    bool first = true;
    while (pos_ < s_.size()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = get() == '-';
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      if (s_.compare(pos_, 2, "O(") == 0) {
        pos_ += 2;
        expect('u');
        std::int64_t n = 1;
        if (peek() == '^') {
          ++pos_;
          n = exponent();
        }
        expect(')');
        if (negative) fail("O-term cannot be negated");
        prec = prec ? std::min(*prec, n) : n;
        continue;
      }
      Coords c = ring_->one();
      bool have_coeff = false;
      if (peek() == '[' || std::isdigit(static_cast<unsigned char>(peek()))) {
        c = coefficient();
        have_coeff = true;
        if (peek() == '*') {
          ++pos_;
          if (peek() != 'u') fail("expected 'u' after '*'");
        }
      }
      std::int64_t deg = 0;
      if (peek() == 'u') {
        ++pos_;
        deg = 1;
        if (peek() == '^') {
          ++pos_;
          deg = exponent();
        }
      } else if (!have_coeff) {
        fail("expected a coefficient or 'u'");
      }
      if (negative) c = ring_->neg(c);
      acc = acc + Series(ring_, Series::Terms{{deg, c}}, std::nullopt);
    }
    return prec ? acc.truncate(*prec) : acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::int64_t integer() {
    std::int64_t v = 0;
    const char* begin = s_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  std::int64_t exponent() {
    if (peek() == '(') {
      ++pos_;
      std::int64_t v = integer();
      expect(')');
      return v;
    }
    return integer();
  }

  Coords coefficient() {
    if (peek() != '[') return ring_->from_int(integer());
    ++pos_;
    std::vector<std::int64_t> xs;
    while (true) {
      xs.push_back(integer());
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    if (static_cast<int>(xs.size()) > ring_->degree()) fail("too many coordinates");
    return ring_->from_ints(xs);
  }

  RingPtr ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

Coords coeff_from_json(const Json& j, const Ring& R) {
  if (j.is_number_integer()) return R.from_int(j.get<std::int64_t>());
  if (j.is_array()) {
    auto xs = j.get<std::vector<std::int64_t>>();
    if (static_cast<int>(xs.size()) > R.degree()) throw Error(ErrorCode::ParseError, "too many coordinates");
    return R.from_ints(xs);
  }
  throw Error(ErrorCode::ParseError, "coefficient must be an integer or a list of integers");
}

}  // namespace

Series parse_series(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

Json coeff_to_json(const Ring& R, const Coords& c) {
  if (R.degree() == 1) return c[0];
  Json arr = Json::array();
  for (int i = 0; i < R.degree(); ++i) arr.push_back(c[i]);
  return arr;
}

Json series_to_json(const Series& s) {
  Json terms = Json::array();
  for (const auto& [deg, c] : s.terms()) terms.push_back(Json::array({deg, coeff_to_json(*s.ring(), c)}));
  Json out;
  out["terms"] = std::move(terms);
  out["prec"] = s.precision() ? Json(*s.precision()) : Json(nullptr);
  out["exact"] = s.exact();
  return out;
}

Series series_from_json(const Json& j, const RingPtr& ring) {
  try {
    Series::Terms t;
    for (const auto& term : j.at("terms")) {
      if (!term.is_array() || term.size() != 2) throw Error(ErrorCode::ParseError, "terms must be [degree, coeff] pairs");
      const auto deg = term[0].get<std::int64_t>();
      const Coords c = coeff_from_json(term[1], *ring);
      auto [it, inserted] = t.emplace(deg, c);
      if (!inserted) it->second = ring->add(it->second, c);
    }
    const bool exact = j.value("exact", true);
    std::optional<std::int64_t> prec;
    if (!exact) {
      if (!j.contains("prec") || j["prec"].is_null()) throw Error(ErrorCode::ParseError, "inexact series needs prec");
      prec = j["prec"].get<std::int64_t>();
    }
    return Series(ring, std::move(t), prec);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

Json ring_to_json(const Ring& R) {
  Json out;
  out["p"] = R.p();
  out["d"] = R.degree();
  out["n"] = R.length();
  out["modulus"] = R.field_modulus();
  if (!R.is_field()) out["lift_modulus"] = R.lift_modulus();
  return out;
}

Json to_json(const CyclicN1Form& m) {
  Json out;
  out["shape"] = "N1";
  out["b"] = coeff_to_json(*m.b.ring(), m.b.coords());
  out["r"] = m.r;
  return out;
}

Json to_json(const KcpOrder& o) {
  Json out = to_json(o.form);
  out["j"] = o.larson.j;
  out["name"] = o.larson.presentation;
  return out;
}

Json to_json(const BreuilLabel& l) {
  Json out;
  out["shape"] = "BreuilLabel";
  out["r"] = l.r_tilde;
  out["b"] = coeff_to_json(*l.a.ring(), l.a.coords());
  out["name"] = l.name;
  if (l.alternate_a) out["alternate_a"] = coeff_to_json(*l.alternate_a->ring(), l.alternate_a->coords());
  return out;
}

Json to_json(const CyclicNForm& m) {
  Json out;
  out["shape"] = std::string(to_string(m.shape));
  out["b"] = coeff_to_json(*m.b.ring(), m.b.coords());
  return out;
}

Json to_json(const GeneralTuple& t, const TupleReport& report) {
  Json out;
  out["n"] = t.n;
  Json f = Json::array();
  for (const auto& x : t.f) f.push_back(series_to_json(x));
  out["f"] = std::move(f);
  Json A = Json::array();
  for (const auto& row : t.A) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(series_to_json(x));
    A.push_back(std::move(r));
  }
  out["A"] = std::move(A);
  out["verified_window"] = Json::array({report.lo, report.hi ? Json(*report.hi) : Json("inf")});
  return out;
}

}  // namespace bkhopf
