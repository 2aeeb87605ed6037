#include "bkhopf/ring.hpp"

#include <sstream>

#include "bkhopf/error.hpp"
#include "bkhopf/numtheory.hpp"

namespace bkhopf {

namespace {

std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= (1ULL << 32)) return a * b % m;
  return nt::mulmod(a, b, m);
}

bool is_primitive_modulus(std::uint64_t p, int d, const std::vector<std::uint64_t>& modulus);

}  // namespace

Ring::Ring(Passkey, std::uint64_t p, int d, int n, std::vector<std::uint64_t> field_modulus,
           std::vector<std::uint64_t> lift_modulus)
    : p_(p),
      d_(d),
      n_(n),
      mod_(*nt::checked_pow(p, static_cast<unsigned>(n))),
      q_(*nt::checked_pow(p, static_cast<unsigned>(d))),
      field_modulus_(std::move(field_modulus)),
      lift_modulus_(std::move(lift_modulus)) {
  frob_images_.reserve(d_);
  Coords y = generator();
  Coords yp = pow(y, p_);
  Coords acc = one();
  for (int i = 0; i < d_; ++i) {
    frob_images_.push_back(acc);
    acc = mul(acc, yp);
  }
}

namespace {

void check_scale(std::uint64_t p, int d, int n) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (d < 1 || d > kMaxDegree)
    throw Error(ErrorCode::InvalidArgument, "extension degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Witt length must be >= 1");
  auto pn = nt::checked_pow(p, static_cast<unsigned>(n));
  if (!pn || *pn > (1ULL << 62)) throw Error(ErrorCode::InvalidArgument, "p^n exceeds 2^62");
  if (!nt::checked_pow(p, static_cast<unsigned>(n * d)))
    throw Error(ErrorCode::InvalidArgument, "p^(n d) exceeds the 64-bit range");
}

}  // namespace

RingPtr Ring::field(std::uint64_t p, int d, std::vector<std::uint64_t> modulus) {
  check_scale(p, d, 1);
  if (modulus.empty()) {
    if (d == 1) {
      modulus = {0, 1};
    } else {
      // Conway ordering: compare coefficients of y^{d-1}, y^{d-2}, ... in turn,
      // the coefficient of y^{d-i} keyed by (-1)^i c mod p.
      std::vector<std::uint64_t> key(d, 0);
      bool found = false;
      while (!found) {
        std::vector<std::uint64_t> cand(d + 1, 0);
        cand[d] = 1;
        for (int i = 1; i <= d; ++i) cand[d - i] = (i % 2 == 1) ? (p - key[i - 1]) % p : key[i - 1];
        if (cand[0] != 0 && is_primitive_modulus(p, d, cand)) {
          modulus = cand;
          found = true;
          break;
        }
        int pos = d - 1;
        while (pos >= 0 && ++key[pos] == p) key[pos--] = 0;
        if (pos < 0) throw Error(ErrorCode::InvalidArgument, "no primitive polynomial found");
      }
    }
  } else {
    if (static_cast<int>(modulus.size()) != d + 1 || modulus[d] != 1)
      throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree d (coefficients ascending)");
    for (auto c : modulus)
      if (c >= p) throw Error(ErrorCode::InvalidArgument, "modulus coefficients must be reduced mod p");
    if (d >= 2 && !is_primitive_modulus(p, d, modulus))
      throw Error(ErrorCode::InvalidArgument, "modulus must be primitive (irreducible with a root of order q-1)");
  }
  auto lift = modulus;
  return std::make_shared<Ring>(Passkey{}, p, d, 1, modulus, lift);
}

RingPtr Ring::witt(const RingPtr& field, int n) {
  if (!field->is_field()) throw Error(ErrorCode::InvalidArgument, "witt() expects a residue field");
  check_scale(field->p(), field->degree(), n);
  if (n == 1) return field;
  const std::uint64_t p = field->p();
  const int d = field->degree();

  // Any lift of the modulus gives a ring in which t = y^{q^{n-1}} is the
  // Teichmüller lift of the residue root; h is then the product of (Y - t^{p^i}).
  auto naive = std::make_shared<Ring>(Passkey{}, p, d, n, field->field_modulus(), field->field_modulus());
  Coords t = naive->pow(naive->generator(), *nt::checked_pow(field->field_size(), static_cast<unsigned>(n - 1)));
  std::vector<Coords> poly{naive->one()};
  Coords root = t;
  for (int i = 0; i < d; ++i) {
    std::vector<Coords> next(poly.size() + 1, naive->zero());
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] = naive->add(next[k + 1], poly[k]);
      next[k] = naive->sub(next[k], naive->mul(poly[k], root));
    }
    poly = std::move(next);
    root = naive->pow(root, p);
  }
  std::vector<std::uint64_t> lift(d + 1);
  for (int k = 0; k <= d; ++k) {
    for (int i = 1; i < kMaxDegree; ++i)
      if (poly[k][i] != 0) throw Error(ErrorCode::InvalidArgument, "Teichmüller modulus has non-scalar coefficient");
    lift[k] = poly[k][0];
    if (lift[k] % p != field->field_modulus()[k])
      throw Error(ErrorCode::InvalidArgument, "Teichmüller modulus does not reduce to the field modulus");
  }

  std::vector<RingPtr> chain{field};
  for (int m = 2; m <= n; ++m) {
    std::uint64_t pm = *nt::checked_pow(p, static_cast<unsigned>(m));
    std::vector<std::uint64_t> lm(d + 1);
    for (int k = 0; k <= d; ++k) lm[k] = lift[k] % pm;
    auto ring = std::make_shared<Ring>(Passkey{}, p, d, m, field->field_modulus(), lm);
    ring->truncations_ = chain;
    chain.push_back(ring);
  }
  return chain.back();
}

RingPtr Ring::witt(std::uint64_t p, int d, int n, std::vector<std::uint64_t> modulus) {
  return witt(field(p, d, std::move(modulus)), n);
}

RingPtr Ring::truncation(int m) const {
  if (m == n_) return shared_from_this();
  if (m < 1 || m > n_) throw Error(ErrorCode::InvalidArgument, "truncation length out of range");
  return truncations_[m - 1];
}

bool Ring::operator==(const Ring& other) const {
  if (this == &other) return true;
  return p_ == other.p_ && d_ == other.d_ && n_ == other.n_ && lift_modulus_ == other.lift_modulus_;
}

Coords Ring::one() const {
  Coords c{};
  c[0] = 1 % mod_;
  return c;
}

Coords Ring::from_int(std::int64_t v) const {
  Coords c{};
  c[0] = nt::reduce_signed(v, mod_);
  return c;
}

Coords Ring::from_ints(const std::vector<std::int64_t>& coords) const {
  if (static_cast<int>(coords.size()) > d_)
    throw Error(ErrorCode::InvalidArgument, "too many coordinates for extension degree");
  Coords c{};
  for (std::size_t i = 0; i < coords.size(); ++i) c[i] = nt::reduce_signed(coords[i], mod_);
  return c;
}

Coords Ring::generator() const {
  Coords c{};
  if (d_ == 1) {
    c[0] = (mod_ - lift_modulus_[0]) % mod_;
  } else {
    c[1] = 1;
  }
  return c;
}

bool Ring::is_zero(const Coords& a) const {
  for (int i = 0; i < d_; ++i)
    if (a[i] != 0) return false;
  return true;
}

bool Ring::is_unit(const Coords& a) const {
  for (int i = 0; i < d_; ++i)
    if (a[i] % p_ != 0) return true;
  return false;
}

Coords Ring::add(const Coords& a, const Coords& b) const {
  Coords c{};
  for (int i = 0; i < d_; ++i) c[i] = nt::addmod(a[i], b[i], mod_);
  return c;
}

Coords Ring::sub(const Coords& a, const Coords& b) const {
  Coords c{};
  for (int i = 0; i < d_; ++i) c[i] = nt::submod(a[i], b[i], mod_);
  return c;
}

Coords Ring::neg(const Coords& a) const {
  Coords c{};
  for (int i = 0; i < d_; ++i) c[i] = a[i] == 0 ? 0 : mod_ - a[i];
  return c;
}

Coords Ring::scale(const Coords& a, std::uint64_t s) const {
  Coords c{};
  s %= mod_;
  for (int i = 0; i < d_; ++i) c[i] = mulm(a[i], s, mod_);
  return c;
}

Coords Ring::mul(const Coords& a, const Coords& b) const {
  if (d_ == 1) {
    Coords c{};
    c[0] = mulm(a[0], b[0], mod_);
    return c;
  }
  std::array<std::uint64_t, 2 * kMaxDegree - 1> prod{};
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d_; ++j) prod[i + j] = nt::addmod(prod[i + j], mulm(a[i], b[j], mod_), mod_);
  }
  for (int t = 2 * d_ - 2; t >= d_; --t) {
    std::uint64_t c = prod[t];
    if (c == 0) continue;
    for (int i = 0; i < d_; ++i)
      prod[t - d_ + i] = nt::submod(prod[t - d_ + i], mulm(c, lift_modulus_[i], mod_), mod_);
  }
  Coords c{};
  for (int i = 0; i < d_; ++i) c[i] = prod[i];
  return c;
}

Coords Ring::pow(Coords a, std::uint64_t e) const {
  Coords result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

Coords Ring::inverse(const Coords& a) const {
  if (!is_unit(a)) throw Error(ErrorCode::NotAUnit, format(a) + " is not a unit");
  const Ring& k = *residue_field();
  Coords x = k.pow(reduce(a, 1), q_ - 2);
  // Newton iteration x <- x(2 - a x) doubles the p-adic precision each step.
  const Coords two = from_int(2);
  for (int guard = 0; guard < 70; ++guard) {
    Coords ax = mul(a, x);
    if (ax == one()) return x;
    x = mul(x, sub(two, ax));
  }
  throw Error(ErrorCode::NotAUnit, "inverse iteration did not converge");
}

Coords Ring::frobenius(const Coords& a) const {
  if (d_ == 1) return a;
  Coords c{};
  for (int i = 0; i < d_; ++i)
    if (a[i] != 0) c = add(c, scale(frob_images_[i], a[i]));
  return c;
}

Coords Ring::reduce(const Coords& a, int m) const {
  std::uint64_t target = truncation(m)->characteristic();
  Coords c{};
  for (int i = 0; i < d_; ++i) c[i] = a[i] % target;
  return c;
}

Coords Ring::divide_by_p(const Coords& a) const {
  if (n_ == 1) throw Error(ErrorCode::PreconditionViolated, "cannot divide by p in the residue field");
  std::uint64_t target = mod_ / p_;
  Coords c{};
  for (int i = 0; i < d_; ++i) {
    if (a[i] % p_ != 0) throw Error(ErrorCode::PreconditionViolated, format(a) + " is not divisible by p");
    c[i] = (a[i] / p_) % target;
  }
  return c;
}

Coords Ring::times_p(const Coords& a) const {
  Coords c{};
  for (int i = 0; i < d_; ++i) c[i] = mulm(a[i] % mod_, p_, mod_);
  return c;
}

std::string Ring::format(const Coords& a) const {
  if (d_ == 1) return std::to_string(a[0]);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < d_; ++i) os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

namespace {

bool is_primitive_modulus(std::uint64_t p, int d, const std::vector<std::uint64_t>& modulus) {
  // A root of order exactly q - 1 forces F_p[y]/(h) to be a field, so this also
  // certifies irreducibility.
  const std::uint64_t q = *nt::checked_pow(p, static_cast<unsigned>(d));
  auto mul = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> prod(2 * d - 1, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + mulm(a[i], b[j], p)) % p;
    for (int t = 2 * d - 2; t >= d; --t) {
      std::uint64_t c = prod[t];
      for (int i = 0; i < d; ++i) prod[t - d + i] = nt::submod(prod[t - d + i], mulm(c, modulus[i], p), p);
    }
    prod.resize(d);
    return prod;
  };
  auto power = [&](std::vector<std::uint64_t> base, std::uint64_t e) {
    std::vector<std::uint64_t> result(d, 0);
    result[0] = 1;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  };
  std::vector<std::uint64_t> y(d, 0), one(d, 0);
  y[1] = 1;
  one[0] = 1;
  if (power(y, q - 1) != one) return false;
  for (auto ell : nt::prime_factors(q - 1))
    if (power(y, (q - 1) / ell) == one) return false;
  return true;
}

}  // namespace

// ---- Elem ----

namespace {

void require_same_ring(const Elem& a, const Elem& b) {
  if (a.ring() != b.ring() && !(*a.ring() == *b.ring()))
    throw Error(ErrorCode::InvalidArgument, "ring mismatch");
}

void require_field(const Elem& a, const char* what) {
  if (!a.ring()->is_field()) throw Error(ErrorCode::PreconditionViolated, std::string(what) + " expects a residue field element");
}

}  // namespace

Elem::Elem(RingPtr ring, Coords coords) : ring_(std::move(ring)), coords_(coords) {}

Elem Elem::from_int(const RingPtr& ring, std::int64_t v) { return {ring, ring->from_int(v)}; }

Elem Elem::generator(const RingPtr& ring) { return {ring, ring->generator()}; }

Elem operator+(const Elem& a, const Elem& b) {
  require_same_ring(a, b);
  return {a.ring_, a.ring_->add(a.coords_, b.coords_)};
}

Elem operator-(const Elem& a, const Elem& b) {
  require_same_ring(a, b);
  return {a.ring_, a.ring_->sub(a.coords_, b.coords_)};
}

Elem operator*(const Elem& a, const Elem& b) {
  require_same_ring(a, b);
  return {a.ring_, a.ring_->mul(a.coords_, b.coords_)};
}

bool operator==(const Elem& a, const Elem& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.coords_ == b.coords_;
}

Elem frobenius(const Elem& a) { return {a.ring(), a.ring()->frobenius(a.coords())}; }

bool is_pm1_power(const Elem& a) {
  require_field(a, "is_pm1_power");
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "is_pm1_power of zero");
  const Ring& k = *a.ring();
  return k.pow(a.coords(), (k.field_size() - 1) / (k.p() - 1)) == k.one();
}

std::uint64_t pm1_class(const Elem& a) {
  require_field(a, "pm1_class");
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "pm1_class of zero");
  const Ring& k = *a.ring();
  return k.pow(a.coords(), (k.field_size() - 1) / (k.p() - 1))[0];
}

Elem pm1_root(const Elem& a) {
  require_field(a, "pm1_root");
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "pm1_root of zero");
  if (!is_pm1_power(a)) throw Error(ErrorCode::NoRoot, a.to_string() + " is not a (p-1)-th power");
  const Ring& k = *a.ring();
  const int d = k.degree();
  const std::uint64_t p = k.p();

  // Column i of (Frob - a) is Frob(y^i) - a y^i.
  std::vector<std::vector<std::uint64_t>> m(d, std::vector<std::uint64_t>(d));
  for (int i = 0; i < d; ++i) {
    Coords ei{};
    ei[i] = 1;
    Coords col = k.sub(k.frobenius(ei), k.mul(a.coords(), ei));
    for (int r = 0; r < d; ++r) m[r][i] = col[r];
  }
  // Row reduce over F_p.
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int sel = -1;
    for (int r = row; r < d; ++r)
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    std::uint64_t inv = nt::powmod(m[row][col], p - 2, p);
    for (auto& v : m[row]) v = mulm(v, inv, p);
    for (int r = 0; r < d; ++r) {
      if (r == row || m[r][col] == 0) continue;
      std::uint64_t f = m[r][col];
      for (int c = 0; c < d; ++c) m[r][c] = nt::submod(m[r][c], mulm(f, m[row][c], p), p);
    }
    pivot_col.push_back(col);
    ++row;
  }
  // The kernel is a line; take the first free column as the parameter.
  int free_col = -1;
  for (int c = 0, pi = 0; c < d; ++c) {
    if (pi < static_cast<int>(pivot_col.size()) && pivot_col[pi] == c) {
      ++pi;
      continue;
    }
    free_col = c;
    break;
  }
  if (free_col < 0) throw Error(ErrorCode::NoRoot, "Frobenius eigenspace is trivial");
  Coords x{};
  x[free_col] = 1;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = (p - m[r][free_col]) % p;
  int lead = 0;
  while (x[lead] == 0) ++lead;
  x = k.scale(x, nt::powmod(x[lead], p - 2, p));
  if (k.pow(x, p - 1) != a.coords()) throw Error(ErrorCode::NoRoot, "internal: root verification failed");
  return {a.ring(), x};
}

bool is_unit_pm1_power(const Elem& b) {
  if (!b.is_unit()) throw Error(ErrorCode::NotAUnit, b.to_string() + " is not a unit");
  return is_pm1_power(reduce(b, b.ring()->residue_field()));
}

Elem teichmuller_lift(const Elem& a, const RingPtr& target) {
  require_field(a, "teichmuller_lift");
  if (!(*target->residue_field() == *a.ring()))
    throw Error(ErrorCode::InvalidArgument, "target ring has a different residue field");
  Coords c = a.coords();
  auto e = *nt::checked_pow(target->field_size(), static_cast<unsigned>(target->length() - 1));
  return {target, target->pow(c, e)};
}

Elem reduce(const Elem& a, const RingPtr& target) {
  const Ring& src = *a.ring();
  if (target->length() > src.length() || !(*src.truncation(target->length()) == *target))
    throw Error(ErrorCode::InvalidArgument, "target is not a truncation of the source ring");
  return {target, src.reduce(a.coords(), target->length())};
}

}  // namespace bkhopf
