#include "m2sg/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace m2sg {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::precondition: return "precondition";
    case Errc::parse: return "parse";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::field_mismatch: return "field_mismatch";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::unsupported: return "unsupported";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    fail(Errc::parse, "malformed integer '" + std::string(s) + "'");
  }
  if (s.front() == '+') {
    s.remove_prefix(1);
  }
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  const mpz_class num = parse_integer(text.substr(0, slash));
  const mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) {
    fail(Errc::division_by_zero, "zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and the field table

namespace {

using IntPoly = std::vector<mpz_class>;

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials by a monic divisor.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dn = den.size() - 1;
  if (num.size() - 1 < dn) {
    fail(Errc::internal, "cyclotomic division: degree underflow");
  }
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const mpz_class coef = num[i];
    quot[i - dn] = coef;
    if (coef != 0) {
      for (std::size_t j = 0; j <= dn; ++j) {
        num[i - dn + j] -= coef * den[j];
      }
    }
  }
  for (const auto& r : num) {
    if (r != 0) fail(Errc::internal, "cyclotomic division left a remainder");
  }
  return quot;
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(std::uint32_t n) {
  require(n >= 1, Errc::precondition, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<std::uint32_t, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 = prod_{d | n} Phi_d
  IntPoly poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d == 0) {
      poly = divide_exact(poly, cyclotomic_polynomial(d));
    }
  }
  std::lock_guard lock(mutex);
  cache.emplace(n, poly);
  return poly;
}

CyclotomicField::CyclotomicField(std::uint32_t order)
    : order_(order),
      degree_(euler_phi(order)),
      torsion_(std::lcm<std::uint32_t>(2, order)),
      modulus_(cyclotomic_polynomial(order)) {
  for (std::uint32_t d = 1; d <= torsion_; ++d) {
    if (torsion_ % d == 0) divisors_.push_back(d);
  }
  // x^degree = -(modulus without its leading term); multiply up from there.
  if (degree_ >= 2) {
    std::vector<mpz_class> power(degree_);
    for (std::uint32_t i = 0; i < degree_; ++i) power[i] = -modulus_[i];
    reduction_.push_back(power);
    for (std::uint32_t k = 1; k + 1 < degree_; ++k) {
      std::vector<mpz_class> next(degree_, 0);
      const mpz_class top = power[degree_ - 1];
      for (std::uint32_t i = degree_ - 1; i > 0; --i) next[i] = power[i - 1];
      for (std::uint32_t i = 0; i < degree_; ++i) next[i] -= top * modulus_[i];
      power = next;
      reduction_.push_back(power);
    }
  }
}

FieldPtr CyclotomicField::get(std::uint32_t order) {
  require(order >= 1, Errc::precondition, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<std::uint32_t, FieldPtr> interned;
  std::lock_guard lock(mutex);
  auto& slot = interned[order];
  if (!slot) {
    slot = FieldPtr(new CyclotomicField(order));
  }
  return slot;
}

// ---------------------------------------------------------------------------
// CycloScalar

namespace {

// Reduces a coefficient vector of any length modulo Phi_N in place.
void reduce(const CyclotomicField& field, std::vector<Rational>& c) {
  const std::uint32_t d = field.degree();
  if (c.size() <= d) {
    c.resize(d, 0);
    return;
  }
  // High powers beyond 2d-2 first fold down through the monic modulus.
  const auto& m = field.modulus();
  for (std::size_t i = c.size(); i-- > d;) {
    if (c[i] == 0) continue;
    const Rational top = c[i];
    c[i] = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
      c[i - d + j] -= top * m[j];
    }
  }
  c.resize(d);
}

}  // namespace

CycloScalar::CycloScalar(FieldPtr field, Rational value) : field_(std::move(field)) {
  require(field_ != nullptr, Errc::precondition, "scalar needs a field");
  require(value.get_den() != 0, Errc::division_by_zero, "rational with zero denominator");
  value.canonicalize();
  coeffs_.assign(field_->degree(), 0);
  coeffs_[0] = std::move(value);
}

CycloScalar::CycloScalar(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  require(field_ != nullptr, Errc::precondition, "scalar needs a field");
  if (coeffs_.empty()) coeffs_.push_back(0);
  for (auto& c : coeffs_) {
    require(c.get_den() != 0, Errc::division_by_zero, "rational with zero denominator");
    c.canonicalize();
  }
  reduce(*field_, coeffs_);
}

CycloScalar CycloScalar::zeta_power(const FieldPtr& field, long k) {
  const long n = field->order();
  long e = k % n;
  if (e < 0) e += n;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, 0);
  c[static_cast<std::size_t>(e)] = 1;
  return CycloScalar(field, std::move(c));
}

CycloScalar CycloScalar::root_of_unity(const FieldPtr& field, std::uint32_t n, long k) {
  if (!field->has_roots_of_unity(n)) {
    fail(Errc::precondition, "mu_" + std::to_string(n) + " is not contained in Q(zeta_" +
                                 std::to_string(field->order()) + ")");
  }
  // Generator of the full torsion group mu_lcm(2,N): zeta_N when N is even,
  // -zeta_N when N is odd.
  const long torsion = field->torsion_order();
  const long step = torsion / static_cast<long>(n);
  long e = (step * k) % torsion;
  if (e < 0) e += torsion;
  if (field->order() % 2 == 0) {
    return zeta_power(field, e);
  }
  CycloScalar g = -zeta_power(field, 1);
  return g.pow(e);
}

std::uint32_t CycloScalar::order() const noexcept { return field_->order(); }

bool CycloScalar::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool CycloScalar::is_one() const noexcept {
  return coeffs_[0] == 1 &&
         std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool CycloScalar::is_rational() const noexcept {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return q == 0; });
}

const Rational& CycloScalar::rational_value() const {
  require(is_rational(), Errc::precondition, "scalar is not rational");
  return coeffs_[0];
}

void CycloScalar::check_same_field(const CycloScalar& other) const {
  if (field_->order() != other.field_->order()) {
    fail(Errc::field_mismatch, "scalars from Q(zeta_" + std::to_string(field_->order()) +
                                   ") and Q(zeta_" + std::to_string(other.field_->order()) +
                                   ") cannot be combined");
  }
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& rhs) {
  check_same_field(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& rhs) {
  check_same_field(rhs);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& rhs) {
  check_same_field(rhs);
  const std::size_t d = coeffs_.size();
  if (d == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  const auto& table = field_->reduction();
  for (std::size_t k = d; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    const auto& row = table[k - d];
    for (std::size_t i = 0; i < d; ++i) {
      if (row[i] != 0) prod[i] += prod[k] * row[i];
    }
  }
  prod.resize(d);
  coeffs_ = std::move(prod);
  return *this;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (auto& q : out.coeffs_) q = -q;
  return out;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) {
    fail(Errc::division_by_zero, "inverse of zero scalar");
  }
  const std::size_t d = coeffs_.size();
  if (is_rational()) {
    return CycloScalar(field_, Rational(1) / coeffs_[0]);
  }
  // Column j of the multiplication-by-this matrix is this * zeta^j; solve
  // the resulting linear system for the coefficients of the inverse.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, 0));
  CycloScalar column = *this;
  const CycloScalar zeta = zeta_power(field_, 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = column.coeffs_[i];
    column *= zeta;
  }
  a[0][d] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col] == 0) ++pivot;
    if (pivot == d) {
      fail(Errc::internal, "singular multiplication matrix for a nonzero scalar");
    }
    std::swap(a[pivot], a[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (std::size_t k = col; k <= d; ++k) a[col][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t k = col; k <= d; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  std::vector<Rational> sol(d);
  for (std::size_t i = 0; i < d; ++i) sol[i] = a[i][d];
  return CycloScalar(field_, std::move(sol));
}

CycloScalar CycloScalar::pow(long exponent) const {
  CycloScalar base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  CycloScalar result = one(field_);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const CycloScalar& lhs, const CycloScalar& rhs) {
  lhs.check_same_field(rhs);
  return lhs.coeffs_ == rhs.coeffs_;
}

std::strong_ordering operator<=>(const CycloScalar& lhs, const CycloScalar& rhs) {
  lhs.check_same_field(rhs);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    const int c = cmp(lhs.coeffs_[i], rhs.coeffs_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string CycloScalar::to_string() const {
  if (is_rational()) return m2sg::to_string(coeffs_[0]);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& q = coeffs_[i];
    if (q == 0) continue;
    Rational mag = abs(q);
    if (!first) {
      out << (q < 0 ? " - " : " + ");
    } else if (q < 0) {
      out << "-";
    }
    first = false;
    if (i == 0) {
      out << m2sg::to_string(mag);
      continue;
    }
    if (mag != 1) out << m2sg::to_string(mag) << "*";
    out << "z";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

std::optional<std::uint32_t> root_of_unity_order(const CycloScalar& z) {
  if (z.is_zero()) {
    fail(Errc::precondition, "root_of_unity_order: zero has no multiplicative order");
  }
  const auto& field = *z.field();
  if (!z.pow(field.torsion_order()).is_one()) {
    return std::nullopt;
  }
  for (std::uint32_t d : field.torsion_divisors()) {
    if (z.pow(d).is_one()) return d;
  }
  fail(Errc::internal, "torsion element without a divisor order");
}

}  // namespace m2sg
