#pragma once

// Exact arithmetic in a cyclotomic field Q(zeta_N).
//
// Elements are stored as coefficient vectors over the power basis
// 1, zeta, ..., zeta^(phi(N)-1), fully reduced modulo the N-th cyclotomic
// polynomial, so two scalars are equal exactly when their coefficients are.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "m2sg/error.hpp"

namespace m2sg {

/// Arbitrary precision rational; GMP keeps it canonical (gcd 1, den > 0).
using Rational = mpq_class;

std::string to_string(const Rational& q);
/// Parses "p", "-p" or "p/q". Throws Error(Errc::parse) on malformed input
/// and Error(Errc::division_by_zero) on a zero denominator.
Rational parse_rational(std::string_view text);

class CyclotomicField;
using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// The field Q(zeta_N). Instances are interned: get(N) always returns the
/// same object for the same N.
class CyclotomicField {
 public:
  static FieldPtr get(std::uint32_t order);

  [[nodiscard]] std::uint32_t order() const noexcept { return order_; }
  /// phi(N), the dimension over Q.
  [[nodiscard]] std::uint32_t degree() const noexcept { return degree_; }
  /// lcm(2, N): the number of roots of unity the field contains.
  [[nodiscard]] std::uint32_t torsion_order() const noexcept { return torsion_; }
  /// Positive divisors of torsion_order(), ascending.
  [[nodiscard]] const std::vector<std::uint32_t>& torsion_divisors() const noexcept {
    return divisors_;
  }
  /// True when mu_n sits inside the field, i.e. n divides lcm(2, N).
  [[nodiscard]] bool has_roots_of_unity(std::uint32_t n) const noexcept {
    return n > 0 && torsion_ % n == 0;
  }
  /// Coefficients of the N-th cyclotomic polynomial, constant term first.
  [[nodiscard]] const std::vector<mpz_class>& modulus() const noexcept { return modulus_; }
  /// reduction()[k] holds x^(degree + k) mod Phi_N for k < degree - 1.
  [[nodiscard]] const std::vector<std::vector<mpz_class>>& reduction() const noexcept {
    return reduction_;
  }

  CyclotomicField(const CyclotomicField&) = delete;
  CyclotomicField& operator=(const CyclotomicField&) = delete;

 private:
  explicit CyclotomicField(std::uint32_t order);

  std::uint32_t order_;
  std::uint32_t degree_;
  std::uint32_t torsion_;
  std::vector<std::uint32_t> divisors_;
  std::vector<mpz_class> modulus_;
  std::vector<std::vector<mpz_class>> reduction_;
};

/// Integer polynomial Phi_n, constant term first.
std::vector<mpz_class> cyclotomic_polynomial(std::uint32_t n);

/// Element of Q(zeta_N).
class CycloScalar {
 public:
  /// The rational `value` embedded in `field`.
  CycloScalar(FieldPtr field, Rational value);
  CycloScalar(FieldPtr field, long value) : CycloScalar(std::move(field), Rational(value)) {}
  /// From raw power-basis coefficients; reduces if given more than phi(N).
  CycloScalar(FieldPtr field, std::vector<Rational> coeffs);

  static CycloScalar zero(FieldPtr field) { return {std::move(field), 0L}; }
  static CycloScalar one(FieldPtr field) { return {std::move(field), 1L}; }
  /// zeta_N^k (k may be negative).
  static CycloScalar zeta_power(const FieldPtr& field, long k);
  /// The canonical primitive n-th root of unity raised to k. Requires
  /// field->has_roots_of_unity(n).
  static CycloScalar root_of_unity(const FieldPtr& field, std::uint32_t n, long k = 1);

  [[nodiscard]] const FieldPtr& field() const noexcept { return field_; }
  [[nodiscard]] std::uint32_t order() const noexcept;
  [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] bool is_one() const noexcept;
  [[nodiscard]] bool is_rational() const noexcept;
  /// The rational value; requires is_rational().
  [[nodiscard]] const Rational& rational_value() const;

  [[nodiscard]] CycloScalar inverse() const;
  [[nodiscard]] CycloScalar pow(long exponent) const;

  CycloScalar& operator+=(const CycloScalar& rhs);
  CycloScalar& operator-=(const CycloScalar& rhs);
  CycloScalar& operator*=(const CycloScalar& rhs);
  CycloScalar& operator/=(const CycloScalar& rhs);

  friend CycloScalar operator+(CycloScalar lhs, const CycloScalar& rhs) { return lhs += rhs; }
  friend CycloScalar operator-(CycloScalar lhs, const CycloScalar& rhs) { return lhs -= rhs; }
  friend CycloScalar operator*(CycloScalar lhs, const CycloScalar& rhs) { return lhs *= rhs; }
  friend CycloScalar operator/(CycloScalar lhs, const CycloScalar& rhs) { return lhs /= rhs; }
  CycloScalar operator-() const;

  friend bool operator==(const CycloScalar& lhs, const CycloScalar& rhs);
  /// Total order used for canonical sorting (coefficient-wise lexicographic);
  /// has no algebraic meaning.
  friend std::strong_ordering operator<=>(const CycloScalar& lhs, const CycloScalar& rhs);

  /// "p/q" for rationals, otherwise a sum such as "1/2 + 3*z^2" in powers of
  /// z = zeta_N.
  [[nodiscard]] std::string to_string() const;

 private:
  void check_same_field(const CycloScalar& other) const;

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

/// Multiplicative order of z if z is a root of unity, std::nullopt otherwise.
/// z is torsion in Q(zeta_N) iff z^lcm(2,N) = 1. Throws on z = 0.
std::optional<std::uint32_t> root_of_unity_order(const CycloScalar& z);

}  // namespace m2sg
