#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <utility>

#include "m2sg/projline.hpp"
#include "m2sg/scalar.hpp"

namespace m2sg {

/// Exact 2x2 matrix over Q(zeta_N), row-major.
class Mat2 {
 public:
  Mat2(CycloScalar a, CycloScalar b, CycloScalar c, CycloScalar d);
  /// Integer entries, convenient in tests and catalogs.
  static Mat2 from_ints(const FieldPtr& field, long a, long b, long c, long d);
  static Mat2 identity(const FieldPtr& field);
  static Mat2 zero(const FieldPtr& field);
  static Mat2 diagonal(const CycloScalar& x, const CycloScalar& y);

  [[nodiscard]] const CycloScalar& at(int row, int col) const { return e_[row * 2 + col]; }
  [[nodiscard]] const std::array<CycloScalar, 4>& entries() const noexcept { return e_; }
  [[nodiscard]] const FieldPtr& field() const noexcept { return e_[0].field(); }

  [[nodiscard]] CycloScalar det() const;
  [[nodiscard]] CycloScalar trace() const;
  [[nodiscard]] bool is_zero() const;
  /// Throws Error(Errc::precondition) when singular.
  [[nodiscard]] Mat2 inverse() const;
  [[nodiscard]] Mat2 transpose() const;

  Mat2& operator+=(const Mat2& rhs);
  Mat2& operator*=(const Mat2& rhs);
  Mat2& operator*=(const CycloScalar& s);
  friend Mat2 operator+(Mat2 lhs, const Mat2& rhs) { return lhs += rhs; }
  friend Mat2 operator-(const Mat2& lhs, const Mat2& rhs);
  friend Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
  friend Mat2 operator*(Mat2 m, const CycloScalar& s) { return m *= s; }
  friend Mat2 operator*(const CycloScalar& s, Mat2 m) { return m *= s; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
  /// Lexicographic over entries; canonical sorting only.
  friend std::strong_ordering operator<=>(const Mat2& lhs, const Mat2& rhs);

  [[nodiscard]] std::string to_string() const;

 private:
  std::array<CycloScalar, 4> e_;
};

int rank(const Mat2& x);
bool is_idempotent(const Mat2& x);  ///< x^2 = x and x != 0
bool is_nilpotent(const Mat2& x);   ///< x^2 = 0 (the zero matrix included)
bool is_invertible(const Mat2& x);

struct ImageKernel {
  ProjPoint image;
  ProjPoint kernel;
};

/// Image and kernel of a rank-1 matrix; throws unless rank(x) == 1.
ImageKernel image_kernel(const Mat2& x);

/// The rank-1 idempotent with image v = [a:b] and kernel u = [c:d]:
/// (1 / (ad - bc)) [[ad, -ac], [bd, -bc]]. Throws when v == u.
Mat2 idempotent_from_points(const ProjPoint& image, const ProjPoint& kernel);

/// lambda [[ab, -a^2], [b^2, -ab]] for v = [a:b]: the nilpotent with
/// image = kernel = v. Throws when lambda == 0.
Mat2 nilpotent_from_point(const ProjPoint& v, const CycloScalar& lambda);

/// Image of p under the linear action of invertible g on column vectors.
ProjPoint moebius_apply(const Mat2& g, const ProjPoint& p);

/// The scalar lambda with x = lambda * base, if one exists. `base` must be
/// nonzero.
std::optional<CycloScalar> scalar_ratio(const Mat2& x, const Mat2& base);

}  // namespace m2sg
