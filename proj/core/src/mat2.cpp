#include "m2sg/mat2.hpp"

namespace m2sg {

Mat2::Mat2(CycloScalar a, CycloScalar b, CycloScalar c, CycloScalar d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  const auto n = e_[0].order();
  for (const auto& x : e_) {
    if (x.order() != n) {
      fail(Errc::field_mismatch, "matrix entries from different cyclotomic fields");
    }
  }
}

Mat2 Mat2::from_ints(const FieldPtr& field, long a, long b, long c, long d) {
  return {CycloScalar(field, a), CycloScalar(field, b), CycloScalar(field, c),
          CycloScalar(field, d)};
}

Mat2 Mat2::identity(const FieldPtr& field) { return from_ints(field, 1, 0, 0, 1); }

Mat2 Mat2::zero(const FieldPtr& field) { return from_ints(field, 0, 0, 0, 0); }

Mat2 Mat2::diagonal(const CycloScalar& x, const CycloScalar& y) {
  return {x, CycloScalar::zero(x.field()), CycloScalar::zero(x.field()), y};
}

CycloScalar Mat2::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

CycloScalar Mat2::trace() const { return e_[0] + e_[3]; }

bool Mat2::is_zero() const {
  for (const auto& x : e_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Mat2 Mat2::inverse() const {
  const CycloScalar d = det();
  if (d.is_zero()) {
    fail(Errc::precondition, "inverse of a singular matrix");
  }
  const CycloScalar inv = d.inverse();
  return {e_[3] * inv, -e_[1] * inv, -e_[2] * inv, e_[0] * inv};
}

Mat2 Mat2::transpose() const { return {e_[0], e_[2], e_[1], e_[3]}; }

Mat2& Mat2::operator+=(const Mat2& rhs) {
  for (int i = 0; i < 4; ++i) e_[i] += rhs.e_[i];
  return *this;
}

Mat2 operator-(const Mat2& lhs, const Mat2& rhs) {
  return {lhs.e_[0] - rhs.e_[0], lhs.e_[1] - rhs.e_[1], lhs.e_[2] - rhs.e_[2],
          lhs.e_[3] - rhs.e_[3]};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.e_[0] * y.e_[0] + x.e_[1] * y.e_[2], x.e_[0] * y.e_[1] + x.e_[1] * y.e_[3],
          x.e_[2] * y.e_[0] + x.e_[3] * y.e_[2], x.e_[2] * y.e_[1] + x.e_[3] * y.e_[3]};
}

Mat2& Mat2::operator*=(const Mat2& rhs) { return *this = *this * rhs; }

Mat2& Mat2::operator*=(const CycloScalar& s) {
  for (auto& x : e_) x *= s;
  return *this;
}

std::strong_ordering operator<=>(const Mat2& lhs, const Mat2& rhs) {
  for (int i = 0; i < 4; ++i) {
    if (auto c = lhs.e_[i] <=> rhs.e_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Mat2::to_string() const {
  return "[[" + e_[0].to_string() + ", " + e_[1].to_string() + "], [" + e_[2].to_string() +
         ", " + e_[3].to_string() + "]]";
}

int rank(const Mat2& x) {
  if (x.is_zero()) return 0;
  return x.det().is_zero() ? 1 : 2;
}

bool is_idempotent(const Mat2& x) { return !x.is_zero() && x * x == x; }

bool is_nilpotent(const Mat2& x) { return (x * x).is_zero(); }

bool is_invertible(const Mat2& x) { return !x.det().is_zero(); }

ImageKernel image_kernel(const Mat2& x) {
  if (rank(x) != 1) {
    fail(Errc::precondition, "image_kernel needs a rank-1 matrix");
  }
  // Image: first nonzero column. Kernel: (-q, p) for the first nonzero row
  // (p, q), which the second row annihilates as well since det = 0.
  const int col = (x.at(0, 0).is_zero() && x.at(1, 0).is_zero()) ? 1 : 0;
  ProjPoint image = ProjPoint::normalize(x.at(0, col), x.at(1, col));
  const int row = (x.at(0, 0).is_zero() && x.at(0, 1).is_zero()) ? 1 : 0;
  ProjPoint kernel = ProjPoint::normalize(-x.at(row, 1), x.at(row, 0));
  return {std::move(image), std::move(kernel)};
}

Mat2 idempotent_from_points(const ProjPoint& image, const ProjPoint& kernel) {
  const CycloScalar& a = image.a();
  const CycloScalar& b = image.b();
  const CycloScalar& c = kernel.a();
  const CycloScalar& d = kernel.b();
  const CycloScalar det = a * d - b * c;
  if (det.is_zero()) {
    fail(Errc::precondition,
         "no idempotent has image equal to kernel " + image.to_string() + "; the class is nilpotent");
  }
  const CycloScalar s = det.inverse();
  return {a * d * s, -(a * c) * s, b * d * s, -(b * c) * s};
}

Mat2 nilpotent_from_point(const ProjPoint& v, const CycloScalar& lambda) {
  if (lambda.is_zero()) {
    fail(Errc::precondition, "nilpotent_from_point: lambda must be nonzero");
  }
  const CycloScalar& a = v.a();
  const CycloScalar& b = v.b();
  return {lambda * a * b, -(lambda * a * a), lambda * b * b, -(lambda * a * b)};
}

ProjPoint moebius_apply(const Mat2& g, const ProjPoint& p) {
  if (!is_invertible(g)) {
    fail(Errc::precondition, "moebius_apply needs an invertible matrix");
  }
  return ProjPoint::normalize(g.at(0, 0) * p.a() + g.at(0, 1) * p.b(),
                              g.at(1, 0) * p.a() + g.at(1, 1) * p.b());
}

std::optional<CycloScalar> scalar_ratio(const Mat2& x, const Mat2& base) {
  int pivot = -1;
  for (int i = 0; i < 4; ++i) {
    if (!base.entries()[i].is_zero()) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) {
    fail(Errc::precondition, "scalar_ratio: zero base matrix");
  }
  CycloScalar lambda = x.entries()[pivot] / base.entries()[pivot];
  for (int i = 0; i < 4; ++i) {
    if (x.entries()[i] != lambda * base.entries()[i]) return std::nullopt;
  }
  return lambda;
}

}  // namespace m2sg
