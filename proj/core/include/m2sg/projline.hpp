#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "m2sg/scalar.hpp"

namespace m2sg {

/// Point [a : b] of the projective line, kept in canonical form: b = 1 when
/// b != 0, otherwise the point at infinity [1 : 0].
class ProjPoint {
 public:
  /// Canonical representative of [a : b]. Throws when a = b = 0.
  static ProjPoint normalize(const CycloScalar& a, const CycloScalar& b);
  /// The affine point [t : 1].
  static ProjPoint affine(const CycloScalar& t);
  static ProjPoint infinity(const FieldPtr& field);

  [[nodiscard]] const CycloScalar& a() const noexcept { return a_; }
  [[nodiscard]] const CycloScalar& b() const noexcept { return b_; }
  [[nodiscard]] const FieldPtr& field() const noexcept { return a_.field(); }
  [[nodiscard]] bool is_infinity() const noexcept { return b_.is_zero(); }

  /// "[a : b]"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend std::strong_ordering operator<=>(const ProjPoint& lhs, const ProjPoint& rhs);

 private:
  ProjPoint(CycloScalar a, CycloScalar b) : a_(std::move(a)), b_(std::move(b)) {}

  CycloScalar a_;
  CycloScalar b_;
};

/// The determinant a*d - b*c of the representatives (zero iff p == q).
CycloScalar cross(const ProjPoint& p, const ProjPoint& q);

/// Sorted, deduplicated list of points.
std::vector<ProjPoint> canonical_points(std::vector<ProjPoint> points);

/// A finite subset of the projective line, or the complement of one.
class PointSet {
 public:
  enum class Mode { finite, cofinite };

  static PointSet finite(std::vector<ProjPoint> points);
  /// Complement of `excluded` in the whole projective line.
  static PointSet cofinite(std::vector<ProjPoint> excluded);
  static PointSet empty() { return finite({}); }
  static PointSet everything() { return cofinite({}); }

  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] bool is_finite() const noexcept { return mode_ == Mode::finite; }
  [[nodiscard]] bool is_cofinite() const noexcept { return mode_ == Mode::cofinite; }
  /// The members (finite mode) or the excluded points (cofinite mode).
  [[nodiscard]] const std::vector<ProjPoint>& points() const noexcept { return points_; }
  [[nodiscard]] bool is_empty() const noexcept { return is_finite() && points_.empty(); }
  /// Number of members; meaningful only in finite mode.
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

  [[nodiscard]] bool contains(const ProjPoint& p) const;
  [[nodiscard]] PointSet complement() const;
  [[nodiscard]] PointSet intersect(const PointSet& other) const;
  [[nodiscard]] PointSet unite(const PointSet& other) const;
  [[nodiscard]] bool is_subset_of(const PointSet& other) const;
  /// Members that lie in `ambient`, in canonical order.
  [[nodiscard]] std::vector<ProjPoint> restrict_to(std::span<const ProjPoint> ambient) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  PointSet(Mode mode, std::vector<ProjPoint> points)
      : mode_(mode), points_(std::move(points)) {}

  Mode mode_;
  std::vector<ProjPoint> points_;
};

}  // namespace m2sg
