#include "m2sg/projline.hpp"

#include <algorithm>
#include <iterator>

namespace m2sg {

ProjPoint ProjPoint::normalize(const CycloScalar& a, const CycloScalar& b) {
  if (!b.is_zero()) {
    return ProjPoint(a / b, CycloScalar::one(b.field()));
  }
  if (a.is_zero()) {
    fail(Errc::precondition, "[0 : 0] is not a point of the projective line");
  }
  return ProjPoint(CycloScalar::one(a.field()), CycloScalar::zero(a.field()));
}

ProjPoint ProjPoint::affine(const CycloScalar& t) {
  return ProjPoint(t, CycloScalar::one(t.field()));
}

ProjPoint ProjPoint::infinity(const FieldPtr& field) {
  return ProjPoint(CycloScalar::one(field), CycloScalar::zero(field));
}

std::string ProjPoint::to_string() const {
  return "[" + a_.to_string() + " : " + b_.to_string() + "]";
}

std::strong_ordering operator<=>(const ProjPoint& lhs, const ProjPoint& rhs) {
  // Infinity sorts after every affine point.
  if (lhs.is_infinity() != rhs.is_infinity()) {
    return lhs.is_infinity() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return lhs.a_ <=> rhs.a_;
}

CycloScalar cross(const ProjPoint& p, const ProjPoint& q) {
  return p.a() * q.b() - p.b() * q.a();
}

std::vector<ProjPoint> canonical_points(std::vector<ProjPoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

PointSet PointSet::finite(std::vector<ProjPoint> points) {
  return PointSet(Mode::finite, canonical_points(std::move(points)));
}

PointSet PointSet::cofinite(std::vector<ProjPoint> excluded) {
  return PointSet(Mode::cofinite, canonical_points(std::move(excluded)));
}

bool PointSet::contains(const ProjPoint& p) const {
  const bool listed = std::binary_search(points_.begin(), points_.end(), p);
  return is_finite() ? listed : !listed;
}

PointSet PointSet::complement() const {
  return PointSet(is_finite() ? Mode::cofinite : Mode::finite, points_);
}

namespace {

std::vector<ProjPoint> set_op_intersection(const std::vector<ProjPoint>& a,
                                           const std::vector<ProjPoint>& b) {
  std::vector<ProjPoint> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<ProjPoint> set_op_union(const std::vector<ProjPoint>& a,
                                    const std::vector<ProjPoint>& b) {
  std::vector<ProjPoint> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<ProjPoint> set_op_difference(const std::vector<ProjPoint>& a,
                                         const std::vector<ProjPoint>& b) {
  std::vector<ProjPoint> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PointSet PointSet::intersect(const PointSet& other) const {
  if (is_finite() && other.is_finite()) {
    return PointSet(Mode::finite, set_op_intersection(points_, other.points_));
  }
  if (is_cofinite() && other.is_cofinite()) {
    return PointSet(Mode::cofinite, set_op_union(points_, other.points_));
  }
  const PointSet& fin = is_finite() ? *this : other;
  const PointSet& cof = is_finite() ? other : *this;
  return PointSet(Mode::finite, set_op_difference(fin.points_, cof.points_));
}

PointSet PointSet::unite(const PointSet& other) const {
  return complement().intersect(other.complement()).complement();
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return intersect(other) == *this;
}

std::vector<ProjPoint> PointSet::restrict_to(std::span<const ProjPoint> ambient) const {
  std::vector<ProjPoint> out;
  for (const auto& p : ambient) {
    if (contains(p)) out.push_back(p);
  }
  return canonical_points(std::move(out));
}

std::string PointSet::to_string() const {
  std::string out = is_finite() ? "{" : "P1 \\ {";
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i) out += ", ";
    out += points_[i].to_string();
  }
  return out + "}";
}

}  // namespace m2sg
