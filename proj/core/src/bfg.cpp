#include "m2sg/bfg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "m2sg/error.hpp"

namespace m2sg {

Rank1Set Rank1Set::make(std::vector<Rank1> pairs, bool has_zero) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return Rank1Set{std::move(pairs), has_zero};
}

bool Rank1Set::contains(const Rank1& c) const {
  return std::binary_search(pairs.begin(), pairs.end(), c);
}

std::vector<ProjPoint> Rank1Set::images() const {
  std::vector<ProjPoint> out;
  for (const auto& p : pairs) out.push_back(p.image);
  return canonical_points(std::move(out));
}

std::vector<ProjPoint> Rank1Set::kernels() const {
  std::vector<ProjPoint> out;
  for (const auto& p : pairs) out.push_back(p.kernel);
  return canonical_points(std::move(out));
}

std::vector<ProjPoint> Rank1Set::points() const {
  std::vector<ProjPoint> out;
  for (const auto& p : pairs) {
    out.push_back(p.image);
    out.push_back(p.kernel);
  }
  return canonical_points(std::move(out));
}

std::string Rank1Set::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& p : pairs) {
    if (!first) s += ", ";
    s += p.to_string();
    first = false;
  }
  if (has_zero) s += first ? "0" : ", 0";
  return s + "}";
}

std::optional<ClosureViolation> find_closure_violation(const Rank1Set& s) {
  for (const auto& x : s.pairs) {
    for (const auto& y : s.pairs) {
      auto p = rank1_product(x, y);
      if (!p) {
        if (!s.has_zero) return ClosureViolation{x, y, std::nullopt};
      } else if (!s.contains(*p)) {
        return ClosureViolation{x, y, p};
      }
    }
  }
  return std::nullopt;
}

SingularShape SingularShape::type_a(PointSet images, PointSet kernels, bool has_zero) {
  return SingularShape(TypeA{std::move(images), std::move(kernels), has_zero});
}

SingularShape SingularShape::type_b(PointSet images, PointSet kernels, ProjPoint center) {
  return SingularShape(TypeB{std::move(images), std::move(kernels), std::move(center)});
}

const PointSet& SingularShape::images() const {
  return is_type_a() ? a().images : b().images;
}

const PointSet& SingularShape::kernels() const {
  return is_type_a() ? a().kernels : b().kernels;
}

bool SingularShape::has_zero() const { return is_type_a() ? a().has_zero : true; }

std::optional<ProjPoint> SingularShape::center() const {
  if (is_type_a()) return std::nullopt;
  return b().center;
}

bool SingularShape::contains(const Rank1& c) const {
  if (is_type_a()) return a().images.contains(c.image) && a().kernels.contains(c.kernel);
  const auto& t = b();
  return (t.images.contains(c.image) && c.kernel == t.center) ||
         (c.image == t.center && t.kernels.contains(c.kernel));
}

bool SingularShape::is_closed() const {
  if (is_type_a()) {
    // (v,u)(v',u') vanishes exactly when u = v', possible iff F and G meet.
    return a().has_zero || a().images.intersect(a().kernels).is_empty();
  }
  const auto& t = b();
  // (f,c)(c,g) = 0 and (c,g)(f,c) = (c,c), which must be present unless g = f
  // is forced for every choice.
  if (t.images.contains(t.center) || t.kernels.contains(t.center)) return true;
  if (t.images.is_empty() || t.kernels.is_empty()) return true;
  if (!t.images.is_finite() || !t.kernels.is_finite()) return false;
  return t.images.size() == 1 && t.images == t.kernels;
}

bool SingularShape::center_in_both() const {
  return is_type_b() && b().images.contains(b().center) && b().kernels.contains(b().center);
}

std::string SingularShape::to_string() const {
  if (is_type_a()) {
    return std::string("TypeA(F=") + a().images.to_string() + ", G=" + a().kernels.to_string() +
           (a().has_zero ? ", zero)" : ")");
  }
  return "TypeB(F=" + b().images.to_string() + ", G=" + b().kernels.to_string() +
         ", center=" + b().center.to_string() + ")";
}

namespace {

std::vector<ProjPoint> materialize(const PointSet& s, std::span<const ProjPoint> ambient) {
  if (s.is_finite()) return s.points();
  if (ambient.empty()) {
    fail(Errc::precondition, "materializing a cofinite set needs a nonempty ambient");
  }
  return s.restrict_to(ambient);
}

std::vector<ProjPoint> without(std::span<const ProjPoint> ambient, const std::vector<ProjPoint>& drop) {
  std::vector<ProjPoint> out;
  for (const auto& p : ambient) {
    if (!std::binary_search(drop.begin(), drop.end(), p)) out.push_back(p);
  }
  return out;
}

}  // namespace

SingularShape classify(const Rank1Set& s) {
  if (auto v = find_closure_violation(s)) {
    fail(Errc::precondition, "classify needs a closed set; " + v->left.to_string() + " * " +
                                 v->right.to_string() + " leaves it");
  }
  const auto s1 = s.images();
  const auto s2 = s.kernels();

  std::map<ProjPoint, int> kernels_per_image;
  std::map<ProjPoint, int> images_per_kernel;
  for (const auto& p : s.pairs) {
    ++kernels_per_image[p.image];
    ++images_per_kernel[p.kernel];
  }
  std::vector<ProjPoint> left;
  std::vector<ProjPoint> right;
  for (const auto& [pt, n] : kernels_per_image) {
    if (n >= 2) left.push_back(pt);
  }
  for (const auto& [pt, n] : images_per_kernel) {
    if (n >= 2) right.push_back(pt);
  }

  std::optional<SingularShape> shape;
  if (s1.size() <= 1 || s2.size() <= 1) {
    shape = SingularShape::type_a(PointSet::finite(s1), PointSet::finite(s2), s.has_zero);
  } else if (left.empty() || right.empty()) {
    // Only {(v,u),(u,v),0} gets here.
    const auto& first = s.pairs.front();
    shape = SingularShape::type_b(PointSet::finite({first.image}), PointSet::finite({first.image}),
                                  first.kernel);
  } else if (left.size() == 1 && right.size() == 1 && left.front() == right.front()) {
    shape = SingularShape::type_b(PointSet::finite(s1), PointSet::finite(s2), left.front());
  } else {
    shape = SingularShape::type_a(PointSet::finite(s1), PointSet::finite(s2), s.has_zero);
  }

  const auto pts = s.points();
  if (shape_elements(*shape, pts) != s) {
    fail(Errc::internal, "classification of " + s.to_string() + " as " + shape->to_string() +
                             " does not reconstruct the input");
  }
  return *shape;
}

Rank1Set shape_elements(const SingularShape& shape, std::span<const ProjPoint> ambient) {
  const auto f = materialize(shape.images(), ambient);
  const auto g = materialize(shape.kernels(), ambient);
  std::vector<Rank1> pairs;
  if (shape.is_type_a()) {
    for (const auto& v : f) {
      for (const auto& u : g) pairs.push_back({v, u});
    }
  } else {
    const auto& c = shape.b().center;
    for (const auto& v : f) pairs.push_back({v, c});
    for (const auto& u : g) pairs.push_back({c, u});
  }
  return Rank1Set::make(std::move(pairs), shape.has_zero());
}

SingularShape shape_intersect(const SingularShape& x, const SingularShape& y,
                              std::optional<std::span<const ProjPoint>> ambient) {
  if (x.is_type_a() && y.is_type_a()) {
    return SingularShape::type_a(x.images().intersect(y.images()),
                                 x.kernels().intersect(y.kernels()),
                                 x.has_zero() && y.has_zero());
  }
  if (x.is_type_b() && y.is_type_b() && x.b().center == y.b().center) {
    const auto& c = x.b().center;
    PointSet f = x.images().intersect(y.images());
    const bool cc_x = x.images().contains(c) || x.kernels().contains(c);
    const bool cc_y = y.images().contains(c) || y.kernels().contains(c);
    if (cc_x && cc_y) f = f.unite(PointSet::finite({c}));
    return SingularShape::type_b(std::move(f), x.kernels().intersect(y.kernels()), c);
  }

  std::vector<ProjPoint> ground;
  if (ambient) {
    ground.assign(ambient->begin(), ambient->end());
  } else {
    const bool all_finite = x.images().is_finite() && x.kernels().is_finite() &&
                            y.images().is_finite() && y.kernels().is_finite();
    if (!all_finite) {
      fail(Errc::precondition, "intersecting " + x.to_string() + " with " + y.to_string() +
                                   " needs an ambient point list");
    }
    for (const auto* s : {&x, &y}) {
      ground.insert(ground.end(), s->images().points().begin(), s->images().points().end());
      ground.insert(ground.end(), s->kernels().points().begin(), s->kernels().points().end());
      if (auto c = s->center()) ground.push_back(*c);
    }
  }
  ground = canonical_points(std::move(ground));
  if (ground.empty()) {
    return SingularShape::type_a(PointSet::empty(), PointSet::empty(), x.has_zero() && y.has_zero());
  }
  const auto ex = shape_elements(x, ground);
  const auto ey = shape_elements(y, ground);
  std::vector<Rank1> common;
  std::set_intersection(ex.pairs.begin(), ex.pairs.end(), ey.pairs.begin(), ey.pairs.end(),
                        std::back_inserter(common));
  return classify(Rank1Set::make(std::move(common), ex.has_zero && ey.has_zero));
}

std::vector<SingularShape> definable_witness_family(const SingularShape& shape) {
  if (!shape.is_closed()) {
    fail(Errc::precondition, shape.to_string() + " is not closed");
  }
  return {shape};
}

std::vector<SingularShape> definable_witness_family(const Rank1Set& s,
                                                    std::span<const ProjPoint> ambient) {
  std::vector<ProjPoint> amb = canonical_points({ambient.begin(), ambient.end()});
  for (const auto& p : s.points()) {
    if (!std::binary_search(amb.begin(), amb.end(), p)) {
      fail(Errc::precondition,
           "ambient too small to separate the set: missing " + p.to_string());
    }
  }
  const SingularShape shape = classify(s);

  std::vector<SingularShape> family;
  if (s.pairs.empty()) {
    family.push_back(SingularShape::type_a(PointSet::empty(), PointSet::empty(), s.has_zero));
  } else if (shape.is_type_a()) {
    const auto& f = shape.images().points();
    const auto& g = shape.kernels().points();
    if (s.has_zero) {
      family.push_back(SingularShape::type_a(PointSet::cofinite(without(amb, f)),
                                             PointSet::cofinite(without(amb, g)), true));
    } else {
      // F and G are disjoint, so excluding the rest of the ambient keeps G out.
      family.push_back(SingularShape::type_a(PointSet::cofinite(without(amb, f)),
                                             PointSet::finite(g), false));
    }
  } else {
    const auto& t = shape.b();
    if (t.images.contains(t.center) || t.kernels.contains(t.center)) {
      family.push_back(SingularShape::type_b(PointSet::cofinite(without(amb, t.images.points())),
                                             PointSet::cofinite(without(amb, t.kernels.points())),
                                             t.center));
    } else {
      family.push_back(shape);
    }
  }

  auto verdict = verify_witness_family(s, family, amb);
  if (!verdict.ok) {
    fail(Errc::internal, "witness family for " + s.to_string() + ": " + verdict.failure);
  }
  return family;
}

WitnessVerdict verify_witness_family(const Rank1Set& s, std::span<const SingularShape> family,
                                     std::span<const ProjPoint> ambient) {
  if (family.empty()) return {false, "empty family"};
  std::optional<Rank1Set> meet;
  for (const auto& m : family) {
    if (!m.is_closed()) return {false, m.to_string() + " is not closed"};
    for (const auto& p : s.pairs) {
      if (!m.contains(p)) return {false, m.to_string() + " misses " + p.to_string()};
    }
    if (s.has_zero && !m.has_zero()) return {false, m.to_string() + " misses 0"};
    auto e = shape_elements(m, ambient);
    if (!meet) {
      meet = std::move(e);
    } else {
      std::vector<Rank1> common;
      std::set_intersection(meet->pairs.begin(), meet->pairs.end(), e.pairs.begin(),
                            e.pairs.end(), std::back_inserter(common));
      meet = Rank1Set{std::move(common), meet->has_zero && e.has_zero};
    }
  }
  if (*meet != s) {
    return {false, "intersection over the ambient is " + meet->to_string()};
  }
  return {};
}

std::vector<Rank1Set> enumerate_closed_subsets(std::span<const ProjPoint> ground) {
  const auto t = canonical_points({ground.begin(), ground.end()});
  if (t.size() > kMaxEnumerationGround) {
    fail(Errc::cap_exceeded, "enumeration ground set has " + std::to_string(t.size()) +
                                 " points; at most 4 are supported");
  }
  const std::size_t n = t.size();
  const std::size_t m = n * n;
  // Pair index i*n + j stands for (t[i], t[j]); products act on indices.
  std::vector<Rank1> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pairs.push_back({t[i], t[j]});
  }

  std::vector<Rank1Set> out;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool needs_zero = false;
    bool closed = true;
    for (std::size_t a = 0; a < m && closed; ++a) {
      if (!((mask >> a) & 1U)) continue;
      const std::size_t ia = a / n;
      const std::size_t ja = a % n;
      for (std::size_t b = 0; b < m; ++b) {
        if (!((mask >> b) & 1U)) continue;
        const std::size_t ib = b / n;
        const std::size_t jb = b % n;
        if (ja == ib) {
          needs_zero = true;
        } else if (!((mask >> (ia * n + jb)) & 1U)) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    std::vector<Rank1> members;
    for (std::size_t a = 0; a < m; ++a) {
      if ((mask >> a) & 1U) members.push_back(pairs[a]);
    }
    if (!needs_zero) out.push_back(Rank1Set::make(members, false));
    out.push_back(Rank1Set::make(std::move(members), true));
  }
  return out;
}

}  // namespace m2sg
