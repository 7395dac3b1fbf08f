#include "m2sg/multiplicity.hpp"

#include <algorithm>
#include <map>

#include "m2sg/error.hpp"

namespace m2sg {

LambdaResult lambda_product(const Rank1& e, const Rank1& f) {
  if (e.is_nilpotent()) {
    throw LambdaError(LambdaFault::degenerate_left, "lambda_product: e has image = kernel");
  }
  if (f.is_nilpotent()) {
    throw LambdaError(LambdaFault::degenerate_right, "lambda_product: f has image = kernel");
  }
  if (e.kernel == f.image) {
    throw LambdaError(LambdaFault::zero_product, "lambda_product: kernel(e) = image(f), ef = 0");
  }
  if (e.image == f.kernel) {
    throw LambdaError(LambdaFault::nilpotent_product,
                      "lambda_product: image(e) = kernel(f), ef is nilpotent");
  }
  const auto& a = e.image.a();
  const auto& b = e.image.b();
  const auto& c = e.kernel.a();
  const auto& d = e.kernel.b();
  const auto& x = f.image.a();
  const auto& y = f.image.b();
  const auto& z = f.kernel.a();
  const auto& w = f.kernel.b();
  CycloScalar lambda = ((a * w - b * z) * (d * x - c * y)) / ((a * d - b * c) * (x * w - y * z));
  return {std::move(lambda), Rank1{e.image, f.kernel}};
}

ProjPoint lambda_preimage(const CycloScalar& lambda, const ProjPoint& v, const ProjPoint& v_prime,
                          const ProjPoint& u_prime) {
  if (lambda.is_zero()) fail(Errc::precondition, "lambda_preimage: lambda must be nonzero");
  if (v == v_prime || v == u_prime || v_prime == u_prime) {
    fail(Errc::precondition, "lambda_preimage: anchor points must be pairwise distinct");
  }
  const auto& a = v.a();
  const auto& b = v.b();
  const auto& x = v_prime.a();
  const auto& y = v_prime.b();
  const auto& z = u_prime.a();
  const auto& w = u_prime.b();
  const CycloScalar s = x * w - y * z;
  const CycloScalar t = a * w - b * z;
  // A c + B d = 0.
  const CycloScalar coef_c = lambda * b * s - y * t;
  const CycloScalar coef_d = x * t - a * lambda * s;
  if (coef_c.is_zero() && coef_d.is_zero()) {
    fail(Errc::internal, "lambda_preimage: degenerate linear equation");
  }
  ProjPoint p = ProjPoint::normalize(coef_d, -coef_c);
  if (p == v || p == v_prime) {
    fail(Errc::internal, "lambda_preimage: solution hit an excluded point");
  }
  return p;
}

namespace {

void check_nilpotent_config(const Rank1& e, const Rank1& f) {
  if (e.is_nilpotent() || f.is_nilpotent()) {
    fail(Errc::precondition, "nilpotent_product: e and f must be idempotent classes");
  }
  if (f.kernel != e.image) {
    fail(Errc::precondition, "nilpotent_product: kernel(f) must equal image(e)");
  }
  if (e.kernel == f.image) {
    fail(Errc::precondition, "nilpotent_product: kernel(e) = image(f) gives the zero product");
  }
}

}  // namespace

Mat2 nilpotent_product(const Rank1& e, const Rank1& f) {
  check_nilpotent_config(e, f);
  return idempotent_from_points(e.image, e.kernel) * idempotent_from_points(f.image, f.kernel);
}

Mat2 nilpotent_product_formula(const Rank1& e, const Rank1& f) {
  check_nilpotent_config(e, f);
  const auto& a = e.image.a();
  const auto& b = e.image.b();
  const auto& c = e.kernel.a();
  const auto& d = e.kernel.b();
  const auto& x = f.image.a();
  const auto& y = f.image.b();
  const CycloScalar coef = (c * y - d * x) / ((a * d - b * c) * (a * y - b * x));
  return Mat2(a * b, -(a * a), b * b, -(a * b)) * coef;
}

namespace {

enum class Cat { e, f, n };

/// mu_n written out as an explicit set is reported as mu_n.
Multiplicity tidy(const Multiplicity& m) {
  if (m.kind() != Multiplicity::Kind::explicit_set || m.empty()) return m;
  const auto k = static_cast<std::uint32_t>(m.elements().size());
  if (!m.field()->has_roots_of_unity(k)) return m;
  auto mu = Multiplicity::roots_of_unity(m.field(), k);
  return mu.same_set(m) ? mu : m;
}

bool more_than_one(const PointSet& s) { return s.is_cofinite() || s.size() > 1; }

std::optional<ProjPoint> some_member(const PointSet& s, const FieldPtr& field) {
  if (s.is_finite()) {
    if (s.points().empty()) return std::nullopt;
    return s.points().front();
  }
  for (long k = 0;; ++k) {
    auto p = ProjPoint::affine(CycloScalar(field, k));
    if (s.contains(p)) return p;
  }
}

}  // namespace

SingularPart::SingularPart(SingularShape shape, std::vector<ClassData> classes,
                           std::optional<Multiplicity> z_default,
                           std::optional<Multiplicity> z_default_right,
                           std::optional<Multiplicity> z_default_nilpotent)
    : shape_(std::move(shape)),
      z_default_(std::move(z_default)),
      z_default_right_(std::move(z_default_right)),
      z_default_nilpotent_(std::move(z_default_nilpotent)) {
  if (z_default_right_ && !shape_.is_type_b()) {
    fail(Errc::precondition, "z_default_right only applies to Type B shapes");
  }
  for (auto& d : classes) {
    if (!shape_.contains(d.cls)) {
      fail(Errc::precondition, "class " + d.cls.to_string() + " lies outside " + shape_.to_string());
    }
    if (d.z.empty()) {
      fail(Errc::precondition, "class " + d.cls.to_string() + " has an empty multiplicity set");
    }
    const auto proj = project(d.base);
    if (!proj.is_rank_one() || proj.rank_one() != d.cls) {
      fail(Errc::precondition, "base matrix " + d.base.to_string() + " is not in class " +
                                   d.cls.to_string());
    }
    if (d.cls.is_idempotent()) {
      Mat2 canonical = idempotent_from_points(d.cls.image, d.cls.kernel);
      const auto r = scalar_ratio(d.base, canonical);
      d.z = tidy(d.z.scaled(*r));
      d.base = std::move(canonical);
    }
    classes_.push_back(std::move(d));
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const ClassData& x, const ClassData& y) { return x.cls < y.cls; });
  for (std::size_t i = 1; i < classes_.size(); ++i) {
    if (classes_[i].cls == classes_[i - 1].cls) {
      fail(Errc::precondition, "class " + classes_[i].cls.to_string() + " listed twice");
    }
  }
}

namespace {

Cat category(const SingularShape& shape, const Rank1& cls) {
  if (cls.is_nilpotent()) return Cat::n;
  if (shape.is_type_b() && cls.kernel == shape.b().center) return Cat::f;
  return Cat::e;
}

/// Classes of one category, or std::nullopt when infinite.
std::optional<std::vector<Rank1>> category_classes(const SingularShape& shape, Cat cat) {
  const auto& f = shape.images();
  const auto& g = shape.kernels();
  std::vector<Rank1> out;
  if (shape.is_type_a()) {
    if (cat == Cat::f) return out;
    if (cat == Cat::n) {
      const auto both = f.intersect(g);
      if (both.is_cofinite()) return std::nullopt;
      for (const auto& v : both.points()) out.push_back({v, v});
      return out;
    }
    if (f.is_empty() || g.is_empty()) return out;
    if (f.is_cofinite() || g.is_cofinite()) return std::nullopt;
    for (const auto& v : f.points()) {
      for (const auto& u : g.points()) {
        if (v != u) out.push_back({v, u});
      }
    }
    return out;
  }
  const auto& c = shape.b().center;
  if (cat == Cat::n) {
    if (f.contains(c) || g.contains(c)) out.push_back({c, c});
    return out;
  }
  const auto& side = cat == Cat::e ? g : f;
  if (side.is_cofinite()) return std::nullopt;
  for (const auto& p : side.points()) {
    if (p == c) continue;
    out.push_back(cat == Cat::e ? Rank1{c, p} : Rank1{p, c});
  }
  return out;
}

}  // namespace

const Multiplicity* SingularPart::multiplicity_of(const Rank1& cls) const {
  if (!shape_.contains(cls)) return nullptr;
  auto it = std::lower_bound(classes_.begin(), classes_.end(), cls,
                             [](const ClassData& d, const Rank1& c) { return d.cls < c; });
  if (it != classes_.end() && it->cls == cls) return &it->z;
  const std::optional<Multiplicity>* def = nullptr;
  switch (category(shape_, cls)) {
    case Cat::e: def = &z_default_; break;
    case Cat::f: def = &z_default_right_; break;
    case Cat::n: def = &z_default_nilpotent_; break;
  }
  if (!def->has_value()) {
    fail(Errc::precondition, "no multiplicity data for class " + cls.to_string());
  }
  return &**def;
}

std::optional<ClassData> SingularPart::lookup(const Rank1& cls) const {
  if (!shape_.contains(cls)) return std::nullopt;
  auto it = std::lower_bound(classes_.begin(), classes_.end(), cls,
                             [](const ClassData& d, const Rank1& c) { return d.cls < c; });
  if (it != classes_.end() && it->cls == cls) return *it;
  const std::optional<Multiplicity>* def = nullptr;
  switch (category(shape_, cls)) {
    case Cat::e: def = &z_default_; break;
    case Cat::f: def = &z_default_right_; break;
    case Cat::n: def = &z_default_nilpotent_; break;
  }
  if (!def->has_value()) {
    fail(Errc::precondition, "no multiplicity data for class " + cls.to_string());
  }
  if (cls.is_nilpotent()) {
    return ClassData{cls, nilpotent_from_point(cls.image, CycloScalar::one(cls.image.field())),
                     **def};
  }
  return ClassData{cls, idempotent_from_points(cls.image, cls.kernel), **def};
}

bool SingularPart::contains(const Mat2& x) const {
  const int r = rank(x);
  if (r == 0) return has_zero();
  if (r == 2) return false;
  const auto ik = image_kernel(x);
  const Rank1 cls{ik.image, ik.kernel};
  const auto* z = multiplicity_of(cls);
  if (!z) return false;
  if (z->is_full()) return true;
  const auto d = lookup(cls);
  const auto ratio = scalar_ratio(x, d->base);
  return ratio && d->z.contains(*ratio);
}

std::optional<std::vector<Rank1>> SingularPart::finite_classes() const {
  std::vector<Rank1> out;
  for (Cat cat : {Cat::e, Cat::f, Cat::n}) {
    auto part = category_classes(shape_, cat);
    if (!part) return std::nullopt;
    out.insert(out.end(), part->begin(), part->end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> SingularPart::points() const {
  std::vector<ProjPoint> pts;
  for (const auto* s : {&shape_.images(), &shape_.kernels()}) {
    pts.insert(pts.end(), s->points().begin(), s->points().end());
  }
  if (auto c = shape_.center()) pts.push_back(*c);
  for (const auto& d : classes_) {
    pts.push_back(d.cls.image);
    pts.push_back(d.cls.kernel);
  }
  return canonical_points(std::move(pts));
}

std::vector<Rank1> SingularPart::classes_over(std::span<const ProjPoint> ambient) const {
  std::vector<ProjPoint> amb(ambient.begin(), ambient.end());
  const auto own = points();
  amb.insert(amb.end(), own.begin(), own.end());
  amb = canonical_points(std::move(amb));
  if (amb.empty()) return {};
  return shape_elements(shape_, amb).pairs;
}

std::vector<Multiplicity> SingularPart::active_multiplicities(bool idempotent_only,
                                                              int side) const {
  std::vector<Multiplicity> out;
  auto wanted = [&](Cat c) {
    if (c == Cat::n) return !idempotent_only;
    if (side == 1) return c == Cat::e;
    if (side == 2) return c == Cat::f;
    return true;
  };
  for (const auto& d : classes_) {
    if (wanted(category(shape_, d.cls))) out.push_back(d.z);
  }
  for (Cat cat : {Cat::e, Cat::f, Cat::n}) {
    if (!wanted(cat)) continue;
    const auto& def = cat == Cat::e ? z_default_ : cat == Cat::f ? z_default_right_
                                                                 : z_default_nilpotent_;
    if (!def) continue;
    const auto members = category_classes(shape_, cat);
    const bool uncovered =
        !members || std::any_of(members->begin(), members->end(), [&](const Rank1& c) {
          auto it = std::lower_bound(classes_.begin(), classes_.end(), c,
                                     [](const ClassData& d, const Rank1& k) { return d.cls < k; });
          return it == classes_.end() || it->cls != c;
        });
    if (uncovered) out.push_back(*def);
  }
  return out;
}

bool SingularPart::equal_multiplicity() const {
  const auto all = active_multiplicities(false, 0);
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (!all[i].same_set(all[0])) return false;
  }
  return true;
}

namespace {

std::optional<Multiplicity> common(const std::vector<Multiplicity>& ms) {
  if (ms.empty()) return std::nullopt;
  for (std::size_t i = 1; i < ms.size(); ++i) {
    if (!ms[i].same_set(ms[0])) return std::nullopt;
  }
  return ms[0];
}

}  // namespace

std::optional<Multiplicity> SingularPart::z_idempotent() const {
  return common(active_multiplicities(true, shape_.is_type_b() ? 1 : 0));
}

std::optional<Multiplicity> SingularPart::z_idempotent_right() const {
  if (!shape_.is_type_b()) return std::nullopt;
  return common(active_multiplicities(true, 2));
}

bool SingularPart::has_nilpotent() const {
  const auto n = category_classes(shape_, Cat::n);
  return !n || !n->empty();
}

std::optional<ClassData> SingularPart::first_nilpotent() const {
  for (const auto& d : classes_) {
    if (d.cls.is_nilpotent()) return d;
  }
  const auto n = category_classes(shape_, Cat::n);
  if (n && n->empty()) return std::nullopt;
  if (n) return lookup(n->front());
  if (!z_default_nilpotent_) {
    fail(Errc::precondition, "no multiplicity data for the nilpotent classes");
  }
  const auto v = some_member(shape_.images().intersect(shape_.kernels()),
                             z_default_nilpotent_->field());
  if (!v) return std::nullopt;
  return lookup(Rank1{*v, *v});
}

std::optional<Multiplicity> SingularPart::z_nilpotent() const {
  auto d = first_nilpotent();
  if (!d) return std::nullopt;
  return d->z;
}

std::optional<Mat2> SingularPart::nilpotent_base() const {
  auto d = first_nilpotent();
  if (!d) return std::nullopt;
  return d->base;
}

std::string SingularPart::to_string() const {
  std::string s = shape_.to_string();
  for (const auto& d : classes_) {
    s += "; Z" + d.cls.to_string() + " = " + d.z.to_string();
    if (d.cls.is_nilpotent()) s += " * " + d.base.to_string();
  }
  if (z_default_) s += "; default Z = " + z_default_->to_string();
  if (z_default_right_) s += "; default right Z = " + z_default_right_->to_string();
  if (z_default_nilpotent_) s += "; default nilpotent Z = " + z_default_nilpotent_->to_string();
  return s;
}

SingularPart compute_multiplicities(std::span<const Mat2> elements, bool closed) {
  bool has_zero = false;
  std::map<Rank1, std::vector<Mat2>> by_class;
  for (const auto& x : elements) {
    switch (rank(x)) {
      case 0: has_zero = true; break;
      case 1: {
        auto ik = image_kernel(x);
        by_class[Rank1{std::move(ik.image), std::move(ik.kernel)}].push_back(x);
        break;
      }
      default:
        fail(Errc::precondition, "compute_multiplicities: " + x.to_string() + " is invertible");
    }
  }
  std::vector<Rank1> pairs;
  std::vector<ClassData> data;
  for (auto& [cls, members] : by_class) {
    pairs.push_back(cls);
    std::sort(members.begin(), members.end());
    Mat2 base = cls.is_idempotent() ? idempotent_from_points(cls.image, cls.kernel) : members.front();
    std::vector<CycloScalar> ratios;
    for (const auto& m : members) ratios.push_back(*scalar_ratio(m, base));
    const auto& field = base.field();
    Multiplicity z = cls.is_idempotent()
                         ? torsion_closure(field, ratios)
                         : tidy(Multiplicity::explicit_set(field, std::move(ratios)));
    data.push_back(ClassData{cls, std::move(base), std::move(z)});
  }
  SingularShape shape = classify(Rank1Set::make(std::move(pairs), has_zero));
  SingularPart part(std::move(shape), std::move(data));
  if (!closed) {
    if (auto v = closure_violation(part, {})) {
      fail(Errc::precondition, "compute_multiplicities: not closed: " + *v);
    }
  }
  return part;
}

namespace {

struct Materialized {
  std::vector<ClassData> data;
};

Materialized materialize_part(const SingularPart& part, std::span<const ProjPoint> ambient) {
  Materialized m;
  for (const auto& c : part.classes_over(ambient)) m.data.push_back(*part.lookup(c));
  return m;
}

}  // namespace

std::optional<std::string> closure_violation(const SingularPart& part,
                                             std::span<const ProjPoint> ambient) {
  const auto m = materialize_part(part, ambient);
  for (const auto& x : m.data) {
    for (const auto& y : m.data) {
      // rank-1 law: zero exactly when ker x = im y, else the class (im x, ker y)
      if (x.cls.kernel == y.cls.image) {
        if (!part.has_zero()) {
          return x.cls.to_string() + " * " + y.cls.to_string() + " = 0 but 0 is missing";
        }
        continue;
      }
      const Rank1 cls{x.cls.image, y.cls.kernel};
      const auto* tz = part.multiplicity_of(cls);
      if (!tz) {
        return x.cls.to_string() + " * " + y.cls.to_string() + " lands in " + cls.to_string() +
               ", outside the shape";
      }
      if (tz->is_full()) continue;
      const auto target = part.lookup(cls);
      const Mat2 p = x.base * y.base;
      const auto lambda = scalar_ratio(p, target->base);
      const auto produced = set_product(x.z, y.z).scaled(*lambda);
      if (!produced.is_subset_of(target->z)) {
        return x.cls.to_string() + " * " + y.cls.to_string() + " produces scalars " +
               produced.to_string() + " outside Z" + cls.to_string() + " = " +
               target->z.to_string();
      }
    }
  }
  return std::nullopt;
}

std::vector<Check> check_multiplicity_laws(const SingularPart& part,
                                           std::span<const ProjPoint> ambient) {
  std::vector<Check> out;
  const auto m = materialize_part(part, ambient);
  std::vector<const ClassData*> idem;
  std::vector<const ClassData*> nil;
  for (const auto& d : m.data) (d.cls.is_nilpotent() ? nil : idem).push_back(&d);

  const auto violation = closure_violation(part, ambient);
  out.push_back(Check::verdict("closure", !violation, violation.value_or("")));

  const auto& shape = part.shape();
  if (shape.is_type_a()) {
    std::string bad;
    for (const auto* e : idem) {
      if (!e->z.same_set(idem.front()->z)) {
        bad = "Z" + idem.front()->cls.to_string() + " = " + idem.front()->z.to_string() + " but Z" +
              e->cls.to_string() + " = " + e->z.to_string();
        break;
      }
    }
    out.push_back(Check::verdict("equal_idempotent_multiplicity", bad.empty(), bad));

    const bool wide = more_than_one(shape.images()) && more_than_one(shape.kernels());
    if (wide && !nil.empty()) {
      std::string diff;
      for (const auto* n : nil) {
        for (const auto* e : idem) {
          if (!n->z.same_set(e->z)) {
            diff = "Z" + n->cls.to_string() + " = " + n->z.to_string() + " differs from Z" +
                   e->cls.to_string() + " = " + e->z.to_string();
            break;
          }
        }
        if (!diff.empty()) break;
      }
      out.push_back(Check::verdict("nilpotent_matches_idempotent", diff.empty(), diff));
    } else {
      out.push_back(Check::skipped("nilpotent_matches_idempotent",
                                   wide ? "no nilpotent" : "one side is a single point"));
    }

    if (!wide) {
      std::string why;
      for (const auto* e : idem) {
        for (const auto* f : idem) {
          const Mat2 p = e->base * f->base;
          if (!p.is_zero() && !is_idempotent(p)) {
            why = e->cls.to_string() + " * " + f->cls.to_string() + " = " + p.to_string();
            break;
          }
        }
        if (!why.empty()) break;
      }
      out.push_back(Check::verdict("idempotent_products_idempotent", why.empty(), why));
      if (!nil.empty()) {
        out.push_back(Check::verdict("single_nilpotent_class", nil.size() == 1,
                                     std::to_string(nil.size()) + " nilpotent classes"));
        std::string sub;
        std::string ideal;
        for (const auto* n : nil) {
          for (const auto* e : idem) {
            if (sub.empty() && !set_product(e->z, n->z).is_subset_of(n->z)) {
              sub = "Z" + e->cls.to_string() + " = " + e->z.to_string() + " not inside Z" +
                    n->cls.to_string() + " = " + n->z.to_string();
            }
            for (const Mat2& p : {e->base * n->base, n->base * e->base}) {
              if (ideal.empty() && !p.is_zero() && !is_nilpotent(p)) {
                ideal = e->cls.to_string() + " and " + n->cls.to_string() + " give " + p.to_string();
              }
            }
          }
        }
        out.push_back(Check::verdict("idempotent_in_nilpotent_multiplicity", sub.empty(), sub));
        out.push_back(Check::verdict("nilpotents_form_ideal", ideal.empty(), ideal));
      } else {
        out.push_back(Check::skipped("nilpotents_form_ideal", "no nilpotent"));
      }
    }

    // Finite-scale stand-in for an infinite side: more points than the
    // torsion of the field can separate.
    bool forced = false;
    if (wide && !idem.empty()) {
      const std::size_t limit = idem.front()->z.field()->torsion_order();
      forced = shape.images().is_cofinite() || shape.kernels().is_cofinite() ||
               shape.images().size() > limit || shape.kernels().size() > limit;
    }
    if (forced) {
      const bool all_full = std::all_of(idem.begin(), idem.end(),
                                        [](const ClassData* d) { return d->z.is_full(); });
      out.push_back(Check::verdict("forced_full_torus", all_full,
                                   "an idempotent class has torsion multiplicity"));
    }
  } else {
    out.push_back(Check::skipped("equal_idempotent_multiplicity",
                                 "shape is Type B; the Type A laws do not apply"));
    const auto& c = shape.b().center;
    std::vector<const ClassData*> left;
    std::vector<const ClassData*> right;
    for (const auto* d : idem) (d->cls.image == c ? left : right).push_back(d);
    std::string bad;
    for (const auto* group : {&left, &right}) {
      for (const auto* d : *group) {
        if (!d->z.same_set(group->front()->z)) {
          bad = "Z" + d->cls.to_string() + " = " + d->z.to_string() + " differs from Z" +
                group->front()->cls.to_string() + " = " + group->front()->z.to_string();
        }
      }
    }
    out.push_back(Check::verdict("type_b_decomposition", bad.empty() && nil.size() <= 1,
                                 bad.empty() ? "more than one nilpotent class" : bad));
    std::string rel;
    auto expect = [&](const Mat2& got, const Mat2& want, const std::string& what) {
      if (rel.empty() && got != want) rel = what + " gives " + got.to_string();
    };
    for (const auto* e : left) {
      for (const auto* f : right) {
        const Mat2 zero = Mat2::zero(e->base.field());
        expect(f->base * e->base, zero, "fe");
        for (const auto* n : nil) {
          expect(n->base * e->base, zero, "ne");
          expect(f->base * n->base, zero, "fn");
          expect(e->base * n->base, n->base, "en");
          expect(n->base * f->base, n->base, "nf");
        }
      }
    }
    if (left.empty() || right.empty()) {
      out.push_back(Check::skipped("type_b_product_relations", "one idempotent family is empty"));
    } else {
      out.push_back(Check::verdict("type_b_product_relations", rel.empty(), rel));
    }
  }
  return out;
}

}  // namespace m2sg
