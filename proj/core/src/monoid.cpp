#include "m2sg/monoid.hpp"

#include <algorithm>
#include <map>

#include "m2sg/error.hpp"

namespace m2sg {

namespace {

/// mu_n written out as an explicit set is reported as mu_n.
Multiplicity tidy(const Multiplicity& m) {
  if (m.kind() != Multiplicity::Kind::explicit_set || m.empty()) return m;
  const auto k = static_cast<std::uint32_t>(m.elements().size());
  if (!m.field()->has_roots_of_unity(k)) return m;
  auto mu = Multiplicity::roots_of_unity(m.field(), k);
  return mu.same_set(m) ? mu : m;
}

/// Zariski closure of the semigroup generated by a scalar set.
Multiplicity close_group(const Multiplicity& z) {
  if (z.is_group()) return z;
  return torsion_closure(z.field(), z.elements());
}

Rank1 class_of(const Mat2& x) {
  const auto ik = image_kernel(x);
  return {ik.image, ik.kernel};
}

void check_size(const Multiplicity& z, std::size_t cap) {
  if (z.kind() == Multiplicity::Kind::explicit_set && z.elements().size() > cap) {
    fail(Errc::cap_exceeded, "scalar set grew past " + std::to_string(cap) + " elements");
  }
}

std::string describe(const InvarianceResult& r) {
  if (r.invariant) return {};
  std::string s = "not invariant";
  if (r.moved) s += ": " + r.moved->to_string();
  if (r.witness) s += " moved by " + r.witness->to_string();
  if (r.image) s += " to " + r.image->to_string();
  return s;
}

std::vector<ProjPoint> merged_points(std::span<const ProjPoint> a, std::span<const ProjPoint> b) {
  std::vector<ProjPoint> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return canonical_points(std::move(out));
}

/// Group elements for the scalar checks: all of them, or seeded samples.
std::vector<Mat2> acting_elements(const GroupSpec& h, const FieldPtr& field, std::uint64_t seed,
                                  std::size_t cap) {
  if (!h.is_catalog_infinite()) return matrix_group_elements(h, field, cap);
  auto hs = catalog_generators(h, field);
  Rng rng(seed);
  for (int i = 0; i < 16; ++i) hs.push_back(sample_element(h, field, rng, cap));
  return hs;
}

}  // namespace

MonoidClosure closure_monoid(std::span<const Mat2> gens, std::size_t cap) {
  require(!gens.empty(), Errc::precondition, "closure_monoid: no generators");
  require(cap > 0, Errc::precondition, "closure_monoid: cap must be positive");
  const auto field = gens.front().field();
  std::vector<Mat2> inv;
  std::vector<Mat2> sing;
  for (const auto& g : gens) {
    if (g.field() != field) fail(Errc::field_mismatch, "closure_monoid: generators from different fields");
    (is_invertible(g) ? inv : sing).push_back(g);
  }

  std::variant<std::vector<Mat2>, InfiniteSignal> group =
      inv.empty() ? std::variant<std::vector<Mat2>, InfiniteSignal>(
                        std::vector<Mat2>{Mat2::identity(field)})
                  : matrix_group_closure(inv, cap);
  const bool finite_h = std::holds_alternative<std::vector<Mat2>>(group);

  struct Entry {
    Mat2 base;
    Multiplicity z;
  };
  std::map<Rank1, Entry> classes;
  bool has_zero = false;

  // Records the scalar set z * p; returns whether anything changed.
  auto add = [&](const Mat2& p, const Multiplicity& z) -> bool {
    if (p.is_zero()) {
      const bool fresh = !has_zero;
      has_zero = true;
      return fresh;
    }
    const Rank1 cls = class_of(p);
    auto it = classes.find(cls);
    if (it == classes.end()) {
      if (classes.size() >= cap) {
        fail(Errc::cap_exceeded, "closure_monoid: more than " + std::to_string(cap) +
                                     " singular classes");
      }
      Mat2 base = representative(cls);
      const auto contrib = z.scaled(*scalar_ratio(p, base));
      auto init = cls.is_idempotent() ? close_group(contrib) : tidy(contrib);
      check_size(init, cap);
      classes.emplace(cls, Entry{std::move(base), std::move(init)});
      return true;
    }
    const auto contrib = z.scaled(*scalar_ratio(p, it->second.base));
    auto merged = cls.is_idempotent() ? join(it->second.z, close_group(contrib))
                                      : tidy(set_union(it->second.z, contrib));
    check_size(merged, cap);
    if (merged.same_set(it->second.z)) return false;
    it->second.z = std::move(merged);
    return true;
  };

  const auto one = Multiplicity::explicit_set(field, {CycloScalar::one(field)});
  for (const auto& s : sing) add(s, one);

  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<std::pair<Rank1, Entry>> snap(classes.begin(), classes.end());
    for (const auto& [cx, x] : snap) {
      for (const auto& [cy, y] : snap) {
        changed |= add(x.base * y.base, set_product(x.z, y.z));
      }
    }
    if (!finite_h) continue;
    for (const auto& h : inv) {
      for (const auto& [cx, x] : snap) {
        changed |= add(h * x.base, x.z);
        changed |= add(x.base * h, x.z);
      }
    }
  }

  std::vector<Rank1> pairs;
  std::vector<ClassData> data;
  for (const auto& [c, e] : classes) {
    pairs.push_back(c);
    data.push_back({c, e.base, e.z});
  }
  auto shape = classify(Rank1Set::make(std::move(pairs), has_zero));
  return MonoidClosure{std::move(group), std::move(inv),
                       SingularPart(std::move(shape), std::move(data)), finite_h};
}

std::string MonoidSpec::to_string() const {
  std::string s = "H = " + group.to_string() + "; S = " + singular.to_string();
  if (!ambient.empty()) {
    s += "; ambient {";
    for (std::size_t i = 0; i < ambient.size(); ++i) {
      if (i) s += ", ";
      s += ambient[i].to_string();
    }
    s += "}";
  }
  return s;
}

std::vector<ProjPoint> effective_ambient(const MonoidSpec& m, std::size_t cap) {
  const auto own = m.singular.points();
  const auto pts = merged_points(m.ambient, own);
  return orbit_closure(m.group, m.field, pts, cap);
}

SubmonoidCheck check_submonoid(const GroupSpec& h, const SingularPart& s, const FieldPtr& field,
                               std::span<const ProjPoint> ambient, std::uint64_t seed,
                               std::size_t cap) {
  SubmonoidCheck out;
  const auto& shape = s.shape();
  bool points_ok = true;
  auto invariance = [&](const char* name, const PointSet& x) {
    const auto r = is_invariant(h, field, x, cap);
    points_ok = points_ok && r.invariant;
    out.checks.push_back(Check::verdict(name, r.invariant, describe(r)));
  };
  invariance("images_invariant", shape.images());
  invariance("kernels_invariant", shape.kernels());
  if (auto c = shape.center()) invariance("center_invariant", PointSet::finite({*c}));

  const auto violation = closure_violation(s, ambient);
  out.checks.push_back(Check::verdict("singular_closed", !violation, violation.value_or("")));

  std::vector<ClassData> data;
  for (const auto& c : s.classes_over(ambient)) data.push_back(*s.lookup(c));
  const bool all_full =
      std::all_of(data.begin(), data.end(), [](const ClassData& d) { return d.z.is_full(); });

  if (!points_ok) {
    out.checks.push_back(
        Check::skipped("multiplicity_compatible", "point data is not invariant"));
  } else if (all_full) {
    out.checks.push_back(
        Check::passed("multiplicity_compatible", "every multiplicity is C^x, so h s lands in S"));
  } else {
    std::string bad;
    for (const auto& g : acting_elements(h, field, seed, cap)) {
      for (const auto& d : data) {
        for (const Mat2& p : {g * d.base, d.base * g}) {
          const auto cls = class_of(p);
          const auto t = s.lookup(cls);
          if (!t) {
            bad = g.to_string() + " moves " + d.cls.to_string() + " to " + cls.to_string() +
                  ", outside S";
            break;
          }
          const auto scaled = d.z.scaled(*scalar_ratio(p, t->base));
          if (!scaled.is_subset_of(t->z)) {
            bad = g.to_string() + " sends Z" + d.cls.to_string() + " = " + d.z.to_string() +
                  " to scalars " + scaled.to_string() + " outside Z" + cls.to_string() + " = " +
                  t->z.to_string();
            break;
          }
        }
        if (!bad.empty()) break;
      }
      if (!bad.empty()) break;
    }
    out.checks.push_back(Check::verdict("multiplicity_compatible", bad.empty(), bad));
  }
  out.ok = all_passed(out.checks);
  return out;
}

std::string_view case_name(StructureCase c) noexcept {
  switch (c) {
    case StructureCase::type_a_no_nilpotent: return "type_a_no_nilpotent";
    case StructureCase::type_a_nilpotent_wide: return "type_a_nilpotent_wide";
    case StructureCase::type_a_nilpotent_narrow: return "type_a_nilpotent_narrow";
    case StructureCase::type_b: return "type_b";
  }
  return "?";
}

std::string_view case_label(StructureCase c) noexcept {
  switch (c) {
    case StructureCase::type_a_no_nilpotent:
      return "Type A without nilpotents: S = Z_S B_{F,G}, equal multiplicity";
    case StructureCase::type_a_nilpotent_wide:
      return "Type A with nilpotents, |F| > 1 and |G| > 1: equal multiplicity";
    case StructureCase::type_a_nilpotent_narrow:
      return "Type A with nilpotents, |F| = 1 or |G| = 1: S = Z_e B_{F,G} u Z_n n";
    case StructureCase::type_b:
      return "Type B: S = Z_e B_{{c},G} u Z_f B_{F,{c}} u Z_n n";
  }
  return "?";
}

namespace {

bool more_than_one(const PointSet& s) { return s.is_cofinite() || s.size() > 1; }

std::optional<ProjPoint> single_point(const PointSet& s) {
  if (s.is_finite() && s.size() == 1) return s.points().front();
  return std::nullopt;
}

/// H-orbits of the ambient points outside `x`, skipping the given points.
std::vector<std::vector<ProjPoint>> outside_orbits(const MonoidSpec& m,
                                                   std::span<const ProjPoint> amb,
                                                   const PointSet& x,
                                                   std::span<const ProjPoint> skip,
                                                   std::size_t cap) {
  std::vector<ProjPoint> rest;
  for (const auto& p : amb) {
    if (!x.contains(p) && std::find(skip.begin(), skip.end(), p) == skip.end()) rest.push_back(p);
  }
  if (rest.empty()) return {};
  return orbit_decomposition(m.group, m.field, rest, cap).finite_orbits;
}

PointSet relaxed(const std::vector<std::vector<ProjPoint>>& orbits, std::size_t i) {
  return i < orbits.size() ? PointSet::cofinite(orbits[i]) : PointSet::everything();
}

MonoidSpec member(const MonoidSpec& m, SingularPart part) {
  return MonoidSpec{m.field, m.group, std::move(part), m.ambient};
}

/// Members for the Type A cases; empty when M is kept as it is.
std::vector<MonoidSpec> type_a_family(const MonoidSpec& m, std::span<const ProjPoint> amb,
                                      std::size_t cap) {
  const auto& s = m.singular;
  const auto& f = s.shape().images();
  const auto& g = s.shape().kernels();
  const auto full = Multiplicity::full_torus(m.field);
  std::vector<MonoidSpec> out;

  if (!s.has_zero()) {
    // Without zero F and G stay disjoint, so only one side may open up and
    // it must avoid the other side entirely.
    const auto z = s.z_idempotent();
    if (!z) return out;
    const bool relax_f = g.is_finite() && (z->is_full() || g.size() == 1);
    const bool relax_g = !relax_f && f.is_finite() && (z->is_full() || f.size() == 1);
    if (!relax_f && !relax_g) return out;
    std::vector<ProjPoint> excluded;
    for (const auto& p : amb) {
      if (!(relax_f ? f : g).contains(p)) excluded.push_back(p);
    }
    auto open = PointSet::cofinite(std::move(excluded));
    auto shape = relax_f ? SingularShape::type_a(std::move(open), g, false)
                         : SingularShape::type_a(f, std::move(open), false);
    out.push_back(member(m, SingularPart(std::move(shape), {}, *z)));
    return out;
  }

  const auto z = s.z_idempotent();
  const auto zn = s.has_nilpotent() ? s.z_nilpotent() : std::nullopt;
  const bool all_full = (!z || z->is_full()) && (!zn || zn->is_full()) && s.equal_multiplicity();
  if (all_full && (z || zn)) {
    const auto of = outside_orbits(m, amb, f, {}, cap);
    const auto og = outside_orbits(m, amb, g, {}, cap);
    const std::size_t count = std::max<std::size_t>({of.size(), og.size(), 1});
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(member(m, SingularPart(SingularShape::type_a(relaxed(of, i), relaxed(og, i), true),
                                           {}, full, std::nullopt, full)));
    }
    return out;
  }

  // One side is a single point v: relax the other side orbit by orbit; the
  // only possible nilpotent is (v, v).
  const auto vf = single_point(f);
  const auto vg = single_point(g);
  if ((!vf && !vg) || !z) return out;
  const bool left = vf.has_value();
  const ProjPoint v = left ? *vf : *vg;
  const auto& other = left ? g : f;
  const auto orbits = outside_orbits(m, amb, other, {}, cap);
  if (orbits.empty()) return out;
  std::vector<ClassData> nil;
  std::optional<Multiplicity> nil_default;
  if (other.contains(v)) {
    nil.push_back(*s.lookup(Rank1{v, v}));
  } else {
    nil_default = full;
  }
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    auto shape = left ? SingularShape::type_a(f, relaxed(orbits, i), true)
                      : SingularShape::type_a(relaxed(orbits, i), g, true);
    out.push_back(member(m, SingularPart(std::move(shape), nil, *z, std::nullopt, nil_default)));
  }
  return out;
}

std::vector<MonoidSpec> type_b_family(const MonoidSpec& m, std::span<const ProjPoint> amb,
                                      std::span<const Mat2> hs, std::size_t cap) {
  const auto& s = m.singular;
  const auto& shape = s.shape().b();
  const auto& c = shape.center;
  std::vector<MonoidSpec> out;
  if (!shape.images.contains(c) && !shape.kernels.contains(c)) return out;

  auto has_other = [&](const PointSet& x) {
    return x.is_cofinite() ||
           std::any_of(x.points().begin(), x.points().end(), [&](const ProjPoint& p) { return p != c; });
  };
  const bool left_family = has_other(shape.kernels);   // classes (c, g)
  const bool right_family = has_other(shape.images);  // classes (f, c)
  std::optional<Multiplicity> ze;
  std::optional<Multiplicity> zf;
  if (left_family && !(ze = s.z_idempotent())) return out;
  if (right_family && !(zf = s.z_idempotent_right())) return out;

  const std::vector<ProjPoint> skip{c};
  const auto og = left_family ? outside_orbits(m, amb, shape.kernels, skip, cap)
                              : std::vector<std::vector<ProjPoint>>{};
  const auto of = right_family ? outside_orbits(m, amb, shape.images, skip, cap)
                               : std::vector<std::vector<ProjPoint>>{};
  if (og.empty() && of.empty()) return out;

  const auto nil = *s.lookup(Rank1{c, c});
  const auto one = Multiplicity::explicit_set(m.field, {CycloScalar::one(m.field)});
  const auto& zl = ze ? *ze : one;
  const auto& zr = zf ? *zf : one;
  // Scalars by which H acts on the nilpotent from either side.
  std::vector<CycloScalar> actions;
  for (const auto& h : hs) {
    actions.push_back(*scalar_ratio(h * nil.base, nil.base));
    actions.push_back(*scalar_ratio(nil.base * h, nil.base));
  }

  const std::size_t count = std::max(og.size(), of.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto fi = of.empty() ? shape.images : relaxed(of, i);
    const auto gi = og.empty() ? shape.kernels : relaxed(og, i);
    Multiplicity a = nil.z;
    for (const auto& gp : amb) {
      if (gp == c || !gi.contains(gp)) continue;
      for (const auto& fp : amb) {
        if (fp == c || fp == gp || !fi.contains(fp)) continue;
        const Mat2 p = representative(Rank1{c, gp}) * representative(Rank1{fp, c});
        a = set_union(a, set_product(zl, zr).scaled(*scalar_ratio(p, nil.base)));
      }
    }
    for (;;) {
      auto next = set_union(a, set_union(set_product(zl, a), set_product(a, zr)));
      for (const auto& k : actions) next = set_union(next, a.scaled(k));
      next = tidy(next);
      if (next.kind() == Multiplicity::Kind::explicit_set && next.elements().size() > cap) {
        return {};
      }
      if (next.same_set(a)) break;
      a = std::move(next);
    }
    SingularPart part(SingularShape::type_b(fi, gi, c), {ClassData{nil.cls, nil.base, a}}, ze, zf);
    out.push_back(member(m, std::move(part)));
  }
  return out;
}

std::vector<MonoidSpec> build_family(const MonoidSpec& m, std::span<const ProjPoint> amb,
                                     std::uint64_t seed, std::size_t cap) {
  std::vector<MonoidSpec> family;
  if (is_finite_group(m.group, m.field, cap)) {
    if (m.singular.shape().is_type_a()) {
      family = type_a_family(m, amb, cap);
    } else {
      const auto hs = acting_elements(m.group, m.field, seed, cap);
      family = type_b_family(m, amb, hs, cap);
    }
  }
  if (family.empty()) family.push_back(m);
  return family;
}

}  // namespace

std::vector<Check> verify_witness_monoid(const MonoidSpec& m, std::span<const MonoidSpec> family,
                                         std::uint64_t seed, std::size_t cap) {
  std::vector<Check> out;
  if (family.empty()) {
    out.push_back(Check::failed("family_nonempty", "no members"));
    return out;
  }
  const auto amb = effective_ambient(m, cap);
  std::vector<ClassData> mdata;
  for (const auto& c : m.singular.classes_over(amb)) mdata.push_back(*m.singular.lookup(c));

  std::string contain_bad;
  std::string closed_bad;
  std::string invariant_bad;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& w = family[i];
    const std::string tag = "member " + std::to_string(i) + ": ";
    try {
      if (contain_bad.empty() && !(w.group == m.group)) contain_bad = tag + "different group part";
      if (contain_bad.empty() && m.singular.has_zero() && !w.singular.has_zero()) {
        contain_bad = tag + "0 is missing";
      }
      for (const auto& d : mdata) {
        if (!contain_bad.empty()) break;
        const auto dw = w.singular.lookup(d.cls);
        if (!dw) {
          contain_bad = tag + "class " + d.cls.to_string() + " is missing";
        } else if (!d.z.scaled(*scalar_ratio(d.base, dw->base)).is_subset_of(dw->z)) {
          contain_bad = tag + "Z" + d.cls.to_string() + " = " + d.z.to_string() +
                        " is not inside " + dw->z.to_string();
        }
      }
      if (closed_bad.empty()) {
        if (auto v = closure_violation(w.singular, amb)) closed_bad = tag + *v;
      }
      if (invariant_bad.empty()) {
        const auto sub = check_submonoid(w.group, w.singular, w.field, amb, seed, cap);
        for (const auto& c : sub.checks) {
          if (c.status == CheckStatus::fail) {
            invariant_bad = tag + c.name + ": " + c.detail;
            break;
          }
        }
      }
    } catch (const Error& e) {
      if (contain_bad.empty()) contain_bad = tag + e.what();
    }
  }
  out.push_back(Check::verdict("members_contain_m", contain_bad.empty(), contain_bad));
  out.push_back(Check::verdict("members_closed", closed_bad.empty(), closed_bad));
  out.push_back(Check::verdict("members_h_invariant", invariant_bad.empty(), invariant_bad));

  // The intersection over the ambient, class by class.
  std::string exact_bad;
  const bool zero_everywhere = std::all_of(family.begin(), family.end(),
                                           [](const MonoidSpec& w) { return w.singular.has_zero(); });
  if (zero_everywhere != m.singular.has_zero()) exact_bad = "zero membership differs";
  try {
    for (const auto& v : amb) {
      for (const auto& u : amb) {
        if (!exact_bad.empty()) break;
        const Rank1 cls{v, u};
        const auto dm = m.singular.lookup(cls);
        const Mat2 base = dm ? dm->base : representative(cls);
        std::optional<Multiplicity> meet;
        bool in_all = true;
        for (const auto& w : family) {
          const auto dw = w.singular.lookup(cls);
          if (!dw) {
            in_all = false;
            break;
          }
          auto z = dw->z.scaled(*scalar_ratio(dw->base, base));
          meet = meet ? set_intersection(*meet, z) : std::move(z);
        }
        const bool empty_meet = !in_all || meet->empty();
        if (!dm && !empty_meet) {
          exact_bad = "class " + cls.to_string() + " survives the intersection but is not in M";
        } else if (dm && (empty_meet || !meet->same_set(dm->z))) {
          exact_bad = "class " + cls.to_string() + ": intersection gives " +
                      (empty_meet ? std::string("nothing") : meet->to_string()) + ", M has " +
                      dm->z.to_string();
        }
      }
    }
  } catch (const Error& e) {
    exact_bad = e.what();
  }
  out.push_back(Check::verdict("intersection_exact", exact_bad.empty(), exact_bad));
  return out;
}

namespace {

/// Builds the family, falling back to adding M when the relaxed members
/// cut out too much. Returns the family with its verification.
std::pair<std::vector<MonoidSpec>, std::vector<Check>> verified_family(const MonoidSpec& m,
                                                                      std::uint64_t seed,
                                                                      std::size_t cap) {
  const auto amb = effective_ambient(m, cap);
  auto family = build_family(m, amb, seed, cap);
  auto checks = verify_witness_monoid(m, family, seed, cap);
  const auto exact = std::find_if(checks.begin(), checks.end(),
                                  [](const Check& c) { return c.name == "intersection_exact"; });
  if (exact->status == CheckStatus::fail &&
      std::count_if(checks.begin(), checks.end(),
                    [](const Check& c) { return c.status == CheckStatus::fail; }) == 1 &&
      !(family.size() == 1 && family.front() == m)) {
    family.push_back(m);
    checks = verify_witness_monoid(m, family, seed, cap);
  }
  return {std::move(family), std::move(checks)};
}

}  // namespace

std::vector<MonoidSpec> intersection_witness_monoid(const MonoidSpec& m, std::uint64_t seed,
                                                    std::size_t cap) {
  auto [family, checks] = verified_family(m, seed, cap);
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) {
      fail(Errc::internal, "witness family failed " + c.name + ": " + c.detail);
    }
  }
  return family;
}

StructureReport structure_report(const MonoidSpec& m, std::uint64_t seed, std::size_t cap) {
  StructureReport r;
  const auto amb = effective_ambient(m, cap);
  const auto& s = m.singular;
  const auto& shape = s.shape();

  const auto sub = check_submonoid(m.group, s, m.field, amb, seed, cap);
  r.checks = sub.checks;
  const auto laws = check_multiplicity_laws(s, amb);
  r.checks.insert(r.checks.end(), laws.begin(), laws.end());

  if (shape.is_type_b()) {
    r.case_tag = StructureCase::type_b;
  } else if (!s.has_nilpotent()) {
    r.case_tag = StructureCase::type_a_no_nilpotent;
  } else if (more_than_one(shape.images()) && more_than_one(shape.kernels())) {
    r.case_tag = StructureCase::type_a_nilpotent_wide;
  } else {
    r.case_tag = StructureCase::type_a_nilpotent_narrow;
  }
  r.equal_multiplicity = s.equal_multiplicity();

  const auto ze = s.z_idempotent();
  const auto zn = s.has_nilpotent() ? s.z_nilpotent() : std::nullopt;
  if (shape.is_type_a() && r.equal_multiplicity && (ze || zn)) {
    r.z_values.emplace_back("Z_S", ze ? *ze : *zn);
  } else {
    if (ze) r.z_values.emplace_back("Z_e", *ze);
    if (auto zf = s.z_idempotent_right()) r.z_values.emplace_back("Z_f", *zf);
    if (zn) r.z_values.emplace_back("Z_n", *zn);
  }

  std::vector<ClassData> data;
  for (const auto& c : s.classes_over(amb)) data.push_back(*s.lookup(c));
  if (shape.is_type_a() && r.equal_multiplicity && !data.empty() &&
      std::all_of(data.begin(), data.end(), [](const ClassData& d) { return d.z.is_full(); })) {
    // Every class of B_{F,G} carries all of C^x, and nothing else is in S.
    std::string bad;
    for (const auto& v : amb) {
      for (const auto& u : amb) {
        const Rank1 cls{v, u};
        const bool in_b = shape.contains(cls);
        const auto d = s.lookup(cls);
        if (in_b != d.has_value() || (d && !d->z.is_full())) {
          bad = cls.to_string() + " breaks S = pi^-1(B_{F,G})";
        }
      }
    }
    r.checks.push_back(Check::verdict("full_preimage", bad.empty(), bad));
  }
  if (r.case_tag == StructureCase::type_a_nilpotent_narrow) {
    std::size_t nil = 0;
    bool shared = true;
    for (const auto& d : data) {
      if (d.cls.is_nilpotent()) {
        ++nil;
      } else if (!ze || !d.z.same_set(*ze)) {
        shared = false;
      }
    }
    r.checks.push_back(Check::verdict(
        "idempotent_nilpotent_decomposition", shared && nil <= 1,
        shared ? std::to_string(nil) + " nilpotent classes" : "idempotent classes disagree on Z_e"));
  }

  if (!all_passed(r.checks)) {
    r.checks.push_back(Check::skipped("witness_family", "M failed its own checks"));
    return r;
  }
  try {
    auto [family, checks] = verified_family(m, seed, cap);
    r.witness_family = std::move(family);
    for (auto& c : checks) {
      c.name = "witness_" + c.name;
      r.checks.push_back(std::move(c));
    }
  } catch (const Error& e) {
    r.checks.push_back(Check::failed("witness_family", e.what()));
  }
  return r;
}

}  // namespace m2sg
