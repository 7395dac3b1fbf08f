#include "m2sg/subgroups.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

#include "m2sg/error.hpp"

namespace m2sg {

namespace {

constexpr std::array<std::pair<GroupKind, std::string_view>, 10> kKindNames{{
    {GroupKind::full_pgl2, "full_pgl2"},
    {GroupKind::borel, "borel"},
    {GroupKind::torus, "torus"},
    {GroupKind::unipotent, "unipotent"},
    {GroupKind::d_infinity, "d_infinity"},
    {GroupKind::dihedral, "dihedral"},
    {GroupKind::a4, "a4"},
    {GroupKind::s4, "s4"},
    {GroupKind::a5, "a5"},
    {GroupKind::finite_generated, "finite_generated"},
}};

CycloScalar q(const FieldPtr& f, long num, long den = 1) {
  return {f, Rational(num, den)};
}

Mat2 conjugate(const Mat2& g, const std::optional<Mat2>& c) {
  if (!c) return g;
  return *c * g * c->inverse();
}

ProjPoint conjugate_point(const ProjPoint& p, const std::optional<Mat2>& c) {
  return c ? moebius_apply(*c, p) : p;
}

/// Finite orbits of the infinite kinds before conjugation.
std::vector<std::vector<ProjPoint>> structural_orbits(GroupKind kind, const FieldPtr& f) {
  const auto inf = ProjPoint::infinity(f);
  const auto zero = ProjPoint::affine(CycloScalar::zero(f));
  switch (kind) {
    case GroupKind::borel:
    case GroupKind::unipotent: return {{inf}};
    case GroupKind::torus: return {{zero}, {inf}};
    case GroupKind::d_infinity: return {{zero, inf}};
    default: return {};
  }
}

}  // namespace

std::string_view group_kind_name(GroupKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GroupKind> parse_group_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

GroupSpec GroupSpec::catalog(GroupKind kind, std::uint32_t n) {
  if (kind == GroupKind::finite_generated) {
    fail(Errc::precondition, "GroupSpec::catalog: use generated() for explicit generators");
  }
  if (kind == GroupKind::dihedral && n == 0) {
    fail(Errc::precondition, "GroupSpec::catalog: D_n needs n >= 1");
  }
  GroupSpec s;
  s.kind = kind;
  s.n = kind == GroupKind::dihedral ? n : 0;
  return s;
}

GroupSpec GroupSpec::generated(std::vector<Mat2> gens) {
  for (const auto& g : gens) {
    if (!is_invertible(g)) {
      fail(Errc::precondition, "group generator " + g.to_string() + " is singular");
    }
  }
  GroupSpec s;
  s.gens = std::move(gens);
  return s;
}

GroupSpec GroupSpec::conjugated_by(const Mat2& c) const {
  if (!is_invertible(c)) fail(Errc::precondition, "conjugator must be invertible");
  GroupSpec s = *this;
  s.conjugator = conjugator ? c * *conjugator : c;
  return s;
}

bool GroupSpec::is_catalog_infinite() const noexcept {
  switch (kind) {
    case GroupKind::full_pgl2:
    case GroupKind::borel:
    case GroupKind::torus:
    case GroupKind::unipotent:
    case GroupKind::d_infinity: return true;
    default: return false;
  }
}

std::string GroupSpec::to_string() const {
  std::string s(group_kind_name(kind));
  if (kind == GroupKind::dihedral) s += "(" + std::to_string(n) + ")";
  if (kind == GroupKind::finite_generated) s += "(" + std::to_string(gens.size()) + " gens)";
  if (conjugator) s += " conjugated by " + conjugator->to_string();
  return s;
}

std::vector<Mat2> catalog_generators(const GroupSpec& spec, const FieldPtr& f) {
  std::vector<Mat2> gens;
  auto need = [&](std::uint32_t n, const char* what) {
    if (!f->has_roots_of_unity(n)) {
      fail(Errc::precondition, std::string(what) + " needs a primitive " + std::to_string(n) +
                                   "-th root of unity, absent from Q(zeta_" +
                                   std::to_string(f->order()) + ")");
    }
  };
  const auto one = q(f, 1);
  const auto zero = q(f, 0);
  switch (spec.kind) {
    case GroupKind::full_pgl2:
      gens = {Mat2::from_ints(f, 1, 1, 0, 1), Mat2::from_ints(f, 1, 0, 1, 1),
              Mat2::from_ints(f, 2, 0, 0, 1), Mat2::from_ints(f, 0, 1, 1, 0)};
      break;
    case GroupKind::borel:
      gens = {Mat2::from_ints(f, 1, 1, 0, 1), Mat2::diagonal(q(f, 2), q(f, 1, 2)),
              Mat2(q(f, 3), one, zero, q(f, 1, 3))};
      break;
    case GroupKind::torus:
      gens = {Mat2::diagonal(q(f, 2), one), Mat2::diagonal(CycloScalar::zeta_power(f, 1), one),
              Mat2::diagonal(q(f, 1, 3), one)};
      break;
    case GroupKind::unipotent:
      gens = {Mat2::from_ints(f, 1, 1, 0, 1), Mat2::from_ints(f, 1, -2, 0, 1),
              Mat2(one, q(f, 1, 3), zero, one)};
      break;
    case GroupKind::d_infinity:
      gens = {Mat2::diagonal(q(f, 2), q(f, 1, 2)), Mat2::from_ints(f, 0, -1, 1, 0),
              Mat2(zero, q(f, -3), q(f, 1, 3), zero)};
      break;
    case GroupKind::dihedral: {
      need(2 * spec.n, "D_n");
      const auto z = CycloScalar::root_of_unity(f, 2 * spec.n, 1);
      gens = {Mat2::diagonal(z, z.inverse()), Mat2::from_ints(f, 0, 1, 1, 0)};
      break;
    }
    case GroupKind::a4: {
      need(4, "A4");
      const auto i = CycloScalar::root_of_unity(f, 4, 1);
      gens = {Mat2::from_ints(f, -1, 0, 0, 1), Mat2(i, i, -one, one)};
      break;
    }
    case GroupKind::s4: {
      need(4, "S4");
      const auto i = CycloScalar::root_of_unity(f, 4, 1);
      gens = {Mat2::diagonal(i, one), Mat2::from_ints(f, 1, 1, -1, 1)};
      break;
    }
    case GroupKind::a5: {
      need(5, "A5");
      const auto e = CycloScalar::root_of_unity(f, 5, 1);
      const auto e2 = e * e;
      const auto e3 = e2 * e;
      const auto e4 = e3 * e;
      gens = {Mat2::diagonal(e, one), Mat2::from_ints(f, 0, -1, 1, 0),
              Mat2(-(e - e4), e2 - e3, e2 - e3, e - e4)};
      break;
    }
    case GroupKind::finite_generated:
      for (const auto& g : spec.gens) {
        if (g.field()->order() != f->order()) {
          fail(Errc::field_mismatch, "group generator from a different cyclotomic field");
        }
      }
      gens = spec.gens;
      break;
  }
  for (auto& g : gens) g = conjugate(g, spec.conjugator);
  return gens;
}

namespace {

template <typename Normalize>
std::variant<std::vector<Mat2>, InfiniteSignal> bfs_closure(std::span<const Mat2> gens,
                                                            std::size_t cap, Normalize norm,
                                                            const char* what) {
  if (gens.empty()) return std::vector<Mat2>{};
  for (const auto& g : gens) {
    if (!is_invertible(g)) fail(Errc::precondition, std::string(what) + ": singular generator");
  }
  const auto field = gens.front().field();
  std::set<Mat2> seen;
  std::deque<Mat2> todo;
  Mat2 id = norm(Mat2::identity(field));
  seen.insert(id);
  todo.push_back(id);
  while (!todo.empty()) {
    const Mat2 x = std::move(todo.front());
    todo.pop_front();
    for (const auto& g : gens) {
      Mat2 y = norm(x * g);
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          return InfiniteSignal{cap, std::string(what) + " exceeded " + std::to_string(cap) +
                                         " elements"};
        }
        todo.push_back(std::move(y));
      }
    }
  }
  return std::vector<Mat2>(seen.begin(), seen.end());
}

}  // namespace

std::variant<std::vector<PM2Elem>, InfiniteSignal> group_closure(std::span<const Mat2> gens,
                                                                 std::size_t cap) {
  auto r = bfs_closure(gens, cap, [](const Mat2& m) { return canonical_scale(m); },
                       "group closure");
  if (auto* s = std::get_if<InfiniteSignal>(&r)) return *s;
  std::vector<PM2Elem> out;
  for (const auto& m : std::get<std::vector<Mat2>>(r)) out.push_back(PM2Elem::invertible(m));
  return out;
}

std::variant<std::vector<Mat2>, InfiniteSignal> matrix_group_closure(std::span<const Mat2> gens,
                                                                     std::size_t cap) {
  return bfs_closure(gens, cap, [](const Mat2& m) { return m; }, "matrix group closure");
}

bool is_finite_group(const GroupSpec& spec, const FieldPtr& field, std::size_t cap) {
  if (spec.is_catalog_infinite()) return false;
  if (spec.kind != GroupKind::finite_generated) return true;
  const auto gens = catalog_generators(spec, field);
  return std::holds_alternative<std::vector<PM2Elem>>(group_closure(gens, cap));
}

std::vector<Mat2> group_elements(const GroupSpec& spec, const FieldPtr& field, std::size_t cap) {
  if (spec.is_catalog_infinite()) {
    fail(Errc::unsupported, spec.to_string() + " is infinite and cannot be enumerated");
  }
  const auto gens = catalog_generators(spec, field);
  if (gens.empty()) return {Mat2::identity(field)};
  auto r = group_closure(gens, cap);
  if (auto* s = std::get_if<InfiniteSignal>(&r)) {
    fail(Errc::unsupported, spec.to_string() + ": " + s->reason);
  }
  std::vector<Mat2> out;
  for (const auto& e : std::get<std::vector<PM2Elem>>(r)) out.push_back(e.invertible_rep());
  return out;
}

std::vector<Mat2> matrix_group_elements(const GroupSpec& spec, const FieldPtr& field,
                                        std::size_t cap) {
  if (spec.is_catalog_infinite()) {
    fail(Errc::unsupported, spec.to_string() + " is infinite and cannot be enumerated");
  }
  const auto gens = catalog_generators(spec, field);
  if (gens.empty()) return {Mat2::identity(field)};
  auto r = matrix_group_closure(gens, cap);
  if (auto* s = std::get_if<InfiniteSignal>(&r)) {
    fail(Errc::unsupported, spec.to_string() + ": " + s->reason);
  }
  return std::get<std::vector<Mat2>>(r);
}

Mat2 sample_element(const GroupSpec& spec, const FieldPtr& f, Rng& rng, std::size_t cap) {
  if (!spec.is_catalog_infinite()) {
    const auto elems = group_elements(spec, f, cap);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    return elems[pick(rng)];
  }
  const auto one = q(f, 1);
  const auto zero = q(f, 0);
  Mat2 g = Mat2::identity(f);
  switch (spec.kind) {
    case GroupKind::full_pgl2: g = random_invertible(f, rng); break;
    case GroupKind::borel: {
      const auto a = random_nonzero_scalar(f, rng);
      g = Mat2(a, random_scalar(f, rng), zero, a.inverse());
      break;
    }
    case GroupKind::torus: g = Mat2::diagonal(random_nonzero_scalar(f, rng), one); break;
    case GroupKind::unipotent: g = Mat2(one, random_scalar(f, rng), zero, one); break;
    case GroupKind::d_infinity: {
      const auto c = random_nonzero_scalar(f, rng);
      std::bernoulli_distribution flip(0.5);
      g = flip(rng) ? Mat2::diagonal(c, c.inverse()) : Mat2(zero, -c, c.inverse(), zero);
      break;
    }
    default: break;
  }
  return conjugate(g, spec.conjugator);
}

std::optional<std::size_t> OrbitDecomposition::orbit_index(const ProjPoint& p) const {
  for (std::size_t i = 0; i < finite_orbits.size(); ++i) {
    const auto& o = finite_orbits[i];
    if (std::binary_search(o.begin(), o.end(), p)) return i;
  }
  return std::nullopt;
}

OrbitDecomposition orbit_decomposition(const GroupSpec& spec, const FieldPtr& field,
                                       std::span<const ProjPoint> probes, std::size_t cap) {
  OrbitDecomposition out;
  if (spec.is_catalog_infinite()) {
    std::vector<ProjPoint> all;
    for (auto orbit : structural_orbits(spec.kind, field)) {
      for (auto& p : orbit) p = conjugate_point(p, spec.conjugator);
      orbit = canonical_points(std::move(orbit));
      all.insert(all.end(), orbit.begin(), orbit.end());
      out.finite_orbits.push_back(std::move(orbit));
    }
    out.cofinite_orbit = PointSet::cofinite(std::move(all));
    return out;
  }
  const auto elems = group_elements(spec, field, cap);
  out.group_order = elems.size();
  for (const auto& p : canonical_points({probes.begin(), probes.end()})) {
    if (out.orbit_index(p)) continue;
    std::vector<ProjPoint> orbit;
    for (const auto& g : elems) orbit.push_back(moebius_apply(g, p));
    out.finite_orbits.push_back(canonical_points(std::move(orbit)));
  }
  return out;
}

std::vector<ProjPoint> orbit_closure(const GroupSpec& spec, const FieldPtr& field,
                                     std::span<const ProjPoint> points, std::size_t cap) {
  const auto dec = orbit_decomposition(spec, field, points, cap);
  std::vector<ProjPoint> out(points.begin(), points.end());
  for (const auto& o : dec.finite_orbits) out.insert(out.end(), o.begin(), o.end());
  return canonical_points(std::move(out));
}

InvarianceResult is_invariant(const GroupSpec& spec, const FieldPtr& field, const PointSet& x,
                              std::size_t cap) {
  // A set is invariant iff its complement is, so only the listed points matter.
  const auto& d = x.points();
  auto in_d = [&](const ProjPoint& p) { return std::binary_search(d.begin(), d.end(), p); };

  if (!spec.is_catalog_infinite()) {
    for (const auto& g : group_elements(spec, field, cap)) {
      for (const auto& p : d) {
        auto img = moebius_apply(g, p);
        if (!in_d(img)) return {false, g, p, std::move(img)};
      }
    }
    return {};
  }

  const auto dec = orbit_decomposition(spec, field, {}, cap);
  std::optional<ProjPoint> offender;
  for (const auto& p : d) {
    const auto idx = dec.orbit_index(p);
    if (!idx) {
      offender = p;
      break;
    }
    const auto& orbit = dec.finite_orbits[*idx];
    if (!std::all_of(orbit.begin(), orbit.end(), in_d)) {
      offender = p;
      break;
    }
  }
  if (!offender) return {};
  // Search a witness among the fixed generators first, then seeded samples.
  std::vector<Mat2> candidates = catalog_generators(spec, field);
  Rng rng(0x5eed);
  for (int i = 0; i < 64; ++i) candidates.push_back(sample_element(spec, field, rng, cap));
  for (const auto& g : candidates) {
    auto img = moebius_apply(g, *offender);
    if (!in_d(img)) return {false, g, *offender, std::move(img)};
  }
  return {false, std::nullopt, offender, std::nullopt};
}

std::vector<Check> spot_check_orbits(const GroupSpec& spec, const FieldPtr& field,
                                     std::span<const ProjPoint> probes, std::size_t samples,
                                     Rng& rng) {
  std::vector<Check> out;
  if (!spec.is_catalog_infinite()) {
    out.push_back(Check::skipped("structural_orbits", spec.to_string() + " is finite"));
    return out;
  }
  const auto dec = orbit_decomposition(spec, field, {});
  std::string finite_bad;
  std::string cofinite_bad;
  for (const auto& p : probes) {
    const auto idx = dec.orbit_index(p);
    for (std::size_t i = 0; i < samples; ++i) {
      const Mat2 g = sample_element(spec, field, rng);
      const auto img = moebius_apply(g, p);
      const auto img_idx = dec.orbit_index(img);
      if (idx && img_idx != idx && finite_bad.empty()) {
        finite_bad = g.to_string() + " moves " + p.to_string() + " out of its finite orbit to " +
                     img.to_string();
      }
      if (!idx && img_idx && cofinite_bad.empty()) {
        cofinite_bad = g.to_string() + " maps " + p.to_string() + " into a finite orbit";
      }
    }
  }
  out.push_back(Check::verdict("finite_orbits_preserved", finite_bad.empty(), finite_bad));
  out.push_back(Check::verdict("cofinite_orbit_preserved", cofinite_bad.empty(), cofinite_bad));
  return out;
}

}  // namespace m2sg
