#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "m2sg/error.hpp"
#include "m2sg/monoid.hpp"
#include "oracles.hpp"

using namespace m2sg;

namespace {
const FieldPtr Q12 = CyclotomicField::get(12);
CycloScalar q(long p, long d = 1) { return {Q12, Rational(p, d)}; }
CycloScalar z(long k) { return CycloScalar::zeta_power(Q12, k); }
ProjPoint pt(long a, long b) { return ProjPoint::normalize(q(a), q(b)); }
Mat2 m(long a, long b, long c, long d) { return Mat2::from_ints(Q12, a, b, c, d); }

const ProjPoint INF = pt(1, 0);
const ProjPoint ZERO = pt(0, 1);
const ProjPoint ONE = pt(1, 1);
const std::vector<ProjPoint> AMB{INF, ZERO, ONE, pt(-1, 1), pt(2, 1)};

MonoidSpec from_closure(const std::vector<Mat2>& gens) {
  const auto mc = closure_monoid(gens);
  return {Q12, GroupSpec::generated(mc.invertible_generators), mc.singular, AMB};
}

const Check* find(const std::vector<Check>& checks, std::string_view name) {
  const auto it = std::find_if(checks.begin(), checks.end(),
                               [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

void require_valid_family(const MonoidSpec& mspec) {
  const auto family = intersection_witness_monoid(mspec);
  REQUIRE_FALSE(family.empty());
  const auto checks = verify_witness_monoid(mspec, family);
  for (const auto& c : checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.status != CheckStatus::fail);
  }
  const auto amb = effective_ambient(mspec);
  for (const auto& member : family) {
    CHECK(member.group == mspec.group);
    for (const auto* ps : {&member.singular.shape().images(), &member.singular.shape().kernels()}) {
      CHECK((ps->is_finite() || ps->is_cofinite()));
    }
    const auto bad = oracle::monoid_counterexample(member, amb);
    INFO(bad.value_or(""));
    CHECK_FALSE(bad.has_value());
  }
  const auto gap = oracle::intersection_counterexample(mspec, family, amb);
  INFO(gap.value_or(""));
  CHECK_FALSE(gap.has_value());
}
}  // namespace

TEST_CASE("closure of a single idempotent") {
  const std::vector<Mat2> gens{m(1, 0, 0, 0)};
  const auto mc = closure_monoid(gens);
  REQUIRE(std::holds_alternative<std::vector<Mat2>>(mc.group));
  CHECK(std::get<std::vector<Mat2>>(mc.group) == std::vector<Mat2>{Mat2::identity(Q12)});
  CHECK_FALSE(mc.singular.has_zero());
  const auto classes = mc.singular.finite_classes();
  REQUIRE(classes.has_value());
  CHECK(*classes == std::vector<Rank1>{{INF, ZERO}});
  CHECK(mc.singular.z_idempotent()->same_set(Multiplicity::roots_of_unity(Q12, 1)));
}

TEST_CASE("closure of the torsion-scale lopsided generators") {
  const std::vector<Mat2> gens{z(2) * m(0, 0, 0, 1), m(1, 0, 0, 0)};
  const auto mc = closure_monoid(gens);
  const auto& s = mc.singular;
  CHECK(s.has_zero());
  for (long k = 0; k < 6; ++k) CHECK(s.contains(z(2 * k) * m(0, 0, 0, 1)));
  CHECK(s.contains(m(1, 0, 0, 0)));
  CHECK_FALSE(s.contains(z(1) * m(0, 0, 0, 1)));
  CHECK_FALSE(s.contains(q(2) * m(1, 0, 0, 0)));
  CHECK(s.contains(Mat2::zero(Q12)));
}

TEST_CASE("closure with an infinite unit group") {
  const std::vector<Mat2> gens{m(1, 1, 0, 1)};
  const auto mc = closure_monoid(gens, 300);
  CHECK(std::holds_alternative<InfiniteSignal>(mc.group));
  CHECK(mc.invertible_generators.size() == 1);
}

TEST_CASE("closure output is closed, entry by entry") {
  const std::vector<std::vector<Mat2>> cases{
      {z(2) * m(0, 0, 0, 1), m(1, 0, 0, 0), q(2) * m(1, 0, 0, 0)},
      {m(0, 1, 1, 0), m(-1, 0, 0, 1), m(1, 0, 0, 0), z(3) * m(1, 0, 0, 0)},
      {m(1, 0, 0, 0), z(3) * idempotent_from_points(INF, ONE), m(0, 1, 0, 0)},
      {idempotent_from_points(INF, ZERO), idempotent_from_points(ONE, INF)},
  };
  for (const auto& gens : cases) {
    const auto mspec = from_closure(gens);
    const auto amb = effective_ambient(mspec);
    const auto bad = oracle::monoid_counterexample(mspec, amb);
    INFO(bad.value_or(""));
    CHECK_FALSE(bad.has_value());
    for (const auto& g : gens) CHECK((is_invertible(g) || mspec.singular.contains(g)));
  }
}

TEST_CASE("check_submonoid examples") {
  const auto full = Multiplicity::full_torus(Q12);
  const SingularPart s(
      SingularShape::type_a(PointSet::finite({INF}), PointSet::finite({ZERO}), false), {}, full);
  const auto torus = check_submonoid(GroupSpec::catalog(GroupKind::torus), s, Q12, AMB);
  CHECK(torus.ok);

  const auto pgl = check_submonoid(GroupSpec::catalog(GroupKind::full_pgl2), s, Q12, AMB);
  CHECK_FALSE(pgl.ok);
  const auto* images = find(pgl.checks, "images_invariant");
  REQUIRE(images != nullptr);
  CHECK(images->status == CheckStatus::fail);
  CHECK_FALSE(images->detail.empty());

  const auto closed = closure_monoid(std::vector<Mat2>{m(1, 0, 0, 0), m(0, 1, 0, 1)});
  CHECK(check_submonoid(GroupSpec::trivial(), closed.singular, Q12, AMB).ok);
}

TEST_CASE("full multiplicity needs only invariance") {
  const auto full = Multiplicity::full_torus(Q12);
  const auto d2 = GroupSpec::catalog(GroupKind::dihedral, 2);
  const std::vector<ProjPoint> probe{INF, ONE};
  const auto orbit = orbit_closure(d2, Q12, probe);
  const SingularPart s(SingularShape::type_a(PointSet::finite(orbit), PointSet::finite(orbit), true),
                       {}, full, std::nullopt, full);
  const auto r = check_submonoid(d2, s, Q12, AMB);
  CHECK(r.ok);
  const auto* mult = find(r.checks, "multiplicity_compatible");
  REQUIRE(mult != nullptr);
  CHECK(mult->status == CheckStatus::pass);
}

TEST_CASE("torsion multiplicity under a torus fails the scalar condition") {
  const SingularPart s(
      SingularShape::type_a(PointSet::finite({INF}), PointSet::finite({ZERO}), false), {},
      Multiplicity::roots_of_unity(Q12, 2));
  const auto r = check_submonoid(GroupSpec::catalog(GroupKind::torus), s, Q12, AMB, 3);
  CHECK_FALSE(r.ok);
  const auto* mult = find(r.checks, "multiplicity_compatible");
  REQUIRE(mult != nullptr);
  CHECK(mult->status == CheckStatus::fail);
}

TEST_CASE("structure report: full preimage of B_{F,G}") {
  const auto full = Multiplicity::full_torus(Q12);
  const std::vector<ProjPoint> f{INF, ZERO, ONE};
  const SingularPart s(SingularShape::type_a(PointSet::finite(f), PointSet::finite(f), true), {},
                       full, std::nullopt, full);
  const MonoidSpec mspec{Q12, GroupSpec::trivial(), s, AMB};
  const auto r = structure_report(mspec);
  CHECK(r.ok());
  CHECK(r.case_tag == StructureCase::type_a_nilpotent_wide);
  CHECK(r.equal_multiplicity);
  const auto* pre = find(r.checks, "full_preimage");
  REQUIRE(pre != nullptr);
  CHECK(pre->status == CheckStatus::pass);
  REQUIRE(r.z_values.size() == 1);
  CHECK(r.z_values.front().first == "Z_S");
  CHECK(r.z_values.front().second.is_full());
}

TEST_CASE("structure report: narrow case with Z_e strictly inside Z_n") {
  const auto n = m(0, 1, 0, 0);
  const auto mspec = from_closure(
      {m(1, 0, 0, 0), z(3) * idempotent_from_points(INF, ONE), n, q(2) * n});
  const auto r = structure_report(mspec);
  CHECK(r.ok());
  CHECK(r.case_tag == StructureCase::type_a_nilpotent_narrow);
  CHECK_FALSE(r.equal_multiplicity);
  const auto* dec = find(r.checks, "idempotent_nilpotent_decomposition");
  REQUIRE(dec != nullptr);
  CHECK(dec->status == CheckStatus::pass);
}

TEST_CASE("structure report: Type B lists three multiplicities and the relations") {
  const auto mspec = from_closure(
      {idempotent_from_points(INF, ZERO), idempotent_from_points(ONE, INF)});
  REQUIRE(mspec.singular.shape().is_type_b());
  const auto r = structure_report(mspec);
  CHECK(r.ok());
  CHECK(r.case_tag == StructureCase::type_b);
  std::set<std::string> names;
  for (const auto& [name, value] : r.z_values) names.insert(name);
  CHECK(names == std::set<std::string>{"Z_e", "Z_f", "Z_n"});
  const auto* rel = find(r.checks, "type_b_product_relations");
  REQUIRE(rel != nullptr);
  CHECK(rel->status == CheckStatus::pass);
}

TEST_CASE("structure report: the lopsided monoid") {
  const auto mspec =
      from_closure({z(2) * m(0, 0, 0, 1), m(1, 0, 0, 0), q(2) * m(1, 0, 0, 0)});
  const auto r = structure_report(mspec);
  CHECK(r.ok());
  CHECK(r.case_tag == StructureCase::type_b);
  CHECK_FALSE(r.equal_multiplicity);
}

TEST_CASE("every case has a name and a label") {
  for (auto c : {StructureCase::type_a_no_nilpotent, StructureCase::type_a_nilpotent_wide,
                 StructureCase::type_a_nilpotent_narrow, StructureCase::type_b}) {
    CHECK_FALSE(case_name(c).empty());
    CHECK_FALSE(case_label(c).empty());
  }
}

TEST_CASE("witness families: full torus Type A under a finite group") {
  const auto full = Multiplicity::full_torus(Q12);
  const auto d2 = GroupSpec::catalog(GroupKind::dihedral, 2);
  const std::vector<ProjPoint> probe{INF, ONE};
  const auto orbit = orbit_closure(d2, Q12, probe);
  const SingularPart s(SingularShape::type_a(PointSet::finite(orbit), PointSet::finite(orbit), true),
                       {}, full, std::nullopt, full);
  // two D2-orbits outside F give two cofinite members
  auto amb = AMB;
  amb.push_back(pt(3, 1));
  const MonoidSpec mspec{Q12, d2, s, amb};
  const auto family = intersection_witness_monoid(mspec);
  CHECK(family.size() == 2);
  for (const auto& member : family) {
    CHECK(member.singular.shape().images().is_cofinite());
    CHECK(member.singular.shape().kernels().is_cofinite());
  }
  require_valid_family(mspec);
}

TEST_CASE("witness families: an already definable monoid is its own family") {
  const auto full = Multiplicity::full_torus(Q12);
  const SingularPart s(SingularShape::type_a(PointSet::cofinite({INF}), PointSet::cofinite({ZERO}),
                                             true),
                       {}, full, std::nullopt, full);
  const MonoidSpec mspec{Q12, GroupSpec::trivial(), s, AMB};
  const auto family = intersection_witness_monoid(mspec);
  REQUIRE(family.size() == 1);
  CHECK(family.front() == mspec);
}

TEST_CASE("witness families from closures") {
  const std::vector<std::vector<Mat2>> cases{
      {z(2) * m(0, 0, 0, 1), m(1, 0, 0, 0), q(2) * m(1, 0, 0, 0)},
      {m(1, 0, 0, 0), z(3) * idempotent_from_points(INF, ONE), m(0, 1, 0, 0), q(2) * m(0, 1, 0, 0)},
      {idempotent_from_points(INF, ZERO), idempotent_from_points(ONE, INF)},
      {idempotent_from_points(INF, ZERO), q(2) * idempotent_from_points(ZERO, ONE)},
      {m(0, 1, 1, 0), m(1, 0, 0, 0)},
  };
  for (const auto& gens : cases) require_valid_family(from_closure(gens));
}

TEST_CASE("witness families with a declared catalog group") {
  const auto full = Multiplicity::full_torus(Q12);
  const SingularPart s(
      SingularShape::type_a(PointSet::finite({INF}), PointSet::finite({ZERO}), false), {}, full);
  require_valid_family({Q12, GroupSpec::catalog(GroupKind::torus), s, AMB});
  const SingularPart b(SingularShape::type_a(PointSet::finite({INF}), PointSet::everything(), true),
                       {}, full, std::nullopt, full);
  require_valid_family({Q12, GroupSpec::catalog(GroupKind::borel), b, AMB});
}

TEST_CASE("effective ambient contains the orbits of the data") {
  const auto d3 = GroupSpec::catalog(GroupKind::dihedral, 3);
  const SingularPart s(
      SingularShape::type_a(PointSet::finite({INF, ZERO}), PointSet::finite({INF, ZERO}), true),
      {}, Multiplicity::full_torus(Q12), std::nullopt, Multiplicity::full_torus(Q12));
  const MonoidSpec mspec{Q12, d3, s, {ONE}};
  const auto amb = effective_ambient(mspec);
  const std::vector<ProjPoint> one{ONE};
  for (const auto& p : orbit_closure(d3, Q12, one)) {
    CHECK(std::find(amb.begin(), amb.end(), p) != amb.end());
  }
  CHECK(std::find(amb.begin(), amb.end(), INF) != amb.end());
}
