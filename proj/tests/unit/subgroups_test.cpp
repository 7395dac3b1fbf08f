#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "m2sg/error.hpp"
#include "m2sg/subgroups.hpp"
#include "oracles.hpp"

using namespace m2sg;

namespace {
const FieldPtr Q12 = CyclotomicField::get(12);
const FieldPtr Q20 = CyclotomicField::get(20);
CycloScalar q(long p, long d = 1) { return {Q12, Rational(p, d)}; }
ProjPoint pt(long a, long b) { return ProjPoint::normalize(q(a), q(b)); }
Mat2 m(long a, long b, long c, long d) { return Mat2::from_ints(Q12, a, b, c, d); }

std::size_t closure_size(const GroupSpec& spec, const FieldPtr& f) {
  const auto gens = catalog_generators(spec, f);
  const auto r = group_closure(gens);
  REQUIRE(std::holds_alternative<std::vector<PM2Elem>>(r));
  return std::get<std::vector<PM2Elem>>(r).size();
}
}  // namespace

TEST_CASE("catalog orders agree with brute-force closure") {
  const std::vector<std::pair<GroupSpec, std::size_t>> table{
      {GroupSpec::catalog(GroupKind::dihedral, 2), 4},
      {GroupSpec::catalog(GroupKind::dihedral, 3), 6},
      {GroupSpec::catalog(GroupKind::dihedral, 6), 12},
      {GroupSpec::catalog(GroupKind::a4), 12},
      {GroupSpec::catalog(GroupKind::s4), 24},
  };
  for (const auto& [spec, order] : table) {
    INFO(spec.to_string());
    CHECK(closure_size(spec, Q12) == order);
    CHECK(oracle::projective_order(catalog_generators(spec, Q12)) == order);
    CHECK(group_elements(spec, Q12).size() == order);
  }
  const auto a5 = GroupSpec::catalog(GroupKind::a5);
  CHECK(closure_size(a5, Q20) == 60);
  CHECK(oracle::projective_order(catalog_generators(a5, Q20)) == 60);
  CHECK_THROWS_AS(catalog_generators(a5, Q12), Error);
  CHECK_THROWS_AS(catalog_generators(GroupSpec::catalog(GroupKind::dihedral, 5), Q12), Error);
}

TEST_CASE("group_closure examples") {
  const std::vector<Mat2> id{Mat2::identity(Q12)};
  const auto r = group_closure(id);
  REQUIRE(std::holds_alternative<std::vector<PM2Elem>>(r));
  CHECK(std::get<std::vector<PM2Elem>>(r).size() == 1);

  const std::vector<Mat2> uni{m(1, 1, 0, 1)};
  CHECK(std::holds_alternative<InfiniteSignal>(group_closure(uni, 200)));
  CHECK(std::holds_alternative<InfiniteSignal>(matrix_group_closure(uni, 200)));

  const std::vector<Mat2> sing{m(1, 0, 0, 0)};
  CHECK_THROWS_AS(group_closure(sing), Error);
}

TEST_CASE("closures are groups") {
  for (const auto& spec : {GroupSpec::catalog(GroupKind::dihedral, 3),
                           GroupSpec::catalog(GroupKind::a4),
                           GroupSpec::catalog(GroupKind::s4)}) {
    const auto elems = group_elements(spec, Q12);
    std::set<PM2Elem> set;
    for (const auto& g : elems) set.insert(PM2Elem::invertible(g));
    CHECK(set.count(PM2Elem::invertible(Mat2::identity(Q12))) == 1);
    for (const auto& g : elems) {
      CHECK(set.count(PM2Elem::invertible(g.inverse())) == 1);
      for (const auto& h : elems) CHECK(set.count(PM2Elem::invertible(g * h)) == 1);
    }
  }
}

TEST_CASE("catalog generators of infinite kinds") {
  const auto torus = catalog_generators(GroupSpec::catalog(GroupKind::torus), Q12);
  REQUIRE_FALSE(torus.empty());
  for (const auto& g : torus) {
    CHECK(g.at(0, 1).is_zero());
    CHECK(g.at(1, 0).is_zero());
    CHECK(g.at(1, 1).is_one());
  }
  CHECK(GroupSpec::catalog(GroupKind::torus).is_catalog_infinite());
  CHECK_FALSE(is_finite_group(GroupSpec::catalog(GroupKind::borel), Q12));
  CHECK(is_finite_group(GroupSpec::catalog(GroupKind::a4), Q12));
  CHECK_THROWS_AS(group_elements(GroupSpec::catalog(GroupKind::borel), Q12), Error);
}

TEST_CASE("orbit decomposition examples") {
  const std::vector<ProjPoint> probe{pt(1, 1)};
  const auto torus = orbit_decomposition(GroupSpec::catalog(GroupKind::torus), Q12, probe);
  REQUIRE(torus.cofinite_orbit.has_value());
  CHECK(torus.cofinite_orbit->contains(pt(1, 1)));
  CHECK_FALSE(torus.orbit_index(pt(1, 1)).has_value());
  CHECK(torus.orbit_index(pt(1, 0)).has_value());
  CHECK(torus.orbit_index(pt(0, 1)).has_value());

  const auto borel = orbit_decomposition(GroupSpec::catalog(GroupKind::borel), Q12, probe);
  REQUIRE(borel.finite_orbits.size() == 1);
  CHECK(borel.finite_orbits.front() == std::vector<ProjPoint>{pt(1, 0)});

  const auto full = orbit_decomposition(GroupSpec::catalog(GroupKind::full_pgl2), Q12, probe);
  CHECK(full.finite_orbits.empty());
  CHECK(full.cofinite_orbit == PointSet::everything());

  const auto dinf = orbit_decomposition(GroupSpec::catalog(GroupKind::d_infinity), Q12, probe);
  REQUIRE(dinf.finite_orbits.size() == 1);
  CHECK(dinf.finite_orbits.front().size() == 2);

  std::vector<ProjPoint> eight;
  for (long k = -3; k <= 3; ++k) eight.push_back(pt(k, 1));
  eight.push_back(pt(1, 0));
  const auto d3 = orbit_decomposition(GroupSpec::catalog(GroupKind::dihedral, 3), Q12, eight);
  CHECK(d3.group_order == 6);
  CHECK_FALSE(d3.cofinite_orbit.has_value());
  for (const auto& orbit : d3.finite_orbits) CHECK(6 % orbit.size() == 0);
  for (const auto& p : eight) CHECK(d3.orbit_index(p).has_value());
}

TEST_CASE("orbits of finite groups are disjoint and divide the order") {
  std::vector<ProjPoint> probes;
  for (long k = -4; k <= 4; ++k) probes.push_back(pt(k, 1));
  probes.push_back(pt(1, 0));
  probes.push_back(ProjPoint::affine(CycloScalar::zeta_power(Q12, 3)));
  for (const auto& spec : {GroupSpec::catalog(GroupKind::dihedral, 2),
                           GroupSpec::catalog(GroupKind::a4),
                           GroupSpec::catalog(GroupKind::s4)}) {
    const auto dec = orbit_decomposition(spec, Q12, probes);
    std::set<ProjPoint> seen;
    for (const auto& orbit : dec.finite_orbits) {
      CHECK(dec.group_order % orbit.size() == 0);
      for (const auto& p : orbit) CHECK(seen.insert(p).second);
    }
  }
}

TEST_CASE("is_invariant examples") {
  const auto torus = GroupSpec::catalog(GroupKind::torus);
  CHECK(is_invariant(torus, Q12, PointSet::finite({pt(1, 0), pt(0, 1)})).invariant);
  CHECK(is_invariant(torus, Q12, PointSet::cofinite({pt(0, 1)})).invariant);
  CHECK_FALSE(is_invariant(torus, Q12, PointSet::finite({pt(1, 1)})).invariant);

  const auto borel = GroupSpec::catalog(GroupKind::borel);
  const auto r = is_invariant(borel, Q12, PointSet::finite({pt(0, 1)}));
  CHECK_FALSE(r.invariant);
  REQUIRE(r.witness.has_value());
  REQUIRE(r.moved.has_value());
  REQUIRE(r.image.has_value());
  CHECK(moebius_apply(*r.witness, *r.moved) == *r.image);
  CHECK_FALSE(*r.image == pt(0, 1));
  CHECK(is_invariant(borel, Q12, PointSet::finite({pt(1, 0)})).invariant);
  CHECK(is_invariant(borel, Q12, PointSet::empty()).invariant);

  const auto a4 = GroupSpec::catalog(GroupKind::a4);
  const std::vector<ProjPoint> probe{pt(2, 1)};
  const auto orbit = orbit_closure(a4, Q12, probe);
  CHECK(is_invariant(a4, Q12, PointSet::finite(orbit)).invariant);
  CHECK(is_invariant(a4, Q12, PointSet::cofinite(orbit)).invariant);
  CHECK_FALSE(is_invariant(a4, Q12, PointSet::finite(probe)).invariant);

  const auto full = GroupSpec::catalog(GroupKind::full_pgl2);
  CHECK_FALSE(is_invariant(full, Q12, PointSet::finite({pt(1, 0)})).invariant);
  CHECK(is_invariant(full, Q12, PointSet::everything()).invariant);
}

TEST_CASE("infinite catalog structure survives sampling") {
  std::vector<ProjPoint> probes;
  for (long k = -5; k <= 5; ++k) probes.push_back(pt(k, 1));
  probes.push_back(pt(1, 0));
  Rng rng(77);
  for (auto kind : {GroupKind::borel, GroupKind::torus, GroupKind::unipotent,
                    GroupKind::d_infinity, GroupKind::full_pgl2}) {
    const auto checks = spot_check_orbits(GroupSpec::catalog(kind), Q12, probes, 20, rng);
    CHECK_FALSE(checks.empty());
    CHECK(all_passed(checks));
  }
}

TEST_CASE("conjugated specs have conjugated orbits") {
  Rng rng(5);
  const auto c = m(1, 2, 1, 3);
  const auto base = GroupSpec::catalog(GroupKind::s4);
  const auto conj = base.conjugated_by(c);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_point(Q12, rng);
    const std::vector<ProjPoint> one{p};
    const std::vector<ProjPoint> moved{moebius_apply(c, p)};
    auto orbit = orbit_closure(base, Q12, one);
    std::vector<ProjPoint> image;
    for (const auto& x : orbit) image.push_back(moebius_apply(c, x));
    CHECK(canonical_points(image) == canonical_points(orbit_closure(conj, Q12, moved)));
  }

  const auto torus = GroupSpec::catalog(GroupKind::torus).conjugated_by(c);
  const auto dec = orbit_decomposition(torus, Q12, {});
  std::set<ProjPoint> fixed;
  for (const auto& o : dec.finite_orbits) fixed.insert(o.begin(), o.end());
  CHECK(fixed == std::set<ProjPoint>{moebius_apply(c, pt(1, 0)), moebius_apply(c, pt(0, 1))});
}

TEST_CASE("generated groups") {
  const auto spec = GroupSpec::generated({m(0, 1, 1, 0), m(-1, 0, 0, 1)});
  CHECK(group_elements(spec, Q12).size() == 4);
  // the matrix group picks up -I: [[0,1],[-1,0]] squares to it
  CHECK(matrix_group_elements(spec, Q12).size() == 8);
  const auto uni = GroupSpec::generated({m(1, 1, 0, 1)});
  CHECK_FALSE(is_finite_group(uni, Q12, 100));
  const std::vector<ProjPoint> probe{pt(1, 1)};
  CHECK_THROWS_AS(orbit_decomposition(uni, Q12, probe, 100), Error);
  CHECK(parse_group_kind(group_kind_name(GroupKind::a4)) == GroupKind::a4);
  CHECK(parse_group_kind("borel") == GroupKind::borel);
  CHECK_FALSE(parse_group_kind("nonsense").has_value());
}
