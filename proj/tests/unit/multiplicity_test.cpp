#include "doctest.h"

#include <algorithm>
#include <vector>

#include "m2sg/monoid.hpp"
#include "m2sg/multiplicity.hpp"
#include "m2sg/sampling.hpp"
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

const Check* find(const std::vector<Check>& checks, std::string_view name) {
  const auto it = std::find_if(checks.begin(), checks.end(),
                               [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

bool passes(const std::vector<Check>& checks, std::string_view name) {
  const auto* c = find(checks, name);
  return c != nullptr && c->status == CheckStatus::pass;
}
}  // namespace

TEST_CASE("lambda_product examples") {
  const Rank1 e{INF, ZERO};
  CHECK(lambda_product(e, e).lambda.is_one());
  const auto r = lambda_product(e, {ONE, pt(1, 2)});
  CHECK(r.lambda == q(2));
  CHECK(r.product == Rank1{INF, pt(1, 2)});
  CHECK(m(1, 0, 0, 0) * m(2, -1, 2, -1) == m(2, -1, 0, 0));
  CHECK(m(2, -1, 0, 0) == q(2) * idempotent_from_points(INF, pt(1, 2)));
  CHECK_THROWS_AS(lambda_product(e, {ZERO, INF}), LambdaError);
}

TEST_CASE("lambda_product names each fault") {
  auto fault = [](const Rank1& e, const Rank1& f) {
    try {
      (void)lambda_product(e, f);
    } catch (const LambdaError& err) {
      return err.fault();
    }
    FAIL("no fault");
    return LambdaFault::degenerate_left;
  };
  CHECK(fault({INF, INF}, {ZERO, ONE}) == LambdaFault::degenerate_left);
  CHECK(fault({INF, ZERO}, {ONE, ONE}) == LambdaFault::degenerate_right);
  CHECK(fault({INF, ZERO}, {ZERO, ONE}) == LambdaFault::zero_product);
  CHECK(fault({INF, ZERO}, {ONE, INF}) == LambdaFault::nilpotent_product);
}

TEST_CASE("lambda formula against direct multiplication") {
  Rng rng(31);
  int done = 0;
  while (done < 300) {
    const Rank1 e{random_point(Q12, rng), random_point(Q12, rng)};
    const Rank1 f{random_point(Q12, rng), random_point(Q12, rng)};
    if (e.is_nilpotent() || f.is_nilpotent() || e.kernel == f.image || e.image == f.kernel) continue;
    const auto r = lambda_product(e, f);
    const auto direct = oracle::matmul(oracle::idempotent(e.image, e.kernel),
                                       oracle::idempotent(f.image, f.kernel));
    const auto ratio = oracle::ratio(direct, oracle::idempotent(e.image, f.kernel));
    REQUIRE(ratio.has_value());
    CHECK(*ratio == r.lambda);
    ++done;
  }
}

TEST_CASE("lambda_preimage") {
  const auto v = INF;
  const auto vp = ONE;
  const auto up = pt(1, 2);
  // lambda = 1 is reached at [1:2]
  const auto one = lambda_preimage(q(1), v, vp, up);
  CHECK(one == pt(1, 2));
  CHECK(lambda_product({v, one}, {vp, up}).lambda.is_one());
  const auto two = lambda_preimage(q(2), v, vp, up);
  CHECK(lambda_product({v, two}, {vp, up}).lambda == q(2));
  CHECK_FALSE(two == one);
  CHECK_THROWS_AS(lambda_preimage(q(0), v, vp, up), Error);
  CHECK_THROWS_AS(lambda_preimage(q(1), v, v, up), Error);

  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto lambda = random_nonzero_scalar(Q12, rng);
    const auto cd = lambda_preimage(lambda, v, vp, up);
    CHECK_FALSE(cd == v);
    CHECK_FALSE(cd == vp);
    CHECK(lambda_product({v, cd}, {vp, up}).lambda == lambda);
  }
}

TEST_CASE("nilpotent_product examples") {
  const Rank1 e{INF, ZERO};
  const Rank1 f{ONE, INF};
  CHECK(nilpotent_product(e, f) == m(0, 1, 0, 0));
  CHECK(nilpotent_product_formula(e, f) == q(-1) * m(0, -1, 0, 0));
  CHECK(m(1, 0, 0, 0) * m(0, 1, 0, 1) == m(0, 1, 0, 0));
  CHECK_THROWS_AS(nilpotent_product(e, {ZERO, INF}), Error);
  CHECK_THROWS_AS(nilpotent_product(e, {ONE, ZERO}), Error);
}

TEST_CASE("nilpotent formula with the corrected entry") {
  Rng rng(41);
  int done = 0;
  while (done < 200) {
    const auto v = random_point(Q12, rng);
    const Rank1 e{v, random_point(Q12, rng)};
    const Rank1 f{random_point(Q12, rng), v};
    if (e.is_nilpotent() || f.is_nilpotent() || e.kernel == f.image) continue;
    const auto direct = oracle::matmul(oracle::idempotent(e.image, e.kernel),
                                       oracle::idempotent(f.image, f.kernel));
    CHECK(nilpotent_product(e, f) == direct);
    CHECK(nilpotent_product_formula(e, f) == direct);
    CHECK(oracle::matmul(direct, direct).is_zero());
    CHECK_FALSE(direct.is_zero());
    ++done;
  }
}

TEST_CASE("compute_multiplicities examples") {
  const auto e = idempotent_from_points(INF, ONE);
  std::vector<Mat2> sixth{Mat2::zero(Q12)};
  for (long k = 0; k < 6; ++k) sixth.push_back(z(2 * k) * e);
  const auto part = compute_multiplicities(sixth);
  REQUIRE(part.z_idempotent().has_value());
  CHECK(*part.z_idempotent() == Multiplicity::roots_of_unity(Q12, 6));
  CHECK(part.has_zero());

  const std::vector<Mat2> two{e, q(2) * e};
  CHECK(compute_multiplicities(two).z_idempotent()->is_full());

  const std::vector<Mat2> lopsided{m(1, 0, 0, 0), q(2) * m(1, 0, 0, 0), Mat2::zero(Q12),
                                 m(0, 0, 0, 1), z(2) * m(0, 0, 0, 1), z(4) * m(0, 0, 0, 1),
                                 z(6) * m(0, 0, 0, 1), z(8) * m(0, 0, 0, 1),
                                 z(10) * m(0, 0, 0, 1)};
  const auto rp = compute_multiplicities(lopsided);
  CHECK_FALSE(rp.equal_multiplicity());

  const std::vector<Mat2> not_closed{m(1, 0, 0, 0), m(0, 0, 0, 1)};
  CHECK_THROWS_AS(compute_multiplicities(not_closed, false), Error);
  const std::vector<Mat2> invertible{Mat2::identity(Q12)};
  CHECK_THROWS_AS(compute_multiplicities(invertible), Error);
}

TEST_CASE("nilpotent scalar sets stay explicit") {
  const auto n = m(0, 1, 0, 0);
  const std::vector<Mat2> s{Mat2::zero(Q12), n, q(3) * n};
  const auto part = compute_multiplicities(s);
  REQUIRE(part.z_nilpotent().has_value());
  CHECK(part.z_nilpotent()->kind() == Multiplicity::Kind::explicit_set);
  CHECK(part.z_nilpotent()->elements().size() == 2);
}

TEST_CASE("the lopsided monoid: unequal multiplicities, Type A hypothesis absent") {
  const std::vector<Mat2> gens{z(2) * m(0, 0, 0, 1), m(1, 0, 0, 0), q(2) * m(1, 0, 0, 0)};
  const auto mc = closure_monoid(gens);
  const auto& s = mc.singular;
  CHECK(s.has_zero());
  CHECK_FALSE(s.equal_multiplicity());
  CHECK(s.shape().is_type_b());
  const std::vector<ProjPoint> amb{INF, ZERO, ONE};
  CHECK_FALSE(closure_violation(s, amb).has_value());
  const auto laws = check_multiplicity_laws(s, amb);
  CHECK(all_passed(laws));
  const auto* eq = find(laws, "equal_idempotent_multiplicity");
  REQUIRE(eq != nullptr);
  CHECK(eq->status == CheckStatus::not_applicable);
  const auto zl = s.lookup({INF, ZERO});
  const auto zr = s.lookup({ZERO, INF});
  REQUIRE(zl.has_value());
  REQUIRE(zr.has_value());
  CHECK((zl->z.is_full() != zr->z.is_full()));
  const auto& torsion = zl->z.is_full() ? zr->z : zl->z;
  CHECK(torsion.same_set(Multiplicity::roots_of_unity(Q12, 6)));
}

TEST_CASE("wide Type A with a nilpotent has one multiplicity") {
  const std::vector<ProjPoint> t{INF, ZERO, ONE};
  std::vector<Mat2> gens;
  for (const auto& v : t) {
    for (const auto& u : t) {
      if (!(v == u)) gens.push_back(idempotent_from_points(v, u));
    }
  }
  const auto mc = closure_monoid(gens);
  const auto& s = mc.singular;
  REQUIRE(s.shape().is_type_a());
  CHECK(s.has_nilpotent());
  CHECK(s.equal_multiplicity());
  const auto laws = check_multiplicity_laws(s, t);
  CHECK(all_passed(laws));
  CHECK(passes(laws, "nilpotent_matches_idempotent"));
  CHECK(passes(laws, "equal_idempotent_multiplicity"));
  CHECK(s.z_nilpotent()->same_set(*s.z_idempotent()));
}

TEST_CASE("narrow case: nilpotents form an ideal and Z_e lies in Z_n") {
  const auto n = m(0, 1, 0, 0);
  const std::vector<Mat2> gens{m(1, 0, 0, 0), z(3) * idempotent_from_points(INF, ONE), n,
                              q(2) * n};
  const auto mc = closure_monoid(gens);
  const auto& s = mc.singular;
  REQUIRE(s.shape().is_type_a());
  CHECK(s.shape().images() == PointSet::finite({INF}));
  const std::vector<ProjPoint> amb{INF, ZERO, ONE};
  const auto laws = check_multiplicity_laws(s, amb);
  CHECK(all_passed(laws));
  CHECK(passes(laws, "nilpotents_form_ideal"));
  CHECK(passes(laws, "single_nilpotent_class"));
  CHECK(passes(laws, "idempotent_in_nilpotent_multiplicity"));
  CHECK(passes(laws, "idempotent_products_idempotent"));
  const auto ze = *s.z_idempotent();
  const auto zn = *s.z_nilpotent();
  CHECK(ze.same_set(Multiplicity::roots_of_unity(Q12, 4)));
  CHECK(ze.is_subset_of(zn));
  CHECK_FALSE(zn.is_subset_of(ze));
}

TEST_CASE("law violations are reported with witnesses") {
  // two idempotent classes of a wide Type A shape with different multiplicities
  const auto shape = SingularShape::type_a(PointSet::finite({INF, ZERO}),
                                           PointSet::finite({ONE, pt(-1, 1)}), false);
  std::vector<ClassData> data;
  for (const auto& v : {INF, ZERO}) {
    for (const auto& u : {ONE, pt(-1, 1)}) {
      const Rank1 c{v, u};
      const bool odd = v == INF && u == ONE;
      data.push_back({c, representative(c),
                      odd ? Multiplicity::roots_of_unity(Q12, 2) : Multiplicity::full_torus(Q12)});
    }
  }
  const SingularPart part(shape, data);
  const auto laws = check_multiplicity_laws(part, std::vector<ProjPoint>{INF, ZERO, ONE, pt(-1, 1)});
  CHECK_FALSE(all_passed(laws));
  const auto* eq = find(laws, "equal_idempotent_multiplicity");
  REQUIRE(eq != nullptr);
  CHECK(eq->status == CheckStatus::fail);
  CHECK_FALSE(eq->detail.empty());
}

TEST_CASE("a large materialized G forces the full torus") {
  // |F| > 1 and more kernels than the largest torsion order
  std::vector<ProjPoint> g;
  for (long k = 2; k <= 15; ++k) g.push_back(pt(k, 1));
  std::vector<Mat2> gens;
  for (const auto& u : g) {
    gens.push_back(idempotent_from_points(INF, u));
    gens.push_back(idempotent_from_points(ZERO, u));
  }
  const auto mc = closure_monoid(gens);
  REQUIRE(mc.singular.z_idempotent().has_value());
  CHECK(mc.singular.z_idempotent()->is_full());
  const auto laws = check_multiplicity_laws(mc.singular, g);
  CHECK(passes(laws, "forced_full_torus"));
}
