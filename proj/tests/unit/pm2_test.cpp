#include "doctest.h"

#include <vector>

#include "m2sg/pm2.hpp"
#include "m2sg/sampling.hpp"

using namespace m2sg;

namespace {
const FieldPtr Q12 = CyclotomicField::get(12);
CycloScalar q(long p, long d = 1) { return {Q12, Rational(p, d)}; }
ProjPoint pt(long a, long b) { return ProjPoint::normalize(q(a), q(b)); }
Mat2 m(long a, long b, long c, long d) { return Mat2::from_ints(Q12, a, b, c, d); }
PM2Elem r1(const ProjPoint& v, const ProjPoint& u) { return PM2Elem::rank_one({v, u}); }
}  // namespace

TEST_CASE("project examples") {
  CHECK(project(Mat2::zero(Q12)).is_zero());
  CHECK(project(m(3, 0, 0, 0)) == r1(pt(1, 0), pt(0, 1)));
  CHECK(project(m(2, 0, 0, 2)) == PM2Elem::invertible(Mat2::identity(Q12)));
  CHECK(project(m(2, 0, 0, 2)).invertible_rep() == Mat2::identity(Q12));
  CHECK(project(m(0, 3, 6, 9)).invertible_rep() == m(0, 1, 2, 3));
}

TEST_CASE("projections agree exactly on scalar multiples") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_matrix(Q12, rng, 1 + static_cast<int>(rng() % 2));
    const auto s = random_nonzero_scalar(Q12, rng);
    CHECK(project(s * x) == project(x));
  }
}

TEST_CASE("pm2_mul examples") {
  CHECK(pm2_mul(r1(pt(1, 0), pt(0, 1)), r1(pt(1, 1), pt(1, 0))) == r1(pt(1, 0), pt(1, 0)));
  CHECK(pm2_mul(r1(pt(1, 0), pt(0, 1)), r1(pt(0, 1), pt(1, 0))).is_zero());
  const auto id = PM2Elem::invertible(Mat2::identity(Q12));
  CHECK(pm2_mul(id, r1(pt(2, 1), pt(3, 1))) == r1(pt(2, 1), pt(3, 1)));
  CHECK(pm2_mul(PM2Elem::zero(Q12), id).is_zero());
  CHECK(rank1_product({pt(1, 0), pt(0, 1)}, {pt(0, 1), pt(1, 0)}) == std::nullopt);
}

TEST_CASE("pi is a homomorphism on all rank combinations") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_matrix(Q12, rng, i % 3);
    const auto y = random_matrix(Q12, rng, (i / 3) % 3);
    REQUIRE(project(x * y) == pm2_mul(project(x), project(y)));
  }
}

TEST_CASE("the rank-1 law is associative with zero absorbing") {
  Rng rng(2);
  std::vector<PM2Elem> sample{PM2Elem::zero(Q12)};
  std::vector<ProjPoint> pts{pt(1, 0), pt(0, 1), pt(1, 1), pt(2, 1)};
  for (const auto& v : pts) {
    for (const auto& u : pts) sample.push_back(r1(v, u));
  }
  for (const auto& x : sample) {
    for (const auto& y : sample) {
      for (const auto& z : sample) {
        CHECK(pm2_mul(pm2_mul(x, y), z) == pm2_mul(x, pm2_mul(y, z)));
      }
    }
  }
}

TEST_CASE("rank-1 classes are idempotent or nilpotent") {
  std::vector<ProjPoint> pts{pt(1, 0), pt(0, 1), pt(1, 1), pt(-1, 1)};
  for (const auto& v : pts) {
    for (const auto& u : pts) {
      const auto x = r1(v, u);
      const auto sq = pm2_mul(x, x);
      if (v == u) {
        CHECK(sq.is_zero());
        CHECK(x.rank_one().is_nilpotent());
      } else {
        CHECK(sq == x);
        CHECK(x.rank_one().is_idempotent());
      }
      CHECK(project(representative(x.rank_one())) == x);
    }
  }
}

TEST_CASE("canonical scale") {
  CHECK(canonical_scale(m(0, 2, 4, 6)) == m(0, 1, 2, 3));
  const auto g = PM2Elem::invertible(m(0, 5, 5, 0));
  CHECK(g.invertible_rep() == m(0, 1, 1, 0));
  CHECK(g.is_invertible());
  CHECK(g.field() == Q12);
}
