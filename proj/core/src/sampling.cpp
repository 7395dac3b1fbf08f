#include "m2sg/sampling.hpp"

#include "m2sg/error.hpp"

namespace m2sg {

namespace {

Rational random_fraction(Rng& rng, const ScalarShape& shape) {
  std::uniform_int_distribution<int> num(-shape.max_numerator, shape.max_numerator);
  std::uniform_int_distribution<int> den(1, shape.max_denominator);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

CycloScalar random_scalar(const FieldPtr& field, Rng& rng, ScalarShape shape) {
  if (shape.rational_only) return {field, random_fraction(rng, shape)};
  std::vector<Rational> coeffs(field->degree());
  std::bernoulli_distribution keep(0.5);
  for (auto& c : coeffs) {
    if (keep(rng)) c = random_fraction(rng, shape);
  }
  return {field, std::move(coeffs)};
}

CycloScalar random_nonzero_scalar(const FieldPtr& field, Rng& rng, ScalarShape shape) {
  for (;;) {
    auto z = random_scalar(field, rng, shape);
    if (!z.is_zero()) return z;
  }
}

CycloScalar random_root_of_unity(const FieldPtr& field, Rng& rng) {
  const auto n = field->torsion_order();
  std::uniform_int_distribution<long> k(0, static_cast<long>(n) - 1);
  return CycloScalar::root_of_unity(field, n, k(rng));
}

ProjPoint random_point(const FieldPtr& field, Rng& rng, ScalarShape shape) {
  std::uniform_int_distribution<int> eighth(0, 7);
  if (eighth(rng) == 0) return ProjPoint::infinity(field);
  return ProjPoint::affine(random_scalar(field, rng, shape));
}

Mat2 random_matrix(const FieldPtr& field, Rng& rng, int rank, ScalarShape shape) {
  switch (rank) {
    case 0: return Mat2::zero(field);
    case 1: {
      // Outer product of two nonzero vectors.
      for (;;) {
        const auto p = random_scalar(field, rng, shape);
        const auto q = random_scalar(field, rng, shape);
        const auto r = random_scalar(field, rng, shape);
        const auto s = random_scalar(field, rng, shape);
        if ((p.is_zero() && q.is_zero()) || (r.is_zero() && s.is_zero())) continue;
        return {p * r, p * s, q * r, q * s};
      }
    }
    case 2: return random_invertible(field, rng, shape);
    default: fail(Errc::precondition, "random_matrix: rank must be 0, 1 or 2");
  }
}

Mat2 random_invertible(const FieldPtr& field, Rng& rng, ScalarShape shape) {
  for (;;) {
    Mat2 m(random_scalar(field, rng, shape), random_scalar(field, rng, shape),
           random_scalar(field, rng, shape), random_scalar(field, rng, shape));
    if (is_invertible(m)) return m;
  }
}

}  // namespace m2sg
