#pragma once

// Seeded random scalars, points and matrices for property checks. All
// draws go through std::mt19937_64 so a seed fixes the whole stream.

#include <cstdint>
#include <random>

#include "m2sg/mat2.hpp"

namespace m2sg {

using Rng = std::mt19937_64;

struct ScalarShape {
  int max_numerator = 4;
  int max_denominator = 3;
  bool rational_only = false;
};

/// Random element of Q(zeta_N); each power-basis coefficient is zero with
/// probability 1/2, otherwise a small fraction.
CycloScalar random_scalar(const FieldPtr& field, Rng& rng, ScalarShape shape = {});
CycloScalar random_nonzero_scalar(const FieldPtr& field, Rng& rng, ScalarShape shape = {});
/// A random root of unity of the field.
CycloScalar random_root_of_unity(const FieldPtr& field, Rng& rng);
/// Random point; the point at infinity comes up about one time in eight.
ProjPoint random_point(const FieldPtr& field, Rng& rng, ScalarShape shape = {});
/// Random matrix of exactly the given rank (0, 1 or 2).
Mat2 random_matrix(const FieldPtr& field, Rng& rng, int rank, ScalarShape shape = {});
Mat2 random_invertible(const FieldPtr& field, Rng& rng, ScalarShape shape = {});

}  // namespace m2sg
