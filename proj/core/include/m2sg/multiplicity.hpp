#pragma once

// Multiplicities Z_x = {z : z x in S} of a singular semigroup S, the scalar
// produced by a product of two idempotents, and the nilpotent produced when
// the product degenerates.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "m2sg/bfg.hpp"
#include "m2sg/mat2.hpp"
#include "m2sg/multiplicity_set.hpp"
#include "m2sg/pm2.hpp"
#include "m2sg/report.hpp"

namespace m2sg {

enum class LambdaFault {
  degenerate_left,    ///< e has image = kernel
  degenerate_right,   ///< f has image = kernel
  zero_product,       ///< kernel(e) = image(f), so ef = 0
  nilpotent_product,  ///< image(e) = kernel(f), so ef is nilpotent
};

class LambdaError : public Error {
 public:
  LambdaError(LambdaFault fault, const std::string& what)
      : Error(Errc::precondition, what), fault_(fault) {}
  [[nodiscard]] LambdaFault fault() const noexcept { return fault_; }

 private:
  LambdaFault fault_;
};

struct LambdaResult {
  CycloScalar lambda;
  Rank1 product;  ///< (image(e), kernel(f))
};

/// For e = ([a:b],[c:d]), f = ([x:y],[z:w]):
/// lambda = (aw - bz)(dx - cy) / ((ad - bc)(xw - yz)), with
/// idempotent(e) * idempotent(f) = lambda * idempotent([a:b],[z:w]).
/// Throws LambdaError naming the violated precondition.
LambdaResult lambda_product(const Rank1& e, const Rank1& f);

/// The unique [c:d] outside {v, v'} with lambda_product((v,[c:d]), (v',u'))
/// equal to `lambda`. Needs lambda != 0 and v, v', u' pairwise distinct.
ProjPoint lambda_preimage(const CycloScalar& lambda, const ProjPoint& v, const ProjPoint& v_prime,
                          const ProjPoint& u_prime);

/// idempotent(e) * idempotent(f) for kernel(f) = image(e) and
/// kernel(e) != image(f); the result is a nonzero nilpotent with image(e).
Mat2 nilpotent_product(const Rank1& e, const Rank1& f);

/// The closed form (cy - dx) / ((ad - bc)(ay - bx)) * [[ab, -a^2], [b^2, -ab]]
/// with e = ([a:b],[c:d]), f = ([x:y],[a:b]).
Mat2 nilpotent_product_formula(const Rank1& e, const Rank1& f);

/// Multiplicity data of one projective class: S meets the class in
/// {z * base : z in z}.
struct ClassData {
  Rank1 cls;
  Mat2 base;
  Multiplicity z;

  friend bool operator==(const ClassData&, const ClassData&) = default;
};

/// The singular part of a monoid: a shape plus scalar data for its classes.
/// Classes listed explicitly carry their own data; every other class of the
/// shape takes a default:
///   idempotent classes       z_default (Type A; Type B classes (center, g))
///   Type B classes (f, center)  z_default_right
///   nilpotent classes        z_default_nilpotent, base nilpotent_from_point(v, 1)
/// Explicit idempotent classes are stored against the canonical idempotent.
class SingularPart {
 public:
  SingularPart(SingularShape shape, std::vector<ClassData> classes,
               std::optional<Multiplicity> z_default = std::nullopt,
               std::optional<Multiplicity> z_default_right = std::nullopt,
               std::optional<Multiplicity> z_default_nilpotent = std::nullopt);

  [[nodiscard]] const SingularShape& shape() const noexcept { return shape_; }
  [[nodiscard]] const std::vector<ClassData>& classes() const noexcept { return classes_; }
  [[nodiscard]] const std::optional<Multiplicity>& z_default() const noexcept { return z_default_; }
  [[nodiscard]] const std::optional<Multiplicity>& z_default_right() const noexcept {
    return z_default_right_;
  }
  [[nodiscard]] const std::optional<Multiplicity>& z_default_nilpotent() const noexcept {
    return z_default_nilpotent_;
  }
  [[nodiscard]] bool has_zero() const { return shape_.has_zero(); }

  /// Data for a class of the shape, std::nullopt for classes outside it.
  /// Throws Error(Errc::precondition) when the class has no data.
  [[nodiscard]] std::optional<ClassData> lookup(const Rank1& cls) const;
  /// Z of a class without building its base matrix; nullptr outside the shape.
  [[nodiscard]] const Multiplicity* multiplicity_of(const Rank1& cls) const;
  [[nodiscard]] bool contains(const Mat2& x) const;

  /// Every class of the shape, or std::nullopt when there are infinitely many.
  [[nodiscard]] std::optional<std::vector<Rank1>> finite_classes() const;
  /// The classes over `ambient` together with the part's own points.
  [[nodiscard]] std::vector<Rank1> classes_over(std::span<const ProjPoint> ambient) const;
  /// Points named by the data: finite sets, exclusions, center, explicit classes.
  [[nodiscard]] std::vector<ProjPoint> points() const;

  /// All nonzero classes share one multiplicity.
  [[nodiscard]] bool equal_multiplicity() const;
  /// The common multiplicity of the idempotent classes (Type B: those with
  /// image = center), when there is one.
  [[nodiscard]] std::optional<Multiplicity> z_idempotent() const;
  /// Type B only: common multiplicity of the classes with kernel = center.
  [[nodiscard]] std::optional<Multiplicity> z_idempotent_right() const;
  [[nodiscard]] bool has_nilpotent() const;
  /// Data of the first nilpotent class, if any.
  [[nodiscard]] std::optional<ClassData> first_nilpotent() const;
  [[nodiscard]] std::optional<Multiplicity> z_nilpotent() const;
  [[nodiscard]] std::optional<Mat2> nilpotent_base() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SingularPart&, const SingularPart&) = default;

 private:
  /// Multiplicities that actually apply to some class, explicit or default.
  [[nodiscard]] std::vector<Multiplicity> active_multiplicities(bool idempotent_only,
                                                                int side) const;

  SingularShape shape_;
  std::vector<ClassData> classes_;
  std::optional<Multiplicity> z_default_;
  std::optional<Multiplicity> z_default_right_;
  std::optional<Multiplicity> z_default_nilpotent_;
};

/// Groups rank <= 1 matrices by class and records {z : z x0 in S} against a
/// base x0 (canonical idempotent, or the least element of a nilpotent class).
/// Idempotent classes are reported as torsion_closure of their scalars; a
/// nilpotent scalar set is kept explicit unless it is exactly some mu_n.
/// With closed = false the projective closure is checked and a violation
/// throws Error(Errc::precondition).
SingularPart compute_multiplicities(std::span<const Mat2> elements, bool closed = true);

/// Matrix-level closure of the part over `ambient`: for every pair of
/// classes x, y with base_x base_y = lambda base_p, lambda Z_x Z_y must lie
/// in Z_p. Returns a description of the first violation.
std::optional<std::string> closure_violation(const SingularPart& part,
                                             std::span<const ProjPoint> ambient);

/// Verifies the multiplicity laws that apply to the part's shape.
std::vector<Check> check_multiplicity_laws(const SingularPart& part,
                                           std::span<const ProjPoint> ambient = {});

}  // namespace m2sg
