#pragma once

// Subsemigroups of the singular part of PM_2, viewed combinatorially as sets
// of (image, kernel) pairs, and their classification into the two shapes
//
//   Type A:  B_{F,G}        = {(v,u) : v in F, u in G}  (plus 0 when flagged)
//   Type B:  B_{F,{c}} u B_{{c},G} u {0}
//
// The first coordinate (image) always ranges over F, the second (kernel)
// over G.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "m2sg/pm2.hpp"
#include "m2sg/projline.hpp"

namespace m2sg {

/// A finite set of rank-1 classes, optionally with the zero element.
struct Rank1Set {
  std::vector<Rank1> pairs;  ///< sorted, deduplicated
  bool has_zero = false;

  static Rank1Set make(std::vector<Rank1> pairs, bool has_zero);

  [[nodiscard]] bool contains(const Rank1& c) const;
  [[nodiscard]] std::vector<ProjPoint> images() const;
  [[nodiscard]] std::vector<ProjPoint> kernels() const;
  /// Every point that occurs as an image or a kernel.
  [[nodiscard]] std::vector<ProjPoint> points() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Rank1Set&, const Rank1Set&) = default;
};

/// x * y left the set. `product` is std::nullopt when x * y = 0.
struct ClosureViolation {
  Rank1 left;
  Rank1 right;
  std::optional<Rank1> product;
};

std::optional<ClosureViolation> find_closure_violation(const Rank1Set& s);
inline bool is_closed(const Rank1Set& s) { return !find_closure_violation(s).has_value(); }

class SingularShape {
 public:
  struct TypeA {
    PointSet images;
    PointSet kernels;
    bool has_zero;
    friend bool operator==(const TypeA&, const TypeA&) = default;
  };
  struct TypeB {
    PointSet images;
    PointSet kernels;
    ProjPoint center;
    friend bool operator==(const TypeB&, const TypeB&) = default;
  };

  static SingularShape type_a(PointSet images, PointSet kernels, bool has_zero);
  static SingularShape type_b(PointSet images, PointSet kernels, ProjPoint center);

  [[nodiscard]] bool is_type_a() const { return std::holds_alternative<TypeA>(v_); }
  [[nodiscard]] bool is_type_b() const { return std::holds_alternative<TypeB>(v_); }
  [[nodiscard]] const TypeA& a() const { return std::get<TypeA>(v_); }
  [[nodiscard]] const TypeB& b() const { return std::get<TypeB>(v_); }

  [[nodiscard]] const PointSet& images() const;
  [[nodiscard]] const PointSet& kernels() const;
  [[nodiscard]] bool has_zero() const;
  [[nodiscard]] std::optional<ProjPoint> center() const;

  [[nodiscard]] bool contains(const Rank1& c) const;
  /// Closure of the (possibly infinite) set the shape denotes.
  [[nodiscard]] bool is_closed() const;
  /// Type B only: whether the center lies in F and in G. Reported, never
  /// enforced; the two-element configuration {(v,u),(u,v),0} violates it.
  [[nodiscard]] bool center_in_both() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SingularShape&, const SingularShape&) = default;

 private:
  explicit SingularShape(std::variant<TypeA, TypeB> v) : v_(std::move(v)) {}
  std::variant<TypeA, TypeB> v_;
};

/// Classifies a closed set. Throws Error(Errc::precondition) when `s` is not
/// closed; the result always reconstructs `s` exactly.
SingularShape classify(const Rank1Set& s);

/// The classes the shape denotes. Cofinite point sets are intersected with
/// `ambient`; finite ones are used as they are.
Rank1Set shape_elements(const SingularShape& shape, std::span<const ProjPoint> ambient);

/// Exact intersection. Type A with Type A, and Type B with Type B sharing a
/// center, are intersected symbolically. Other pairs are intersected over
/// `ambient` (or over their own points when both are finite) and classified.
SingularShape shape_intersect(const SingularShape& x, const SingularShape& y,
                              std::optional<std::span<const ProjPoint>> ambient = std::nullopt);

/// Shapes with finite or cofinite data, each closed and containing `s`,
/// whose intersection over `ambient` is exactly `s`. The ambient must
/// contain every point of `s`.
std::vector<SingularShape> definable_witness_family(const Rank1Set& s,
                                                    std::span<const ProjPoint> ambient);
/// A shape is already definable; the family is the shape itself.
std::vector<SingularShape> definable_witness_family(const SingularShape& shape);

/// Verification of a witness family; `failure` names the first broken
/// postcondition.
struct WitnessVerdict {
  bool ok = true;
  std::string failure;
};
WitnessVerdict verify_witness_family(const Rank1Set& s, std::span<const SingularShape> family,
                                     std::span<const ProjPoint> ambient);

inline constexpr std::size_t kMaxEnumerationGround = 4;

/// Every multiplicatively closed subset of T x T, with and without zero.
/// Throws Error(Errc::cap_exceeded) for more than four ground points.
std::vector<Rank1Set> enumerate_closed_subsets(std::span<const ProjPoint> ground);

}  // namespace m2sg
