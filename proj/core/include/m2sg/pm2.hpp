#pragma once

// The quotient PM_2 = M_2 / C^x. Nonzero singular classes are pairs
// (image, kernel) of points of the projective line.

#include <compare>
#include <string>
#include <variant>

#include "m2sg/mat2.hpp"

namespace m2sg {

/// A rank-1 class (image, kernel). Idempotent when image != kernel,
/// nilpotent when they coincide.
struct Rank1 {
  ProjPoint image;
  ProjPoint kernel;

  [[nodiscard]] bool is_nilpotent() const { return image == kernel; }
  [[nodiscard]] bool is_idempotent() const { return !is_nilpotent(); }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Rank1&, const Rank1&) = default;
  friend std::strong_ordering operator<=>(const Rank1& lhs, const Rank1& rhs) {
    if (auto c = lhs.image <=> rhs.image; c != 0) return c;
    return lhs.kernel <=> rhs.kernel;
  }
};

/// The combinatorial law on nonzero singular classes:
/// (v,u)(v',u') = (v,u') when u != v', and 0 (std::nullopt) when u == v'.
std::optional<Rank1> rank1_product(const Rank1& x, const Rank1& y);

/// A canonical matrix in the class: the idempotent for image != kernel,
/// nilpotent_from_point(v, 1) otherwise.
Mat2 representative(const Rank1& c);

class PM2Elem {
 public:
  struct Zero {
    FieldPtr field;
  };
  /// Invertible class; `rep` has its first nonzero entry (row-major) equal to 1.
  struct Invertible {
    Mat2 rep;
  };

  static PM2Elem zero(FieldPtr field) { return PM2Elem(Zero{std::move(field)}); }
  static PM2Elem rank_one(Rank1 c) { return PM2Elem(std::move(c)); }
  /// Rescales `m` to canonical form; throws if m is singular.
  static PM2Elem invertible(const Mat2& m);

  [[nodiscard]] bool is_zero() const { return std::holds_alternative<Zero>(v_); }
  [[nodiscard]] bool is_rank_one() const { return std::holds_alternative<Rank1>(v_); }
  [[nodiscard]] bool is_invertible() const { return std::holds_alternative<Invertible>(v_); }
  [[nodiscard]] const Rank1& rank_one() const { return std::get<Rank1>(v_); }
  [[nodiscard]] const Mat2& invertible_rep() const { return std::get<Invertible>(v_).rep; }
  [[nodiscard]] FieldPtr field() const;

  /// A matrix projecting onto this class.
  [[nodiscard]] Mat2 representative() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PM2Elem& lhs, const PM2Elem& rhs);
  friend std::strong_ordering operator<=>(const PM2Elem& lhs, const PM2Elem& rhs);

 private:
  using Variant = std::variant<Zero, Rank1, Invertible>;
  explicit PM2Elem(Variant v) : v_(std::move(v)) {}

  Variant v_;
};

/// pi: M_2 -> PM_2.
PM2Elem project(const Mat2& x);

/// Product in PM_2. Rank-1 by rank-1 uses the combinatorial law; every other
/// combination multiplies representatives and projects.
PM2Elem pm2_mul(const PM2Elem& x, const PM2Elem& y);

/// Canonical scaling of a nonzero matrix: divide by its first nonzero entry.
Mat2 canonical_scale(const Mat2& m);

}  // namespace m2sg
