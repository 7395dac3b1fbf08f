#pragma once

// Multiplicative scalar sets Z in C^x, rendered inside Q(zeta_N):
// the full torus, a group of roots of unity, or an explicit finite set.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "m2sg/scalar.hpp"

namespace m2sg {

class Multiplicity {
 public:
  enum class Kind { full_torus, roots_of_unity, explicit_set };

  static Multiplicity full_torus(FieldPtr field);
  /// mu_n; requires n | lcm(2, N).
  static Multiplicity roots_of_unity(FieldPtr field, std::uint32_t n);
  /// A finite set of nonzero scalars, sorted and deduplicated.
  static Multiplicity explicit_set(FieldPtr field, std::vector<CycloScalar> elements);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const FieldPtr& field() const noexcept { return field_; }
  [[nodiscard]] bool is_full() const noexcept { return kind_ == Kind::full_torus; }
  [[nodiscard]] bool is_group() const noexcept { return kind_ != Kind::explicit_set; }
  /// n for mu_n; 0 otherwise.
  [[nodiscard]] std::uint32_t n() const noexcept { return n_; }
  /// Elements of an explicit set (empty for the group variants).
  [[nodiscard]] const std::vector<CycloScalar>& elements() const noexcept { return elements_; }

  [[nodiscard]] bool contains(const CycloScalar& z) const;
  /// All elements in canonical order, or std::nullopt for the full torus.
  [[nodiscard]] std::optional<std::vector<CycloScalar>> enumerate() const;
  [[nodiscard]] bool is_subset_of(const Multiplicity& other) const;
  /// Set equality regardless of representation (mu_2 equals {1, -1}).
  [[nodiscard]] bool same_set(const Multiplicity& other) const;
  /// r * Z. Stays mu_n when r is in mu_n.
  [[nodiscard]] Multiplicity scaled(const CycloScalar& r) const;
  [[nodiscard]] bool empty() const noexcept {
    return kind_ == Kind::explicit_set && elements_.empty();
  }

  /// "C^x", "mu_6" or "{1, -1, z^2}".
  [[nodiscard]] std::string to_string() const;

  /// Structural equality: same variant and same data.
  friend bool operator==(const Multiplicity& lhs, const Multiplicity& rhs);

 private:
  Multiplicity(FieldPtr field, Kind kind, std::uint32_t n, std::vector<CycloScalar> elements)
      : field_(std::move(field)), kind_(kind), n_(n), elements_(std::move(elements)) {}

  FieldPtr field_;
  Kind kind_;
  std::uint32_t n_;
  std::vector<CycloScalar> elements_;
};

/// The elements of mu_n in canonical order.
std::vector<CycloScalar> roots_of_unity_elements(const FieldPtr& field, std::uint32_t n);

/// Zariski closure of the multiplicative semigroup generated by `gens`:
/// mu_lcm(orders) when every generator is torsion, the full torus otherwise.
/// An empty generator list yields mu_1. Throws on a zero generator.
Multiplicity torsion_closure(const FieldPtr& field, std::span<const CycloScalar> gens);

/// Closure of group ∪ {extra}; `group` must be mu_n or the full torus.
Multiplicity join(const Multiplicity& group, const CycloScalar& extra);
/// Closure of the subgroup generated by two algebraic subgroups.
Multiplicity join(const Multiplicity& a, const Multiplicity& b);

/// {a * b : a in lhs, b in rhs}.
Multiplicity set_product(const Multiplicity& lhs, const Multiplicity& rhs);
Multiplicity set_intersection(const Multiplicity& lhs, const Multiplicity& rhs);
/// Union of two sets; the full torus absorbs everything.
Multiplicity set_union(const Multiplicity& lhs, const Multiplicity& rhs);

}  // namespace m2sg
