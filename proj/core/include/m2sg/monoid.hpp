#pragma once

// Submonoids M = H u S of M_2: H the invertible part, S the singular part.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "m2sg/multiplicity.hpp"
#include "m2sg/report.hpp"
#include "m2sg/subgroups.hpp"

namespace m2sg {

struct MonoidClosure {
  /// Invertible part, or the signal that it exceeded the cap.
  std::variant<std::vector<Mat2>, InfiniteSignal> group;
  std::vector<Mat2> invertible_generators;
  SingularPart singular;
  /// False when H was infinite and S was saturated under S * S only.
  bool h_saturated = true;
};

/// Closes `gens` (plus the identity) under multiplication. H is enumerated
/// exactly. S is saturated at the level of classes: each class keeps a base
/// matrix and a scalar set; idempotent classes get the Zariski closure of
/// their scalars. Throws Error(Errc::cap_exceeded) when the number of
/// singular classes or an explicit scalar set passes `cap`.
MonoidClosure closure_monoid(std::span<const Mat2> gens, std::size_t cap = kDefaultCap);

struct MonoidSpec {
  FieldPtr field;
  GroupSpec group;
  SingularPart singular;
  /// Sample points on which cofinite data is materialized.
  std::vector<ProjPoint> ambient;

  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const MonoidSpec& lhs, const MonoidSpec& rhs) {
    return lhs.field->order() == rhs.field->order() && lhs.group == rhs.group &&
           lhs.singular == rhs.singular && lhs.ambient == rhs.ambient;
  }
};

/// The spec's ambient, the singular part's own points and, for finite H,
/// their orbits; for infinite H the finite orbits are added.
std::vector<ProjPoint> effective_ambient(const MonoidSpec& m, std::size_t cap = kDefaultCap);

struct SubmonoidCheck {
  bool ok = true;
  std::vector<Check> checks;
};

/// H u S is a monoid: F, G (and the Type B center) are H-invariant, S is
/// closed, and h s, s h land in S with scalars inside the target
/// multiplicity. Finite H is checked element by element; infinite H on
/// seeded samples. When every multiplicity is C^x the scalar condition holds
/// automatically.
SubmonoidCheck check_submonoid(const GroupSpec& h, const SingularPart& s, const FieldPtr& field,
                               std::span<const ProjPoint> ambient, std::uint64_t seed = 0,
                               std::size_t cap = kDefaultCap);

enum class StructureCase {
  type_a_no_nilpotent,
  type_a_nilpotent_wide,    ///< nilpotents present, |F| > 1 and |G| > 1
  type_a_nilpotent_narrow,  ///< nilpotents present, |F| = 1 or |G| = 1
  type_b,
};

std::string_view case_name(StructureCase c) noexcept;
/// Human-readable description of the case.
std::string_view case_label(StructureCase c) noexcept;

struct StructureReport {
  StructureCase case_tag = StructureCase::type_a_no_nilpotent;
  bool equal_multiplicity = true;
  std::vector<std::pair<std::string, Multiplicity>> z_values;
  std::vector<MonoidSpec> witness_family;
  std::vector<Check> checks;

  [[nodiscard]] bool ok() const { return all_passed(checks); }
};

StructureReport structure_report(const MonoidSpec& m, std::uint64_t seed = 0,
                                 std::size_t cap = kDefaultCap);

/// Monoids with finite or cofinite point data, each containing M, closed on
/// the ambient and H-invariant, whose intersection over the ambient is M.
/// Throws Error(Errc::internal) if the constructed family fails its own
/// verification.
std::vector<MonoidSpec> intersection_witness_monoid(const MonoidSpec& m, std::uint64_t seed = 0,
                                                    std::size_t cap = kDefaultCap);

/// Containment, ambient closure and H-invariance of every member, and exact
/// intersection over the ambient.
std::vector<Check> verify_witness_monoid(const MonoidSpec& m, std::span<const MonoidSpec> family,
                                         std::uint64_t seed = 0, std::size_t cap = kDefaultCap);

}  // namespace m2sg
