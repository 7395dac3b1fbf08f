#pragma once

// Algebraic subgroups of PGL_2 from the classification up to conjugacy,
// closures of finite generator sets, and orbits on the projective line.
//
// Infinite groups are never enumerated. Their orbit structure is fixed by
// kind: every infinite catalog group has finitely many finite orbits plus
// one cofinite orbit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "m2sg/mat2.hpp"
#include "m2sg/pm2.hpp"
#include "m2sg/projline.hpp"
#include "m2sg/report.hpp"
#include "m2sg/sampling.hpp"

namespace m2sg {

enum class GroupKind {
  full_pgl2,
  borel,       ///< [[a, b], [0, 1/a]]
  torus,       ///< diag(z, 1)
  unipotent,   ///< [[1, b], [0, 1]]
  d_infinity,  ///< diag(c, 1/c) and [[0, -d], [1/d, 0]]
  dihedral,    ///< D_n, order 2n
  a4,
  s4,
  a5,
  finite_generated,
};

std::string_view group_kind_name(GroupKind kind) noexcept;
std::optional<GroupKind> parse_group_kind(std::string_view name) noexcept;

inline constexpr std::size_t kDefaultCap = 10000;

struct GroupSpec {
  GroupKind kind = GroupKind::finite_generated;
  std::uint32_t n = 0;          ///< dihedral only
  std::vector<Mat2> gens;       ///< finite_generated only
  std::optional<Mat2> conjugator;  ///< applied as g -> c g c^-1

  /// The group generated by no elements.
  static GroupSpec trivial() { return {}; }
  static GroupSpec catalog(GroupKind kind, std::uint32_t n = 0);
  static GroupSpec generated(std::vector<Mat2> gens);
  [[nodiscard]] GroupSpec conjugated_by(const Mat2& c) const;

  /// One of the infinite catalog kinds.
  [[nodiscard]] bool is_catalog_infinite() const noexcept;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// The closure ran past its cap: the generated group is treated as infinite.
struct InfiniteSignal {
  std::size_t cap = 0;
  std::string reason;
};

/// Generators in the ambient field, conjugated when the spec says so.
/// Finite kinds get exact generators:
///   D_n  diag(zeta_2n, zeta_2n^-1), [[0, 1], [1, 0]]       (needs 2n | lcm(2, N))
///   A4   diag(-1, 1), [[i, i], [-1, 1]]                    (needs 4 | lcm(2, N))
///   S4   diag(i, 1), [[1, 1], [-1, 1]]                     (needs 4 | lcm(2, N))
///   A5   diag(e, 1), [[0, -1], [1, 0]],
///        [[-(e - e^4), e^2 - e^3], [e^2 - e^3, e - e^4]]   (e = zeta_5, needs 5 | N)
/// Infinite kinds get a fixed finite sample of members.
std::vector<Mat2> catalog_generators(const GroupSpec& spec, const FieldPtr& field);

/// Projective classes generated by `gens`, saturated to a fixpoint.
std::variant<std::vector<PM2Elem>, InfiniteSignal> group_closure(std::span<const Mat2> gens,
                                                                 std::size_t cap = kDefaultCap);
/// The matrix monoid generated by `gens` and the identity; a group when finite.
std::variant<std::vector<Mat2>, InfiniteSignal> matrix_group_closure(
    std::span<const Mat2> gens, std::size_t cap = kDefaultCap);

/// False for the infinite catalog kinds and for generator sets whose closure
/// exceeds the cap.
bool is_finite_group(const GroupSpec& spec, const FieldPtr& field, std::size_t cap = kDefaultCap);
/// Canonical representatives of the projective group. Throws
/// Error(Errc::unsupported) when the group is infinite.
std::vector<Mat2> group_elements(const GroupSpec& spec, const FieldPtr& field,
                                 std::size_t cap = kDefaultCap);
/// The matrix group generated by the spec's generators (finite groups only).
std::vector<Mat2> matrix_group_elements(const GroupSpec& spec, const FieldPtr& field,
                                        std::size_t cap = kDefaultCap);
/// A random member. Finite groups draw from their elements; infinite kinds
/// draw from their parametrization.
Mat2 sample_element(const GroupSpec& spec, const FieldPtr& field, Rng& rng,
                    std::size_t cap = kDefaultCap);

struct OrbitDecomposition {
  std::vector<std::vector<ProjPoint>> finite_orbits;
  std::optional<PointSet> cofinite_orbit;
  std::size_t group_order = 0;  ///< 0 for infinite groups

  /// Index into finite_orbits, or std::nullopt for the cofinite orbit.
  [[nodiscard]] std::optional<std::size_t> orbit_index(const ProjPoint& p) const;
};

/// Finite groups: the exact orbits of the probes. Infinite catalog groups:
/// the fixed structure, probes ignored. Throws Error(Errc::unsupported) for
/// generator sets whose closure exceeds the cap.
OrbitDecomposition orbit_decomposition(const GroupSpec& spec, const FieldPtr& field,
                                       std::span<const ProjPoint> probes,
                                       std::size_t cap = kDefaultCap);

/// Union of the orbits of `points` for finite groups; for infinite groups the
/// points together with every finite orbit.
std::vector<ProjPoint> orbit_closure(const GroupSpec& spec, const FieldPtr& field,
                                     std::span<const ProjPoint> points,
                                     std::size_t cap = kDefaultCap);

struct InvarianceResult {
  bool invariant = true;
  std::optional<Mat2> witness;    ///< a group element moving `moved` out of the set
  std::optional<ProjPoint> moved;
  std::optional<ProjPoint> image;
};

/// g X = X for every g in the group.
InvarianceResult is_invariant(const GroupSpec& spec, const FieldPtr& field, const PointSet& x,
                              std::size_t cap = kDefaultCap);

/// For infinite catalog kinds: applies `samples` random members to each
/// probe and checks that finite orbits are preserved and every other probe
/// stays in the cofinite orbit.
std::vector<Check> spot_check_orbits(const GroupSpec& spec, const FieldPtr& field,
                                     std::span<const ProjPoint> probes, std::size_t samples,
                                     Rng& rng);

}  // namespace m2sg
