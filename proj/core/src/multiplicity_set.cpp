#include "m2sg/multiplicity_set.hpp"

#include <algorithm>
#include <numeric>

namespace m2sg {

namespace {

void canonicalize(std::vector<CycloScalar>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_field(const FieldPtr& a, const FieldPtr& b) {
  if (a->order() != b->order()) {
    fail(Errc::field_mismatch, "multiplicity sets over different cyclotomic fields");
  }
}

}  // namespace

Multiplicity Multiplicity::full_torus(FieldPtr field) {
  return {std::move(field), Kind::full_torus, 0, {}};
}

Multiplicity Multiplicity::roots_of_unity(FieldPtr field, std::uint32_t n) {
  if (!field->has_roots_of_unity(n)) {
    fail(Errc::precondition, "mu_" + std::to_string(n) + " is not realizable in Q(zeta_" +
                                 std::to_string(field->order()) + ")");
  }
  return {std::move(field), Kind::roots_of_unity, n, {}};
}

Multiplicity Multiplicity::explicit_set(FieldPtr field, std::vector<CycloScalar> elements) {
  for (const auto& z : elements) {
    check_field(field, z.field());
    require(!z.is_zero(), Errc::precondition, "multiplicity sets live in C^x; zero given");
  }
  canonicalize(elements);
  return {std::move(field), Kind::explicit_set, 0, std::move(elements)};
}

std::vector<CycloScalar> roots_of_unity_elements(const FieldPtr& field, std::uint32_t n) {
  std::vector<CycloScalar> out;
  out.reserve(n);
  const CycloScalar g = CycloScalar::root_of_unity(field, n, 1);
  CycloScalar x = CycloScalar::one(field);
  for (std::uint32_t k = 0; k < n; ++k) {
    out.push_back(x);
    x *= g;
  }
  canonicalize(out);
  return out;
}

bool Multiplicity::contains(const CycloScalar& z) const {
  check_field(field_, z.field());
  if (z.is_zero()) return false;
  switch (kind_) {
    case Kind::full_torus: return true;
    case Kind::roots_of_unity: return z.pow(n_).is_one();
    case Kind::explicit_set: return std::binary_search(elements_.begin(), elements_.end(), z);
  }
  return false;
}

std::optional<std::vector<CycloScalar>> Multiplicity::enumerate() const {
  switch (kind_) {
    case Kind::full_torus: return std::nullopt;
    case Kind::roots_of_unity: return roots_of_unity_elements(field_, n_);
    case Kind::explicit_set: return elements_;
  }
  return std::nullopt;
}

bool Multiplicity::is_subset_of(const Multiplicity& other) const {
  check_field(field_, other.field_);
  if (other.is_full()) return true;
  if (is_full()) return false;
  if (kind_ == Kind::roots_of_unity && other.kind_ == Kind::roots_of_unity) {
    return other.n_ % n_ == 0;
  }
  const auto mine = enumerate();
  return std::all_of(mine->begin(), mine->end(),
                     [&](const CycloScalar& z) { return other.contains(z); });
}

bool Multiplicity::same_set(const Multiplicity& other) const {
  return is_subset_of(other) && other.is_subset_of(*this);
}

Multiplicity Multiplicity::scaled(const CycloScalar& r) const {
  check_field(field_, r.field());
  require(!r.is_zero(), Errc::precondition, "cannot scale a multiplicity set by zero");
  if (is_full()) return *this;
  if (kind_ == Kind::roots_of_unity && contains(r)) return *this;
  auto elems = *enumerate();
  for (auto& z : elems) z *= r;
  return explicit_set(field_, std::move(elems));
}

std::string Multiplicity::to_string() const {
  switch (kind_) {
    case Kind::full_torus: return "C^x";
    case Kind::roots_of_unity: return "mu_" + std::to_string(n_);
    case Kind::explicit_set: {
      std::string out = "{";
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i) out += ", ";
        out += elements_[i].to_string();
      }
      return out + "}";
    }
  }
  return "?";
}

bool operator==(const Multiplicity& lhs, const Multiplicity& rhs) {
  if (lhs.field_->order() != rhs.field_->order() || lhs.kind_ != rhs.kind_) return false;
  return lhs.n_ == rhs.n_ && lhs.elements_ == rhs.elements_;
}

Multiplicity torsion_closure(const FieldPtr& field, std::span<const CycloScalar> gens) {
  std::uint32_t n = 1;
  for (const auto& z : gens) {
    check_field(field, z.field());
    if (z.is_zero()) {
      fail(Errc::precondition, "torsion_closure: zero generator");
    }
    const auto order = root_of_unity_order(z);
    if (!order) return Multiplicity::full_torus(field);
    n = std::lcm(n, *order);
  }
  return Multiplicity::roots_of_unity(field, n);
}

Multiplicity join(const Multiplicity& group, const CycloScalar& extra) {
  require(group.is_group(), Errc::precondition, "join expects mu_n or the full torus");
  if (group.is_full()) return group;
  const auto order = root_of_unity_order(extra);
  if (!order) return Multiplicity::full_torus(group.field());
  return Multiplicity::roots_of_unity(group.field(), std::lcm(group.n(), *order));
}

Multiplicity join(const Multiplicity& a, const Multiplicity& b) {
  require(a.is_group() && b.is_group(), Errc::precondition,
          "join expects mu_n or the full torus");
  check_field(a.field(), b.field());
  if (a.is_full()) return a;
  if (b.is_full()) return b;
  return Multiplicity::roots_of_unity(a.field(), std::lcm(a.n(), b.n()));
}

Multiplicity set_product(const Multiplicity& lhs, const Multiplicity& rhs) {
  check_field(lhs.field(), rhs.field());
  if (lhs.empty() || rhs.empty()) return Multiplicity::explicit_set(lhs.field(), {});
  if (lhs.is_full() || rhs.is_full()) return Multiplicity::full_torus(lhs.field());
  if (lhs.kind() == Multiplicity::Kind::roots_of_unity &&
      rhs.kind() == Multiplicity::Kind::roots_of_unity) {
    return Multiplicity::roots_of_unity(lhs.field(), std::lcm(lhs.n(), rhs.n()));
  }
  const auto a = *lhs.enumerate();
  const auto b = *rhs.enumerate();
  std::vector<CycloScalar> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return Multiplicity::explicit_set(lhs.field(), std::move(out));
}

Multiplicity set_intersection(const Multiplicity& lhs, const Multiplicity& rhs) {
  check_field(lhs.field(), rhs.field());
  if (lhs.is_full()) return rhs;
  if (rhs.is_full()) return lhs;
  if (lhs.kind() == Multiplicity::Kind::roots_of_unity &&
      rhs.kind() == Multiplicity::Kind::roots_of_unity) {
    return Multiplicity::roots_of_unity(lhs.field(), std::gcd(lhs.n(), rhs.n()));
  }
  std::vector<CycloScalar> out;
  const auto a = *lhs.enumerate();
  for (const auto& z : a) {
    if (rhs.contains(z)) out.push_back(z);
  }
  return Multiplicity::explicit_set(lhs.field(), std::move(out));
}

Multiplicity set_union(const Multiplicity& lhs, const Multiplicity& rhs) {
  check_field(lhs.field(), rhs.field());
  if (lhs.is_full()) return lhs;
  if (rhs.is_full()) return rhs;
  if (lhs.is_subset_of(rhs)) return rhs;
  if (rhs.is_subset_of(lhs)) return lhs;
  auto a = *lhs.enumerate();
  const auto b = *rhs.enumerate();
  a.insert(a.end(), b.begin(), b.end());
  return Multiplicity::explicit_set(lhs.field(), std::move(a));
}

}  // namespace m2sg
