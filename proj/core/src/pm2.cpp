#include "m2sg/pm2.hpp"

namespace m2sg {

std::string Rank1::to_string() const {
  return "(" + image.to_string() + ", " + kernel.to_string() + ")";
}

std::optional<Rank1> rank1_product(const Rank1& x, const Rank1& y) {
  if (x.kernel == y.image) return std::nullopt;
  return Rank1{x.image, y.kernel};
}

Mat2 representative(const Rank1& c) {
  if (c.is_nilpotent()) {
    return nilpotent_from_point(c.image, CycloScalar::one(c.image.field()));
  }
  return idempotent_from_points(c.image, c.kernel);
}

Mat2 canonical_scale(const Mat2& m) {
  for (const auto& x : m.entries()) {
    if (!x.is_zero()) return m * x.inverse();
  }
  fail(Errc::precondition, "canonical_scale of the zero matrix");
}

PM2Elem PM2Elem::invertible(const Mat2& m) {
  if (!m2sg::is_invertible(m)) {
    fail(Errc::precondition, "PM2Elem::invertible needs det != 0");
  }
  return PM2Elem(Invertible{canonical_scale(m)});
}

FieldPtr PM2Elem::field() const {
  return std::visit(
      [](const auto& alt) -> FieldPtr {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return alt.field;
        } else if constexpr (std::is_same_v<T, Rank1>) {
          return alt.image.field();
        } else {
          return alt.rep.field();
        }
      },
      v_);
}

Mat2 PM2Elem::representative() const {
  if (is_zero()) return Mat2::zero(field());
  if (is_rank_one()) return m2sg::representative(rank_one());
  return invertible_rep();
}

std::string PM2Elem::to_string() const {
  if (is_zero()) return "0";
  if (is_rank_one()) return rank_one().to_string();
  return invertible_rep().to_string();
}

namespace {

int kind_index(const PM2Elem& x) {
  if (x.is_zero()) return 0;
  if (x.is_rank_one()) return 1;
  return 2;
}

}  // namespace

bool operator==(const PM2Elem& lhs, const PM2Elem& rhs) {
  return (lhs <=> rhs) == 0;
}

std::strong_ordering operator<=>(const PM2Elem& lhs, const PM2Elem& rhs) {
  if (auto c = kind_index(lhs) <=> kind_index(rhs); c != 0) return c;
  if (lhs.is_zero()) return std::strong_ordering::equal;
  if (lhs.is_rank_one()) return lhs.rank_one() <=> rhs.rank_one();
  return lhs.invertible_rep() <=> rhs.invertible_rep();
}

PM2Elem project(const Mat2& x) {
  switch (rank(x)) {
    case 0: return PM2Elem::zero(x.field());
    case 1: {
      auto ik = image_kernel(x);
      return PM2Elem::rank_one(Rank1{std::move(ik.image), std::move(ik.kernel)});
    }
    default: return PM2Elem::invertible(x);
  }
}

PM2Elem pm2_mul(const PM2Elem& x, const PM2Elem& y) {
  if (x.is_zero()) return x;
  if (y.is_zero()) return y;
  if (x.is_rank_one() && y.is_rank_one()) {
    auto p = rank1_product(x.rank_one(), y.rank_one());
    if (!p) return PM2Elem::zero(x.field());
    return PM2Elem::rank_one(std::move(*p));
  }
  return project(x.representative() * y.representative());
}

}  // namespace m2sg
