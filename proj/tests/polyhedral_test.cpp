#include <gtest/gtest.h>

#include <vector>

#include "conedual/polyhedral.hpp"
#include "conedual/simplex.hpp"
#include "test_util.hpp"

namespace conedual {
namespace {

using testing::Rng;
using testing::q;
using testing::vq;

using Vecs = std::vector<VecT<Rational>>;

TEST(DoubleDescription, WedgeFromHalfspaces) {
  // {x : x1 >= 0, x1 + x2 >= 0} has extreme rays (0,1) and (1,-1).
  const auto p = pair_from_hrep<Rational>(2, {vq({1, 0}), vq({1, 1})});
  EXPECT_EQ(p.gens, (Vecs{vq({0, 1}), vq({1, -1})}));
  EXPECT_EQ(p.halfspaces, (Vecs{vq({1, 0}), vq({1, 1})}));
}

TEST(DoubleDescription, WedgeFromGenerators) {
  const auto p = pair_from_vrep<Rational>(2, {vq({1, 0}), vq({1, 1})});
  EXPECT_EQ(p.gens, (Vecs{vq({1, 0}), vq({1, 1})}));
  EXPECT_EQ(p.halfspaces, (Vecs{vq({0, 1}), vq({1, -1})}));
}

TEST(DoubleDescription, OrthantPair) {
  const auto p = pair_from_hrep<Rational>(2, {vq({1, 0}), vq({0, 1})});
  EXPECT_EQ(p.gens, (Vecs{vq({0, 1}), vq({1, 0})}));
  EXPECT_EQ(p.halfspaces, (Vecs{vq({0, 1}), vq({1, 0})}));
}

TEST(DoubleDescription, FullZeroAndLineCones) {
  // No constraints: the full plane, generated by +/- unit lines.
  const auto full = extreme_rays_of_hrep<Rational>(2, {});
  EXPECT_EQ(full, (Vecs{vq({-1, 0}), vq({0, -1}), vq({0, 1}), vq({1, 0})}));

  // Opposing constraints in both axes: only the origin, no rays.
  const auto zero = extreme_rays_of_hrep<Rational>(
      2, {vq({1, 0}), vq({-1, 0}), vq({0, 1}), vq({0, -1})});
  EXPECT_TRUE(zero.empty());

  // One pinned coordinate: the x2 axis appears as a +/- line pair.
  const auto line = extreme_rays_of_hrep<Rational>(2, {vq({1, 0}), vq({-1, 0})});
  EXPECT_EQ(line, (Vecs{vq({0, -1}), vq({0, 1})}));
}

TEST(DoubleDescription, HalfplaneFromGenerators) {
  const auto p = pair_from_vrep<Rational>(2, {vq({1, 0}), vq({-1, 0}), vq({0, 1})});
  EXPECT_EQ(p.halfspaces, (Vecs{vq({0, 1})}));
  EXPECT_EQ(p.gens, (Vecs{vq({-1, 0}), vq({0, 1}), vq({1, 0})}));
}

TEST(DoubleDescription, NormalizesScalesAndDuplicates) {
  const auto p = pair_from_hrep<Rational>(
      2, {vq({2, 0}), vq({1, 0}), VecT<Rational>{q(1, 2), q(0)}, vq({3, 3})});
  EXPECT_EQ(p.halfspaces, (Vecs{vq({1, 0}), vq({1, 1})}));
  EXPECT_EQ(p.gens, (Vecs{vq({0, 1}), vq({1, -1})}));
}

TEST(DoubleDescription, ThreeDimensionalIceCreamWedge) {
  // x3 >= 0, x3 >= x1, x3 >= -x1: a wedge whose section is a triangle.
  const auto p = pair_from_hrep<Rational>(
      3, {vq({0, 0, 1}), vq({-1, 0, 1}), vq({1, 0, 1})});
  // Lineality: the x2 axis (no constraint sees it).
  EXPECT_EQ(p.gens, (Vecs{vq({-1, 0, 1}), vq({0, -1, 0}), vq({0, 1, 0}), vq({1, 0, 1})}));
}

TEST(DoubleDescription, DualPairSwapsRoles) {
  const auto p = pair_from_vrep<Rational>(2, {vq({1, 0}), vq({1, 1})});
  const auto d = dual_pair(p);
  EXPECT_EQ(d.gens, p.halfspaces);
  EXPECT_EQ(d.halfspaces, p.gens);
  const auto dd = dual_pair(d);
  EXPECT_EQ(dd.gens, p.gens);
  EXPECT_EQ(dd.halfspaces, p.halfspaces);
}

TEST(DoubleDescription, ConstraintCountEnvelope) {
  Vecs many;
  for (long long k = 0; k <= 192; ++k) many.push_back(vq({1, k}));
  EXPECT_THROW(extreme_rays_of_hrep<Rational>(2, many), PolicyError);
}

TEST(DoubleDescription, RoundTripIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Rng rng(seed);
    const std::size_t dim = static_cast<std::size_t>(rng.range(2, 3));
    const long long count = rng.range(1, 5);
    Vecs gens;
    for (long long k = 0; k < count; ++k) {
      VecT<Rational> g;
      for (std::size_t i = 0; i < dim; ++i) g.push_back(q(rng.range(-3, 3)));
      gens.push_back(std::move(g));
    }
    const auto p = pair_from_vrep<Rational>(dim, gens);
    const auto via_h = pair_from_hrep<Rational>(dim, p.halfspaces);
    EXPECT_EQ(via_h.gens, p.gens) << "seed " << seed;
    EXPECT_EQ(via_h.halfspaces, p.halfspaces) << "seed " << seed;
    const auto via_v = pair_from_vrep<Rational>(dim, p.gens);
    EXPECT_EQ(via_v.gens, p.gens) << "seed " << seed;
    EXPECT_EQ(via_v.halfspaces, p.halfspaces) << "seed " << seed;
  }
}

/// The two sides of a companion pair must describe the same set: a point
/// passes every halfspace iff it is a nonnegative combination of generators.
TEST(DoubleDescription, HalfspaceAndGeneratorTestsAgree) {
  int inside = 0, outside = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const std::size_t dim = static_cast<std::size_t>(rng.range(2, 3));
    const long long count = rng.range(1, 4);
    Vecs gens;
    for (long long k = 0; k < count; ++k) {
      VecT<Rational> g;
      for (std::size_t i = 0; i < dim; ++i) g.push_back(q(rng.range(-3, 3)));
      gens.push_back(std::move(g));
    }
    const auto p = pair_from_vrep<Rational>(dim, gens);

    VecT<Rational> x;
    for (std::size_t i = 0; i < dim; ++i) x.push_back(q(rng.range(-4, 4)));
    bool by_h = true;
    for (const auto& a : p.halfspaces) {
      if (dot(a, x) < 0) {
        by_h = false;
        break;
      }
    }
    std::vector<VecT<Rational>> cols(dim, VecT<Rational>(p.gens.size(), q(0)));
    for (std::size_t j = 0; j < p.gens.size(); ++j) {
      for (std::size_t i = 0; i < dim; ++i) cols[i][j] = p.gens[j][i];
    }
    const bool by_v = nonnegative_solve(cols, x, p.gens.size()).has_value();
    EXPECT_EQ(by_h, by_v) << "seed " << seed;
    (by_h ? inside : outside)++;
  }
  EXPECT_GT(inside, 20);
  EXPECT_GT(outside, 50);
}

}  // namespace
}  // namespace conedual
