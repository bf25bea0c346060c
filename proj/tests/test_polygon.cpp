#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "quatpoly/barycenter.hpp"
#include "quatpoly/polygon.hpp"

using namespace quatpoly;

namespace {

Vec5 v5(double a, double b, double c = 0, double d = 0, double e = 0)
{
  Vec5 v;
  v << a, b, c, d, e;
  return v;
}

Polygon regular_planar(std::size_t n)
{
  std::vector<Vec5> v;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v.push_back(v5(std::cos(t), std::sin(t)));
  }
  return polygon_from_vertices(v);
}

// Hexagon spanning exactly three dimensions.
Polygon spatial_hexagon()
{
  return polygon_from_vertices({v5(0, 0, 0), v5(1, 0, 0.3), v5(1.5, 0.8, 0), v5(1, 1.6, -0.4), v5(0, 1.5, 0.2),
                                v5(-0.5, 0.7, 0.5)});
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
  EXPECT_EQ(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST(CheckWeights, Examples)
{
  auto c = check_weights({1, 1, 1, 1});
  EXPECT_TRUE(c.admissible);
  EXPECT_FALSE(c.nondegenerate);
  c = check_weights({2, 1, 1, 1});
  EXPECT_TRUE(c.admissible);
  EXPECT_TRUE(c.nondegenerate);
  c = check_weights({3, 1, 1, 0.5});
  EXPECT_FALSE(c.admissible);
  EXPECT_TRUE(check_weights({1, 1, 2}).admissible);
  EXPECT_FALSE(check_weights({1, 1, 2}).nondegenerate);
  EXPECT_THROW(check_weights({1, -1, 1}), domain_error);
}

TEST(CheckWeights, AgreesWithDirectEnumeration)
{
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> small(1, 6);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng() % 9;
    std::vector<double> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(small(rng));
    bool zero = false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
      double s = r[0];
      for (std::size_t i = 1; i < n; ++i) s += (mask >> (i - 1) & 1U) ? r[i] : -r[i];
      zero = zero || s == 0.0;
    }
    EXPECT_EQ(check_weights(r).nondegenerate, !zero);
  }
}

TEST(CheckWeights, SizeCap)
{
  std::vector<double> r(25, 1.0);
  r[0] = 1.5;
  EXPECT_THROW(check_weights(r), std::length_error);
  EXPECT_TRUE(check_weights(r, true).admissible);
  std::vector<double> r24(24, 1.0);
  EXPECT_FALSE(check_weights(r24).nondegenerate);
}

TEST(SampleClosed, ClosesAndIsDeterministic)
{
  for (std::size_t n : {4u, 5u, 6u, 9u, 20u}) {
    std::vector<double> r(n, 1.0);
    r[0] = 1.5;
    const auto p = sample_closed(r, 42);
    EXPECT_LT(p.closure_residual(), 1e-10);
    for (const auto& u : p.edges) EXPECT_NEAR(u.norm(), 1.0, 1e-14);
    const auto q = sample_closed(r, 42);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(p.edges[i], q.edges[i]);
  }
}

TEST(SampleClosed, Examples)
{
  const auto four = sample_closed({2, 1, 1, 1}, 3);
  EXPECT_LE(classify(four).span_rank, 3);
  const auto hex = sample_closed(std::vector<double>(6, 1.0), 4);
  EXPECT_LT(hex.closure_residual(), 1e-10);
  EXPECT_THROW(sample_closed({3, 1, 1, 0.5}, 5), domain_error);
}

TEST(SampleClosed, NearlyDegenerateWeights)
{
  // 2 max r is just below the total
  const auto p = sample_closed({2.999, 1, 1, 1}, 6);
  EXPECT_LT(p.closure_residual(), 1e-10);
}

TEST(Classify, Fixtures)
{
  const auto planar = classify(regular_planar(6));
  EXPECT_EQ(planar.span_rank, 2);
  EXPECT_EQ(planar.kind, DegeneracyKind::type3);
  EXPECT_EQ(planar.local_model.trivial_factor_dim, 3);
  EXPECT_EQ(planar.local_model.cone, "(R³)³/SO(3)");

  const auto spatial = classify(spatial_hexagon());
  EXPECT_EQ(spatial.span_rank, 3);
  EXPECT_EQ(spatial.kind, DegeneracyKind::type2);
  EXPECT_EQ(spatial.local_model.trivial_factor_dim, 6);
  EXPECT_EQ(spatial.local_model.cone, "(R²)²/SO(2)");

  const auto generic = classify(sample_closed(std::vector<double>(6, 1.0), 11));
  EXPECT_EQ(generic.kind, DegeneracyKind::nondegenerate);

  const auto segment = classify(polygon_from_vertices({v5(0, 0), v5(1, 0), v5(2, 0), v5(1, 0)}));
  EXPECT_EQ(segment.kind, DegeneracyKind::linear);
}

TEST(Classify, LocalModelLabels)
{
  EXPECT_EQ(local_model(DegeneracyKind::type2, 5).cone, "(R²)/SO(2)");
  EXPECT_EQ(local_model(DegeneracyKind::type3, 15).cone, "(R³)¹²/SO(3)");
  EXPECT_EQ(local_model(DegeneracyKind::nondegenerate, 7).trivial_factor_dim, 13);
}

TEST(Dimensions, NondegenerateSamples)
{
  for (int n : {5, 6, 7}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto p = sample_closed(std::vector<double>(static_cast<std::size_t>(n), 1.0), s);
      ASSERT_EQ(classify(p).kind, DegeneracyKind::nondegenerate);
      EXPECT_EQ(closure_jacobian_rank(p), 5);
      EXPECT_EQ(orbit_dimension(p), 10);
      EXPECT_EQ(stratum_dimension(p), 4 * n - 15);
      EXPECT_EQ(angle_chart_dims(n).total, 4 * n - 15);
    }
  }
}

TEST(Dimensions, DegenerateStrata)
{
  const auto planar = regular_planar(6);
  EXPECT_EQ(stratum_dimension(planar), classify(planar).local_model.trivial_factor_dim);
  const auto spatial = spatial_hexagon();
  EXPECT_EQ(stratum_dimension(spatial), classify(spatial).local_model.trivial_factor_dim);
  for (int n : {5, 7, 8}) {
    const auto p = regular_planar(static_cast<std::size_t>(n));
    EXPECT_EQ(stratum_dimension(p), n - 3);
    EXPECT_EQ(orbit_dimension(p), 7);
  }
}

TEST(AngleChart, Counts)
{
  const auto five = angle_chart_dims(5);
  EXPECT_EQ(five.angles, 3);
  EXPECT_EQ(five.actions, 2);
  EXPECT_EQ(five.total, 5);
  const auto six = angle_chart_dims(6);
  EXPECT_EQ(six.angles, 6);
  EXPECT_EQ(six.actions, 3);
  EXPECT_EQ(six.total, 9);
  EXPECT_THROW(angle_chart_dims(4), domain_error);
}

TEST(Diagonals, Examples)
{
  const auto square = polygon_from_vertices({v5(0, 0), v5(1, 0), v5(1, 1), v5(0, 1)});
  const auto d = diagonal_lengths(square);
  ASSERT_EQ(d.lengths.size(), 1u);
  EXPECT_NEAR(d.lengths[0], std::sqrt(2.0), 1e-15);

  EXPECT_EQ(diagonal_lengths(sample_closed({1, 1, 1, 1, 1.5}, 2)).lengths.size(), 2u);

  Polygon seg;
  seg.r = {1, 1, 1, 1};
  seg.edges = {v5(1, 0), v5(-1, 0), v5(1, 0), v5(-1, 0)};
  EXPECT_EQ(diagonal_lengths(seg).lengths[0], 0.0);
}

TEST(Diagonals, ConsecutiveTriangleInequalities)
{
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = sample_closed({1, 1.2, 0.7, 1.5, 0.9, 1.1, 1.0}, s);
    const auto l = diagonal_lengths(p).lengths;
    for (std::size_t i = 0; i + 1 < l.size(); ++i) {
      EXPECT_LE(std::abs(l[i] - p.r[i + 2]), l[i + 1] + 1e-12);
      EXPECT_LE(l[i + 1], l[i] + p.r[i + 2] + 1e-12);
    }
  }
}

TEST(ClosedImpliesStable, Samples)
{
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = sample_closed({1, 1, 1, 1.9, 0.5, 1.2}, s);
    std::vector<S4Point> pts;
    for (const auto& u : p.edges) pts.push_back(S4Point(u));
    EXPECT_TRUE(is_stable(WeightedConfiguration(pts, p.r)));
  }
}

TEST(Bend, IdentityAndComposition)
{
  const auto p = sample_closed({1, 1, 1, 1, 1, 1}, 9);
  const auto same = bend(p, 2, Mat5d::Identity());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_LT((same.edges[i] - p.edges[i]).norm(), 1e-15);

  std::mt19937_64 rng(3);
  const Vec5 d = diagonal_lengths(p).diagonals[1];
  const Mat5d k1 = random_rotation_fixing(d, rng), k2 = random_rotation_fixing(d, rng);
  const auto two = bend(bend(p, 2, k2), 2, k1);
  const auto one = bend(p, 2, k1 * k2);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_LT((two.edges[i] - one.edges[i]).norm(), 1e-12);
}

TEST(Bend, PlanarQuadrilateralLeavesThePlane)
{
  const auto square = polygon_from_vertices({v5(0, 0), v5(1, 0), v5(1, 1), v5(0, 1)});
  const Vec5 d = diagonal_lengths(square).diagonals[0];
  // rotation by 90 degrees in the (e2 - e1, e3) plane fixes d = e1 + e2
  const Vec5 a = v5(-1, 1) / std::sqrt(2.0), b = v5(0, 0, 1);
  const Mat5d k = Mat5d::Identity() - a * a.transpose() - b * b.transpose() + b * a.transpose() - a * b.transpose();
  ASSERT_LT((k * d - d).norm(), 1e-15);
  const auto bent = bend(square, 1, k);
  EXPECT_EQ(classify(bent).span_rank, 3);
  EXPECT_LT(max_abs_diff(bent.r, square.r), 1e-15);
  EXPECT_NEAR(diagonal_lengths(bent).lengths[0], std::sqrt(2.0), 1e-14);
  EXPECT_LT(bent.closure_residual(), 1e-14);
}

TEST(Bend, PreservesLevelSet)
{
  std::mt19937_64 rng(5);
  auto p = sample_closed({1, 0.8, 1.3, 1, 1.1, 0.9, 1.2}, 1);
  const auto l0 = diagonal_lengths(p).lengths;
  for (int t = 0; t < 100; ++t) {
    const std::size_t i = 1 + rng() % (p.size() - 3);
    p = bend(p, i, random_rotation_fixing(diagonal_lengths(p).diagonals[i - 1], rng));
    EXPECT_LT(max_abs_diff(diagonal_lengths(p).lengths, l0), 1e-10);
    EXPECT_LT(p.closure_residual(), 1e-10);
  }
}

TEST(Bend, RejectsRotationMovingTheDiagonal)
{
  const auto p = sample_closed({1, 1, 1, 1, 1}, 2);
  std::mt19937_64 rng(1);
  EXPECT_THROW(bend(p, 1, random_rotation<5>(rng)), domain_error);
  EXPECT_THROW(bend(p, 3, Mat5d::Identity()), std::out_of_range);
}

TEST(CanonicalPlanar, SpatialSample)
{
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = sample_closed({1, 1.1, 0.9, 1.3, 0.8}, s);
    const auto c = canonical_planar(p);
    EXPECT_LE(classify(c).span_rank, 2);
    EXPECT_LT(max_abs_diff(c.r, p.r), 1e-15);
    EXPECT_LT(max_abs_diff(diagonal_lengths(c).lengths, diagonal_lengths(p).lengths), 1e-10);
    EXPECT_LT(c.closure_residual(), 1e-10);
    EXPECT_TRUE(satisfies_intersection_rule(c));
    // idempotent up to congruence
    EXPECT_LT((vertex_distances(canonical_planar(c)) - vertex_distances(c)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(CanonicalPlanar, ConvexPlanarInputIsCongruent)
{
  const auto pent = regular_planar(5);
  ASSERT_TRUE(satisfies_intersection_rule(pent));
  const auto c = canonical_planar(pent);
  EXPECT_LT((vertex_distances(c) - vertex_distances(pent)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CanonicalPlanar, BendingOrbitHasOneCanonicalForm)
{
  std::mt19937_64 rng(8);
  const auto p = sample_closed({1, 1, 1, 1, 1, 1}, 12);
  const auto c = canonical_planar(p);
  const auto q = bend(p, 2, random_rotation_fixing(diagonal_lengths(p).diagonals[1], rng));
  EXPECT_LT((vertex_distances(canonical_planar(q)) - vertex_distances(c)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CanonicalPlanar, GenericityErrors)
{
  Polygon seg;
  seg.r = {1, 1, 1, 1, 2};
  // v_3 = v_1, so l_1 = 0
  seg.edges = {v5(1, 0), v5(-1, 0), v5(0, 1), v5(0, 1), v5(0, -1)};
  try {
    canonical_planar(seg);
    FAIL() << "expected a genericity error";
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("l_1"), std::string::npos);
  }
}

TEST(So2Invariants, Examples)
{
  const auto p = so2_invariants({1, 0}, {1, 0});
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[1], 1);
  EXPECT_EQ(p[2], 1);
  EXPECT_EQ(p[3], 0);

  const std::array<double, 4> target{2.0, 3.0, 1.5, -2.0};
  const auto [x, y] = so2_preimage({2.0, 0.0, 1.5, -2.0});
  const auto got = so2_invariants(x, y);
  EXPECT_NEAR(got[0], target[0], 1e-15);
  EXPECT_NEAR(got[2], target[2], 1e-15);
  EXPECT_NEAR(got[3], target[3], 1e-15);
}

TEST(So2Invariants, RelationAndInvariance)
{
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Vector2d x(n(rng), n(rng)), y(n(rng), n(rng));
    const auto p = so2_invariants(x, y);
    EXPECT_NEAR(p[0] * p[1], p[2] * p[2] + p[3] * p[3], 1e-12 * (1 + p[0] * p[1]));
    const Eigen::Rotation2Dd h(ang(rng));
    const auto q = so2_invariants(h * x, h.inverse() * y);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[static_cast<std::size_t>(k)], q[static_cast<std::size_t>(k)], 1e-12);
  }
}

TEST(So3Invariants, LagrangeIdentity)
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Vector3d x(n(rng), n(rng), n(rng)), y(n(rng), n(rng), n(rng));
    const auto s = so3_invariants(x, y);
    EXPECT_NEAR(s.xy * s.xy + s.cross.squaredNorm(), s.xx * s.yy, 1e-12 * (1 + s.xx * s.yy));
  }
}
