#include <array>
#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quatpoly/barycenter.hpp"

using namespace quatpoly;

namespace {

S4Point random_s4(std::mt19937_64& rng)
{
  const auto a = oracle::random_unit5(rng);
  Vec5 v;
  for (int i = 0; i < 5; ++i) v[i] = a[static_cast<std::size_t>(i)];
  return S4Point(v);
}

WeightedConfiguration random_configuration(std::size_t n, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> w(0.2, 1.0);
  std::vector<S4Point> pts;
  std::vector<double> r;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(random_s4(rng));
    r.push_back(w(rng));
  }
  return {pts, r};
}

WeightedConfiguration cross_polytope()
{
  std::vector<S4Point> pts;
  for (int i = 0; i < 5; ++i) {
    pts.push_back(S4Point::axis(i));
    pts.push_back(S4Point(Vec5(-Vec5::Unit(i))));
  }
  return {pts, std::vector<double>(10, 1.0)};
}

// Independent evaluation of the Poisson-weighted field with plain arrays.
std::array<double, 5> poisson_reference(const WeightedConfiguration& cfg, const std::array<double, 5>& y)
{
  std::array<double, 5> out{};
  double yy = 0.0;
  for (double c : y) yy += c * c;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    double d2 = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double d = y[static_cast<std::size_t>(k)] - cfg.point(i)[k];
      d2 += d * d;
    }
    const double kernel = (1 - yy) / d2;
    const double k4 = kernel * kernel * kernel * kernel;
    for (int k = 0; k < 5; ++k)
      out[static_cast<std::size_t>(k)] += 0.5 * k4 * cfg.weight(i) * (cfg.point(i)[k] - y[static_cast<std::size_t>(k)]);
  }
  return out;
}

} // namespace

TEST(WeightedConfiguration, NormalizesWeights)
{
  const WeightedConfiguration cfg({S4Point::axis(0), S4Point::axis(1)}, {3.0, 1.0});
  EXPECT_DOUBLE_EQ(cfg.weight(0), 1.5);
  EXPECT_DOUBLE_EQ(cfg.weight(1), 0.5);
  EXPECT_THROW(WeightedConfiguration({S4Point::axis(0)}, {-1.0}), domain_error);
  EXPECT_THROW(WeightedConfiguration({S4Point::axis(0)}, {1.0, 2.0}), std::invalid_argument);
}

TEST(IsStable, Examples)
{
  const WeightedConfiguration distinct({S4Point::axis(0), S4Point::axis(1), S4Point::axis(2), S4Point::axis(3)},
                                       {0.5, 0.5, 0.5, 0.5});
  EXPECT_TRUE(is_stable(distinct));

  // two coincident points carrying exactly half the mass
  const WeightedConfiguration half({S4Point::axis(0), S4Point::axis(0), S4Point::axis(2), S4Point::axis(3)},
                                   {0.5, 0.5, 0.5, 0.5});
  EXPECT_FALSE(is_stable(half));

  // near-coincident points merge below the tolerance, not above
  Vec5 nudged = Vec5::Unit(0);
  nudged[1] = 1e-11;
  const WeightedConfiguration close({S4Point::axis(0), S4Point(nudged), S4Point::axis(2), S4Point::axis(3)},
                                    {0.5, 0.5, 0.5, 0.5});
  EXPECT_FALSE(is_stable(close));
  nudged[1] = 1e-6;
  const WeightedConfiguration apart({S4Point::axis(0), S4Point(nudged), S4Point::axis(2), S4Point::axis(3)},
                                    {0.5, 0.5, 0.5, 0.5});
  EXPECT_TRUE(is_stable(apart));
}

TEST(PoissonField, AtOriginIsCenterOfMass)
{
  std::mt19937_64 rng(1);
  const auto cfg = random_configuration(7, rng);
  EXPECT_LT((poisson_field(cfg, Vec5::Zero()) - center_of_mass(cfg)).norm(), 1e-15);
  EXPECT_LT((barycenter_field(cfg, Vec5::Zero()) - center_of_mass(cfg)).norm(), 1e-15);
}

TEST(PoissonField, AntipodalPairVanishesAtOrigin)
{
  const WeightedConfiguration cfg({S4Point::axis(0), S4Point(Vec5(-Vec5::Unit(0)))}, {1.0, 1.0});
  EXPECT_LT(poisson_field(cfg, Vec5::Zero()).norm(), 1e-15);
}

TEST(PoissonField, MatchesIndependentEvaluation)
{
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto cfg = random_configuration(9, rng);
    const auto dir = oracle::random_unit5(rng);
    const double rad = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    std::array<double, 5> y{};
    Vec5 ye;
    for (int k = 0; k < 5; ++k) {
      y[static_cast<std::size_t>(k)] = rad * dir[static_cast<std::size_t>(k)];
      ye[k] = y[static_cast<std::size_t>(k)];
    }
    const auto ref = poisson_reference(cfg, y);
    const Vec5 got = poisson_field(cfg, ye);
    for (int k = 0; k < 5; ++k)
      EXPECT_NEAR(got[k], ref[static_cast<std::size_t>(k)], 1e-12 * (1 + std::abs(ref[static_cast<std::size_t>(k)])));
  }
  EXPECT_THROW(poisson_field(random_configuration(3, rng), Vec5::Unit(0)), domain_error);
}

TEST(PoissonField, ZeroIsNotEquivariant)
{
  // Documented behaviour: the Poisson-weighted field is not a substitute for
  // the barycenter field. Its zero moves differently from g B(mu).
  std::mt19937_64 rng(3);
  const auto cfg = random_configuration(7, rng);
  const auto g = random_sl2h(rng, 0.6);
  // damped Newton with a central-difference Jacobian
  auto solve_poisson = [](const WeightedConfiguration& c) {
    Vec5 y = Vec5::Zero();
    Vec5 f = poisson_field(c, y);
    for (int it = 0; it < 200 && f.norm() > 1e-12; ++it) {
      Mat5 jac;
      for (int k = 0; k < 5; ++k) {
        const Vec5 e = Vec5::Unit(k) * 1e-7;
        jac.col(k) = (poisson_field(c, y + e) - poisson_field(c, y - e)) / 2e-7;
      }
      const Vec5 dir = jac.fullPivLu().solve(-f);
      for (double t = 1.0; t > 1e-10; t *= 0.5) {
        const Vec5 trial = y + t * dir;
        if (trial.squaredNorm() < 1.0 && poisson_field(c, trial).norm() < f.norm()) {
          y = trial;
          break;
        }
      }
      f = poisson_field(c, y);
    }
    return y;
  };
  const Vec5 z = solve_poisson(cfg);
  const Vec5 gz = solve_poisson(pushforward(g, cfg));
  ASSERT_LT(poisson_field(cfg, z).norm(), 1e-8);
  EXPECT_GT((mobius_ball(g, BallPoint(z)).y - gz).norm(), 1e-3);
}

TEST(BarycenterField, JacobianMatchesFiniteDifferences)
{
  std::mt19937_64 rng(4);
  const auto cfg = random_configuration(8, rng);
  Vec5 y;
  y << 0.1, -0.2, 0.05, 0.3, -0.1;
  const Mat5 jac = barycenter_field_jacobian(cfg, y);
  const double h = 1e-6;
  for (int k = 0; k < 5; ++k) {
    const Vec5 e = Vec5::Unit(k) * h;
    const Vec5 fd = (barycenter_field(cfg, y + e) - barycenter_field(cfg, y - e)) / (2 * h);
    EXPECT_LT((fd - jac.col(k)).norm(), 1e-8);
  }
}

TEST(ConformalBarycenter, CrossPolytopeIsCentered)
{
  const auto r = conformal_barycenter(cross_polytope());
  EXPECT_LT(r.barycenter.norm(), 1e-12);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(ConformalBarycenter, PushedSymmetricConfiguration)
{
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_sl2h(rng, 1.5);
    const auto r = conformal_barycenter(pushforward(g, cross_polytope()));
    EXPECT_LT((r.barycenter.y - mobius_ball(g, BallPoint::origin()).y).norm(), 1e-9);
  }
}

TEST(ConformalBarycenter, TranslationToBarycenterCentersTheMeasure)
{
  // Defining property checked through the half-space model, independently of
  // the Hermitian-matrix route used by translation_to_origin.
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto cfg = random_configuration(12, rng);
    const auto b = conformal_barycenter(cfg).barycenter;
    const auto hb = ball_to_halfspace(b);
    // x -> (x - v) / x5 as an element of SL(2,H): [[1/s, -v/s], [0, s]] with s^2 = x5
    const double s = std::sqrt(hb.x5);
    const SL2H to0{Quaternion(1.0 / s), -hb.v / s, Quaternion(0.0), Quaternion(s)};
    // (x - v)/x5 maps b to (0, 1), which is the ball origin
    EXPECT_LT(mobius_ball(to0, b).norm(), 1e-9);
    EXPECT_LT(center_of_mass(pushforward(to0, cfg)).norm(), 1e-9);
  }
}

TEST(ConformalBarycenter, Equivariance)
{
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto cfg = random_configuration(3 + rng() % 48, rng);
    const auto g = random_sl2h(rng, 1.0);
    const auto b = conformal_barycenter(cfg).barycenter;
    const auto gb = conformal_barycenter(pushforward(g, cfg)).barycenter;
    EXPECT_LT((mobius_ball(g, b).y - gb.y).norm(), 1e-7);
  }
}

TEST(ConformalBarycenter, ZeroIffCenterOfMassVanishes)
{
  std::mt19937_64 rng(8);
  const auto centered = conformal_barycenter(cross_polytope());
  EXPECT_LT(centered.barycenter.norm(), 1e-12);
  for (int t = 0; t < 20; ++t) {
    const auto cfg = random_configuration(6, rng);
    const auto b = conformal_barycenter(cfg).barycenter;
    EXPECT_GT(center_of_mass(cfg).norm(), 1e-3);
    EXPECT_GT(b.norm(), 1e-6);
  }
}

TEST(ConformalBarycenter, ResidualDecreasesMonotonically)
{
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const auto r = conformal_barycenter(random_configuration(10, rng));
    for (std::size_t k = 1; k < r.residual_history.size(); ++k)
      EXPECT_LT(r.residual_history[k], r.residual_history[k - 1]);
  }
}

TEST(ConformalBarycenter, NearlyUnstableConfiguration)
{
  // one point carries 0.98 of the allowed atom mass
  std::mt19937_64 rng(10);
  std::vector<S4Point> pts{S4Point::axis(0)};
  std::vector<double> w{0.98};
  for (int i = 0; i < 6; ++i) {
    pts.push_back(random_s4(rng));
    w.push_back(1.02 / 6);
  }
  const auto r = conformal_barycenter(WeightedConfiguration(pts, w));
  EXPECT_LT(r.residual, 1e-12);
  EXPECT_GT(r.barycenter.y[0], 0.5);
}

TEST(ConformalBarycenter, RejectsUnstable)
{
  const WeightedConfiguration heavy({S4Point::axis(0), S4Point::axis(1)}, {1.0, 1.0});
  EXPECT_THROW(conformal_barycenter(heavy), domain_error);
  EXPECT_THROW(normalize_configuration(heavy), domain_error);
}

TEST(ConformalBarycenter, FastEnough)
{
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto cfg = random_configuration(50, rng);
    const auto start = std::chrono::steady_clock::now();
    const auto r = conformal_barycenter(cfg, {.tol = 1e-12});
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_LT(ms, 50.0);
  }
}

TEST(Pushforward, IdentityCompositionStability)
{
  std::mt19937_64 rng(12);
  const auto cfg = random_configuration(8, rng);
  const auto same = pushforward(SL2H::identity(), cfg);
  for (std::size_t i = 0; i < cfg.size(); ++i) EXPECT_LT(chordal_distance(same.point(i), cfg.point(i)), 1e-15);

  const auto g = random_sl2h(rng, 1.0), h = random_sl2h(rng, 1.0);
  const auto a = pushforward(g, pushforward(h, cfg));
  const auto b = pushforward(g * h, cfg);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    EXPECT_LT(chordal_distance(a.point(i), b.point(i)), 1e-10);
    EXPECT_DOUBLE_EQ(a.weight(i), cfg.weight(i));
  }
  EXPECT_EQ(is_stable(cfg), is_stable(pushforward(g, cfg)));
  const WeightedConfiguration heavy({S4Point::axis(0), S4Point::axis(0), S4Point::axis(2)}, {0.6, 0.6, 0.8});
  EXPECT_FALSE(is_stable(pushforward(g, heavy)));
}

TEST(Normalize, CenteredInputGivesIdentity)
{
  const auto out = normalize_configuration(cross_polytope());
  EXPECT_EQ(projective_distance(out.g, SL2H::identity()), 0.0);
  EXPECT_EQ(out.rounds, 0);
}

TEST(Normalize, RecentersRandomConfigurations)
{
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const auto cfg = random_configuration(20, rng);
    const auto out = normalize_configuration(cfg, 1e-9);
    EXPECT_LT(out.center_norm, 1e-9);
    EXPECT_LT(center_of_mass(pushforward(out.g, cfg)).norm(), 1e-9);
    EXPECT_NEAR(out.g.det(), 1.0, 1e-9);
    // idempotent
    const auto again = normalize_configuration(out.configuration, 1e-9);
    EXPECT_LT(projective_distance(again.g, SL2H::identity()), 1e-8);
  }
}

TEST(Normalize, UndoesAKnownMotion)
{
  std::mt19937_64 rng(14);
  const auto g0 = random_sl2h(rng, 1.2);
  const auto moved = pushforward(g0, cross_polytope());
  const auto out = normalize_configuration(moved, 1e-9);
  EXPECT_LT(center_of_mass(pushforward(out.g * g0, cross_polytope())).norm(), 1e-9);
}
