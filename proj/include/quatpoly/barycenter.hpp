#ifndef QUATPOLY_BARYCENTER_HPP
#define QUATPOLY_BARYCENTER_HPP

// Stable measures on S^4 and their conformal (Douady-Earle) barycenter.
//
// A weighted configuration (u_i, r_i) with sum r_i = 2 stands for the
// probability measure mu = 1/2 sum r_i delta_{u_i}. Its barycenter B(mu) is
// the unique point of the open ball with
//
//   F_mu(y) = 1/2 sum r_i (u_i - y) / (1 - <y, u_i>) = 0
//
// in the projective ball coordinates of hyperbolic.hpp. Equivalently B is the
// point whose hyperbolic translation to the origin pushes mu to a measure with
// zero Euclidean center of mass, which makes B(g mu) = g B(mu) for every g.
// F_mu(0) is the center of mass C(mu), so B(mu) = 0 iff C(mu) = 0.
//
// `poisson_field` evaluates the Poisson-kernel weighted field
// 1/2 sum ((1 - |y|^2) / |y - u_i|^2)^4 r_i (u_i - y). It agrees with F_mu at
// the origin but its zero is not Moebius-equivariant, so the solver does not
// use it.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quatpoly/errors.hpp"
#include "quatpoly/hyperbolic.hpp"

namespace quatpoly {

using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Points on S^4 with positive weights normalized to sum 2.
class WeightedConfiguration
{
public:
  WeightedConfiguration() = default;

  WeightedConfiguration(std::vector<S4Point> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights))
  {
    if (points_.size() != weights_.size())
      throw std::invalid_argument("WeightedConfiguration: points and weights differ in length");
    if (points_.empty()) throw std::invalid_argument("WeightedConfiguration: empty configuration");
    double total = 0.0;
    for (double r : weights_) {
      if (!(r > 0.0)) throw domain_error("WeightedConfiguration: weights must be positive");
      total += r;
    }
    if (std::abs(total - 2.0) > 1e-14)
      for (double& r : weights_) r *= 2.0 / total;
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<S4Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  const S4Point& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

private:
  std::vector<S4Point> points_;
  std::vector<double> weights_;
};

/// C(mu) = 1/2 sum r_i u_i.
inline Vec5 center_of_mass(const WeightedConfiguration& cfg)
{
  Vec5 c = Vec5::Zero();
  for (std::size_t i = 0; i < cfg.size(); ++i) c += cfg.weight(i) * cfg.point(i).vec();
  return 0.5 * c;
}

inline constexpr double default_merge_tolerance = 1e-9;

/// Total weight of each atom; points closer than `merge_tol` (chordal) are
/// merged transitively.
inline std::vector<double> atom_weights(const WeightedConfiguration& cfg, double merge_tol = default_merge_tolerance)
{
  const std::size_t n = cfg.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (chordal_distance(cfg.point(i), cfg.point(j)) < merge_tol) parent[find(i)] = find(j);

  std::vector<double> mass(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) mass[find(i)] += cfg.weight(i);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == i) out.push_back(mass[i]);
  return out;
}

/// Every atom carries total weight strictly below 1 (measure mass below 1/2).
inline bool is_stable(const WeightedConfiguration& cfg, double merge_tol = default_merge_tolerance)
{
  const auto atoms = atom_weights(cfg, merge_tol);
  return std::all_of(atoms.begin(), atoms.end(), [](double m) { return m < 1.0 - 1e-12; });
}

/// g_* mu: points move by the boundary action, weights stay.
inline WeightedConfiguration pushforward(const SL2H& g, const WeightedConfiguration& cfg)
{
  std::vector<S4Point> moved;
  moved.reserve(cfg.size());
  for (const auto& u : cfg.points()) moved.push_back(mobius_s4(g, u));
  return {std::move(moved), cfg.weights()};
}

namespace detail {
inline void require_open_ball(const Vec5& y, const char* who)
{
  if (!(y.squaredNorm() < 1.0)) throw domain_error(std::string(who) + ": point is not in the open ball");
}
} // namespace detail

/// Barycenter field F_mu(y) (see file comment).
inline Vec5 barycenter_field(const WeightedConfiguration& cfg, const Vec5& y)
{
  detail::require_open_ball(y, "barycenter_field");
  Vec5 f = Vec5::Zero();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Vec5& u = cfg.point(i).vec();
    f += cfg.weight(i) * (u - y) / (1.0 - y.dot(u));
  }
  return 0.5 * f;
}

inline Mat5 barycenter_field_jacobian(const WeightedConfiguration& cfg, const Vec5& y)
{
  detail::require_open_ball(y, "barycenter_field_jacobian");
  Mat5 jac = Mat5::Zero();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Vec5& u = cfg.point(i).vec();
    const double den = 1.0 - y.dot(u);
    jac += cfg.weight(i) * (-Mat5::Identity() / den + (u - y) * u.transpose() / (den * den));
  }
  return 0.5 * jac;
}

/// 1/2 sum ((1 - |y|^2) / |y - u_i|^2)^4 r_i (u_i - y).
inline Vec5 poisson_field(const WeightedConfiguration& cfg, const Vec5& y)
{
  detail::require_open_ball(y, "poisson_field");
  const double one_minus = 1.0 - y.squaredNorm();
  Vec5 f = Vec5::Zero();
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Vec5& u = cfg.point(i).vec();
    const double d2 = (y - u).squaredNorm();
    if (d2 == 0.0) throw domain_error("poisson_field: y coincides with a configuration point");
    f += std::pow(one_minus / d2, 4) * cfg.weight(i) * (u - y);
  }
  return 0.5 * f;
}

struct BarycenterOptions
{
  double tol = 1e-12;
  int max_iterations = 200;
  double initial_radius = 0.9;
  double merge_tol = default_merge_tolerance;
};

struct BarycenterResult
{
  BallPoint barycenter;
  double residual = 0.0;                ///< |F_mu(B)|
  int iterations = 0;
  std::vector<double> residual_history; ///< residual after each accepted step, starting at the initial guess
};

/// Zero of F_mu by damped Newton with step halving (stay inside the ball and
/// decrease |F|), falling back to y <- y + t (1 - |y|^2) F(y) when the
/// Jacobian is ill-conditioned or the Newton direction makes no progress.
inline BarycenterResult conformal_barycenter(const WeightedConfiguration& cfg, const BarycenterOptions& opt = {})
{
  if (!is_stable(cfg, opt.merge_tol)) throw domain_error("conformal_barycenter: configuration is not stable");

  Vec5 y = center_of_mass(cfg);
  if (y.norm() > opt.initial_radius) y *= opt.initial_radius / y.norm();

  BarycenterResult result;
  Vec5 f = barycenter_field(cfg, y);
  double res = f.norm();
  result.residual_history.push_back(res);

  auto try_direction = [&](const Vec5& dir) {
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      const Vec5 trial = y + t * dir;
      if (!(trial.squaredNorm() < 1.0)) continue;
      const Vec5 ft = barycenter_field(cfg, trial);
      if (ft.norm() < res) {
        y = trial;
        f = ft;
        res = ft.norm();
        return true;
      }
    }
    return false;
  };

  int it = 0;
  for (; it < opt.max_iterations && res >= opt.tol; ++it) {
    const Mat5 jac = barycenter_field_jacobian(cfg, y);
    Eigen::FullPivLU<Mat5> lu(jac);
    bool moved = false;
    if (lu.rcond() > 1e-12) moved = try_direction(lu.solve(-f));
    if (!moved) moved = try_direction((1.0 - y.squaredNorm()) * f);
    if (!moved) break;
    result.residual_history.push_back(res);
  }

  result.barycenter = BallPoint(y);
  result.residual = res;
  result.iterations = it;
  if (!(res < opt.tol))
    throw convergence_error("conformal_barycenter: residual " + format_residual(res) + " after " +
                            std::to_string(it) + " iterations");
  return result;
}

struct NormalizationResult
{
  SL2H g;
  WeightedConfiguration configuration;  ///< pushforward(g, input)
  double center_norm = 0.0;             ///< |C(g mu)|
  BallPoint barycenter;                 ///< B of the input
  double residual = 0.0;                ///< barycenter solver residual
  int iterations = 0;                   ///< barycenter solver iterations, all rounds
  int rounds = 0;
};

/// Finds g in PSL(2,H) with C(g mu) = 0: g is the hyperbolic translation
/// taking B(mu) to the origin. If |C| is still above `tol` the barycenter of
/// the image is solved again and the correction composed (at most 4 rounds).
inline NormalizationResult normalize_configuration(const WeightedConfiguration& cfg, double tol = 1e-9,
                                                   const BarycenterOptions& opt = {})
{
  if (!is_stable(cfg, opt.merge_tol)) throw domain_error("normalize_configuration: configuration is not stable");

  NormalizationResult out;
  out.g = SL2H::identity();
  out.configuration = cfg;
  out.center_norm = center_of_mass(cfg).norm();
  out.barycenter = BallPoint::origin();
  if (out.center_norm < tol) return out;

  for (int round = 0; round < 4 && out.center_norm >= tol; ++round) {
    const BarycenterResult b = conformal_barycenter(out.configuration, opt);
    if (round == 0) {
      out.barycenter = b.barycenter;
      out.residual = b.residual;
    }
    out.iterations += b.iterations;
    out.g = translation_to_origin(b.barycenter) * out.g;
    out.configuration = pushforward(out.g, cfg);
    out.center_norm = center_of_mass(out.configuration).norm();
    out.rounds = round + 1;
  }
  if (out.center_norm >= tol)
    throw convergence_error("normalize_configuration: |C| = " + format_residual(out.center_norm) +
                            " after " + std::to_string(out.rounds) + " rounds");
  return out;
}

} // namespace quatpoly

#endif // QUATPOLY_BARYCENTER_HPP
