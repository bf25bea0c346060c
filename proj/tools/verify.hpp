#ifndef QUATPOLY_TOOLS_VERIFY_HPP
#define QUATPOLY_TOOLS_VERIFY_HPP

// Invariant battery behind `quatpoly verify`.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quatpoly/io.hpp"
#include "quatpoly/random.hpp"

namespace quatpoly::tools {

struct Check
{
  std::string name;
  std::string invariant; ///< invariant named on failure
  double measured = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  bool passed = false;
  std::string detail;
};

inline void to_json(json& j, const Check& c)
{
  j = json{{"name", c.name},         {"invariant", c.invariant}, {"measured", c.measured},
           {"tolerance", c.tolerance}, {"cases", c.cases},       {"passed", c.passed},
           {"detail", c.detail}};
}

inline void from_json(const json& j, Check& c)
{
  c.name = j.at("name").get<std::string>();
  c.invariant = j.at("invariant").get<std::string>();
  c.measured = j.at("measured").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.cases = j.at("cases").get<int>();
  c.passed = j.at("passed").get<bool>();
  c.detail = j.at("detail").get<std::string>();
}

struct VerifyOptions
{
  std::uint64_t seed = 0;
  Tolerances tol;
  int scale = 1;                     ///< multiplies the per-check case counts
  std::optional<std::string> inject; ///< name of a negative fixture to add
};

inline const std::vector<std::string>& injectable_fixtures()
{
  static const std::vector<std::string> names{"non-hermitian"};
  return names;
}

namespace verify_detail {

using Rng = std::mt19937_64;

/// Runs `body` for `cases` items; body returns the residual of one item.
inline Check run(const std::string& name, const std::string& invariant, double tol, int cases, std::uint64_t seed,
                 std::uint64_t stream, const std::function<double(Rng&)>& body)
{
  Check c{name, invariant, 0.0, tol, cases, false, ""};
  try {
    for (int i = 0; i < cases; ++i) {
      auto rng = item_rng(seed ^ (stream << 40), static_cast<std::uint64_t>(i));
      c.measured = std::max(c.measured, body(rng));
    }
    c.passed = c.measured <= tol;
  } catch (const invariant_error& e) {
    c.invariant = e.invariant();
    c.detail = e.what();
  } catch (const std::exception& e) {
    c.detail = e.what();
  }
  return c;
}

inline QuatMatrix random_quat_matrix(std::size_t r, std::size_t c, Rng& rng)
{
  QuatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = random_gaussian_quaternion(rng);
  return m;
}

inline QuatMatrix random_hermitian(std::size_t n, Rng& rng)
{
  const QuatMatrix m = random_quat_matrix(n, n, rng);
  return m + m.adjoint();
}

inline std::vector<double> random_weights(std::size_t n, Rng& rng)
{
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> r(n);
  for (auto& x : r) x = u(rng);
  return r;
}

inline WeightedConfiguration random_configuration(std::size_t n, double bias, Rng& rng)
{
  const Vec5 shift = bias * random_unit_vector<5>(rng);
  std::vector<S4Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(Vec5(random_unit_vector<5>(rng) + shift));
  return {pts, random_weights(n, rng)};
}

inline LineBasis random_line(Rng& rng)
{
  std::normal_distribution<double> g(0, 1);
  LineBasis l;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 2; ++c) l(r, c) = cdouble(g(rng), g(rng));
  return l;
}

inline Eigen::Matrix<cdouble, 4, 1> random_point(Rng& rng) { return random_line(rng).col(0); }

} // namespace verify_detail

/// The three reference line configurations: generic (stable), three lines
/// through a point (unstable), five lines meeting a common line (strictly
/// semistable).
inline std::array<LineConfiguration, 3> line_fixtures(std::mt19937_64& rng)
{
  using namespace verify_detail;
  auto join = [](const Eigen::Matrix<cdouble, 4, 1>& p, const Eigen::Matrix<cdouble, 4, 1>& q) {
    LineBasis l;
    l << p, q;
    return l;
  };
  std::array<LineConfiguration, 3> out;
  for (int i = 0; i < 5; ++i) out[0].lines.push_back(random_line(rng));
  out[0].weights.assign(5, 0.4);

  const auto p = random_point(rng);
  for (int i = 0; i < 3; ++i) out[1].lines.push_back(join(p, random_point(rng)));
  out[1].lines.push_back(random_line(rng));
  out[1].lines.push_back(random_line(rng));
  out[1].weights = {0.4, 0.4, 0.3, 0.45, 0.45};

  const auto a = random_point(rng), b = random_point(rng);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 5; ++i)
    out[2].lines.push_back(join(a + cdouble(u(rng), u(rng)) * b, random_point(rng)));
  out[2].weights.assign(5, 0.4);
  return out;
}

inline std::vector<Check> run_verify(const VerifyOptions& opt)
{
  using namespace verify_detail;
  const int s = std::max(1, opt.scale);
  const std::uint64_t seed = opt.seed;
  std::vector<Check> out;

  out.push_back(run("quaternion-algebra", "associativity", 1e-10, 200 * s, seed, 1, [](Rng& rng) {
    const auto p = random_gaussian_quaternion(rng), q = random_gaussian_quaternion(rng),
               r = random_gaussian_quaternion(rng);
    const double assoc = distance((p * q) * r, p * (q * r)) / (p.norm() * q.norm() * r.norm());
    const double norm = std::abs((p * q).norm() - p.norm() * q.norm()) / (p.norm() * q.norm());
    return std::max(assoc, norm);
  }));

  out.push_back(run("nu-homomorphism", "nu-homomorphism", 1e-10, 200 * s, seed, 2, [](Rng& rng) {
    const auto a = random_quat_matrix(3, 3, rng), b = random_quat_matrix(3, 3, rng);
    return (nu_embed(a * b) - nu_embed(a) * nu_embed(b)).norm() / (a.frobenius_norm() * b.frobenius_norm());
  }));

  out.push_back(run("dieudonne-multiplicativity", "dieudonne-multiplicativity", 1e-10, 200 * s, seed, 3,
                    [](Rng& rng) {
                      const auto a = random_quat_matrix(3, 3, rng), b = random_quat_matrix(3, 3, rng);
                      const double da = dieudonne_det(a), db = dieudonne_det(b);
                      return std::abs(dieudonne_det(a * b) - da * db) / std::max(1.0, da * db);
                    }));

  out.push_back(run("boundary-extension", "boundary-extension", 1e-10, 100 * s, seed, 4, [](Rng& rng) {
    const SL2H g = random_sl2h(rng, 1.0);
    const Quaternion v = random_gaussian_quaternion(rng);
    const HalfSpacePoint img = lft(g, HalfSpacePoint::boundary(v));
    if (img.at_infinity) return 0.0;
    return distance(img.v, boundary_limit_formula(g, v)) / std::max(1.0, img.v.norm());
  }));

  const double solver_tol = opt.tol.solver;
  out.push_back(run("barycenter-residual", "barycenter-zero", std::max(1e-10, solver_tol), 20 * s, seed, 5,
                    [solver_tol](Rng& rng) {
                      std::uniform_int_distribution<int> n(5, 30);
                      const auto cfg = random_configuration(static_cast<std::size_t>(n(rng)), 0.6, rng);
                      BarycenterOptions bo;
                      bo.tol = solver_tol;
                      return conformal_barycenter(cfg, bo).residual;
                    }));

  out.push_back(run("barycenter-equivariance", "barycenter-equivariance", 1e-7, 20 * s, seed, 6, [](Rng& rng) {
    std::uniform_int_distribution<int> n(5, 30);
    const auto cfg = random_configuration(static_cast<std::size_t>(n(rng)), 0.3, rng);
    const SL2H g = random_sl2h(rng, 1.0);
    const BallPoint b = conformal_barycenter(cfg).barycenter;
    const BallPoint gb = conformal_barycenter(pushforward(g, cfg)).barycenter;
    return (mobius_ball(g, b).y - gb.y).norm();
  }));

  out.push_back(run("normalization", "center-of-mass", 1e-9, 20 * s, seed, 7, [](Rng& rng) {
    std::uniform_int_distribution<int> n(5, 30);
    const auto cfg = random_configuration(static_cast<std::size_t>(n(rng)), 0.8, rng);
    return normalize_configuration(cfg).center_norm;
  }));

  SamplerOptions so;
  so.tol = opt.tol.closure;
  out.push_back(run("sampler-closure", "closure", opt.tol.closure, 100 * s, seed, 8, [so](Rng& rng) {
    return sample_closed(random_weights(6, rng), rng, so).closure_residual();
  }));

  const double rank_tol = opt.tol.rank;
  out.push_back(run("n4-degenerate", "n4-degenerate", 0.0, 100 * s, seed, 9, [so, rank_tol](Rng& rng) {
    const Polygon p = sample_closed(random_weights(4, rng), rng, so);
    return is_degenerate(classify(p, rank_tol)) ? 0.0 : 1.0;
  }));

  out.push_back(run("closure-implies-stability", "closure-stability", 0.0, 100 * s, seed, 10, [so](Rng& rng) {
    std::uniform_int_distribution<int> n(4, 9);
    const Polygon p = sample_closed(random_weights(static_cast<std::size_t>(n(rng)), rng), rng, so);
    std::vector<S4Point> pts;
    for (const auto& e : p.edges) pts.emplace_back(e);
    return is_stable(WeightedConfiguration(pts, p.r)) ? 0.0 : 1.0;
  }));

  out.push_back(run("gt-interlacing", "interlacing", 1e-8, 50 * s, seed, 11, [](Rng& rng) {
    std::uniform_int_distribution<int> n(2, 6);
    return interlacing_violation(gt_pattern(random_hermitian(static_cast<std::size_t>(n(rng)), rng)));
  }));

  out.push_back(run("eigenvalue-pairing", "eigenvalue-pairing", 1e-9, 50 * s, seed, 12, [](Rng& rng) {
    std::uniform_int_distribution<int> n(2, 6);
    return quat_hermitian_spectrum(random_hermitian(static_cast<std::size_t>(n(rng)), rng)).max_pair_gap;
  }));

  out.push_back(run("grassmann-spectra", "gram-spectra", 1e-9, 30 * s, seed, 13, [so](Rng& rng) {
    const Polygon p = sample_closed(random_weights(7, rng), rng, so);
    const QuatMatrix m = grassmann_from_polygon(p);
    const auto spectra = partial_gram_spectra(m);
    double worst = 0.0;
    for (const auto& sp : spectra) worst = std::max(worst, sp.mismatch);
    const auto from_spectra = diagonal_lengths_from_spectra(spectra);
    const auto direct = diagonal_lengths(polygon_from_grassmann(m)).lengths;
    for (std::size_t i = 0; i < direct.size(); ++i) worst = std::max(worst, std::abs(from_spectra[i] - direct[i]));
    return worst;
  }));

  out.push_back(run("psi-closure", "su4-sum", 1e-9, 30 * s, seed, 14, [so](Rng& rng) {
    return psi_map(sample_closed(random_weights(6, rng), rng, so)).sum_residual();
  }));

  out.push_back(run("psi-spectrum", "su4-spectrum", 1e-8, 30 * s, seed, 20, [so](Rng& rng) {
    const Polygon p = sample_closed(random_weights(6, rng), rng, so);
    return su4_spectrum_defect(psi_map(p), p.r);
  }));

  out.push_back(run("theta-fixed", "theta-fixed", 1e-12, 30 * s, seed, 21, [so](Rng& rng) {
    double worst = 0.0;
    for (const auto& a : psi_map(sample_closed(random_weights(6, rng), rng, so)).a)
      worst = std::max(worst, theta_defect(a));
    return worst;
  }));

  out.push_back(run("so2-invariants", "lagrange-identity", 1e-12, 200 * s, seed, 15, [](Rng& rng) {
    std::normal_distribution<double> g(0, 1);
    const auto p = so2_invariants({g(rng), g(rng)}, {g(rng), g(rng)});
    return std::abs(p[0] * p[1] - p[2] * p[2] - p[3] * p[3]) / std::max(1.0, p[0] * p[1]);
  }));

  out.push_back(run("bend-invariance", "bending", 1e-10, 30 * s, seed, 16, [so](Rng& rng) {
    const Polygon p = sample_closed(random_weights(7, rng), rng, so);
    std::uniform_int_distribution<std::size_t> pick(1, p.size() - 3);
    const std::size_t i = pick(rng);
    const Polygon q = bend(p, i, random_rotation_fixing(diagonal_lengths(p).diagonals[i - 1], rng));
    double worst = q.closure_residual();
    const auto l0 = diagonal_lengths(p).lengths, l1 = diagonal_lengths(q).lengths;
    for (std::size_t k = 0; k < l0.size(); ++k) worst = std::max(worst, std::abs(l0[k] - l1[k]));
    return worst;
  }));

  out.push_back(run("canonical-planar", "canonical-planar", 1e-10, 30 * s, seed, 17, [so, rank_tol](Rng& rng) {
    const Polygon p = sample_closed(random_weights(7, rng), rng, so);
    const Polygon c = canonical_planar(p);
    double worst = c.closure_residual();
    const auto l0 = diagonal_lengths(p).lengths, l1 = diagonal_lengths(c).lengths;
    for (std::size_t k = 0; k < l0.size(); ++k) worst = std::max(worst, std::abs(l0[k] - l1[k]));
    for (std::size_t k = 0; k < p.size(); ++k) worst = std::max(worst, std::abs(p.r[k] - c.r[k]));
    return classify(c, rank_tol).span_rank <= 2 ? worst : 1.0;
  }));

  out.push_back(run("line-stability", "line-stability", 0.0, 3 * s, seed, 18, [](Rng& rng) {
    const auto fx = line_fixtures(rng);
    const auto a = line_stability(fx[0]), b = line_stability(fx[1]), c = line_stability(fx[2]);
    const bool ok = a.stable && !b.semistable && c.semistable && !c.stable;
    return ok ? 0.0 : 1.0;
  }));

  if (opt.inject == "non-hermitian") {
    // Hermitian as a complex matrix but outside the image of nu, so its
    // eigenvalues cannot pair up.
    const Check c = run("injected-non-quaternionic", "eigenvalue-pairing", 1e-9, 1, seed, 19, [](Rng&) {
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      m.diagonal() << 4.0, 3.0, 2.0, 1.0;
      return pair_eigenvalues(jacobi_eigenvalues(m), 1e-9).max_pair_gap;
    });
    out.push_back(c);
  }
  return out;
}

} // namespace quatpoly::tools

#endif
