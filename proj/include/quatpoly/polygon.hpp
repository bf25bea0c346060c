#ifndef QUATPOLY_POLYGON_HPP
#define QUATPOLY_POLYGON_HPP

// Closed n-gons in R^5 with prescribed side lengths.
//
// A polygon is a weight vector r and unit edge directions u_i; vertices are
// v_1 = 0, v_{k+1} = v_k + r_k u_k, and the polygon is closed when
// sum r_i u_i = 0. Diagonals are d_i = v_{i+2} - v_1 for i = 1..n-3.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quatpoly/errors.hpp"
#include "quatpoly/hyperbolic.hpp"
#include "quatpoly/random.hpp"

namespace quatpoly {

using Matrix5X = Eigen::Matrix<double, 5, Eigen::Dynamic>;

// ---------------------------------------------------------------- weights

struct WeightCheck
{
  bool admissible = false;
  bool nondegenerate = false;
};

inline constexpr std::size_t max_signed_sum_size = 24;

/// admissible: 2 max r_j <= sum r_i. nondegenerate: no signed sum
/// r_1 +- r_2 +- ... +- r_n lies within `tol` of zero. The 2^{n-1} sums are
/// enumerated by splitting the signs into two halves and matching sorted
/// partial sums, so each sum is formed with at most n additions.
inline WeightCheck check_weights(const std::vector<double>& r, bool allow_large = false, double tol = 1e-12)
{
  if (r.empty()) throw std::invalid_argument("check_weights: empty weight vector");
  for (double x : r)
    if (!(x > 0.0)) throw domain_error("check_weights: weights must be positive");
  if (r.size() > max_signed_sum_size && !allow_large)
    throw std::length_error("check_weights: n = " + std::to_string(r.size()) + " exceeds " +
                            std::to_string(max_signed_sum_size) + " (exhaustive signed-sum check refused)");

  WeightCheck out;
  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  out.admissible = 2.0 * *std::max_element(r.begin(), r.end()) <= total + tol;

  auto partial_sums = [&](std::size_t from, std::size_t to, double start) {
    const std::size_t m = to - from;
    std::vector<double> sums(std::size_t{1} << m);
    for (std::size_t mask = 0; mask < sums.size(); ++mask) {
      double s = start;
      for (std::size_t b = 0; b < m; ++b) s += (mask >> b & 1U) ? -r[from + b] : r[from + b];
      sums[mask] = s;
    }
    return sums;
  };
  const std::size_t mid = 1 + (r.size() - 1) / 2;
  const auto left = partial_sums(1, mid, r[0]);
  auto right = partial_sums(mid, r.size(), 0.0);
  std::sort(right.begin(), right.end());
  out.nondegenerate = std::none_of(left.begin(), left.end(), [&](double s) {
    const auto it = std::lower_bound(right.begin(), right.end(), -s - tol);
    return it != right.end() && *it <= -s + tol;
  });
  return out;
}

// ---------------------------------------------------------------- polygons

struct Polygon
{
  std::vector<double> r;
  std::vector<Vec5> edges; ///< unit directions u_i

  std::size_t size() const { return r.size(); }

  Vec5 closure_vector() const
  {
    Vec5 s = Vec5::Zero();
    for (std::size_t i = 0; i < size(); ++i) s += r[i] * edges[i];
    return s;
  }
  double closure_residual() const { return closure_vector().norm(); }

  /// v_1 .. v_n (v_1 = 0).
  std::vector<Vec5> vertices() const
  {
    std::vector<Vec5> v(size(), Vec5::Zero());
    for (std::size_t k = 1; k < size(); ++k) v[k] = v[k - 1] + r[k - 1] * edges[k - 1];
    return v;
  }

  Matrix5X edge_matrix() const
  {
    Matrix5X m(5, static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) m.col(static_cast<Eigen::Index>(i)) = edges[i];
    return m;
  }
};

/// Polygon through the given vertices (the last edge returns to the first
/// vertex), translated so that v_1 = 0.
inline Polygon polygon_from_vertices(const std::vector<Vec5>& v)
{
  if (v.size() < 2) throw std::invalid_argument("polygon_from_vertices: need at least two vertices");
  Polygon p;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Vec5 e = v[(k + 1) % v.size()] - v[k];
    const double len = e.norm();
    if (len == 0.0) throw domain_error("polygon_from_vertices: repeated vertex " + std::to_string(k + 1));
    p.r.push_back(len);
    p.edges.push_back(e / len);
  }
  return p;
}

struct SamplerOptions
{
  double tol = 1e-10;       ///< closure residual |sum r_i u_i|
  int max_steps = 500;      ///< Gauss-Newton steps per attempt
  int max_attempts = 100;   ///< fresh random starts before giving up
};

/// Random closed polygon with side lengths r. Starts from independent uniform
/// directions and drives sum r_i u_i to zero by minimum-norm Gauss-Newton
/// steps in the product of tangent spaces, renormalizing after each step.
template <class Rng>
Polygon sample_closed(const std::vector<double>& r, Rng& rng, const SamplerOptions& opt = {})
{
  if (r.size() < 2) throw std::invalid_argument("sample_closed: need n >= 2");
  for (double x : r)
    if (!(x > 0.0)) throw domain_error("sample_closed: weights must be positive");
  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  if (2.0 * *std::max_element(r.begin(), r.end()) > total + 1e-12)
    throw domain_error("sample_closed: weights are not admissible");

  auto step = [&](Polygon& p, Vec5& s) {
    Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
    for (std::size_t i = 0; i < r.size(); ++i)
      m += r[i] * r[i] * (Eigen::Matrix<double, 5, 5>::Identity() - p.edges[i] * p.edges[i].transpose());
    const Vec5 lambda = m.ldlt().solve(s);
    for (double t = 1.0; t > 1e-9; t *= 0.5) {
      Polygon trial = p;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const Vec5& u = p.edges[i];
        const Vec5 du = -t * r[i] * (lambda - u * u.dot(lambda));
        trial.edges[i] = (u + du).normalized();
      }
      const Vec5 st = trial.closure_vector();
      if (st.norm() < s.norm()) {
        p = std::move(trial);
        s = st;
        return true;
      }
    }
    return false;
  };

  Polygon p;
  p.r = r;
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    p.edges.clear();
    for (std::size_t i = 0; i < r.size(); ++i) p.edges.push_back(random_unit_vector<5>(rng));
    Vec5 s = p.closure_vector();
    for (int k = 0; k < opt.max_steps && s.norm() >= opt.tol; ++k)
      if (!step(p, s)) break;
    if (s.norm() < opt.tol) {
      // converging quadratically here, so a few more steps reach roundoff
      for (int k = 0; k < 3 && step(p, s);) ++k;
      return p;
    }
  }
  throw convergence_error("sample_closed: no closed polygon after " + std::to_string(opt.max_attempts) +
                          " attempts");
}

inline Polygon sample_closed(const std::vector<double>& r, std::uint64_t seed, const SamplerOptions& opt = {})
{
  auto rng = item_rng(seed, 0);
  return sample_closed(r, rng, opt);
}

// ---------------------------------------------------------------- classification

enum class DegeneracyKind { nondegenerate, type2, type3, linear };

inline std::string to_string(DegeneracyKind k)
{
  switch (k) {
  case DegeneracyKind::nondegenerate: return "nondegenerate";
  case DegeneracyKind::type2: return "type2";
  case DegeneracyKind::type3: return "type3";
  case DegeneracyKind::linear: return "linear";
  }
  return "unknown";
}

inline DegeneracyKind degeneracy_kind_from_string(const std::string& s)
{
  if (s == "nondegenerate") return DegeneracyKind::nondegenerate;
  if (s == "type2") return DegeneracyKind::type2;
  if (s == "type3") return DegeneracyKind::type3;
  if (s == "linear") return DegeneracyKind::linear;
  throw std::invalid_argument("unknown degeneracy kind '" + s + "'");
}

struct LocalModel
{
  int trivial_factor_dim = 0;
  std::string cone;
};

struct DegeneracyReport
{
  int span_rank = 0;
  DegeneracyKind kind = DegeneracyKind::nondegenerate;
  LocalModel local_model;
  std::vector<double> singular_values;
};

/// "(R^b)^e" with unicode superscripts; the outer exponent is dropped when 1.
inline std::string power_label(int base, int exponent)
{
  static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  auto superscript = [&](int x) {
    std::string s;
    for (char c : std::to_string(x)) s += sup[c - '0'];
    return s;
  };
  std::string out = "(R" + superscript(base) + ")";
  if (exponent != 1) out += superscript(exponent);
  return out;
}

/// Local model of the moduli space at a polygon of the given kind:
/// R^{trivial_factor_dim} x cone.
inline LocalModel local_model(DegeneracyKind kind, int n)
{
  switch (kind) {
  case DegeneracyKind::nondegenerate: return {4 * n - 15, "smooth"};
  case DegeneracyKind::type2: return {2 * n - 6, power_label(2, n - 4) + "/SO(2)"};
  case DegeneracyKind::type3: return {n - 3, power_label(3, n - 3) + "/SO(3)"};
  case DegeneracyKind::linear: return {0, "not modeled"};
  }
  return {};
}

namespace detail {
inline int numerical_rank(const Eigen::VectorXd& sv, double rank_tol)
{
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rank_tol * sv[0]) ++rank;
  return rank;
}
} // namespace detail

inline constexpr double default_rank_tolerance = 1e-8;

/// Degeneracy type from the numerical rank of the 5 x n matrix of edge
/// directions: rank 2 spans are fixed by SO(3) (type 3), rank 3 by SO(2)
/// (type 2), rank 4 and 5 have trivial stabilizer.
inline DegeneracyReport classify(const Polygon& p, double rank_tol = default_rank_tolerance)
{
  DegeneracyReport rep;
  Eigen::JacobiSVD<Matrix5X> svd(p.edge_matrix());
  const Eigen::VectorXd sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  rep.span_rank = detail::numerical_rank(sv, rank_tol);
  switch (rep.span_rank) {
  case 0:
  case 1: rep.kind = DegeneracyKind::linear; break;
  case 2: rep.kind = DegeneracyKind::type3; break;
  case 3: rep.kind = DegeneracyKind::type2; break;
  default: rep.kind = DegeneracyKind::nondegenerate;
  }
  rep.local_model = local_model(rep.kind, static_cast<int>(p.size()));
  return rep;
}

inline bool is_degenerate(const DegeneracyReport& rep) { return rep.kind != DegeneracyKind::nondegenerate; }

// ---------------------------------------------------------------- dimension counts

namespace detail {

/// Orthonormal basis (columns) of the complement of u inside span(basis).
inline Eigen::MatrixXd tangent_basis(const Eigen::MatrixXd& basis, const Eigen::VectorXd& u)
{
  const Eigen::VectorXd c = basis.transpose() * u; // u in basis coordinates
  const Eigen::Index s = basis.cols();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(s, s) - c * c.transpose() / c.squaredNorm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
  return basis * es.eigenvectors().rightCols(s - 1);
}

/// Dimension of the moduli space near p computed inside the subspace V
/// spanned by `basis`: n(s-1) tangent directions, minus the rank of the
/// linearized closure map, minus the orbit dimension of SO(V).
inline int local_dimension_in(const Polygon& p, const Eigen::MatrixXd& basis, double rank_tol)
{
  const Eigen::Index s = basis.cols();
  const Eigen::Index n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd jac(s, n * (s - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::MatrixXd t = tangent_basis(basis, p.edges[static_cast<std::size_t>(i)]);
    jac.block(0, i * (s - 1), s, s - 1) = p.r[static_cast<std::size_t>(i)] * basis.transpose() * t;
  }
  const int closure_rank = numerical_rank(Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues(), rank_tol);

  Eigen::MatrixXd orbit(n * s, s * (s - 1) / 2);
  Eigen::Index col = 0;
  for (Eigen::Index a = 0; a < s; ++a)
    for (Eigen::Index b = a + 1; b < s; ++b, ++col)
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd c = basis.transpose() * p.edges[static_cast<std::size_t>(i)];
        Eigen::VectorXd e = Eigen::VectorXd::Zero(s);
        e[a] = -c[b];
        e[b] = c[a];
        orbit.block(i * s, col, s, 1) = e;
      }
  const int orbit_dim = numerical_rank(Eigen::JacobiSVD<Eigen::MatrixXd>(orbit).singularValues(), rank_tol);
  return static_cast<int>(n * (s - 1)) - closure_rank - orbit_dim;
}

} // namespace detail

/// Rank of the differential of U -> sum r_i u_i on the product of tangent
/// spaces of S^4 (a 5 x 4n matrix).
inline int closure_jacobian_rank(const Polygon& p, double rank_tol = default_rank_tolerance)
{
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
  const Eigen::Index n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd jac(5, 4 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    jac.block(0, 4 * i, 5, 4) = p.r[static_cast<std::size_t>(i)] * detail::tangent_basis(id, p.edges[static_cast<std::size_t>(i)]);
  return detail::numerical_rank(Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues(), rank_tol);
}

/// Dimension of the SO(5) orbit of the edge tuple.
inline int orbit_dimension(const Polygon& p, double rank_tol = default_rank_tolerance)
{
  const Eigen::Index n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd orbit(5 * n, 10);
  Eigen::Index col = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b, ++col)
      for (Eigen::Index i = 0; i < n; ++i) {
        const Vec5& u = p.edges[static_cast<std::size_t>(i)];
        Vec5 e = Vec5::Zero();
        e[a] = -u[b];
        e[b] = u[a];
        orbit.block(5 * i, col, 5, 1) = e;
      }
  return detail::numerical_rank(Eigen::JacobiSVD<Eigen::MatrixXd>(orbit).singularValues(), rank_tol);
}

/// Dimension of the stratum of the moduli space through p: polygons with the
/// same span dimension, modulo rotations of that span. For nondegenerate p
/// this is the dimension of the moduli space itself.
inline int stratum_dimension(const Polygon& p, double rank_tol = default_rank_tolerance)
{
  const auto rep = classify(p, rank_tol);
  if (rep.span_rank >= 4) return detail::local_dimension_in(p, Eigen::MatrixXd::Identity(5, 5), rank_tol);
  Eigen::JacobiSVD<Matrix5X> svd(p.edge_matrix(), Eigen::ComputeThinU);
  const Eigen::MatrixXd basis = svd.matrixU().leftCols(rep.span_rank);
  return detail::local_dimension_in(p, basis, rank_tol);
}

struct AngleChartDims
{
  int angles = 0;
  int actions = 0;
  int total = 0;
};

/// Bending coordinates: one angle in [0, pi] for the first diagonal, a disk
/// for the second, three per further diagonal; one action per diagonal.
inline AngleChartDims angle_chart_dims(int n)
{
  if (n < 5) throw domain_error("angle_chart_dims: need n >= 5, got " + std::to_string(n));
  AngleChartDims d;
  d.angles = 1 + 2 + 3 * (n - 5);
  d.actions = n - 3;
  d.total = d.angles + d.actions;
  return d;
}

// ---------------------------------------------------------------- diagonals and bending

struct DiagonalData
{
  std::vector<Vec5> diagonals; ///< d_i = v_{i+2} - v_1
  std::vector<double> lengths;
};

inline DiagonalData diagonal_lengths(const Polygon& p)
{
  DiagonalData out;
  const auto v = p.vertices();
  for (std::size_t i = 2; i + 1 < v.size(); ++i) {
    out.diagonals.push_back(v[i] - v[0]);
    out.lengths.push_back(out.diagonals.back().norm());
  }
  return out;
}

using Mat5d = Eigen::Matrix<double, 5, 5>;

/// Rotates the vertex chain v_2..v_{i+1} about the line through v_1 and
/// v_{i+2} (i is the 1-based diagonal index). Equivalent to applying k to
/// the edges u_1..u_{i+1}.
inline Polygon bend(const Polygon& p, std::size_t i, const Mat5d& k, double tol = 1e-10)
{
  const std::size_t n = p.size();
  if (n < 4 || i < 1 || i > n - 3)
    throw std::out_of_range("bend: diagonal index " + std::to_string(i) + " out of range");
  if ((k.transpose() * k - Mat5d::Identity()).norm() > tol || k.determinant() < 0)
    throw domain_error("bend: k is not a rotation");
  const Vec5 d = diagonal_lengths(p).diagonals[i - 1];
  if ((k * d - d).norm() > tol * std::max(1.0, d.norm()))
    throw domain_error("bend: rotation does not fix diagonal " + std::to_string(i));
  Polygon out = p;
  for (std::size_t e = 0; e <= i; ++e) out.edges[e] = (k * p.edges[e]).normalized();
  return out;
}

/// Random rotation of R^5 fixing `axis` (any rotation if axis is zero).
template <class Rng>
Mat5d random_rotation_fixing(const Vec5& axis, Rng& rng)
{
  if (axis.norm() < 1e-14) return random_rotation<5>(rng);
  Mat5d basis = Mat5d::Identity();
  basis.col(0) = axis.normalized();
  Eigen::HouseholderQR<Mat5d> qr(basis);
  Mat5d q = qr.householderQ();
  if (q.col(0).dot(axis) < 0) q = -q;
  Mat5d inner = Mat5d::Identity();
  inner.bottomRightCorner<4, 4>() = random_rotation<4>(rng);
  return q * inner * q.transpose();
}

/// Lays the triangles (0, v_{k-1}, v_k) out in the (e1, e2) plane, each new
/// vertex on the opposite side of the line through 0 and v_{k-1} from
/// v_{k-2}. The result has the same side and diagonal lengths as p and
/// depends only on them.
inline Polygon canonical_planar(const Polygon& p, double tol = 1e-10)
{
  const std::size_t n = p.size();
  if (n < 4) throw std::invalid_argument("canonical_planar: need n >= 4");
  const auto diag = diagonal_lengths(p);
  // L[j] = |v_{j+2}|: r_1, l_1, ..., l_{n-3}, r_n
  std::vector<double> len{p.r[0]};
  len.insert(len.end(), diag.lengths.begin(), diag.lengths.end());
  len.push_back(p.r[n - 1]);

  for (std::size_t i = 1; i + 2 < n; ++i)
    if (!(len[i] > tol)) throw domain_error("canonical_planar: not generic, l_" + std::to_string(i) + " = 0");
  for (std::size_t i = 0; i + 3 < n; ++i) {
    const double a = len[i], c = p.r[i + 1], b = len[i + 1];
    if (std::abs(a + c - b) <= tol || std::abs(a + b - c) <= tol || std::abs(b + c - a) <= tol) {
      const std::string li = i == 0 ? "r_1" : "l_" + std::to_string(i);
      throw domain_error("canonical_planar: not generic, triangle (" + li + ", r_" + std::to_string(i + 2) +
                         ", l_" + std::to_string(i + 1) + ") is flat");
    }
  }

  std::vector<Eigen::Vector2d> v(n, Eigen::Vector2d::Zero());
  v[1] = Eigen::Vector2d(p.r[0], 0.0);
  for (std::size_t k = 2; k < n; ++k) {
    const double a = len[k - 2], b = len[k - 1], c = p.r[k - 1];
    const double cosphi = std::clamp((a * a + b * b - c * c) / (2 * a * b), -1.0, 1.0);
    const double phi = std::acos(cosphi);
    const Eigen::Vector2d& prev = v[k - 1];
    const Eigen::Vector2d& prev2 = v[k - 2];
    const double side = prev.x() * prev2.y() - prev.y() * prev2.x();
    const double s = (k == 2 || side < 0) ? 1.0 : -1.0;
    const Eigen::Rotation2Dd rot(s * phi);
    v[k] = (b / a) * (rot * prev);
  }
  std::vector<Vec5> v5;
  for (const auto& x : v) v5.push_back(make_vec5(Quaternion(x.x(), x.y()), 0.0));
  Polygon out = polygon_from_vertices(v5);
  out.r = p.r; // exact side lengths
  return out;
}

/// Planar polygon whose vertex v_i and v_{i+2} lie on opposite sides of the
/// line through v_1 and v_{i+1} for every i = 2..n-2.
inline bool satisfies_intersection_rule(const Polygon& p, double tol = 1e-10)
{
  const auto rep = classify(p);
  if (rep.span_rank > 2) return false;
  Eigen::JacobiSVD<Matrix5X> svd(p.edge_matrix(), Eigen::ComputeThinU);
  const Eigen::Matrix<double, 5, 2> basis = svd.matrixU().leftCols(2);
  std::vector<Eigen::Vector2d> v;
  for (const auto& x : p.vertices()) v.push_back(basis.transpose() * x);
  auto cross = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); };
  for (std::size_t i = 1; i + 2 < v.size(); ++i)
    if (cross(v[i + 1], v[i]) * cross(v[i + 1], v[i + 2]) > tol) return false;
  return true;
}

/// Matrix of pairwise vertex distances, a complete congruence invariant.
inline Eigen::MatrixXd vertex_distances(const Polygon& p)
{
  const auto v = p.vertices();
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) d(a, b) = (v[static_cast<std::size_t>(a)] - v[static_cast<std::size_t>(b)]).norm();
  return d;
}

// ---------------------------------------------------------------- invariants of the local models

/// Generators of the SO(2)-invariants of (X, Y) in R^2 x R^2 under
/// (h X, h^{-1} Y): with z_X = x1 + i x2 and z_Y = y1 + i y2,
/// p1 = |z_X|^2, p2 = |z_Y|^2 and p3 + i p4 = z_X z_Y, so p1 p2 = p3^2 + p4^2.
inline std::array<double, 4> so2_invariants(const Eigen::Vector2d& x, const Eigen::Vector2d& y)
{
  return {x.squaredNorm(), y.squaredNorm(), x[0] * y[0] - x[1] * y[1], x[1] * y[0] + x[0] * y[1]};
}

/// A point with the given invariants, for p1 > 0.
inline std::pair<Eigen::Vector2d, Eigen::Vector2d> so2_preimage(const std::array<double, 4>& p)
{
  if (!(p[0] > 0.0)) throw domain_error("so2_preimage: need p1 > 0");
  const double s = std::sqrt(p[0]);
  return {Eigen::Vector2d(s, 0.0), Eigen::Vector2d(p[2] / s, p[3] / s)};
}

struct So3Invariants
{
  double xx = 0.0, yy = 0.0, xy = 0.0;
  Eigen::Vector3d cross;
};

/// Inner products of (X, Y) in R^3 x R^3 and their cross product; they satisfy
/// (X.Y)^2 + |X x Y|^2 = |X|^2 |Y|^2.
inline So3Invariants so3_invariants(const Eigen::Vector3d& x, const Eigen::Vector3d& y)
{
  return {x.squaredNorm(), y.squaredNorm(), x.dot(y), x.cross(y)};
}

} // namespace quatpoly

#endif // QUATPOLY_POLYGON_HPP
