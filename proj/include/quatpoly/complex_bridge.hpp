#ifndef QUATPOLY_COMPLEX_BRIDGE_HPP
#define QUATPOLY_COMPLEX_BRIDGE_HPP

// The complex picture: the involution theta(C) = -J conj(C) J whose fixed
// points are the quaternionic matrices, the map from polygons to traceless
// Hermitian 4 x 4 configurations, and weighted stability of line
// configurations in CP^3.
//
// J = [[0, I], [-I, 0]] in the block layout of nu_embed, so coordinate k of
// C^{2n} is paired with coordinate k + n. A vector of H^n with entries
// A_k + B_k j corresponds to the complex column (A, -conj B) of nu.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quatpoly/errors.hpp"
#include "quatpoly/gt_grassmann.hpp"
#include "quatpoly/hermitian_eigen.hpp"
#include "quatpoly/hyperbolic.hpp"
#include "quatpoly/polygon.hpp"
#include "quatpoly/quat_matrix.hpp"

namespace quatpoly {

using cdouble = std::complex<double>;
using LineBasis = Eigen::Matrix<cdouble, 4, 2>;

// ---------------------------------------------------------------- theta

inline ComplexMatrix symplectic_j(Eigen::Index m)
{
  if (m % 2 != 0) throw std::invalid_argument("symplectic_j: odd dimension");
  const Eigen::Index h = m / 2;
  ComplexMatrix j = ComplexMatrix::Zero(m, m);
  j.topRightCorner(h, h).setIdentity();
  j.bottomLeftCorner(h, h) = -ComplexMatrix::Identity(h, h);
  return j;
}

/// theta(C) = -J conj(C) J (with J of the matching size on each side).
inline ComplexMatrix theta_matrix(const ComplexMatrix& c)
{
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) throw std::invalid_argument("theta_matrix: odd dimension");
  return -symplectic_j(c.rows()) * c.conjugate() * symplectic_j(c.cols());
}

inline double theta_defect(const ComplexMatrix& c) { return (theta_matrix(c) - c).norm(); }

// ---------------------------------------------------------------- lines in CP^3

namespace detail {

/// Orthonormal basis of the column span, `rank` columns.
inline ComplexMatrix span_basis(const ComplexMatrix& m, Eigen::Index rank)
{
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

inline Eigen::Index span_rank(const ComplexMatrix& m, double tol)
{
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * sv[0]) ++r;
  return r;
}

inline void require_line(const ComplexMatrix& l, const char* who)
{
  if (l.rows() != 4 || l.cols() != 2) throw std::invalid_argument(std::string(who) + ": a line is a 4x2 matrix");
  if (span_rank(l, 1e-10) != 2) throw domain_error(std::string(who) + ": matrix does not have rank 2");
}

} // namespace detail

/// Orthonormal basis of the line spanned by the columns of l.
inline LineBasis line_basis(const LineBasis& l)
{
  detail::require_line(l, "line_basis");
  return detail::span_basis(l, 2);
}

/// theta on lines: span(J conj(L)).
inline LineBasis theta_grassmann(const LineBasis& l)
{
  detail::require_line(l, "theta_grassmann");
  const ComplexMatrix img = symplectic_j(4) * l.conjugate();
  return detail::span_basis(img, 2);
}

/// Sines of the principal angles between two lines (0 when the spans agree),
/// from the part of b outside a.
inline Eigen::Vector2d principal_angle_sines(const LineBasis& a, const LineBasis& b)
{
  const LineBasis qa = line_basis(a), qb = line_basis(b);
  const LineBasis outside = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<LineBasis> svd(outside);
  return svd.singularValues();
}

inline bool same_line(const LineBasis& a, const LineBasis& b, double tol = 1e-10)
{
  return principal_angle_sines(a, b).maxCoeff() <= tol;
}

/// The theta-fixed line nu((q1; q2)) attached to a point of HP^1.
inline LineBasis hp1_to_line(const HP1Point& p)
{
  return nu_embed(QuatMatrix(2, 1, {p.q1, p.q2}));
}

// ---------------------------------------------------------------- psi

struct Su4Configuration
{
  std::vector<ComplexMatrix> a; ///< traceless Hermitian 4x4 matrices

  double sum_residual() const
  {
    if (a.empty()) return 0.0;
    ComplexMatrix s = ComplexMatrix::Zero(4, 4);
    for (const auto& m : a) s += m;
    return s.norm();
  }
};

/// A_i = nu(B_i) with B_i the traceless quaternionic Hermitian matrix of the
/// edge r_i u_i. Requires |sum r_i u_i| <= closure_tol.
inline Su4Configuration psi_map(const Polygon& p, double closure_tol = 1e-9)
{
  const double res = p.closure_residual();
  if (!(res <= closure_tol))
    throw domain_error("psi_map: polygon is not closed (residual " + format_residual(res) + ")");
  Su4Configuration out;
  for (std::size_t i = 0; i < p.size(); ++i) out.a.push_back(nu_embed(edge_to_matrix(p.r[i] * p.edges[i])));
  return out;
}

/// Largest deviation of the eigenvalues of A_i from (r_i, r_i, -r_i, -r_i).
inline double su4_spectrum_defect(const Su4Configuration& c, const std::vector<double>& r)
{
  if (c.a.size() != r.size()) throw std::invalid_argument("su4_spectrum_defect: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto ev = jacobi_eigenvalues(c.a[i]);
    const double expect[4] = {r[i], r[i], -r[i], -r[i]};
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev[static_cast<std::size_t>(k)] - expect[k]));
  }
  return worst;
}

// ---------------------------------------------------------------- stability

struct LineConfiguration
{
  std::vector<LineBasis> lines;
  std::vector<double> weights; ///< normalized to sum 2 by line_stability
};

struct StabilityOptions
{
  double incidence_tol = 1e-10; ///< determinant / residual threshold on orthonormal bases
  double eps = 1e-9;            ///< slack in the weight inequalities
};

struct StabilityWitness
{
  int condition = 0;            ///< 1 points, 2 lines, 3 planes
  std::string kind;             ///< "point", "line", "plane"
  double value = 0.0;           ///< left-hand side of the inequality
  double bound = 0.0;           ///< 1, 2 or 1
  bool breaks_stability = false;     ///< value >= bound
  bool breaks_semistability = false; ///< value > bound
  std::vector<std::size_t> lines;    ///< configuration lines counted (0-based)
  ComplexMatrix basis;               ///< 4x1, 4x2 or 4x3 orthonormal basis
};

struct StabilityReport
{
  bool stable = false;
  bool semistable = false;
  /// Conditions are evaluated on a finite candidate set of points, lines and
  /// planes (see line_stability); a violation found is genuine, but a pass
  /// certifies stability relative to that set only.
  bool relative_to_candidate_set = true;
  std::size_t candidate_points = 0;
  std::size_t candidate_lines = 0;
  std::size_t candidate_planes = 0;
  double max_point_sum = 0.0;
  double max_line_sum = 0.0;
  double max_plane_sum = 0.0;
  std::vector<StabilityWitness> witnesses; ///< violations of strict stability
};

namespace detail {

/// Orthonormal basis of the intersection of two subspaces given by
/// orthonormal bases; `dim` is the expected dimension.
inline ComplexMatrix subspace_intersection(const ComplexMatrix& a, const ComplexMatrix& b, Eigen::Index dim)
{
  ComplexMatrix stacked(4, a.cols() + b.cols());
  stacked << a, -b;
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const ComplexMatrix null = svd.matrixV().rightCols(dim);
  return span_basis(a * null.topRows(a.cols()), dim);
}

inline double residual_outside(const ComplexMatrix& basis, const ComplexMatrix& x)
{
  return (x - basis * (basis.adjoint() * x)).norm();
}

inline std::array<cdouble, 6> plucker(const LineBasis& l)
{
  auto m = [&](int i, int j) { return l(i, 0) * l(j, 1) - l(j, 0) * l(i, 1); };
  return {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)};
}

/// Symmetric bilinear form with <p, q> = 0 iff the lines meet.
inline cdouble plucker_pairing(const Eigen::Matrix<cdouble, 6, 1>& p, const Eigen::Matrix<cdouble, 6, 1>& q)
{
  return p[0] * q[5] - p[1] * q[4] + p[2] * q[3] + p[3] * q[2] - p[4] * q[1] + p[5] * q[0];
}

/// Line with the given (decomposable) Plücker vector.
inline LineBasis line_from_plucker(const Eigen::Matrix<cdouble, 6, 1>& p)
{
  Eigen::Matrix<cdouble, 4, 4> m = Eigen::Matrix<cdouble, 4, 4>::Zero();
  const int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 6; ++k) {
    m(idx[k][0], idx[k][1]) = p[k];
    m(idx[k][1], idx[k][0]) = -p[k];
  }
  return span_basis(m, 2);
}

/// Common transversals of four lines in general position (two, counted
/// over C). Returns nothing if the four Plücker conditions are dependent.
inline std::vector<LineBasis> common_transversals(const std::array<LineBasis, 4>& ls)
{
  Eigen::Matrix<cdouble, 4, 6> a;
  for (int r = 0; r < 4; ++r) {
    const auto p = plucker(ls[static_cast<std::size_t>(r)]);
    Eigen::Matrix<cdouble, 6, 1> q;
    for (int k = 0; k < 6; ++k) q[k] = p[static_cast<std::size_t>(k)];
    for (int k = 0; k < 6; ++k) {
      Eigen::Matrix<cdouble, 6, 1> e = Eigen::Matrix<cdouble, 6, 1>::Zero();
      e[k] = 1.0;
      a(r, k) = plucker_pairing(q, e);
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix<cdouble, 4, 6>> svd(a, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (sv[3] < 1e-10 * sv[0]) return {};
  const Eigen::Matrix<cdouble, 6, 1> x = svd.matrixV().col(4);
  const Eigen::Matrix<cdouble, 6, 1> y = svd.matrixV().col(5);
  // Klein quadric on a x + b y: a^2 <x,x> + 2ab <x,y> + b^2 <y,y> = 0 (up to 1/2)
  const cdouble qxx = plucker_pairing(x, x), qxy = plucker_pairing(x, y), qyy = plucker_pairing(y, y);
  std::vector<Eigen::Matrix<cdouble, 6, 1>> sols;
  if (std::abs(qyy) >= std::abs(qxx)) {
    if (std::abs(qyy) < 1e-14) return {};
    const cdouble disc = std::sqrt(qxy * qxy - qxx * qyy);
    for (const cdouble b : {(-qxy + disc) / qyy, (-qxy - disc) / qyy}) sols.push_back(x + b * y);
  } else {
    const cdouble disc = std::sqrt(qxy * qxy - qxx * qyy);
    for (const cdouble a2 : {(-qxy + disc) / qxx, (-qxy - disc) / qxx}) sols.push_back(a2 * x + y);
  }
  std::vector<LineBasis> out;
  for (const auto& s : sols) out.push_back(line_from_plucker(s));
  return out;
}

} // namespace detail

/// Weighted stability of n lines in CP^3 with weights summing to 2:
///   (i)   lines through any point weigh < 1,
///   (ii)  for any line l, the lines meeting l (other than l itself) plus
///         twice the lines equal to l weigh < 2,
///   (iii) lines inside any plane weigh < 1;
/// semistability replaces < by <=. The sums are evaluated over
///   points: one point on each line and every pairwise intersection point;
///   lines:  the configuration lines, the lines joining two candidate points,
///           the transversal from each candidate point to each pair of
///           configuration lines, and the common transversals of every
///           four configuration lines;
///   planes: the span of each intersecting pair, and a plane through each
///           line (spanned with a coordinate vector off the line).
inline StabilityReport line_stability(const LineConfiguration& cfg, const StabilityOptions& opt = {})
{
  const std::size_t n = cfg.lines.size();
  if (n == 0 || cfg.weights.size() != n) throw std::invalid_argument("line_stability: need one weight per line");
  double total = 0.0;
  for (double w : cfg.weights) {
    if (!(w > 0.0)) throw domain_error("line_stability: weights must be positive");
    total += w;
  }
  std::vector<double> r;
  for (double w : cfg.weights) r.push_back(2.0 * w / total);

  std::vector<ComplexMatrix> q;
  for (const auto& l : cfg.lines) q.push_back(line_basis(l));

  const double tol = opt.incidence_tol;
  auto meets = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(4, 4);
    m << a, b;
    return std::abs(m.determinant()) < tol;
  };
  auto coincide = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    return detail::residual_outside(a, b) < std::sqrt(tol);
  };

  StabilityReport rep;
  auto record = [&](int condition, const char* kind, double value, double bound, std::vector<std::size_t> lines,
                    const ComplexMatrix& basis) {
    if (value >= bound - opt.eps) {
      StabilityWitness w;
      w.condition = condition;
      w.kind = kind;
      w.value = value;
      w.bound = bound;
      w.breaks_stability = true;
      w.breaks_semistability = value > bound + opt.eps;
      w.lines = std::move(lines);
      w.basis = basis;
      const bool dup = std::any_of(rep.witnesses.begin(), rep.witnesses.end(), [&](const StabilityWitness& o) {
        return o.condition == w.condition && o.lines == w.lines;
      });
      if (!dup) rep.witnesses.push_back(std::move(w));
    }
  };

  // candidate points
  std::vector<ComplexMatrix> points;
  for (std::size_t i = 0; i < n; ++i) points.push_back(q[i].col(0));
  std::vector<std::pair<std::size_t, std::size_t>> meeting_pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (meets(q[i], q[j]) && !coincide(q[i], q[j])) {
        meeting_pairs.emplace_back(i, j);
        points.push_back(detail::subspace_intersection(q[i], q[j], 1));
      }
  rep.candidate_points = points.size();
  for (const auto& p : points) {
    double s = 0.0;
    std::vector<std::size_t> through;
    for (std::size_t i = 0; i < n; ++i)
      if (detail::residual_outside(q[i], p) < std::sqrt(tol)) {
        s += r[i];
        through.push_back(i);
      }
    rep.max_point_sum = std::max(rep.max_point_sum, s);
    record(1, "point", s, 1.0, through, p);
  }

  // candidate lines
  std::vector<ComplexMatrix> cand(q.begin(), q.end());
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      ComplexMatrix m(4, 2);
      m << points[a], points[b];
      if (detail::span_rank(m, 1e-8) == 2) cand.push_back(detail::span_basis(m, 2));
    }
  for (const auto& p : points)
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::residual_outside(q[i], p) < std::sqrt(tol)) continue;
      ComplexMatrix pi(4, 3);
      pi << p, q[i];
      const ComplexMatrix plane_i = detail::span_basis(pi, 3);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (detail::residual_outside(q[j], p) < std::sqrt(tol)) continue;
        ComplexMatrix pj(4, 3);
        pj << p, q[j];
        const ComplexMatrix plane_j = detail::span_basis(pj, 3);
        if (detail::residual_outside(plane_i, plane_j) < std::sqrt(tol)) continue; // same plane
        cand.push_back(detail::subspace_intersection(plane_i, plane_j, 2));
      }
    }
  if (n >= 4) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t d = c + 1; d < n; ++d)
            for (const auto& t : detail::common_transversals({LineBasis(q[a]), LineBasis(q[b]), LineBasis(q[c]), LineBasis(q[d])}))
              cand.push_back(t);
  }
  rep.candidate_lines = cand.size();
  for (const auto& l : cand) {
    double s = 0.0;
    std::vector<std::size_t> counted;
    for (std::size_t i = 0; i < n; ++i) {
      if (coincide(q[i], l)) {
        s += 2.0 * r[i];
        counted.push_back(i);
      } else if (meets(q[i], l)) {
        s += r[i];
        counted.push_back(i);
      }
    }
    rep.max_line_sum = std::max(rep.max_line_sum, s);
    record(2, "line", s, 2.0, counted, l);
  }

  // candidate planes
  std::vector<ComplexMatrix> planes;
  for (const auto& [i, j] : meeting_pairs) {
    ComplexMatrix m(4, 4);
    m << q[i], q[j];
    planes.push_back(detail::span_basis(m, 3));
  }
  for (std::size_t i = 0; i < n; ++i) {
    // the coordinate vector farthest from the line completes a plane
    Eigen::Index best = 0;
    double far = -1.0;
    for (Eigen::Index k = 0; k < 4; ++k) {
      const double d = detail::residual_outside(q[i], ComplexMatrix::Identity(4, 4).col(k));
      if (d > far) { far = d; best = k; }
    }
    ComplexMatrix m(4, 3);
    m << q[i], ComplexMatrix::Identity(4, 4).col(best);
    planes.push_back(detail::span_basis(m, 3));
  }
  rep.candidate_planes = planes.size();
  for (const auto& pl : planes) {
    double s = 0.0;
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < n; ++i)
      if (detail::residual_outside(pl, q[i]) < std::sqrt(tol)) {
        s += r[i];
        inside.push_back(i);
      }
    rep.max_plane_sum = std::max(rep.max_plane_sum, s);
    record(3, "plane", s, 1.0, inside, pl);
  }

  rep.stable = rep.witnesses.empty();
  rep.semistable = std::none_of(rep.witnesses.begin(), rep.witnesses.end(),
                                [](const StabilityWitness& w) { return w.breaks_semistability; });
  return rep;
}

/// g applied to every line.
inline LineConfiguration transform_lines(const Eigen::Matrix<cdouble, 4, 4>& g, const LineConfiguration& cfg)
{
  LineConfiguration out = cfg;
  for (auto& l : out.lines) l = g * l;
  return out;
}

} // namespace quatpoly

#endif // QUATPOLY_COMPLEX_BRIDGE_HPP
