#ifndef QUATPOLY_GT_GRASSMANN_HPP
#define QUATPOLY_GT_GRASSMANN_HPP

// Gel'fand-Tsetlin patterns of quaternionic Hermitian matrices and the
// reduction maps between the quaternionic Grassmannian Gr_H(2, n) and
// polygons in R^5.
//
// Conventions. A Grassmann point is stored as an n x 2 quaternionic matrix M
// whose rows are (a_j, b_j); the plane is the span of the two columns in H^n
// under right scalar multiplication. Sp(2) acts by M -> M U and the torus
// Sigma^n = Sp(1)^n by left multiplication of each row by a unit quaternion.
// The traceless 2 x 2 Hermitian matrix [[t, q], [conj q, -t]] is identified
// with (t, q.w, q.x, q.y, q.z) in R^5; its eigenvalues are +-|(t, q)|.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "quatpoly/errors.hpp"
#include "quatpoly/hermitian_eigen.hpp"
#include "quatpoly/hyperbolic.hpp"
#include "quatpoly/polygon.hpp"

namespace quatpoly {

// ---------------------------------------------------------------- GT patterns

/// rows[j-1] holds the j eigenvalues of the leading j x j block,
/// non-increasing.
struct GTPattern
{
  std::vector<std::vector<double>> rows;

  std::size_t size() const { return rows.size(); }
};

/// Largest amount by which lambda_i^{(j)} >= lambda_i^{(j-1)} >= lambda_{i+1}^{(j)}
/// fails (0 when the pattern interlaces).
inline double interlacing_violation(const GTPattern& g)
{
  double worst = 0.0;
  for (std::size_t j = 1; j < g.rows.size(); ++j) {
    const auto& up = g.rows[j];
    const auto& down = g.rows[j - 1];
    if (up.size() != j + 1 || down.size() != j) throw std::invalid_argument("interlacing_violation: ragged shape");
    for (std::size_t i = 0; i < j; ++i) {
      worst = std::max(worst, down[i] - up[i]);
      worst = std::max(worst, up[i + 1] - down[i]);
    }
  }
  return worst;
}

/// Eigenvalues of every leading block A^{(j)}. Throws
/// invariant_error("interlacing") if the result does not interlace to `tol`.
inline GTPattern gt_pattern(const QuatMatrix& a, double tol = 1e-8, const QuatEigenOptions& opt = {})
{
  if (!a.square()) throw std::invalid_argument("gt_pattern: matrix is not square");
  GTPattern g;
  for (std::size_t j = 1; j <= a.rows(); ++j) g.rows.push_back(quat_hermitian_eigenvalues(a.leading(j), opt));
  const double v = interlacing_violation(g);
  const double scale = std::max(1.0, a.frobenius_norm());
  if (v > tol * scale) throw invariant_error("interlacing", "GT pattern violates interlacing by " + format_residual(v));
  return g;
}

// ---------------------------------------------------------------- Gram and moment maps

/// Rows of W are homogeneous coordinates w^{(i)} in H^p of n points of
/// HP^{p-1}; returns the p x p matrix sum_i w^{(i)} w^{(i)*}, i.e. entry
/// (l, m) = sum_i w_l^{(i)} conj(w_m^{(i)}).
inline QuatMatrix gram_map(const QuatMatrix& w)
{
  const std::size_t n = w.rows(), p = w.cols();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < p; ++l) s += w(i, l).norm2();
    if (s == 0.0) throw domain_error("gram_map: row " + std::to_string(i + 1) + " is zero");
  }
  QuatMatrix g(p, p);
  for (std::size_t l = 0; l < p; ++l)
    for (std::size_t m = 0; m < p; ++m) {
      Quaternion s;
      for (std::size_t i = 0; i < n; ++i) s += w(i, l) * w(i, m).conj();
      g(l, m) = s;
    }
  return g;
}

/// Each row scaled to unit norm (the representative used by gram_map for
/// projective points).
inline QuatMatrix normalize_rows(QuatMatrix w)
{
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < w.cols(); ++l) s += w(i, l).norm2();
    if (s == 0.0) throw domain_error("normalize_rows: row " + std::to_string(i + 1) + " is zero");
    s = std::sqrt(s);
    for (std::size_t l = 0; l < w.cols(); ++l) w(i, l) /= s;
  }
  return w;
}

/// x_j = |a_j|^2 + |b_j|^2.
inline std::vector<double> tri_momentum(const QuatMatrix& m)
{
  std::vector<double> x(m.rows(), 0.0);
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t c = 0; c < m.cols(); ++c) x[j] += m(j, c).norm2();
  return x;
}

/// Left multiplication of row j by s[j].
inline QuatMatrix torus_action(const std::vector<Quaternion>& s, QuatMatrix m)
{
  if (s.size() != m.rows()) throw std::invalid_argument("torus_action: size mismatch");
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t c = 0; c < m.cols(); ++c) m(j, c) = s[j] * m(j, c);
  return m;
}

// ---------------------------------------------------------------- edges as traceless blocks

inline QuatMatrix edge_to_matrix(const Vec5& e)
{
  const Quaternion q(e[1], e[2], e[3], e[4]);
  return QuatMatrix(2, 2, {Quaternion(e[0]), q, q.conj(), Quaternion(-e[0])});
}

/// Traceless part of a 2 x 2 quaternionic Hermitian matrix as a vector of R^5.
inline Vec5 matrix_to_edge(const QuatMatrix& b)
{
  if (b.rows() != 2 || b.cols() != 2) throw std::invalid_argument("matrix_to_edge: need a 2x2 matrix");
  const Quaternion& q = b(0, 1);
  Vec5 e;
  e << 0.5 * (b(0, 0).w - b(1, 1).w), q.w, q.x, q.y, q.z;
  return e;
}

/// Row j contributes the block row_j^* row_j = [[|a|^2, conj(a) b], [conj(b) a, |b|^2]].
inline QuatMatrix row_block(const QuatMatrix& m, std::size_t j)
{
  const Quaternion& a = m(j, 0);
  const Quaternion& b = m(j, 1);
  return QuatMatrix(2, 2, {Quaternion(a.norm2()), a.conj() * b, b.conj() * a, Quaternion(b.norm2())});
}

namespace detail {
inline void require_grassmann(const QuatMatrix& m, const char* who)
{
  if (m.cols() != 2) throw std::invalid_argument(std::string(who) + ": Grassmann point must be n x 2");
}
} // namespace detail

/// |M^*M - (tr/2) I|, the distance of the total Gram from a scalar matrix.
inline double level_set_residual(const QuatMatrix& m)
{
  detail::require_grassmann(m, "level_set_residual");
  const QuatMatrix g = m.adjoint() * m;
  const double half = 0.5 * (g(0, 0).w + g(1, 1).w);
  return (g - QuatMatrix::identity(2) * half).frobenius_norm();
}

/// Polygon with edges r_j u_j = traceless part of row_block(j): side lengths
/// r_j = (|a_j|^2 + |b_j|^2) / 2. Requires M^*M to be a multiple of the
/// identity up to tol * tr(M^*M), which is exactly closure.
inline Polygon polygon_from_grassmann(const QuatMatrix& m, double tol = 1e-8)
{
  detail::require_grassmann(m, "polygon_from_grassmann");
  const QuatMatrix g = m.adjoint() * m;
  const double trace = g(0, 0).w + g(1, 1).w;
  const double res = level_set_residual(m);
  if (!(res <= tol * std::max(1.0, trace)))
    throw domain_error("polygon_from_grassmann: M*M is not scalar (off-diagonal residual " + format_residual(res) + ")");
  Polygon p;
  for (std::size_t j = 0; j < m.rows(); ++j) {
    const Vec5 e = matrix_to_edge(row_block(m, j));
    const double r = 0.5 * (m(j, 0).norm2() + m(j, 1).norm2());
    if (r == 0.0) throw domain_error("polygon_from_grassmann: row " + std::to_string(j + 1) + " is zero");
    p.r.push_back(r);
    p.edges.push_back(e / e.norm());
  }
  return p;
}

/// A Grassmann point whose associated polygon is p (inverse of
/// polygon_from_grassmann up to the torus action).
inline QuatMatrix grassmann_from_polygon(const Polygon& p)
{
  QuatMatrix m(p.size(), 2);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double r = p.r[j];
    const Vec5 e = r * p.edges[j];
    const double t = e[0];
    const Quaternion q(e[1], e[2], e[3], e[4]);
    if (r + t >= r - t) {
      const double a = std::sqrt(r + t);
      m(j, 0) = Quaternion(a);
      m(j, 1) = q / a;
    } else {
      const double b = std::sqrt(r - t);
      m(j, 1) = Quaternion(b);
      m(j, 0) = q.conj() / b;
    }
  }
  return m;
}

/// M (M^*M)^{-1/2}: the nearest orthonormal 2-frame, which lies on the
/// closure level set.
inline QuatMatrix polar_normalize(const QuatMatrix& m)
{
  detail::require_grassmann(m, "polar_normalize");
  const Hermitian2 g = Hermitian2::from_matrix(m.adjoint() * m);
  if (!(g.det() > 0.0)) throw domain_error("polar_normalize: M does not have rank 2");
  return m * g.sqrt().inverse().matrix();
}

template <class Rng>
QuatMatrix random_grassmann(std::size_t n, Rng& rng)
{
  QuatMatrix m(n, 2);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < 2; ++c) m(j, c) = random_gaussian_quaternion(rng);
  return m;
}

struct PartialSpectrum
{
  double lambda1 = 0.0; ///< eigenvalues of M_i^* M_i, lambda1 >= lambda2
  double lambda2 = 0.0;
  double mismatch = 0.0; ///< against the nonzero spectrum of M_i M_i^*
};

/// For each i, the spectrum of M_i^* M_i (M_i = first i rows) compared with
/// the nonzero eigenvalues of the i x i matrix M_i M_i^*. Throws
/// invariant_error("gram-spectra") if they differ by more than
/// tol * max(1, lambda1).
inline std::vector<PartialSpectrum> partial_gram_spectra(const QuatMatrix& m, double tol = 1e-9,
                                                         const QuatEigenOptions& opt = {})
{
  detail::require_grassmann(m, "partial_gram_spectra");
  std::vector<PartialSpectrum> out;
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    const QuatMatrix mi = m.block(0, 0, i, 2);
    const auto small = quat_hermitian_eigenvalues(mi.adjoint() * mi, opt);
    const auto big = quat_hermitian_eigenvalues(mi * mi.adjoint(), opt);
    PartialSpectrum s{small[0], small[1], 0.0};
    const std::size_t k = std::min<std::size_t>(i, 2);
    for (std::size_t c = 0; c < k; ++c) s.mismatch = std::max(s.mismatch, std::abs(small[c] - big[c]));
    if (i == 1) s.mismatch = std::max(s.mismatch, std::abs(small[1]));
    for (std::size_t c = k; c < big.size(); ++c) s.mismatch = std::max(s.mismatch, std::abs(big[c]));
    if (s.mismatch > tol * std::max(1.0, s.lambda1))
      throw invariant_error("gram-spectra", "spectra of M_i*M_i and M_iM_i* differ by " + format_residual(s.mismatch) +
                                                " at i = " + std::to_string(i));
    out.push_back(s);
  }
  return out;
}

/// Diagonal lengths l_i = (lambda1 - lambda2) / 2 of the partial Gram at
/// i + 1 rows, i = 1..n-3.
inline std::vector<double> diagonal_lengths_from_spectra(const std::vector<PartialSpectrum>& s)
{
  std::vector<double> out;
  for (std::size_t i = 1; i + 2 < s.size(); ++i) out.push_back(0.5 * (s[i].lambda1 - s[i].lambda2));
  return out;
}

} // namespace quatpoly

#endif // QUATPOLY_GT_GRASSMANN_HPP
