#ifndef QUATPOLY_HERMITIAN_EIGEN_HPP
#define QUATPOLY_HERMITIAN_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "quatpoly/errors.hpp"
#include "quatpoly/quat_matrix.hpp"

namespace quatpoly {

struct JacobiOptions
{
  /// Stop when the off-diagonal Frobenius norm drops below tol * max(1, |A|_F).
  double tol = 1e-12;
  int max_sweeps = 100;
};

/// Eigenvalues of a complex Hermitian matrix by cyclic Jacobi rotations,
/// sorted non-increasing. Only the Hermitian part of `a` is used.
inline std::vector<double> jacobi_eigenvalues(ComplexMatrix a, const JacobiOptions& opt = {})
{
  using cd = std::complex<double>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigenvalues: matrix is not square");
  a = (0.5 * (a + a.adjoint())).eval();

  const double scale = std::max(1.0, a.norm());
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = off_norm() <= opt.tol * scale;
  for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double beta = std::abs(a(p, q));
        if (beta == 0.0) continue;
        // G = diag(1, conj(e)) R on the (p, q) plane makes the pivot real and
        // then annihilates it with the real rotation R = [[c, -s], [s, c]].
        const cd e = a(p, q) / beta;
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * beta, alpha - gamma);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cd ec = std::conj(e);
        for (Eigen::Index k = 0; k < n; ++k) {
          const cd akp = a(k, p);
          const cd akq = a(k, q);
          a(k, p) = c * akp + s * ec * akq;
          a(k, q) = -s * akp + c * ec * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cd apk = a(p, k);
          const cd aqk = a(q, k);
          a(p, k) = c * apk + s * e * aqk;
          a(q, k) = -s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    converged = off_norm() <= opt.tol * scale;
  }
  if (!converged) throw convergence_error("jacobi_eigenvalues: off-diagonal norm did not reach tolerance");

  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

struct PairedSpectrum
{
  std::vector<double> values;  ///< one entry per coincident pair, non-increasing
  double max_pair_gap = 0.0;   ///< largest |lambda_{2k-1} - lambda_{2k}|
};

/// Collapses a sorted spectrum of even length into coincident pairs. Throws
/// invariant_error("eigenvalue-pairing") when a pair gap exceeds
/// gap_tol * max(1, |lambda|).
inline PairedSpectrum pair_eigenvalues(const std::vector<double>& sorted, double gap_tol = 1e-6)
{
  if (sorted.size() % 2 != 0) throw std::invalid_argument("pair_eigenvalues: odd spectrum length");
  PairedSpectrum out;
  out.values.reserve(sorted.size() / 2);
  for (std::size_t k = 0; k + 1 < sorted.size(); k += 2) {
    const double gap = std::abs(sorted[k] - sorted[k + 1]);
    const double mag = std::max({1.0, std::abs(sorted[k]), std::abs(sorted[k + 1])});
    if (gap > gap_tol * mag)
      throw invariant_error("eigenvalue-pairing", "eigenvalues " + format_residual(sorted[k]) + " and " +
                                                      format_residual(sorted[k + 1]) + " do not coincide");
    out.max_pair_gap = std::max(out.max_pair_gap, gap);
    out.values.push_back(0.5 * (sorted[k] + sorted[k + 1]));
  }
  return out;
}

struct QuatEigenOptions
{
  double hermitian_tol = 1e-10;
  double pair_gap_tol = 1e-6;
  JacobiOptions jacobi{};
};

/// Eigenvalues of nu(A) before pair collapse, non-increasing (length 2n).
inline std::vector<double> doubled_spectrum(const QuatMatrix& a, const QuatEigenOptions& opt = {})
{
  if (!a.square()) throw std::invalid_argument("doubled_spectrum: matrix is not square");
  const double defect = (a - a.adjoint()).frobenius_norm();
  if (!(defect <= opt.hermitian_tol * std::max(1.0, a.frobenius_norm())))
    throw domain_error("quaternionic matrix is not Hermitian (defect " + format_residual(defect) + ")");
  return jacobi_eigenvalues(nu_embed(a), opt.jacobi);
}

/// The n real eigenvalues of an n x n quaternionic Hermitian matrix,
/// non-increasing.
inline PairedSpectrum quat_hermitian_spectrum(const QuatMatrix& a, const QuatEigenOptions& opt = {})
{
  return pair_eigenvalues(doubled_spectrum(a, opt), opt.pair_gap_tol);
}

inline std::vector<double> quat_hermitian_eigenvalues(const QuatMatrix& a, const QuatEigenOptions& opt = {})
{
  return quat_hermitian_spectrum(a, opt).values;
}

} // namespace quatpoly

#endif // QUATPOLY_HERMITIAN_EIGEN_HPP
