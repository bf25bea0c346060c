#ifndef QUATPOLY_QUAT_MATRIX_HPP
#define QUATPOLY_QUAT_MATRIX_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "quatpoly/errors.hpp"
#include "quatpoly/quaternion.hpp"

namespace quatpoly {

using ComplexMatrix = Eigen::MatrixXcd;

/// Dense quaternionic matrix, row-major.
///
/// H^n is treated as a right H-module: scalars multiply vectors on the right
/// and matrices act on column vectors from the left.
class QuatMatrix
{
public:
  QuatMatrix() = default;
  QuatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
  {}
  QuatMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
  {
    if (data_.size() != rows * cols)
      throw std::invalid_argument("QuatMatrix: entry count does not match shape");
  }

  static QuatMatrix identity(std::size_t n)
  {
    QuatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Quaternion>& entries() const { return data_; }

  /// Conjugate transpose M* = conj(M)^t.
  QuatMatrix adjoint() const
  {
    QuatMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
    return out;
  }

  QuatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
  {
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    QuatMatrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  /// Upper-left j x j corner.
  QuatMatrix leading(std::size_t j) const { return block(0, 0, j, j); }

  double frobenius_norm() const
  {
    double s = 0.0;
    for (const auto& q : data_) s += q.norm2();
    return std::sqrt(s);
  }

  bool is_hermitian(double tol = default_tolerance) const
  {
    return square() && (*this - adjoint()).frobenius_norm() <= tol;
  }

  QuatMatrix& operator+=(const QuatMatrix& o)
  {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  QuatMatrix& operator-=(const QuatMatrix& o)
  {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  QuatMatrix& operator*=(double s)
  {
    for (auto& q : data_) q *= s;
    return *this;
  }

  friend QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
  friend QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
  friend QuatMatrix operator*(QuatMatrix a, double s) { return a *= s; }
  friend QuatMatrix operator*(double s, QuatMatrix a) { return a *= s; }

  friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b)
  {
    if (a.cols_ != b.rows_) throw std::invalid_argument("QuatMatrix: inner dimensions differ");
    QuatMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Quaternion& ark = a(r, k);
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  /// Right scalar multiplication M * q (entrywise on the right).
  QuatMatrix times_right(const Quaternion& q) const
  {
    QuatMatrix out(*this);
    for (auto& e : out.data_) e = e * q;
    return out;
  }

  friend bool operator==(const QuatMatrix&, const QuatMatrix&) = default;

private:
  void check_same_shape(const QuatMatrix& o) const
  {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QuatMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

inline double distance(const QuatMatrix& a, const QuatMatrix& b) { return (a - b).frobenius_norm(); }

/// Complex image A + B j |-> [[A, B], [-conj(B), conj(A)]].
///
/// An r x c quaternionic matrix maps to a 2r x 2c complex matrix. The map is
/// an injective homomorphism of real algebras with nu(M*) = nu(M)^H.
inline ComplexMatrix nu_embed(const QuatMatrix& m)
{
  const auto r = static_cast<Eigen::Index>(m.rows());
  const auto c = static_cast<Eigen::Index>(m.cols());
  ComplexMatrix out(2 * r, 2 * c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const Quaternion& q = m(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
      const std::complex<double> a = q.first();
      const std::complex<double> b = q.second();
      out(i, k) = a;
      out(i, c + k) = b;
      out(r + i, k) = -std::conj(b);
      out(r + i, c + k) = std::conj(a);
    }
  return out;
}

/// Inverse of `nu_embed` on its image. Returns nullopt when the complex matrix
/// is not of the block form [[A, B], [-conj(B), conj(A)]] within `tol`
/// (Frobenius norm of the defect).
inline std::optional<QuatMatrix> from_nu(const ComplexMatrix& cm, double tol = 1e-10)
{
  if (cm.rows() % 2 != 0 || cm.cols() % 2 != 0) return std::nullopt;
  const Eigen::Index r = cm.rows() / 2;
  const Eigen::Index c = cm.cols() / 2;
  const ComplexMatrix a = cm.topLeftCorner(r, c);
  const ComplexMatrix b = cm.topRightCorner(r, c);
  const double defect = (cm.bottomLeftCorner(r, c) + b.conjugate()).norm()
                        + (cm.bottomRightCorner(r, c) - a.conjugate()).norm();
  if (!(defect <= tol)) return std::nullopt;
  QuatMatrix out(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
          Quaternion::from_complex_pair(a(i, k), b(i, k));
  return out;
}

/// Dieudonne determinant |det nu(M)|^{1/2} of a square quaternionic matrix.
inline double dieudonne_det(const QuatMatrix& m)
{
  if (!m.square()) throw std::invalid_argument("dieudonne_det: matrix is not square");
  return std::sqrt(std::abs(nu_embed(m).determinant()));
}

inline double dieudonne_det2(const QuatMatrix& m)
{
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("dieudonne_det2: expected 2x2");
  return dieudonne_det(m);
}

/// Inverse through the complex image. Throws domain_error when singular.
inline QuatMatrix inverse(const QuatMatrix& m)
{
  if (!m.square()) throw std::invalid_argument("inverse: matrix is not square");
  const ComplexMatrix cm = nu_embed(m);
  Eigen::FullPivLU<ComplexMatrix> lu(cm);
  if (!lu.isInvertible()) throw domain_error("inverse: quaternionic matrix is singular");
  auto q = from_nu(lu.inverse(), 1e-8 * std::max(1.0, cm.norm()));
  if (!q) throw invariant_error("nu-image", "inverse left the quaternionic subalgebra");
  return *q;
}

/// Element g = [[a, b], [c, d]] of SL(2,H), acting on column vectors of H^2.
struct SL2H
{
  Quaternion a = Quaternion::one();
  Quaternion b{};
  Quaternion c{};
  Quaternion d = Quaternion::one();

  static SL2H identity() { return {}; }

  static SL2H from_matrix(const QuatMatrix& m)
  {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("SL2H: expected 2x2 matrix");
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }

  QuatMatrix matrix() const { return QuatMatrix(2, 2, {a, b, c, d}); }

  double det() const { return dieudonne_det2(matrix()); }

  /// Real rescaling to Dieudonne determinant one.
  SL2H normalized() const
  {
    const double dd = det();
    if (!(dd > 0.0)) throw domain_error("SL2H: singular matrix cannot be normalized");
    const double s = 1.0 / std::sqrt(dd);
    return {a * s, b * s, c * s, d * s};
  }

  SL2H inverse() const { return from_matrix(quatpoly::inverse(matrix())); }
  SL2H adjoint() const { return {a.conj(), c.conj(), b.conj(), d.conj()}; }

  friend SL2H operator*(const SL2H& g, const SL2H& h)
  {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
            g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
  }

  static SL2H diagonal(const Quaternion& p, const Quaternion& q) { return {p, {}, {}, q}; }
};

/// Distance between two group elements as elements of PSL(2,H): the smaller
/// of |g - h| and |g + h| in Frobenius norm.
inline double projective_distance(const SL2H& g, const SL2H& h)
{
  const QuatMatrix gm = g.matrix();
  const QuatMatrix hm = h.matrix();
  return std::min(distance(gm, hm), (gm + hm).frobenius_norm());
}

/// Columns orthonormalized by Gram-Schmidt over H (right-module inner product
/// <u, v> = sum conj(u_i) v_i). Two passes.
inline QuatMatrix orthonormalize_columns(QuatMatrix m)
{
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < m.cols(); ++col) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t prev = 0; prev < col; ++prev) {
        Quaternion ip{};
        for (std::size_t r = 0; r < n; ++r) ip += m(r, prev).conj() * m(r, col);
        for (std::size_t r = 0; r < n; ++r) m(r, col) -= m(r, prev) * ip;
      }
    double nn = 0.0;
    for (std::size_t r = 0; r < n; ++r) nn += m(r, col).norm2();
    nn = std::sqrt(nn);
    if (nn < 1e-14) throw domain_error("orthonormalize_columns: columns are dependent");
    for (std::size_t r = 0; r < n; ++r) m(r, col) /= nn;
  }
  return m;
}

/// Sample of Sp(n): Gram-Schmidt over H applied to Gaussian columns.
template <class Rng>
QuatMatrix random_symplectic(std::size_t n, Rng& rng)
{
  if (n == 0) throw std::invalid_argument("random_symplectic: n must be positive");
  for (;;) {
    QuatMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = random_gaussian_quaternion(rng);
    try {
      return orthonormalize_columns(std::move(m));
    } catch (const domain_error&) {
      // measure-zero event; draw again
    }
  }
}

/// Random element U1 diag(e^t, e^-t) U2 of SL(2,H) with U1, U2 in Sp(2) and
/// t uniform on [0, max_log_dilation].
template <class Rng>
SL2H random_sl2h(Rng& rng, double max_log_dilation = 1.0)
{
  std::uniform_real_distribution<double> uni(0.0, max_log_dilation);
  const double t = uni(rng);
  const SL2H u1 = SL2H::from_matrix(random_symplectic(2, rng));
  const SL2H u2 = SL2H::from_matrix(random_symplectic(2, rng));
  return u1 * SL2H::diagonal(Quaternion(std::exp(t)), Quaternion(std::exp(-t))) * u2;
}

} // namespace quatpoly

#endif // QUATPOLY_QUAT_MATRIX_HPP
