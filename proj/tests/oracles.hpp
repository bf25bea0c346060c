#ifndef QUATPOLY_TESTS_ORACLES_HPP
#define QUATPOLY_TESTS_ORACLES_HPP

// Brute-force reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "quatpoly/quaternion.hpp"

namespace oracle {

using cd = std::complex<double>;

/// Leibniz expansion over all permutations.
inline cd leibniz_det(const Eigen::MatrixXcd& m)
{
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  cd total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    cd term = (inversions % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) term *= m(i, perm[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Complex 2x2 image of a single quaternion, written out entry by entry.
inline std::array<std::array<cd, 2>, 2> quaternion_as_complex(const quatpoly::Quaternion& q)
{
  return {{{cd(q.w, q.x), cd(q.y, q.z)}, {cd(-q.y, q.z), cd(q.w, -q.x)}}};
}

/// Moore determinant of the quaternionic Hermitian matrix
/// [[a, x, y], [conj x, b, z], [conj y, conj z, c]]:
/// abc - a|z|^2 - b|y|^2 - c|x|^2 + 2 Re(x z conj(y)).
inline double moore_det3(double a, double b, double c, const quatpoly::Quaternion& x, const quatpoly::Quaternion& y,
                         const quatpoly::Quaternion& z)
{
  return a * b * c - a * z.norm2() - b * y.norm2() - c * x.norm2() + 2.0 * (x * z * y.conj()).w;
}

/// Real roots of a function with simple roots in [lo, hi], found by scanning
/// for sign changes and bisecting.
template <class F>
std::vector<double> bracketed_roots(F f, double lo, double hi, int samples = 20000)
{
  std::vector<double> roots;
  double prev_x = lo;
  double prev_f = f(lo);
  for (int s = 1; s <= samples; ++s) {
    const double x = lo + (hi - lo) * s / samples;
    const double fx = f(x);
    if (prev_f == 0.0) roots.push_back(prev_x);
    else if ((prev_f < 0.0) != (fx < 0.0) && fx != 0.0) {
      double a = prev_x, b = x, fa = prev_f;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fa < 0.0) == (fm < 0.0)) { a = m; fa = fm; } else b = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

/// Unit vector uniform on S^4 as a plain array.
template <class Rng>
std::array<double, 5> random_unit5(Rng& rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<double, 5> v{};
  double s = 0.0;
  for (auto& c : v) { c = n(rng); s += c * c; }
  s = std::sqrt(s);
  for (auto& c : v) c /= s;
  return v;
}

} // namespace oracle

#endif // QUATPOLY_TESTS_ORACLES_HPP
