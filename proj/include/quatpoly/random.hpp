#ifndef QUATPOLY_RANDOM_HPP
#define QUATPOLY_RANDOM_HPP

// Seeding and a few samplers shared by the polygon and CLI layers.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace quatpoly {

/// Generator for item `index` of a run with seed `seed`. Items are
/// independent of each other and of how work is split across threads.
inline std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

template <int N, class Rng>
Eigen::Matrix<double, N, 1> random_unit_vector(Rng& rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) v[i] = n(rng);
    const double s = v.norm();
    if (s > 1e-8) return v / s;
  }
}

/// Haar-random element of SO(N) (QR of a Gaussian matrix with sign fix).
template <int N, class Rng>
Eigen::Matrix<double, N, N> random_rotation(Rng& rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix<double, N, N> g;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) g(i, k) = n(rng);
  Eigen::HouseholderQR<Eigen::Matrix<double, N, N>> qr(g);
  Eigen::Matrix<double, N, N> q = qr.householderQ();
  const Eigen::Matrix<double, N, N> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int i = 0; i < N; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

} // namespace quatpoly

#endif // QUATPOLY_RANDOM_HPP
