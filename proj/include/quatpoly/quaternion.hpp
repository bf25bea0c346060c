#ifndef QUATPOLY_QUATERNION_HPP
#define QUATPOLY_QUATERNION_HPP

#include <cmath>
#include <complex>
#include <ostream>
#include <random>

namespace quatpoly {

/// Default absolute tolerance for scalar comparisons.
inline constexpr double default_tolerance = 1e-10;

/// Real quaternion w + x i + y j + z k.
///
/// Storage order is (w, x, y, z). Under the splitting q = A + B j with
/// A = w + x i and B = y + z i, a quaternion is a pair of complex numbers;
/// `first()` and `second()` return A and B.
struct Quaternion
{
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
    : w(w_), x(x_), y(y_), z(z_)
  {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// q = A + B j.
  static Quaternion from_complex_pair(std::complex<double> a, std::complex<double> b)
  {
    return {a.real(), a.imag(), b.real(), b.imag()};
  }

  std::complex<double> first() const { return {w, x}; }
  std::complex<double> second() const { return {y, z}; }

  constexpr double real() const { return w; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

  Quaternion inverse() const
  {
    const double n2 = norm2();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o)
  {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o)
  {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s)
  {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s)
  {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

  /// Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
  friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q)
  {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q)
  {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
  }
};

inline Quaternion qmul(const Quaternion& p, const Quaternion& q) { return p * q; }

inline double distance(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

inline bool approx_equal(const Quaternion& p, const Quaternion& q, double tol = default_tolerance)
{
  return distance(p, q) <= tol;
}

/// Uniform sample on S^3: four standard normals, normalized.
template <class Rng>
Quaternion random_unit_quaternion(Rng& rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Quaternion q{normal(rng), normal(rng), normal(rng), normal(rng)};
    const double n = q.norm();
    if (n > 1e-12) return q / n;
  }
}

template <class Rng>
Quaternion random_gaussian_quaternion(Rng& rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  return {normal(rng), normal(rng), normal(rng), normal(rng)};
}

} // namespace quatpoly

#endif // QUATPOLY_QUATERNION_HPP
