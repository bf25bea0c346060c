#ifndef QUATPOLY_HYPERBOLIC_HPP
#define QUATPOLY_HYPERBOLIC_HPP

// The quaternionic projective line HP^1 = S^4 and hyperbolic 5-space in three
// coordinate models, with the PSL(2,H) action on each.
//
// All three models are tied together by the space of 2x2 quaternionic
// Hermitian matrices X = [[rho1, q], [conj(q), rho2]], a copy of Minkowski
// space R^{1,5} with det X = rho1 rho2 - |q|^2 as the Lorentz form. Points of
// hyperbolic space are positive definite X (up to positive scale), boundary
// points are rank one X = w w*, and g acts by X -> g X g*.
//
// Ball coordinates y = (2q, rho2 - rho1) / (rho1 + rho2) are the projective
// (Klein) model, so geodesics are straight chords. Half-space coordinates are
// v = q / rho2 in H and x5 = sqrt(det X) / rho2.

#include <array>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>

#include "quatpoly/errors.hpp"
#include "quatpoly/quat_matrix.hpp"
#include "quatpoly/quaternion.hpp"

namespace quatpoly {

using Vec5 = Eigen::Matrix<double, 5, 1>;

inline Quaternion vector_part(const Vec5& y) { return {y[0], y[1], y[2], y[3]}; }

inline Vec5 make_vec5(const Quaternion& v, double last)
{
  Vec5 out;
  out << v.w, v.x, v.y, v.z, last;
  return out;
}

/// Unit vector in R^5.
class S4Point
{
public:
  S4Point() : v_(Vec5::Unit(4)) {}

  /// Normalizes `v`; throws domain_error on a zero vector.
  explicit S4Point(const Vec5& v)
  {
    const double n = v.norm();
    if (!(n > 1e-300)) throw domain_error("S4Point: zero vector");
    v_ = v / n;
  }

  /// Keeps `v` bit-for-bit when it is unit to 1e-12 (stored points read
  /// back exactly); otherwise normalizes like the constructor.
  static S4Point from_stored(const Vec5& v)
  {
    if (std::abs(v.norm() - 1.0) > 1e-12) return S4Point(v);
    S4Point u;
    u.v_ = v;
    return u;
  }

  static S4Point axis(int i) { return S4Point(Vec5::Unit(i)); }

  const Vec5& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

private:
  Vec5 v_;
};

inline double chordal_distance(const S4Point& a, const S4Point& b) { return (a.vec() - b.vec()).norm(); }

/// Point of the closed unit ball B^5 (projective model).
struct BallPoint
{
  Vec5 y = Vec5::Zero();

  BallPoint() = default;
  explicit BallPoint(const Vec5& v) : y(v) {}
  explicit BallPoint(const S4Point& s) : y(s.vec()) {}

  static BallPoint origin() { return {}; }

  double norm() const { return y.norm(); }
  bool is_boundary(double tol = 1e-12) const { return std::abs(y.norm() - 1.0) <= tol; }
  bool is_interior() const { return y.squaredNorm() < 1.0; }
};

/// Point of the closed upper half-space {x5 >= 0} plus a tagged point at
/// infinity. x5 == 0 marks a boundary point.
struct HalfSpacePoint
{
  Quaternion v{};
  double x5 = 1.0;
  bool at_infinity = false;

  static HalfSpacePoint interior(const Quaternion& v, double x5)
  {
    if (!(x5 > 0.0)) throw domain_error("HalfSpacePoint: interior points need x5 > 0");
    return {v, x5, false};
  }
  static HalfSpacePoint boundary(const Quaternion& v) { return {v, 0.0, false}; }
  static HalfSpacePoint infinity() { return {{}, 0.0, true}; }

  bool is_boundary() const { return at_infinity || x5 == 0.0; }
  double norm2() const { return v.norm2() + x5 * x5; }
};

/// 2x2 quaternionic Hermitian matrix [[rho1, q], [conj(q), rho2]].
struct Hermitian2
{
  double rho1 = 1.0;
  Quaternion q{};
  double rho2 = 1.0;

  double det() const { return rho1 * rho2 - q.norm2(); }
  double trace() const { return rho1 + rho2; }

  QuatMatrix matrix() const { return QuatMatrix(2, 2, {Quaternion(rho1), q, q.conj(), Quaternion(rho2)}); }

  static Hermitian2 from_matrix(const QuatMatrix& m)
  {
    return {m(0, 0).w, 0.5 * (m(0, 1) + m(1, 0).conj()), m(1, 1).w};
  }

  Hermitian2 scaled(double s) const { return {rho1 * s, q * s, rho2 * s}; }

  Hermitian2 inverse() const
  {
    const double dd = det();
    if (dd == 0.0) throw domain_error("Hermitian2: singular matrix");
    return {rho2 / dd, -q / dd, rho1 / dd};
  }

  /// Positive square root of a positive semidefinite matrix, from
  /// Cayley-Hamilton: (X + sqrt(det) I)^2 = (tr X + 2 sqrt(det)) X.
  Hermitian2 sqrt() const
  {
    const double s = std::sqrt(std::max(det(), 0.0));
    const double t = std::sqrt(trace() + 2.0 * s);
    if (!(t > 0.0)) throw domain_error("Hermitian2: square root of a non-positive matrix");
    return {(rho1 + s) / t, q / t, (rho2 + s) / t};
  }
};

/// g X g*.
inline Hermitian2 congruence(const SL2H& g, const Hermitian2& x)
{
  const Quaternion qb = x.q.conj();
  const Quaternion r00 = g.a * x.rho1 + g.b * qb;
  const Quaternion r01 = g.a * x.q + g.b * x.rho2;
  const Quaternion r10 = g.c * x.rho1 + g.d * qb;
  const Quaternion r11 = g.c * x.q + g.d * x.rho2;
  const Quaternion rho1 = r00 * g.a.conj() + r01 * g.b.conj();
  const Quaternion q = r00 * g.c.conj() + r01 * g.d.conj();
  const Quaternion rho2 = r10 * g.c.conj() + r11 * g.d.conj();
  return {rho1.w, q, rho2.w};
}

inline SL2H as_group_element(const Hermitian2& x) { return {Quaternion(x.rho1), x.q, x.q.conj(), Quaternion(x.rho2)}; }

// -- model conversions ------------------------------------------------------

inline Hermitian2 ball_to_hermitian(const BallPoint& p)
{
  return {1.0 - p.y[4], vector_part(p.y), 1.0 + p.y[4]};
}

inline BallPoint hermitian_to_ball(const Hermitian2& x)
{
  const double tr = x.trace();
  return BallPoint(make_vec5(x.q * (2.0 / tr), (x.rho2 - x.rho1) / tr));
}

inline Hermitian2 halfspace_to_hermitian(const HalfSpacePoint& p)
{
  if (p.at_infinity) return {1.0, {}, 0.0};
  return {p.norm2(), p.v, 1.0};
}

inline HalfSpacePoint hermitian_to_halfspace(const Hermitian2& x)
{
  if (x.rho2 <= 1e-15 * x.trace()) return HalfSpacePoint::infinity();
  const double dd = std::max(x.det(), 0.0);
  const Quaternion v = x.q / x.rho2;
  const double x5 = std::sqrt(dd) / x.rho2;
  return {v, x5, false};
}

/// y_i = 2 x_i / (1 + |x|^2) for i <= 4, y_5 = (1 - |x|^2) / (1 + |x|^2).
inline BallPoint halfspace_to_ball(const HalfSpacePoint& p)
{
  if (p.at_infinity) return BallPoint(Vec5(-Vec5::Unit(4)));
  const double s = p.norm2();
  return BallPoint(make_vec5(p.v * (2.0 / (1.0 + s)), (1.0 - s) / (1.0 + s)));
}

inline HalfSpacePoint ball_to_halfspace(const BallPoint& p) { return hermitian_to_halfspace(ball_to_hermitian(p)); }

// -- HP^1 ---------------------------------------------------------------------

/// Point [q1 : q2] of HP^1 = (H^2 \ 0) / H^*, with H^* acting on the right.
struct HP1Point
{
  Quaternion q1{};
  Quaternion q2 = Quaternion::one();

  /// [v : 1].
  static HP1Point from_chart(const Quaternion& v) { return HP1Point{v, Quaternion::one()}.canonical(); }
  /// [1 : 0].
  static HP1Point infinity() { return {Quaternion::one(), {}}; }

  /// Representative with |q1|^2 + |q2|^2 = 1 whose first nonzero coordinate,
  /// taken in the order q2, q1, is real and positive.
  HP1Point canonical() const
  {
    const double n = std::sqrt(q1.norm2() + q2.norm2());
    if (!(n > 0.0)) throw domain_error("HP1Point: (0, 0) is not a point of HP^1");
    const Quaternion& lead = q2.norm() > 1e-14 * n ? q2 : q1;
    const Quaternion gauge = lead.conj() / (lead.norm() * n);
    HP1Point out{q1 * gauge, q2 * gauge};
    (q2.norm() > 1e-14 * n ? out.q2 : out.q1) = Quaternion(lead.norm() / n);
    return out;
  }

  /// Unit representative, any gauge.
  Hermitian2 projector() const
  {
    const double n2 = q1.norm2() + q2.norm2();
    return {q1.norm2() / n2, q1 * q2.conj() / n2, q2.norm2() / n2};
  }

  /// Chart value q1 q2^{-1}; meaningless at infinity.
  Quaternion chart() const { return q1 * q2.inverse(); }
};

/// Gauge-independent distance between points of HP^1 (Frobenius distance of
/// the rank-one projectors).
inline double distance(const HP1Point& a, const HP1Point& b)
{
  const Hermitian2 pa = a.projector();
  const Hermitian2 pb = b.projector();
  const double d1 = pa.rho1 - pb.rho1;
  const double d2 = pa.rho2 - pb.rho2;
  return std::sqrt(d1 * d1 + d2 * d2 + 2.0 * (pa.q - pb.q).norm2());
}

inline bool same_point(const HP1Point& a, const HP1Point& b, double tol = default_tolerance)
{
  return distance(a, b) <= tol;
}

/// [q1 : q2] -> (2 q1 conj(q2), |q2|^2 - |q1|^2) / (|q1|^2 + |q2|^2).
inline S4Point hp1_to_s4(const HP1Point& p) { return S4Point(hermitian_to_ball(p.projector()).y); }

inline HP1Point s4_to_hp1(const S4Point& u)
{
  const Hermitian2 x = ball_to_hermitian(BallPoint(u));
  // rank one: either column of X spans the line
  if (x.rho2 >= x.rho1) return HP1Point{x.q, Quaternion(x.rho2)}.canonical();
  return HP1Point{Quaternion(x.rho1), x.q.conj()}.canonical();
}

inline HP1Point halfspace_boundary_to_hp1(const HalfSpacePoint& p)
{
  if (p.at_infinity) return HP1Point::infinity();
  return HP1Point::from_chart(p.v);
}

inline HalfSpacePoint hp1_to_halfspace_boundary(const HP1Point& p)
{
  const double n = std::sqrt(p.q1.norm2() + p.q2.norm2());
  if (p.q2.norm() <= 1e-15 * n) return HalfSpacePoint::infinity();
  return HalfSpacePoint::boundary(p.chart());
}

// -- actions ------------------------------------------------------------------

/// g . [q1 : q2] = [a q1 + b q2 : c q1 + d q2].
inline HP1Point mobius_hp1(const SL2H& g, const HP1Point& p)
{
  return HP1Point{g.a * p.q1 + g.b * p.q2, g.c * p.q1 + g.d * p.q2}.canonical();
}

/// Boundary linear fractional transformation v -> (a v + b)(c v + d)^{-1}.
/// Near the pole (|c v + d| < 1e-8 |a v + b|) the image is computed in the
/// inverted chart w = (c v + d)(a v + b)^{-1}, v' = w^{-1}.
inline HalfSpacePoint lft(const SL2H& g, const HalfSpacePoint& p)
{
  if (p.at_infinity) {
    if (g.c.norm() <= 1e-15 * g.a.norm()) return HalfSpacePoint::infinity();
    return HalfSpacePoint::boundary(g.a * g.c.inverse());
  }
  const Quaternion num = g.a * p.v + g.b;
  const Quaternion den = g.c * p.v + g.d;
  if (den.norm() >= 1e-8 * num.norm()) return HalfSpacePoint::boundary(num * den.inverse());
  const Quaternion w = den * num.inverse();
  if (w.norm2() == 0.0) return HalfSpacePoint::infinity();
  return HalfSpacePoint::boundary(w.inverse());
}

/// Closed-form action on the half-space:
///   v  -> (|x|^2 a c* + b v* c* + a v d* + b d*) / D
///   x5 -> x5 / D,  D = |x|^2 |c|^2 + d v* c* + c v d* + |d|^2
/// where * is quaternion conjugation. Boundary points go through `lft`.
inline HalfSpacePoint mobius_halfspace(const SL2H& g, const HalfSpacePoint& p)
{
  if (p.is_boundary()) return lft(g, p);
  const double s = p.norm2();
  const Quaternion vb = p.v.conj();
  const Quaternion cb = g.c.conj();
  const Quaternion db = g.d.conj();
  const Quaternion num = g.a * cb * s + g.b * vb * cb + g.a * p.v * db + g.b * db;
  const double den = s * g.c.norm2() + (g.d * vb * cb + g.c * p.v * db).w + g.d.norm2();
  return {num / den, p.x5 / den, false};
}

/// The same closed form evaluated at x5 = 0, without the pole fallback.
inline Quaternion boundary_limit_formula(const SL2H& g, const Quaternion& v)
{
  const double s = v.norm2();
  const Quaternion vb = v.conj();
  const Quaternion cb = g.c.conj();
  const Quaternion db = g.d.conj();
  const Quaternion num = g.a * cb * s + g.b * vb * cb + g.a * v * db + g.b * db;
  const double den = s * g.c.norm2() + (g.d * vb * cb + g.c * v * db).w + g.d.norm2();
  return num / den;
}

/// Action on the closed ball. Boundary inputs stay on the unit sphere.
inline BallPoint mobius_ball(const SL2H& g, const BallPoint& p)
{
  BallPoint out = hermitian_to_ball(congruence(g, ball_to_hermitian(p)));
  if (p.is_boundary()) out.y.normalize();
  return out;
}

inline S4Point mobius_s4(const SL2H& g, const S4Point& u)
{
  return S4Point(hermitian_to_ball(congruence(g, ball_to_hermitian(BallPoint(u)))).y);
}

/// Hyperbolic translation (positive Hermitian, Dieudonne determinant one)
/// carrying the origin of the ball to `p`.
inline SL2H translation_from_origin(const BallPoint& p)
{
  if (!p.is_interior()) throw domain_error("translation_from_origin: point is not in the open ball");
  Hermitian2 x = ball_to_hermitian(p);
  x = x.scaled(1.0 / std::sqrt(x.det()));
  return as_group_element(x.sqrt());
}

/// Hyperbolic translation carrying `p` to the origin.
inline SL2H translation_to_origin(const BallPoint& p)
{
  if (!p.is_interior()) throw domain_error("translation_to_origin: point is not in the open ball");
  Hermitian2 x = ball_to_hermitian(p);
  x = x.scaled(1.0 / std::sqrt(x.det()));
  return as_group_element(x.inverse().sqrt());
}

} // namespace quatpoly

#endif // QUATPOLY_HYPERBOLIC_HPP
