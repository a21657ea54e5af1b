#pragma once

// SU(2) as unit quaternions, plus the Lie-theoretic helpers the twist flows
// are built from: exponential/principal logarithm, the rotation-angle function
// and its gradient field, one-parameter twists, square roots, conjugators.
//
// Identification: q = (w,x,y,z) <-> [[w+ix, y+iz], [-y+iz, w-ix]], so the
// quaternion product equals the matrix product, trace(q) = 2w, and the
// diagonal torus diag(e^{ia}, e^{-ia}) is the (cos a, sin a, 0, 0) circle.
// Tangent vectors live in R^3 via (x,y,z) <-> xi + yj + zk; the pairing
// <u,v> = -trace(UV)/2 of the corresponding matrices is the Euclidean dot.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "goldman/defaults.hpp"
#include "goldman/errors.hpp"
#include "goldman/rng.hpp"

namespace goldman {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Mat2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

// Tangent vector at the identity (coefficients on i, j, k).
template <typename Scalar>
using LieVec = Vec3<Scalar>;

template <typename Scalar>
class Su2 {
 public:
  using Coords = Vec4<Scalar>;

  Su2() : c_(Coords(1, 0, 0, 0)) {}

  // Validating constructors: reject coords whose norm is not within
  // tol::norm_window of 1, renormalize the rest. Coords already unit to
  // machine precision pass through untouched, so parse(print(g)) is bitwise
  // stable. This is the path deserialization takes.
  Su2(Scalar w, Scalar x, Scalar y, Scalar z) : Su2(Coords(w, x, y, z)) {}

  explicit Su2(const Coords& c) {
    Scalar n = c.norm();
    if (!(std::abs(n - Scalar(1)) <= Scalar(tol::norm_window)))
      throw InvalidElement("coordinate norm " + std::to_string(double(n)) +
                           " outside accepted window around 1");
    constexpr Scalar keep = Scalar(8) * std::numeric_limits<Scalar>::epsilon();
    c_ = std::abs(n - Scalar(1)) <= keep ? c : c / n;
  }

  // Unit-scale arbitrary nonzero coords (internal constructions).
  static Su2 normalized(const Coords& c) {
    Scalar n = c.norm();
    if (!(n > Scalar(0))) throw InvalidElement("cannot normalize zero coords");
    return Su2(c / n, unchecked_tag{});
  }

  // No validation at all; exists so tests can build corrupted fixtures.
  static Su2 from_raw(const Coords& c) { return Su2(c, unchecked_tag{}); }

  static Su2 identity() { return Su2(); }
  static Su2 minus_identity() { return Su2(Coords(-1, 0, 0, 0), unchecked_tag{}); }

  const Coords& coords() const { return c_; }
  Scalar w() const { return c_[0]; }
  Vec3<Scalar> vec() const { return c_.template tail<3>(); }
  Scalar trace() const { return Scalar(2) * c_[0]; }

  Su2 inverse() const {
    return Su2(Coords(c_[0], -c_[1], -c_[2], -c_[3]), unchecked_tag{});
  }

  Su2 operator-() const { return Su2(-c_, unchecked_tag{}); }

  Su2 operator*(const Su2& o) const {
    const Coords &a = c_, &b = o.c_;
    return Su2(Coords(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                      a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                      a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                      a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]),
               unchecked_tag{});
  }

  // x * this * x^{-1}
  Su2 conjugated_by(const Su2& x) const { return x * (*this) * x.inverse(); }

  Mat2c<Scalar> matrix() const {
    using C = std::complex<Scalar>;
    Mat2c<Scalar> m;
    m << C(c_[0], c_[1]), C(c_[2], c_[3]), C(-c_[2], c_[3]), C(c_[0], -c_[1]);
    return m;
  }

  Scalar distance(const Su2& o) const { return (c_ - o.c_).norm(); }

  bool is_central(Scalar eps = Scalar(tol::degeneracy)) const {
    return std::abs(trace()) >= Scalar(2) - eps;
  }

  bool bitwise_equal(const Su2& o) const {
    return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2] &&
           c_[3] == o.c_[3];
  }

 private:
  struct unchecked_tag {};
  Su2(const Coords& c, unchecked_tag) : c_(c) {}
  Coords c_;
};

using Su2d = Su2<double>;
using LieVecd = LieVec<double>;

//
// --- linear views of the product -------------------------------------------
//

// L(q) v = coords(q * v) for arbitrary (non-unit) quaternion coords v.
template <typename S>
Mat4<S> left_mul_matrix(const Su2<S>& q) {
  const auto& a = q.coords();
  Mat4<S> m;
  m << a[0], -a[1], -a[2], -a[3],  //
      a[1], a[0], -a[3], a[2],     //
      a[2], a[3], a[0], -a[1],     //
      a[3], -a[2], a[1], a[0];
  return m;
}

// R(q) v = coords(v * q).
template <typename S>
Mat4<S> right_mul_matrix(const Su2<S>& q) {
  const auto& a = q.coords();
  Mat4<S> m;
  m << a[0], -a[1], -a[2], -a[3],  //
      a[1], a[0], a[3], -a[2],     //
      a[2], -a[3], a[0], a[1],     //
      a[3], a[2], -a[1], a[0];
  return m;
}

// Matrix of the tangent vector (pure quaternion) xi + yj + zk.
template <typename S>
Mat2c<S> lie_matrix(const LieVec<S>& v) {
  using C = std::complex<S>;
  Mat2c<S> m;
  m << C(0, v[0]), C(v[1], v[2]), C(-v[1], v[2]), C(0, -v[0]);
  return m;
}

//
// --- exponential, logarithm, angle, gradient --------------------------------
//

template <typename S>
Su2<S> exp_map(const LieVec<S>& v) {
  S theta = v.norm();
  S s;  // sin(theta)/theta
  if (theta < S(1e-8)) {
    s = S(1) - theta * theta / S(6);
  } else {
    s = std::sin(theta) / theta;
  }
  Vec4<S> c;
  c[0] = std::cos(theta);
  c.template tail<3>() = s * v;
  return Su2<S>::normalized(c);
}

// Rotation angle in (0, pi): the continuous branch of arccos(trace/2).
// atan2 form is exact on the unit sphere and better conditioned near the
// center than arccos.
template <typename S>
S rotation_angle(const Su2<S>& g, S eps = S(tol::degeneracy)) {
  if (g.is_central(eps))
    throw DegenerateElement("rotation_angle: |trace| within eps of 2");
  return std::atan2(g.vec().norm(), g.w());
}

// Unit rotation axis.
template <typename S>
Vec3<S> axis_of(const Su2<S>& g, S eps = S(tol::degeneracy)) {
  if (g.is_central(eps))
    throw DegenerateElement("axis_of: |trace| within eps of 2");
  Vec3<S> v = g.vec();
  return v / v.norm();
}

// Principal logarithm: angle * axis, |result| in (0, pi).
template <typename S>
LieVec<S> principal_log(const Su2<S>& g, S eps = S(tol::degeneracy)) {
  if (g.is_central(eps))
    throw DegenerateElement("principal_log: |trace| within eps of 2");
  Vec3<S> v = g.vec();
  S n = v.norm();
  return (std::atan2(n, g.w()) / n) * v;
}

// Gradient field of the rotation-angle function: the unit vector along the
// principal logarithm. Equals (g - g^{-1}) / sqrt(4 - trace(g)^2) and is
// Ad-equivariant.
template <typename S>
LieVec<S> angle_gradient(const Su2<S>& g, S eps = S(tol::degeneracy)) {
  return axis_of(g, eps);
}

// One-parameter twist exp(t * angle_gradient(g)): rotation by angle t about
// g's axis. Commutes with g; 2*pi-periodic in t up to roundoff; t = pi gives
// -identity, t = 2*pi gives identity.
template <typename S>
Su2<S> twist(const Su2<S>& g, S t, S eps = S(tol::degeneracy)) {
  Vec3<S> u = axis_of(g, eps);
  Vec4<S> c;
  c[0] = std::cos(t);
  c.template tail<3>() = std::sin(t) * u;
  return Su2<S>::normalized(c);
}

// Square root with nonnegative real part: exp(principal_log/2) away from the
// center, identity at identity, and i (the diagonal torus generator) at
// -identity as the pinned branch choice.
template <typename S>
Su2<S> principal_sqrt(const Su2<S>& g) {
  Vec3<S> v = g.vec();
  S n = v.norm();
  if (n < S(1e-12)) {
    if (g.w() > S(0)) return Su2<S>::identity();
    return Su2<S>(S(0), S(1), S(0), S(0));
  }
  S half = S(0.5) * std::atan2(n, g.w());
  Vec4<S> c;
  c[0] = std::cos(half);
  c.template tail<3>() = (std::sin(half) / n) * v;
  return Su2<S>::normalized(c);
}

//
// --- conjugators and Haar sampling ------------------------------------------
//

// Deterministic solution x of x p x^{-1} = q for p, q on the same conjugacy
// class: the shortest-arc rotation taking axis(p) to axis(q). p = q gives the
// identity; antipodal axes rotate by pi about the first coordinate direction
// orthogonalized against axis(p) (falling through e1, e2, e3 in order).
template <typename S>
Su2<S> conjugator(const Su2<S>& p, const Su2<S>& q,
                  S trace_tol = S(tol::conjugator_trace),
                  S eps = S(tol::degeneracy)) {
  if (std::abs(p.trace() - q.trace()) >= trace_tol)
    throw TraceMismatch("conjugator: traces differ beyond tolerance");
  Vec3<S> u = axis_of(p, eps);  // throws DegenerateElement on central input
  Vec3<S> v = axis_of(q, eps);
  S d = u.dot(v);
  if (d > S(1) - S(1e-14)) return Su2<S>::identity();
  if (d < S(-1) + S(1e-14)) {
    // pi-rotation about a direction orthogonal to u
    for (int i = 0; i < 3; ++i) {
      Vec3<S> e = Vec3<S>::Zero();
      e[i] = S(1);
      Vec3<S> cand = e - e.dot(u) * u;
      if (cand.norm() > S(1e-6)) {
        Vec4<S> c;
        c[0] = S(0);
        c.template tail<3>() = cand;
        return Su2<S>::normalized(c);
      }
    }
    throw Error("conjugator: no orthogonal direction found");  // unreachable
  }
  Vec4<S> c;
  c[0] = S(1) + d;
  c.template tail<3>() = u.cross(v);
  return Su2<S>::normalized(c);
}

// Haar-uniform element: normalized 4-dimensional Gaussian.
template <typename S>
Su2<S> haar_sample(Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    auto [g0, g1] = rng.normal_pair();
    auto [g2, g3] = rng.normal_pair();
    Vec4<S> c{S(g0), S(g1), S(g2), S(g3)};
    if (c.norm() > S(1e-6)) return Su2<S>::normalized(c);
  }
  throw SamplerStuck("haar_sample: degenerate normal draws");
}

// Haar sample conditioned away from the center (used where flows must apply).
template <typename S>
Su2<S> haar_sample_noncentral(Rng& rng, S margin = S(1e-3)) {
  for (int attempt = 0; attempt < sampler_max_attempts; ++attempt) {
    Su2<S> g = haar_sample<S>(rng);
    if (!g.is_central(margin)) return g;
  }
  throw SamplerStuck("haar_sample_noncentral: rejection budget exhausted");
}

}  // namespace goldman
