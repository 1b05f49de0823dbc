#pragma once
#include <array>
#include <cmath>

#include "sp4rep/config.hpp"
#include "sp4rep/errors.hpp"
#include "sp4rep/types.hpp"

namespace sp4rep {

//! A complex quaternion z = (w, v) with scalar part w and vector part v in C^3.
//! Multiplication follows the complexified Euclidean dot and cross products.
struct CQuat {
  cplx w{};                  // scalar part
  std::array<cplx, 3> v{};   // vector part (v1, v2, v3)

  CQuat() = default;
  CQuat(cplx w_, cplx v1, cplx v2, cplx v3) : w(w_), v{v1, v2, v3} {}
  CQuat(cplx w_, const std::array<cplx, 3> &v_) : w(w_), v(v_) {}

  static CQuat one() { return {cplx(1), 0, 0, 0}; }
  static CQuat zero() { return {}; }
  static CQuat pure(cplx v1, cplx v2, cplx v3) { return {cplx(0), v1, v2, v3}; }
  static CQuat pure(const std::array<cplx, 3> &v_) { return {cplx(0), v_}; }
};

inline CQuat operator+(const CQuat &x, const CQuat &y)
{
  return {x.w + y.w, x.v[0] + y.v[0], x.v[1] + y.v[1], x.v[2] + y.v[2]};
}
inline CQuat operator-(const CQuat &x, const CQuat &y)
{
  return {x.w - y.w, x.v[0] - y.v[0], x.v[1] - y.v[1], x.v[2] - y.v[2]};
}
inline CQuat operator-(const CQuat &x) { return {-x.w, -x.v[0], -x.v[1], -x.v[2]}; }
inline CQuat operator*(cplx c, const CQuat &x) { return {c * x.w, c * x.v[0], c * x.v[1], c * x.v[2]}; }

//! Complexified dot product of the vector parts (bilinear, no conjugation).
inline cplx vdot(const CQuat &x, const CQuat &y)
{
  return x.v[0] * y.v[0] + x.v[1] * y.v[1] + x.v[2] * y.v[2];
}

inline std::array<cplx, 3> vcross(const CQuat &x, const CQuat &y)
{
  return {x.v[1] * y.v[2] - x.v[2] * y.v[1],
          x.v[2] * y.v[0] - x.v[0] * y.v[2],
          x.v[0] * y.v[1] - x.v[1] * y.v[0]};
}

//! Quaternion product (x^4 y^4 - x.y, x^4 y + y^4 x + x cross y).
inline CQuat mul(const CQuat &x, const CQuat &y)
{
  const auto c = vcross(x, y);
  return {x.w * y.w - vdot(x, y),
          x.w * y.v[0] + y.w * x.v[0] + c[0],
          x.w * y.v[1] + y.w * x.v[1] + c[1],
          x.w * y.v[2] + y.w * x.v[2] + c[2]};
}
inline CQuat operator*(const CQuat &x, const CQuat &y) { return mul(x, y); }

//! Componentwise complex conjugation (a homomorphism).
inline CQuat conj_complex(const CQuat &z)
{
  return {std::conj(z.w), std::conj(z.v[0]), std::conj(z.v[1]), std::conj(z.v[2])};
}

//! Quaternionic conjugate (w, -v) (an anti-homomorphism).
inline CQuat conj_quat(const CQuat &z) { return {z.w, -z.v[0], -z.v[1], -z.v[2]}; }

//! Adjoint: composition of complex and quaternionic conjugation.
inline CQuat adjoint(const CQuat &z) { return conj_complex(conj_quat(z)); }

//! det z = (z1)^2 + (z2)^2 + (z3)^2 + (z4)^2 = z * conj_quat(z).
inline cplx det(const CQuat &z)
{
  return z.w * z.w + z.v[0] * z.v[0] + z.v[1] * z.v[1] + z.v[2] * z.v[2];
}

inline real max_abs(const CQuat &z)
{
  return std::max(std::max(std::abs(z.w), std::abs(z.v[0])),
                  std::max(std::abs(z.v[1]), std::abs(z.v[2])));
}

inline bool is_pure(const CQuat &z, real tol = real(1e-12))
{
  return std::abs(z.w) <= tol * (1 + max_abs(z));
}

inline constexpr real kEpsilonSingular = real(1e-14);

//! z^{-1} = conj_quat(z) / det z.  Complex quaternions can be nonzero yet
//! null (det = 0), so singularity is detected on det, never on components.
inline CQuat inverse(const CQuat &z, real eps_singular = kEpsilonSingular)
{
  const cplx d = det(z);
  if (std::abs(d) <= eps_singular)
    throw SingularQuaternion("cquat inverse: |det z| <= " + std::to_string(double(eps_singular)));
  return (cplx(1) / d) * conj_quat(z);
}

//! 2x2 complex matrix image: [[z4 + i z3, i z1 - z2], [i z1 + z2, z4 - i z3]].
Mat2 to_matrix(const CQuat &z);

//! Inverse of to_matrix (always defined; the map is a linear bijection).
CQuat from_matrix(const Mat2 &m);

} // namespace sp4rep
