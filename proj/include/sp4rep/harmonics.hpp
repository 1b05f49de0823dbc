#pragma once
#include "sp4rep/config.hpp"
#include "sp4rep/cquat.hpp"
#include "sp4rep/polyexact.hpp"

namespace sp4rep::harmonics {

//! Holomorphically extended solid spherical harmonic Y_{lm}(z1,z2,z3):
//! homogeneous harmonic polynomial of degree l; restricted to real unit
//! vectors it reproduces the standard (Condon-Shortley) spherical harmonics.
cplx solid_harmonic(int l, int m, const CQuat &z);
cplx solid_harmonic(int l, int m, cplx z1, cplx z2, cplx z3);

//! RHS of the product linearization: the finite l3-sum with m3 = m1 + m2;
//! equals Y_{l1 m1}(z) * Y_{l2 m2}(z).  Only even l1 + l2 - l3 contribute.
cplx product_expand(int l1, int m1, int l2, int m2, const CQuat &z);

//! Y_{lm} recovered from the anti-diagonal sum of D^{l/2}; the scalar part
//! of z is arbitrary and does not affect the result.
cplx y_from_d(int l, int m, const CQuat &z);

//! D^{l/2}_{m1 m2} at a pure quaternion, rebuilt from solid harmonics; the
//! l'-sum runs over l - l' even only.  Arguments m1, m2 doubled.
cplx d_from_y(int l, int m1_2, int m2_2, const CQuat &z);

//! Exact-coefficient polynomial of Y_{lm} with the overall
//! (-1)^m sqrt((2l+1)(l-|m|)!/(4 pi (l+|m|)!)) 2^l prefactor dropped
//! (a global constant is irrelevant for harmonicity).
PolyExact solid_harmonic_poly_unnormalized(int l, int m);

//! Exact-coefficient polynomial of D^j_{m1 m2}(z) with the square-root
//! factorial prefactor dropped.
PolyExact wigner_d_poly_unnormalized(int j2, int m1_2, int m2_2);

} // namespace sp4rep::harmonics
