#pragma once
#include <vector>

#include "sp4rep/config.hpp"
#include "sp4rep/cquat.hpp"
#include "sp4rep/errors.hpp"
#include "sp4rep/halfint.hpp"
#include "sp4rep/types.hpp"

namespace sp4rep::wigner {

//! n! as a real; exact for n <= 22, correctly rounded beyond.
real factorial(int n);

//! sigma^j_m = 1 / sqrt((j-m)! (j+m)!), arguments doubled.
real sigma(int j2, int m2);
inline real sigma(HalfInt j, HalfInt m) { return sigma(j.twice, m.twice); }

//! sigma^j_{m1,m2} = sigma^j_{m1} sigma^j_{m2}.
real sigma2(int j2, int m1_2, int m2_2);

//! Wigner 3-j symbol, all arguments doubled.  Invalid selection rules give
//! exactly 0.  Evaluated in exact big-integer rational arithmetic for
//! j <= 20 (the alternating sum cancels catastrophically in floating point),
//! log-gamma with compensated summation beyond.  Values are memoized.
real three_j(int j1_2, int j2_2, int j3_2, int m1_2, int m2_2, int m3_2);

struct ThreeJ {
  HalfInt j1, j2, j3, m1, m2, m3;
};
inline real three_j(const ThreeJ &s)
{
  return three_j(s.j1.twice, s.j2.twice, s.j3.twice, s.m1.twice, s.m2.twice, s.m3.twice);
}

//! Closed form of the all-zero-m 3-j symbol; vanishes for odd l1+l2+l3.
real three_j_all_zero_m(int l1, int l2, int l3);

//! Clebsch-Gordan coefficient (j m, j' m' | j'' M), arguments doubled.
real clebsch_gordan(int j_2, int m_2, int jp_2, int mp_2, int jpp_2, int M_2);

//! Holomorphic SU(2) matrix element D^j_{m1 m2}(z) (Talman form extended to
//! complex quaternions); polynomial of degree 2j in the components of z.
cplx wigner_d(int j2, int m1_2, int m2_2, const CQuat &z);
inline cplx wigner_d(HalfInt j, HalfInt m1, HalfInt m2, const CQuat &z)
{
  return wigner_d(j.twice, m1.twice, m2.twice, z);
}

//! Full (2j+1)x(2j+1) matrix [D^j_{m1 m2}(z)], rows/columns ordered from
//! m = +j (index 0) down to m = -j.
MatX wigner_d_matrix(int j2, const CQuat &z);

//! RHS of the first addition theorem, divided by sigma^j_{m1,m2}; equals
//! D^j_{m1 m2}(z + z') identically (finite sum).
cplx addition_theorem_sum(int j2, int m1_2, int m2_2, const CQuat &z, const CQuat &zp);

struct SeriesValue {
  cplx value{};
  real tail_estimate{};
  int terms_used = 0;
};

//! Truncated RHS of the second addition theorem, times sigma^j_{m1,m2};
//! approximates [det(z+z')]^{-1} D^j_{m1 m2}((z+z')^{-1}) for
//! |det z| < |det z'| (the paper's inequality compares complex numbers and
//! is implemented as a modulus comparison).  If tol > 0 and the tail
//! estimate exceeds it, throws TruncationNotConverged.
SeriesValue inverse_addition_sum(int j2, int m1_2, int m2_2, const CQuat &z, const CQuat &zp,
                                 int jmax2, real tol = 0);

//! RHS of the product identity: sum_m' D^j_{m1 m'}(z) D^j_{m' m2}(z');
//! equals D^j_{m1 m2}(z z').
cplx product_expansion(int j2, int m1_2, int m2_2, const CQuat &z, const CQuat &zp);

//! Max residual of both lines of the SU(2) tensor-product reduction over all
//! (m1, m2, m1', m2'); xi must be a real unit quaternion.
real tensor_reduce_check(int j2, int jp2, const CQuat &xi);

} // namespace sp4rep::wigner
