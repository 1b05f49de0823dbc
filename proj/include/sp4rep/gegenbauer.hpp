#pragma once
#include "sp4rep/config.hpp"
#include "sp4rep/cquat.hpp"

namespace sp4rep::gegenbauer {

//! Gegenbauer polynomial C_l^lambda(t) by the three-term recurrence; valid
//! for any real lambda including negative integers (where the generating
//! function becomes a finite sum).
cplx gegenbauer_c(int l, real lambda, cplx t);

//! d_k of the C_l^lambda -> C^{1/2} rewriting (Gamma form, lambda > 1/2).
real coeff_d(real lambda, int l, int k);

//! d'_k, the Pochhammer form of d_k; defined for all lambda, including the
//! negative integers where vanishing Pochhammer factors truncate the series.
real coeff_d_prime(real lambda, int l, int k);

//! a_{lambda,l,k} of the determinant-power expansion, Gamma form; requires
//! lambda > 1/2 (poles of Gamma(2 lambda - 1) otherwise).
real coeff_a(real lambda, int l, int k);

//! a_{lambda,l,k} via Pochhammer symbols: 2 pi^{3/2} (lambda-1/2)_k
//! (lambda)_{l-k} / (k! Gamma(l-k+3/2)).  Agrees with coeff_a wherever both
//! are defined and extends it to lambda <= 1/2.
real coeff_a_general(real lambda, int l, int k);

//! Rising factorial (x)_k = x (x+1) ... (x+k-1).
real pochhammer(real x, int k);

//! Closed form [det(1 + z zbar')]^{-lambda}
//!   = [1 - 2 z.zbar' + (z.z)(zbar'.zbar')]^{-lambda}, principal branch.
cplx det_power_closed_form(real lambda, const CQuat &z, const CQuat &zp);

struct Expansion {
  cplx value{};
  real tail_estimate{};
  int l_used = 0;
};

//! Partial sum of the determinant-power expansion over solid harmonics up to
//! l_max, with a geometric tail estimate from the last degree shells.
//! Inputs are validated by requiring the closed-form base bounded away from
//! zero (the paper states no convergence domain).  If tol > 0 and the tail
//! estimate exceeds it, throws TruncationNotConverged.
Expansion det_power_expansion(real lambda, const CQuat &z, const CQuat &zp, int l_max,
                              real tol = 0);

//! Gegenbauer side of the C^{1/2} addition theorem,
//! [(z.z)(zbar'.zbar')]^{l/2} C_l^{1/2}(...), using a single principal square
//! root of the product so the even/odd branch ambiguity cancels.
cplx addition_theorem_lhs(int l, const CQuat &z, const CQuat &zp);

} // namespace sp4rep::gegenbauer
