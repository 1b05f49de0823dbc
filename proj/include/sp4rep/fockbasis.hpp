#pragma once
#include <cstdint>
#include <vector>

#include "sp4rep/config.hpp"
#include "sp4rep/cquat.hpp"
#include "sp4rep/halfint.hpp"
#include "sp4rep/types.hpp"

namespace sp4rep::fockbasis {

//! Discrete-series label (varsigma, s); the standard inner product needs
//! varsigma > s + 2 (the boundary regime s+1 < varsigma <= s+2 lives on the
//! Shilov boundary and is out of scope here).
struct RepLabel {
  real varsigma = 4;
  HalfInt s{};

  void validate() const;
};

//! Scalar basis index (l, k, m): 0 <= k <= floor(l/2), 2k-l <= m <= l-2k.
struct ScalarIndex {
  int l = 0, k = 0, m = 0;

  bool valid() const;
  friend bool operator==(const ScalarIndex &, const ScalarIndex &) = default;
};

//! Spin basis index (l, k, J, M) with |l-2k-s| <= J <= l-2k+s, |M| <= J.
struct SpinIndex {
  int l = 0, k = 0;
  HalfInt J{}, M{};

  bool valid(HalfInt s) const;
  friend bool operator==(const SpinIndex &, const SpinIndex &) = default;
};

//! Cutoffs and tolerances controlling every infinite series in the library.
struct Truncation {
  int l_max = 14;
  real series_tol = real(1e-8);
  real abel_t = real(0.9);
  std::uint64_t mc_samples = 100000;
};

//! Normalization constant (8/pi^3)(vs + s - 3/2)(vs - s - 1)(vs - s - 2).
real norm_const(const RepLabel &rep);

//! Unit vector e_{s rho}: 1 in position s - rho counted from the top.
VecX basis_vector_e(HalfInt s, HalfInt rho);

//! All scalar indices of homogeneity degree l, lexicographic in (k, m).
std::vector<ScalarIndex> enumerate_scalar(int l);
//! All scalar indices with degree <= l_max, degree-major order.
std::vector<ScalarIndex> enumerate_scalar_upto(int l_max);

//! Spin indices of degree l, lexicographic in (k, J, M); reduces to the
//! scalar enumeration at s = 0.
std::vector<SpinIndex> enumerate_spin(HalfInt s, int l);
std::vector<SpinIndex> enumerate_spin_upto(HalfInt s, int l_max);

//! Number of basis elements of degree l (the level dimension).
int level_dimension(HalfInt s, int l);

//! Coefficient a_{lambda,l,k} used in the basis normalization, Pochhammer
//! form (valid beyond lambda > 1/2).
real basis_coeff_a(real lambda, int l, int k);

//! Scalar orthonormal basis element F^{(vs,0)}_{l,k,m}(z).
cplx scalar_basis(const RepLabel &rep, const ScalarIndex &idx, const CQuat &z);

//! Spin orthonormal basis element F^{(vs,s)}_{l,k,J,M}(z), a (2s+1)-vector.
VecX spin_basis(const RepLabel &rep, const SpinIndex &idx, const CQuat &z);

//! D^s holomorphically extended to M(2,C): D^s of the complex quaternion
//! whose matrix image is A.  Multiplicative in A.
MatX d_s_matrix(HalfInt s, const Mat2 &A);

//! Closed-form reproducing kernel K^{(vs,s)}(z, zbar') =
//! [det(1+z zbar')]^{-vs-s} D^s(1+z zbar'), a (2s+1)x(2s+1) matrix.
MatX kernel(const RepLabel &rep, const CQuat &z, const CQuat &zp);

//! J-dependent normalization of the kernel expansion,
//!   K(z, zbar') = sum_{l,k,J} c_{l,k,J} sum_M Fhat_{lkJM}(z) Fhat_{lkJM}(z')^dag
//! with Fhat the unnormalized (z.z)^k Y_{s,l-2k,J,M}.  A J-independent
//! c = a_{vs+s,l,k} cannot reproduce the D^s factor (the Clebsch-Gordan
//! sums collapse to a multiple of the identity), so the coefficients carry
//! genuine J-dependence; they are computed exactly from the finite
//! bidegree-(l,l) part of the kernel and cached.  At s = 0 this reduces to
//! a_{vs,l,k}; at s = 1/2 it equals a_{vs+1/2,l,k} (vs-1)/(vs-1+k) on the
//! stretched branch J = l-2k+1/2 and a_{vs+1/2,l,k} (vs-1)/(vs+l-k-1/2)
//! on J = l-2k-1/2.
real kernel_coeff(const RepLabel &rep, int l, int k, HalfInt J);

struct KernelCheck {
  real residual = 0;     // max entrywise |closed form - truncated sum|
  int l_max_used = 0;
};

//! Compares the closed-form kernel against the truncated orthonormal-basis
//! expansion sum_nu F_nu(z) F_nu(z')^dag.
KernelCheck kernel_expansion_check(const RepLabel &rep, const CQuat &z, const CQuat &zp,
                                   const Truncation &trunc);

struct McEstimate {
  cplx value{};
  real std_error = 0;
  std::uint64_t accepted = 0;
  std::uint64_t total = 0;
};

//! Monte Carlo estimate of the scalar inner product (F_idx1, F_idx2) by
//! rejection sampling of the bounded domain inside [-1,1]^6; the box volume
//! enters the weight, so no closed-form domain volume is needed.
McEstimate mc_inner_product(const RepLabel &rep, const ScalarIndex &idx1, const ScalarIndex &idx2,
                            const Truncation &trunc, std::uint64_t seed);

//! Monte Carlo check of the reproducing property: the estimate approximates
//! F_idx(z0) when the kernel reproduces.
McEstimate mc_reproducing(const RepLabel &rep, const ScalarIndex &idx, const CQuat &z0,
                          const Truncation &trunc, std::uint64_t seed);

} // namespace sp4rep::fockbasis
