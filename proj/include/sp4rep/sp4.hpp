#pragma once
#include <cstdint>

#include "sp4rep/config.hpp"
#include "sp4rep/cquat.hpp"
#include "sp4rep/types.hpp"

namespace sp4rep::sp4 {

//! Group element in the block form [[a, b], [-conj b, conj a]]; the form is
//! closed under multiplication, so products of SL(4,C)-extension elements
//! (make_diagonal with non-unimodular eigenvalues) stay representable.
struct Sp4Element {
  CQuat a = CQuat::one();
  CQuat b = CQuat::zero();
};

Sp4Element identity();

//! One-parameter boost: a = cosh(t), b = sinh(t) e1.
Sp4Element boost_d(real t);

//! Block-form product.
Sp4Element mul(const Sp4Element &g1, const Sp4Element &g2);
inline Sp4Element operator*(const Sp4Element &g1, const Sp4Element &g2) { return mul(g1, g2); }

//! Max residual over the four group identities a a* - b b* = 1,
//! a bt = -b at, a* a - bt bbar = 1, a* b = -bt abar.
real membership_residual(const Sp4Element &g);

struct MembershipReport {
  bool ok = false;
  real residual = 0;
};
MembershipReport check_membership(const Sp4Element &g, real tol = real(1e-10));

//! Inverse by the quaternionic-conjugate block form (valid on the real
//! group); throws NotInGroup when the membership residual exceeds tol.
Sp4Element inverse(const Sp4Element &g, real tol = real(1e-8));

//! Inverse of a block-diagonal element by plain quaternion inversion; also
//! valid for SL(4,C)-extension diagonals where the block form (2.2) is not.
Sp4Element inverse_b0(const Sp4Element &g);

//! 4x4 complex-matrix image.
Mat4 to_matrix4(const Sp4Element &g);

//! Compact factor element diag(a, conj a) with a = e^{i phi} xi, xi a random
//! real unit quaternion; Haar-uniform on the compact subgroup.
Sp4Element random_compact(std::uint64_t &state);

//! Seeded KAK-style element k1 d(t) k2 with t uniform in [0, t_max];
//! membership holds by construction.
Sp4Element random_element(std::uint64_t seed, real t_max);

//! True iff both eigenvalues of Z Z^dag are < 1 (z must be pure).
bool in_domain(const CQuat &z);

//! Largest eigenvalue of Z Z^dag (diagnostic companion of in_domain).
real domain_radius_sq(const CQuat &z);

//! Fractional action (a z + b)(-bbar z + abar)^{-1} of the *passed* element's
//! blocks on a pure quaternion in the domain.  For the geometric action of g
//! pass its inverse (hence the argument name).
CQuat domain_action(const Sp4Element &g_inv, const CQuat &z);

struct EigenQuadruple {
  cplx mu{};    // |mu| >= 1
  cplx nu{};    // |nu| <= 1
  bool degenerate = false; // pairing ambiguous at tolerance (not fatal)
};

//! Eigenvalues of the 4x4 image, paired as {mu, nu, conj nu, conj mu} with
//! |mu| >= 1 >= |nu| and ties broken by argument in [0, 2 pi).
EigenQuadruple eigenvalues(const Sp4Element &g);

//! Diagonal-form element with a = (z4, z3 e3), z4 = (mu+nu)/2,
//! z3 = (mu-nu)/(2i); lies in the SL(4,C) extension when mu, nu are not
//! unimodular, so the real-form membership check is deliberately skipped.
//! Requires |mu nu| = 1 (unit determinant).
Sp4Element make_diagonal(cplx mu, cplx nu);

//! Whether the element satisfies the real-form constraints at tolerance.
bool is_real_form(const Sp4Element &g, real tol = real(1e-10));

} // namespace sp4rep::sp4
