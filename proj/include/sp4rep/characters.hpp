#pragma once
#include <string>
#include <vector>

#include "sp4rep/config.hpp"
#include "sp4rep/fockbasis.hpp"
#include "sp4rep/halfint.hpp"

namespace sp4rep::characters {

using fockbasis::RepLabel;
using fockbasis::Truncation;

//! Eigenvalue pair (mu, nu) of a diagonalized element; |mu nu| = 1.
struct EigenPair {
  cplx mu{1, 0};
  cplx nu{1, 0};
};

//! Diagonal matrix element of the scalar representation built from
//! make_diagonal(mu, nu): the finite (m1, m2)-sum specialization of the
//! b = 0 formula.  Matches the general engine on g_d exactly.
cplx diag_element_scalar(real varsigma, const EigenPair &eig, int l, int k, int m);

//! Spin diagonal element, possibly off-diagonal in (J, M) -> (J', M'); the
//! scalar engine enters at varsigma + s with the D^s weight of the
//! diagonalized compact factor.
cplx diag_element_spin(const RepLabel &rep, const EigenPair &eig, int l, int k, HalfInt J,
                       HalfInt M, HalfInt Jp, HalfInt Mp);

//! Diagonal (J' = J, M' = M) convenience overload.
cplx diag_element_spin(const RepLabel &rep, const EigenPair &eig, int l, int k, HalfInt J,
                       HalfInt M);

enum class Verdict { converged, oscillating, diverging };

std::string to_string(Verdict v);

struct CharacterReport {
  std::vector<cplx> partial_sums; // S_L for L = 0..l_max
  Verdict verdict = Verdict::diverging;
  real last_delta = 0;
};

struct CharacterRequest {
  RepLabel rep;
  EigenPair eig;
  Truncation trunc; // l_max and abel_t
};

//! Abel-regularized partial sums S_L = sum_{l<=L} t^l sum_{k,J,M} diag(l,k,J,M)
//! with a convergence verdict from the tail behavior; t = 1 gives the
//! literal truncated trace.  Divergence is reported, never thrown.
CharacterReport character(const CharacterRequest &req);

} // namespace sp4rep::characters
