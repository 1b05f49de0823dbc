#pragma once
#include <unordered_map>
#include <utility>
#include <vector>

#include "sp4rep/config.hpp"
#include "sp4rep/cquat.hpp"
#include "sp4rep/fockbasis.hpp"
#include "sp4rep/sp4.hpp"
#include "sp4rep/types.hpp"

namespace sp4rep::matrix_elements {

using fockbasis::RepLabel;
using fockbasis::ScalarIndex;
using fockbasis::SpinIndex;
using fockbasis::Truncation;
using sp4::Sp4Element;

//! Pointwise action oracle for the scalar representation:
//! (U(g) f)(z) = [det(-bbar z + abar)]^{-vs} f(g^{-1} <> z), evaluated from
//! the closed form with the blocks of g^{-1} (so U(g1) U(g2) = U(g1 g2)).
//! No series is involved; this is the reference every expansion is tested
//! against.
cplx apply_scalar_action(const RepLabel &rep, const Sp4Element &g,
                         const std::vector<std::pair<ScalarIndex, cplx>> &f, const CQuat &z);

//! Spin pointwise oracle, including the D^s(z b* + a*) multiplier.
VecX apply_spin_action(const RepLabel &rep, const Sp4Element &g,
                       const std::vector<std::pair<SpinIndex, cplx>> &f, const CQuat &z);

struct ElementValue {
  cplx value{};
  real tail_estimate = 0; // element sums close exactly under the selection
                          // rules; truncation lives at the operator level
  bool b0_route = false;
};

//! Matrix-element engine for one group element: series route for b != 0,
//! exact finite route for b = 0, with shared per-element caches.  Entries
//! are the coefficients of U(g) F_in in the orthonormal basis:
//! U(g) F_in = sum_out  elem(in, out) F_out.
//!
//! Instances are not thread-safe; build one per thread (the global 3-j and
//! sigma memo tables they lean on are concurrent).
class ElementEngine {
public:
  ElementEngine(RepLabel rep, Sp4Element g, Truncation trunc);

  bool b0_route() const { return b0_; }

  //! Scalar element (s = 0 labels); also serves the embedded vs + s engine.
  ElementValue scalar_element(const ScalarIndex &in, const ScalarIndex &out);

  //! Spin element for the engine's rep label.
  ElementValue spin_element(const SpinIndex &in, const SpinIndex &out);

  //! Dense block between complete degree subspaces, rows indexed by the
  //! out enumeration and columns by the in enumeration.
  MatX scalar_block(int l_in, int l_out);
  MatX spin_block(int l_in, int l_out);

  //! Truncated reconstruction sum_{out: l <= l_max} elem(in,out) F_out(z),
  //! for oracle-consistency tests.
  cplx reconstruct_scalar(const ScalarIndex &in, const CQuat &z, int l_max);
  VecX reconstruct_spin(const SpinIndex &in, const CQuat &z, int l_max);

private:
  RepLabel rep_;
  Sp4Element g_, h_; // h = g^{-1}, whose blocks enter all formulas
  Truncation trunc_;
  bool b0_ = false;

  // series-route per-g data (blocks of h)
  CQuat ah_, bh_, abar_, bbar_, abar_inv_, w_, u_;
  cplx det_abar_{}, det_b_{}, ww_{}, uu_{};

  std::vector<MatX> d_a_, d_b_, d_mbbar_, d_abarinv_, d_astar_, d_bstar_;
  std::vector<MatX> d_b0_a_, d_b0_abarinv_;
  std::vector<std::vector<cplx>> y_w_, y_u_;

  std::unordered_map<uint64_t, std::vector<cplx>> uc_cache_;
  std::unordered_map<uint64_t, cplx> scalar_cache_;

  const MatX &dtab(std::vector<MatX> &tab, const CQuat &q, int j2);
  const std::vector<cplx> &ytab(std::vector<std::vector<cplx>> &tab, const CQuat &q, int l);

  //! Term-C object U_{L,k,m; L',L'',m''} (k enters only through L = l - 2k);
  //! the returned table is indexed over (L'', m'').
  const std::vector<cplx> &u_c(int L, int m, int Lp);

  cplx scalar_series(real vs, const ScalarIndex &in, const ScalarIndex &out);
  cplx scalar_b0(real vs, const ScalarIndex &in, const ScalarIndex &out);
  cplx scalar_at(real vs, const ScalarIndex &in, const ScalarIndex &out); // cached dispatch
  cplx spin_series(const SpinIndex &in, const SpinIndex &out);
  cplx spin_b0(const SpinIndex &in, const SpinIndex &out);
};

} // namespace sp4rep::matrix_elements
