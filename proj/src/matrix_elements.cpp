#include "sp4rep/matrix_elements.hpp"

#include <cmath>

#include "sp4rep/errors.hpp"
#include "sp4rep/gegenbauer.hpp"
#include "sp4rep/harmonics.hpp"
#include "sp4rep/wigner.hpp"

namespace sp4rep::matrix_elements {

namespace {

using wigner::factorial;
using wigner::sigma;
using wigner::sigma2;
using wigner::three_j;

real a_gen(real lambda, int l, int k) { return gegenbauer::coeff_a_general(lambda, l, k); }

cplx dget(const MatX &d, int j2, int m1_2, int m2_2)
{
  return d((j2 - m1_2) / 2, (j2 - m2_2) / 2);
}

cplx ipow_c(cplx base, int n)
{
  cplx p = 1;
  for (int i = 0; i < n; ++i)
    p *= base;
  return p;
}

// conversion factor of D^{l/2}(z) into (z.z)^{(l-l')/2} Y_{l'm'}(z), without
// the 3-j symbol
real yd_factor(int l, int lp)
{
  return std::sqrt(4 * kPi) * std::pow(real(2), lp) * std::sqrt(real(2 * lp + 1)) *
         std::sqrt(factorial(l - lp) / factorial(l + lp + 1)) * factorial((l + lp) / 2) /
         factorial((l - lp) / 2);
}

uint64_t pack_idx(const ScalarIndex &in, const ScalarIndex &out, int tag)
{
  auto u = [](int x) { return uint64_t(uint16_t(x + 256)) & 0x3ff; };
  return u(in.l) | (u(in.k) << 10) | (u(in.m) << 20) | (u(out.l) << 30) | (u(out.k) << 40) |
         (u(out.m) << 50) | (uint64_t(tag) << 60);
}

uint64_t pack_uc(int L, int m, int Lp)
{
  auto u = [](int x) { return uint64_t(uint16_t(x + 256)) & 0x3ff; };
  return u(L) | (u(m) << 10) | (u(Lp) << 20);
}

} // namespace

// ---------------------------------------------------------------------------
// pointwise oracles
// ---------------------------------------------------------------------------

cplx apply_scalar_action(const RepLabel &rep, const Sp4Element &g,
                         const std::vector<std::pair<ScalarIndex, cplx>> &f, const CQuat &z)
{
  rep.validate();
  if (rep.s.twice != 0)
    throw OutOfRegime("apply_scalar_action: s = 0 required");
  const Sp4Element h = sp4::inverse(g);
  const CQuat zq = CQuat::pure(z.v);
  const CQuat den = -(conj_complex(h.b) * zq) + conj_complex(h.a);
  const cplx den_det = det(den);
  if (std::abs(den_det) <= real(1e-14))
    throw SingularDenominator("apply_scalar_action: singular (-bbar z + abar)");
  const cplx multiplier = std::pow(den_det, cplx(-rep.varsigma));
  const CQuat w = sp4::domain_action(h, zq);
  cplx sum = 0;
  for (const auto &[idx, c] : f)
    sum += c * fockbasis::scalar_basis(rep, idx, w);
  return multiplier * sum;
}

VecX apply_spin_action(const RepLabel &rep, const Sp4Element &g,
                       const std::vector<std::pair<SpinIndex, cplx>> &f, const CQuat &z)
{
  rep.validate();
  const Sp4Element h = sp4::inverse(g);
  const CQuat zq = CQuat::pure(z.v);
  const CQuat den = -(conj_complex(h.b) * zq) + conj_complex(h.a);
  const cplx den_det = det(den);
  if (std::abs(den_det) <= real(1e-14))
    throw SingularDenominator("apply_spin_action: singular (-bbar z + abar)");
  const cplx multiplier = std::pow(den_det, cplx(-rep.varsigma - rep.s.value()));
  const MatX dmul = wigner::wigner_d_matrix(rep.s.twice, zq * adjoint(h.b) + adjoint(h.a));
  const CQuat w = sp4::domain_action(h, zq);
  VecX sum = VecX::Zero(rep.s.twice + 1);
  for (const auto &[idx, c] : f)
    sum += c * fockbasis::spin_basis(rep, idx, w);
  return multiplier * (dmul * sum);
}

// ---------------------------------------------------------------------------
// engine setup
// ---------------------------------------------------------------------------

ElementEngine::ElementEngine(RepLabel rep, Sp4Element g, Truncation trunc)
    : rep_(rep), g_(g), trunc_(trunc)
{
  rep_.validate();
  const real bscale = max_abs(g_.b);
  const real det_b_mag = std::abs(det(g_.b));
  b0_ = det_b_mag < real(1e-12) * (1 + std::abs(det(g_.a)));
  if (b0_) {
    if (bscale > real(1e-10) * (1 + max_abs(g_.a)))
      throw SingularBlock("element engine: b is null but nonzero; not a group element");
    // extension-valid inverse of a block-diagonal element
    h_ = Sp4Element{sp4rep::inverse(g_.a), CQuat::zero()};
    abar_ = conj_complex(h_.a);
    abar_inv_ = sp4rep::inverse(abar_);
    det_abar_ = det(abar_);
    return;
  }

  h_ = sp4::inverse(g_);
  ah_ = h_.a;
  bh_ = h_.b;
  abar_ = conj_complex(ah_);
  bbar_ = conj_complex(bh_);
  if (std::abs(det(abar_)) <= real(1e-12))
    throw SingularBlock("element engine: abar is near-singular");
  abar_inv_ = sp4rep::inverse(abar_);
  det_abar_ = det(abar_);
  det_b_ = det(bh_);

  // w = bt at^{-1} and u = bbar^{-1} abar are pure vectors for genuine group
  // elements; a violation means a bad input
  w_ = conj_quat(bh_) * sp4rep::inverse(conj_quat(ah_));
  u_ = sp4rep::inverse(bbar_) * abar_;
  const real wtol = real(1e-10) * (1 + max_abs(w_));
  const real utol = real(1e-10) * (1 + max_abs(u_));
  if (std::abs(w_.w) > wtol || std::abs(u_.w) > utol)
    throw NotInGroup("element engine: w or u not pure (group identities violated)");
  w_.w = 0;
  u_.w = 0;
  ww_ = vdot(w_, w_);
  uu_ = vdot(u_, u_);
}

const MatX &ElementEngine::dtab(std::vector<MatX> &tab, const CQuat &q, int j2)
{
  while (int(tab.size()) <= j2)
    tab.push_back(wigner::wigner_d_matrix(int(tab.size()), q));
  return tab[j2];
}

const std::vector<cplx> &ElementEngine::ytab(std::vector<std::vector<cplx>> &tab, const CQuat &q,
                                             int l)
{
  while (int(tab.size()) <= l) {
    const int ll = int(tab.size());
    std::vector<cplx> row(2 * ll + 1);
    for (int m = -ll; m <= ll; ++m)
      row[m + ll] = harmonics::solid_harmonic(ll, m, q);
    tab.push_back(std::move(row));
  }
  return tab[l];
}

// ---------------------------------------------------------------------------
// term C: U_{L,k,m; L',L'',m''}(g), tabulated over (L'', m'') per (L, m, L')
// ---------------------------------------------------------------------------

const std::vector<cplx> &ElementEngine::u_c(int L, int m, int Lp)
{
  const uint64_t key = pack_uc(L, m, Lp);
  if (auto it = uc_cache_.find(key); it != uc_cache_.end())
    return it->second;

  const int stride = 2 * Lp + 1;
  std::vector<cplx> table(size_t(Lp + 1) * stride, cplx(0));

  // accumulator over (L1', m1', L3', m3')
  const int t_l1 = L + 1, t_m1 = 2 * L + 1, t_l3 = Lp + 1, t_m3 = 2 * Lp + 1;
  std::vector<cplx> T(size_t(t_l1) * t_m1 * t_l3 * t_m3, cplx(0));
  auto tref = [&](int L1p, int m1p, int L3p, int m3p) -> cplx & {
    return T[((size_t(L1p) * t_m1 + (m1p + L)) * t_l3 + L3p) * t_m3 + (m3p + Lp)];
  };

  for (int m1_2 = -L; m1_2 <= L; m1_2 += 2) {
    const int m2_2 = m1_2 + 2 * m;
    if (std::abs(m2_2) > L)
      continue;
    // A_{l,k,m1,m2} (sigma-corrected form fixed by the Y<->D oracles) times
    // the sigma^{L/2}_{m2} / sigma^{L/2}_{m1} ratio of the C-term
    cplx acoef = std::pow(real(2), -L) * std::sqrt(real(2 * L + 1) / (4 * kPi)) *
                 phase_half(m1_2) / sigma(2 * L, 2 * m) * sigma2(L, m1_2, m2_2);
    acoef *= sigma(L, m2_2) / sigma(L, m1_2);

    for (int L1 = 0; L1 <= std::min(L, Lp); ++L1) {
      const int L2 = L - L1;
      const int L3 = Lp - L1;
      const int L4 = L + L3;
      const auto &Da = dtab(d_a_, ah_, L1);
      const auto &Db = dtab(d_b_, bh_, L2);
      const auto &Dmb = dtab(d_mbbar_, -bbar_, L3);
      const auto &Dai = dtab(d_abarinv_, abar_inv_, L4);

      // A side: AS[(q, L1', m1')]
      const int n_q = L + 1, n_l1p = L1 + 1, n_m1p = 2 * L1 + 1;
      std::vector<cplx> AS(size_t(n_q) * n_l1p * n_m1p, cplx(0));
      auto asref = [&](int q_2, int L1p, int m1p) -> cplx & {
        return AS[(size_t((q_2 + L) / 2) * n_l1p + L1p) * n_m1p + (m1p + L1)];
      };
      for (int m11_2 = -L1; m11_2 <= L1; m11_2 += 2) {
        const int m21_2 = m1_2 - m11_2;
        if (std::abs(m21_2) > L2)
          continue;
        for (int m12_2 = -L1; m12_2 <= L1; m12_2 += 2)
          for (int m22_2 = -L2; m22_2 <= L2; m22_2 += 2) {
            const int q_2 = m12_2 + m22_2;
            const cplx base = sigma2(L1, m11_2, m12_2) * sigma2(L2, m21_2, m22_2) *
                              dget(Db, L2, m21_2, m22_2);
            if (base == cplx(0))
              continue;
            for (int n_2 = -L1; n_2 <= L1; n_2 += 2) {
              const cplx da = dget(Da, L1, m11_2, n_2);
              if (da == cplx(0))
                continue;
              const int m1p_2 = m12_2 - n_2;
              for (int L1p = L1 % 2; L1p <= L1; L1p += 2) {
                if (std::abs(m1p_2) > 2 * L1p)
                  continue;
                const real tj = three_j(L1, L1, 2 * L1p, n_2, -m12_2, m1p_2);
                if (tj == real(0))
                  continue;
                asref(q_2, L1p, m1p_2 / 2) +=
                    base * da * yd_factor(L1, L1p) * phase_half(2 * L1p + m12_2) * tj;
              }
            }
          }
      }

      // B side: C1[n'][m41] independent of q
      const int n_np = L3 + 1, n_m41 = L4 + 1;
      std::vector<cplx> C1(size_t(n_np) * n_m41, cplx(0));
      auto c1ref = [&](int np_2, int m41_2) -> cplx & {
        return C1[size_t((np_2 + L3) / 2) * n_m41 + (m41_2 + L4) / 2];
      };
      for (int np_2 = -L3; np_2 <= L3; np_2 += 2)
        for (int m41_2 = -L4; m41_2 <= L4; m41_2 += 2) {
          cplx acc = 0;
          for (int m31_2 = -L3; m31_2 <= L3; m31_2 += 2) {
            const int m42_2 = m2_2 + m31_2;
            if (std::abs(m42_2) > L4)
              continue;
            acc += sigma(L3, m31_2) * dget(Dmb, L3, m31_2, np_2) / sigma(L4, m42_2) *
                   dget(Dai, L4, m41_2, m42_2);
          }
          c1ref(np_2, m41_2) = acc;
        }

      // combine through q
      const real sgn_l3 = parity(L3);
      for (int q_2 = -L; q_2 <= L; q_2 += 2) {
        // BSq[(L3', m3')]
        const int n_l3p = L3 + 1, n_m3p = 2 * L3 + 1;
        std::vector<cplx> BS(size_t(n_l3p) * n_m3p, cplx(0));
        auto bsref = [&](int L3p, int m3p) -> cplx & {
          return BS[size_t(L3p) * n_m3p + (m3p + L3)];
        };
        bool bs_any = false;
        for (int m32_2 = -L3; m32_2 <= L3; m32_2 += 2) {
          const int m41_2 = q_2 + m32_2;
          if (std::abs(m41_2) > L4)
            continue;
          const real w32 = sigma(L3, m32_2) / sigma(L4, m41_2);
          for (int np_2 = -L3; np_2 <= L3; np_2 += 2) {
            const cplx c1v = c1ref(np_2, m41_2);
            if (c1v == cplx(0))
              continue;
            const int m3p_2 = m32_2 - np_2;
            for (int L3p = L3 % 2; L3p <= L3; L3p += 2) {
              if (std::abs(m3p_2) > 2 * L3p)
                continue;
              const real tj = three_j(L3, L3, 2 * L3p, np_2, -m32_2, m3p_2);
              if (tj == real(0))
                continue;
              bsref(L3p, m3p_2 / 2) +=
                  w32 * c1v * yd_factor(L3, L3p) * phase_half(2 * L3p + m32_2) * tj;
              bs_any = true;
            }
          }
        }
        if (!bs_any)
          continue;

        for (int L1p = L1 % 2; L1p <= L1; L1p += 2)
          for (int m1p = -L1p; m1p <= L1p; ++m1p) {
            const cplx as = asref(q_2, L1p, m1p);
            if (as == cplx(0))
              continue;
            const cplx lhs = acoef * sgn_l3 * as;
            for (int L3p = L3 % 2; L3p <= L3; L3p += 2)
              for (int m3p = -L3p; m3p <= L3p; ++m3p) {
                const cplx bs = bsref(L3p, m3p);
                if (bs == cplx(0))
                  continue;
                tref(L1p, m1p, L3p, m3p) += lhs * bs;
              }
          }
      }
    }
  }

  // linearize Y_{L1'm1'} Y_{L3'm3'} into Y_{L'' m''}
  for (int L1p = 0; L1p <= L; ++L1p)
    for (int m1p = -L1p; m1p <= L1p; ++m1p)
      for (int L3p = 0; L3p <= Lp; ++L3p)
        for (int m3p = -L3p; m3p <= L3p; ++m3p) {
          const cplx t = tref(L1p, m1p, L3p, m3p);
          if (t == cplx(0))
            continue;
          const int mpp = m1p + m3p;
          for (int Lpp = std::max(std::abs(L1p - L3p), std::abs(mpp)); Lpp <= L1p + L3p; ++Lpp) {
            if ((L1p + L3p - Lpp) % 2)
              continue;
            const real tj0 = three_j(2 * L1p, 2 * L3p, 2 * Lpp, 0, 0, 0);
            if (tj0 == real(0))
              continue;
            const real tj = three_j(2 * L1p, 2 * L3p, 2 * Lpp, 2 * m1p, 2 * m3p, -2 * mpp);
            if (tj == real(0))
              continue;
            table[size_t(Lpp) * stride + (mpp + Lp)] +=
                t * parity(mpp) *
                std::sqrt(real(2 * L1p + 1) * real(2 * L3p + 1) * real(2 * Lpp + 1) / (4 * kPi)) *
                tj * tj0;
          }
        }

  // global (det abar)^{-1} of the inverse-addition expansion
  const cplx scale = cplx(1) / det_abar_;
  for (auto &v : table)
    v *= scale;

  return uc_cache_.emplace(key, std::move(table)).first->second;
}

// ---------------------------------------------------------------------------
// scalar elements
// ---------------------------------------------------------------------------

cplx ElementEngine::scalar_series(real vs, const ScalarIndex &in, const ScalarIndex &out)
{
  const int L = in.l - 2 * in.k;
  const int Lppp = out.l - 2 * out.k;
  const cplx cww = std::conj(ww_);
  const cplx cuu = std::conj(uu_);

  cplx sum = 0;
  for (int lf = 0; lf <= out.l; ++lf) {
    const int lbar_max = std::min(2 * in.k, out.l - lf);
    for (int lb = 0; lb <= lbar_max; ++lb) {
      const int Lp = out.l - lf - lb;
      const auto &U = u_c(L, in.m, Lp);
      const int stride = 2 * Lp + 1;

      for (int kf = 0; 2 * kf <= lf; ++kf) {
        const real af = a_gen(vs + in.k - 1, lf, kf);
        if (af == real(0))
          continue;
        const int lam_f = lf - 2 * kf;
        const auto &yw = ytab(y_w_, w_, lam_f);
        for (int kb = 0; 2 * kb <= lb; ++kb) {
          const real ab = a_gen(real(-in.k), lb, kb);
          if (ab == real(0))
            continue;
          const int lam_b = lb - 2 * kb;
          const auto &yu = ytab(y_u_, u_, lam_b);

          for (int mf = -lam_f; mf <= lam_f; ++mf) {
            const cplx wfac = std::conj(yw[mf + lam_f]) * ipow_c(cww, kf);
            if (wfac == cplx(0))
              continue;
            for (int mb = -lam_b; mb <= lam_b; ++mb) {
              const cplx ufac = std::conj(yu[mb + lam_b]) * ipow_c(cuu, kb);
              if (ufac == cplx(0))
                continue;
              const int mbb = mf + mb;
              const int mpp = out.m - mbb;
              if (std::abs(mpp) > Lp)
                continue;

              for (int Lbb = std::max(std::abs(lam_f - lam_b), std::abs(mbb));
                   Lbb <= lam_f + lam_b; ++Lbb) {
                if ((lam_f + lam_b - Lbb) % 2)
                  continue;
                const real c1 = parity(mbb) *
                                std::sqrt(real(2 * lam_f + 1) * real(2 * lam_b + 1) *
                                          real(2 * Lbb + 1) / (4 * kPi)) *
                                three_j(2 * lam_f, 2 * lam_b, 2 * Lbb, 2 * mf, 2 * mb, -2 * mbb) *
                                three_j(2 * lam_f, 2 * lam_b, 2 * Lbb, 0, 0, 0);
                if (c1 == real(0))
                  continue;

                for (int Lpp = std::abs(mpp); Lpp <= Lp; ++Lpp) {
                  if ((Lp - Lpp) % 2)
                    continue;
                  if (Lppp < std::abs(Lbb - Lpp) || Lppp > Lbb + Lpp)
                    continue;
                  if ((Lbb + Lpp + Lppp) % 2)
                    continue;
                  const cplx uval = U[size_t(Lpp) * stride + (mpp + Lp)];
                  if (uval == cplx(0))
                    continue;
                  const real c2 = parity(out.m) *
                                  std::sqrt(real(2 * Lbb + 1) * real(2 * Lpp + 1) *
                                            real(2 * Lppp + 1) / (4 * kPi)) *
                                  three_j(2 * Lbb, 2 * Lpp, 2 * Lppp, 2 * mbb, 2 * mpp, -2 * out.m) *
                                  three_j(2 * Lbb, 2 * Lpp, 2 * Lppp, 0, 0, 0);
                  if (c2 == real(0))
                    continue;
                  sum += af * ab * wfac * ufac * c1 * c2 * uval;
                }
              }
            }
          }
        }
      }
    }
  }

  const cplx pre = std::sqrt(a_gen(vs, in.l, in.k) / a_gen(vs, out.l, out.k)) *
                   std::pow(det_abar_, cplx(-(vs + in.k - 1))) * ipow_c(det_b_, in.k);
  return pre * sum;
}

cplx ElementEngine::scalar_b0(real vs, const ScalarIndex &in, const ScalarIndex &out)
{
  if (out.l != in.l || out.k < in.k)
    return 0;
  const int l = in.l, k = in.k, kp = out.k;
  const int lam = l - 2 * k;   // degree of the D-matrices
  const int lp = l - 2 * kp;   // harmonic degree of the target
  const auto &Da = dtab(d_b0_a_, h_.a, lam);
  const auto &Dai = dtab(d_b0_abarinv_, abar_inv_, lam);

  cplx sum = 0;
  for (int m1_2 = -lam; m1_2 <= lam; m1_2 += 2) {
    const int m2_2 = m1_2 + 2 * in.m;
    if (std::abs(m2_2) > lam)
      continue;
    const cplx acoef = std::pow(real(2), -lam) * std::sqrt(real(2 * lam + 1) / (4 * kPi)) *
                       phase_half(m1_2) / sigma(2 * lam, 2 * in.m) * sigma2(lam, m1_2, m2_2);
    for (int n1_2 = -lam; n1_2 <= lam; n1_2 += 2) {
      const int n2_2 = n1_2 + 2 * out.m;
      if (std::abs(n2_2) > lam)
        continue;
      const real tj = three_j(lam, lam, 2 * lp, n1_2, -n2_2, 2 * out.m);
      if (tj == real(0))
        continue;
      sum += acoef * dget(Da, lam, m1_2, n1_2) * dget(Dai, lam, n2_2, m2_2) *
             phase_half(2 * lp + n2_2) * tj;
    }
  }

  const real convert = std::sqrt(4 * kPi) * std::pow(real(2), lp) * std::sqrt(real(2 * lp + 1)) *
                       std::sqrt(factorial(2 * (kp - k)) / factorial(2 * l - 2 * k - 2 * kp + 1)) *
                       factorial(l - k - kp) / factorial(kp - k);
  const cplx pre = std::sqrt(a_gen(vs, l, k) / a_gen(vs, l, kp)) *
                   std::pow(det_abar_, cplx(-(vs + k))) * ipow_c(det(h_.a), k);
  return pre * convert * sum;
}

cplx ElementEngine::scalar_at(real vs, const ScalarIndex &in, const ScalarIndex &out)
{
  const int tag = (vs == rep_.varsigma) ? 0 : 1;
  const uint64_t key = pack_idx(in, out, tag);
  if (auto it = scalar_cache_.find(key); it != scalar_cache_.end())
    return it->second;
  const cplx v = b0_ ? scalar_b0(vs, in, out) : scalar_series(vs, in, out);
  scalar_cache_.emplace(key, v);
  return v;
}

ElementValue ElementEngine::scalar_element(const ScalarIndex &in, const ScalarIndex &out)
{
  if (rep_.s.twice != 0)
    throw OutOfRegime("scalar_element: engine labeled with s != 0");
  if (!in.valid() || !out.valid())
    throw IndexOutOfRange("scalar_element: invalid index");
  return {scalar_at(rep_.varsigma, in, out), 0, b0_};
}

// ---------------------------------------------------------------------------
// spin elements
// ---------------------------------------------------------------------------

cplx ElementEngine::spin_series(const SpinIndex &in, const SpinIndex &out)
{
  const int s2 = rep_.s.twice;
  const real vs_eff = rep_.varsigma + rep_.s.value();
  const int lam = in.l - 2 * in.k;
  const int Lb = out.l - 2 * out.k; // underlined L'''
  const CQuat astar = adjoint(ah_);
  const CQuat bstar = adjoint(bh_);

  cplx sum = 0;
  for (int rho2 = -s2; rho2 <= s2; rho2 += 2) {
    const int m_2 = in.M.twice - rho2;
    if (std::abs(m_2) > 2 * lam || m_2 % 2 != 0)
      continue;
    const real cg_in = wigner::clebsch_gordan(s2, rho2, 2 * lam, m_2, in.J.twice, in.M.twice);
    if (cg_in == real(0))
      continue;
    const ScalarIndex sc_in{in.l, in.k, m_2 / 2};

    for (int n1_2 = -s2; n1_2 <= s2; n1_2 += 2) {
      const int mbb_2 = out.M.twice - n1_2;
      if (std::abs(mbb_2) > 2 * Lb || mbb_2 % 2 != 0)
        continue;
      const real cg_out =
          wigner::clebsch_gordan(s2, n1_2, 2 * Lb, mbb_2, out.J.twice, out.M.twice);
      if (cg_out == real(0))
        continue;
      const real sig_inv = 1 / sigma2(s2, n1_2, rho2);

      for (int sp2 = 0; sp2 <= s2; ++sp2) {
        const int sm2 = s2 - sp2;     // 2(s - s')
        const int lppp = out.l - sm2; // embedded scalar out degree
        if (lppp < 0)
          continue;
        const auto &Das = dtab(d_astar_, astar, sp2);
        const auto &Dbs = dtab(d_bstar_, bstar, sm2);

        for (int n1p_2 = -sp2; n1p_2 <= sp2; n1p_2 += 2) {
          const int d1_2 = n1_2 - n1p_2;
          if (std::abs(d1_2) > sm2)
            continue;
          for (int n2p_2 = -sp2; n2p_2 <= sp2; n2p_2 += 2) {
            const int d2_2 = rho2 - n2p_2;
            if (std::abs(d2_2) > sm2)
              continue;
            const cplx da = sigma2(sp2, n1p_2, n2p_2) * dget(Das, sp2, n1p_2, n2p_2);
            if (da == cplx(0))
              continue;
            const real sig = sigma2(sm2, d1_2, d2_2);

            for (int np_2 = -sm2; np_2 <= sm2; np_2 += 2) {
              const cplx db = dget(Dbs, sm2, np_2, d2_2);
              if (db == cplx(0))
                continue;
              const int npp_2 = np_2 - d1_2;

              for (int spp = sm2 % 2; spp <= sm2; spp += 2) {
                if (std::abs(npp_2) > 2 * spp)
                  continue;
                const real tj_s = three_j(sm2, sm2, 2 * spp, d1_2, -np_2, npp_2);
                if (tj_s == real(0))
                  continue;
                const cplx yd = yd_factor(sm2, spp) * phase_half(2 * spp + np_2) * tj_s;

                const int mppp_2 = mbb_2 - npp_2;
                if (mppp_2 % 2 != 0)
                  continue;
                const int mppp = mppp_2 / 2;

                for (int kppp = 0; 2 * kppp <= lppp; ++kppp) {
                  const int lamppp = lppp - 2 * kppp;
                  if (std::abs(mppp) > lamppp)
                    continue;
                  if (Lb < std::abs(spp - lamppp) || Lb > spp + lamppp)
                    continue;
                  if ((spp + lamppp + Lb) % 2)
                    continue;
                  const real tj0 = three_j(2 * spp, 2 * lamppp, 2 * Lb, 0, 0, 0);
                  if (tj0 == real(0))
                    continue;
                  const real tj1 =
                      three_j(2 * spp, 2 * lamppp, 2 * Lb, npp_2, 2 * mppp, -mbb_2);
                  if (tj1 == real(0))
                    continue;
                  const real hy = parity(mbb_2 / 2) *
                                  std::sqrt(real(2 * spp + 1) * real(2 * lamppp + 1) *
                                            real(2 * Lb + 1) / (4 * kPi)) *
                                  tj1 * tj0;
                  const ScalarIndex sc_out{lppp, kppp, mppp};
                  const cplx u0 = scalar_at(vs_eff, sc_in, sc_out);
                  if (u0 == cplx(0))
                    continue;
                  const real ratio =
                      std::sqrt(a_gen(vs_eff, lppp, kppp) / a_gen(vs_eff, out.l, out.k));
                  sum += cg_in * cg_out * sig_inv * da * sig * db * yd * hy * ratio * u0;
                }
              }
            }
          }
        }
      }
    }
  }
  return sum;
}

cplx ElementEngine::spin_b0(const SpinIndex &in, const SpinIndex &out)
{
  if (out.l != in.l)
    return 0;
  const int s2 = rep_.s.twice;
  const real vs_eff = rep_.varsigma + rep_.s.value();
  const int lam = in.l - 2 * in.k;
  const int lamp = out.l - 2 * out.k;
  const MatX dastar = wigner::wigner_d_matrix(s2, adjoint(h_.a));

  cplx sum = 0;
  for (int rho2 = -s2; rho2 <= s2; rho2 += 2) {
    const int m_2 = in.M.twice - rho2;
    if (std::abs(m_2) > 2 * lam || m_2 % 2 != 0)
      continue;
    const real cg_in = wigner::clebsch_gordan(s2, rho2, 2 * lam, m_2, in.J.twice, in.M.twice);
    if (cg_in == real(0))
      continue;
    for (int rhop2 = -s2; rhop2 <= s2; rhop2 += 2) {
      const int mp_2 = out.M.twice - rhop2;
      if (std::abs(mp_2) > 2 * lamp || mp_2 % 2 != 0)
        continue;
      const real cg_out =
          wigner::clebsch_gordan(s2, rhop2, 2 * lamp, mp_2, out.J.twice, out.M.twice);
      if (cg_out == real(0))
        continue;
      const cplx dval = dget(dastar, s2, rhop2, rho2);
      if (dval == cplx(0))
        continue;
      sum += cg_in * cg_out * dval *
             scalar_at(vs_eff, {in.l, in.k, m_2 / 2}, {out.l, out.k, mp_2 / 2});
    }
  }
  return sum;
}

ElementValue ElementEngine::spin_element(const SpinIndex &in, const SpinIndex &out)
{
  if (!in.valid(rep_.s) || !out.valid(rep_.s))
    throw IndexOutOfRange("spin_element: invalid index");
  if (rep_.s.twice == 0) {
    const ScalarIndex si{in.l, in.k, in.M.as_int()};
    const ScalarIndex so{out.l, out.k, out.M.as_int()};
    return {scalar_at(rep_.varsigma, si, so), 0, b0_};
  }
  return {b0_ ? spin_b0(in, out) : spin_series(in, out), 0, b0_};
}

// ---------------------------------------------------------------------------
// blocks and reconstructions
// ---------------------------------------------------------------------------

MatX ElementEngine::scalar_block(int l_in, int l_out)
{
  const auto ins = fockbasis::enumerate_scalar(l_in);
  const auto outs = fockbasis::enumerate_scalar(l_out);
  MatX block(outs.size(), ins.size());
  for (size_t c = 0; c < ins.size(); ++c)
    for (size_t r = 0; r < outs.size(); ++r)
      block(r, c) = scalar_element(ins[c], outs[r]).value;
  return block;
}

MatX ElementEngine::spin_block(int l_in, int l_out)
{
  const auto ins = fockbasis::enumerate_spin(rep_.s, l_in);
  const auto outs = fockbasis::enumerate_spin(rep_.s, l_out);
  MatX block(outs.size(), ins.size());
  for (size_t c = 0; c < ins.size(); ++c)
    for (size_t r = 0; r < outs.size(); ++r)
      block(r, c) = spin_element(ins[c], outs[r]).value;
  return block;
}

cplx ElementEngine::reconstruct_scalar(const ScalarIndex &in, const CQuat &z, int l_max)
{
  cplx sum = 0;
  for (int l = 0; l <= l_max; ++l)
    for (const auto &out : fockbasis::enumerate_scalar(l)) {
      const cplx e = scalar_at(rep_.varsigma, in, out);
      if (e == cplx(0))
        continue;
      sum += e * fockbasis::scalar_basis(rep_, out, z);
    }
  return sum;
}

VecX ElementEngine::reconstruct_spin(const SpinIndex &in, const CQuat &z, int l_max)
{
  VecX sum = VecX::Zero(rep_.s.twice + 1);
  for (int l = 0; l <= l_max; ++l)
    for (const auto &out : fockbasis::enumerate_spin(rep_.s, l)) {
      const cplx e = spin_element(in, out).value;
      if (e == cplx(0))
        continue;
      sum += e * fockbasis::spin_basis(rep_, out, z);
    }
  return sum;
}

} // namespace sp4rep::matrix_elements
