#include "sp4rep/characters.hpp"

#include <cmath>

#include "sp4rep/errors.hpp"
#include "sp4rep/wigner.hpp"

namespace sp4rep::characters {

namespace {

cplx ipow_c(cplx base, int n)
{
  if (n < 0)
    return cplx(1) / ipow_c(base, -n);
  cplx p = 1;
  for (int i = 0; i < n; ++i)
    p *= base;
  return p;
}

} // namespace

cplx diag_element_scalar(real varsigma, const EigenPair &eig, int l, int k, int m)
{
  if (l < 0 || k < 0 || 2 * k > l || std::abs(m) > l - 2 * k)
    throw IndexOutOfRange("diag_element_scalar: invalid (l,k,m)");
  if (std::abs(std::abs(eig.mu * eig.nu) - 1) > real(1e-10))
    throw DeterminantNotOne("diag_element_scalar: |mu nu| = 1 required");

  const int lam = l - 2 * k;
  // blocks of g_d^{-1}: a_h -> diag(1/mu, 1/nu), abar_h^{-1} -> diag(conj nu, conj mu)
  const cplx mu_h = cplx(1) / eig.mu;
  const cplx nu_h = cplx(1) / eig.nu;
  const cplx det_ah = mu_h * nu_h;
  const cplx det_abar = std::conj(det_ah);

  cplx sum = 0;
  for (int m1_2 = -lam; m1_2 <= lam; m1_2 += 2) {
    const int m2_2 = m1_2 + 2 * m;
    if (std::abs(m2_2) > lam)
      continue;
    const cplx acoef = std::pow(real(2), -lam) * std::sqrt(real(2 * lam + 1) / (4 * kPi)) *
                       phase_half(m1_2) / wigner::sigma(2 * lam, 2 * m) *
                       wigner::sigma2(lam, m1_2, m2_2);
    const real tj = wigner::three_j(lam, lam, 2 * lam, m1_2, -m2_2, 2 * m);
    if (tj == real(0))
      continue;
    const cplx d1 = ipow_c(mu_h, (lam - m1_2) / 2) * ipow_c(nu_h, (lam + m1_2) / 2);
    const cplx d2 =
        ipow_c(std::conj(eig.nu), (lam - m2_2) / 2) * ipow_c(std::conj(eig.mu), (lam + m2_2) / 2);
    sum += acoef * d1 * d2 * phase_half(2 * lam + m2_2) * tj;
  }
  const real convert = std::sqrt(4 * kPi) * std::pow(real(2), lam) * std::sqrt(real(2 * lam + 1)) /
                       std::sqrt(wigner::factorial(2 * lam + 1)) * wigner::factorial(lam);
  const cplx pre =
      std::pow(det_abar, cplx(-(varsigma + k))) * ipow_c(det_ah, k);
  return pre * convert * sum;
}

cplx diag_element_spin(const RepLabel &rep, const EigenPair &eig, int l, int k, HalfInt J,
                       HalfInt M, HalfInt Jp, HalfInt Mp)
{
  rep.validate();
  const int s2 = rep.s.twice;
  const int lam = l - 2 * k;
  const real vs_eff = rep.varsigma + rep.s.value();
  // D^s(a_h^*) is diagonal with entries mubar^{-(s-rho)} nubar^{-(s+rho)}
  const cplx imub = cplx(1) / std::conj(eig.mu);
  const cplx inub = cplx(1) / std::conj(eig.nu);

  if (Mp.twice != M.twice)
    return 0; // m' = m and rho' = rho force M' = M

  cplx sum = 0;
  for (int rho2 = -s2; rho2 <= s2; rho2 += 2) {
    const int m_2 = M.twice - rho2;
    if (std::abs(m_2) > 2 * lam || m_2 % 2 != 0)
      continue;
    const real cg_in = wigner::clebsch_gordan(s2, rho2, 2 * lam, m_2, J.twice, M.twice);
    const real cg_out = wigner::clebsch_gordan(s2, rho2, 2 * lam, m_2, Jp.twice, Mp.twice);
    if (cg_in == real(0) || cg_out == real(0))
      continue;
    const cplx d_rho = ipow_c(imub, (s2 - rho2) / 2) * ipow_c(inub, (s2 + rho2) / 2);
    sum += cg_in * cg_out * d_rho * diag_element_scalar(vs_eff, eig, l, k, m_2 / 2);
  }
  return sum;
}

cplx diag_element_spin(const RepLabel &rep, const EigenPair &eig, int l, int k, HalfInt J,
                       HalfInt M)
{
  return diag_element_spin(rep, eig, l, k, J, M, J, M);
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::converged: return "converged";
  case Verdict::oscillating: return "oscillating";
  default: return "diverging";
  }
}

CharacterReport character(const CharacterRequest &req)
{
  req.rep.validate();
  if (!(req.trunc.abel_t > 0 && req.trunc.abel_t <= 1))
    throw ConfigError("character: abel_t in (0, 1] required");

  CharacterReport out;
  cplx running = 0;
  real tl = 1;
  std::vector<real> deltas;
  for (int l = 0; l <= req.trunc.l_max; ++l) {
    cplx level = 0;
    for (const auto &idx : fockbasis::enumerate_spin(req.rep.s, l))
      level += diag_element_spin(req.rep, req.eig, idx.l, idx.k, idx.J, idx.M);
    running += tl * level;
    tl *= req.trunc.abel_t;
    out.partial_sums.push_back(running);
    if (l > 0)
      deltas.push_back(std::abs(out.partial_sums[l] - out.partial_sums[l - 1]));
  }

  // verdict from windowed tail behavior of |S_L - S_{L-1}|
  const int n = int(deltas.size());
  out.last_delta = deltas.empty() ? 0 : deltas.back();
  if (n >= 8) {
    const real scale = 1 + std::abs(out.partial_sums.back());
    real win_new = 0, win_old = 0;
    for (int i = n - 3; i < n; ++i)
      win_new = std::max(win_new, deltas[i]);
    for (int i = n - 8; i < n - 5; ++i)
      win_old = std::max(win_old, deltas[i]);
    if (win_new <= real(1e-12) * scale || win_new < real(0.6) * win_old)
      out.verdict = Verdict::converged;
    else if (win_new > 2 * win_old && win_new > real(1e-6) * scale)
      out.verdict = Verdict::diverging;
    else
      out.verdict = Verdict::oscillating;
  } else {
    out.verdict = Verdict::oscillating;
  }
  return out;
}

} // namespace sp4rep::characters
