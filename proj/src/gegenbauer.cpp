#include "sp4rep/gegenbauer.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "sp4rep/errors.hpp"
#include "sp4rep/harmonics.hpp"
#include "sp4rep/wigner.hpp"

namespace sp4rep::gegenbauer {

cplx gegenbauer_c(int l, real lambda, cplx t)
{
  if (l < 0)
    throw IndexOutOfRange("gegenbauer_c: l >= 0 required");
  if (l == 0)
    return 1;
  cplx c_prev = 1;
  cplx c_cur = real(2) * lambda * t;
  for (int n = 2; n <= l; ++n) {
    cplx c_next = (real(2) * (n + lambda - 1) * t * c_cur - (n + 2 * lambda - 2) * c_prev) / real(n);
    c_prev = c_cur;
    c_cur = c_next;
  }
  return c_cur;
}

real pochhammer(real x, int k)
{
  real p = 1;
  for (int i = 0; i < k; ++i)
    p *= x + i;
  return p;
}

real coeff_d(real lambda, int l, int k)
{
  if (!(lambda > real(0.5)))
    throw InvalidLambda("coeff_d: lambda > 1/2 required for the Gamma form");
  return (l - 2 * k + real(0.5)) * std::tgamma(k + lambda - real(0.5)) *
         std::tgamma(lambda + l - k) /
         (wigner::factorial(k) * std::tgamma(l - k + real(1.5)));
}

real coeff_d_prime(real lambda, int l, int k)
{
  return (l - 2 * k + real(0.5)) * pochhammer(lambda - real(0.5), k) * pochhammer(lambda, l - k) /
         (wigner::factorial(k) * std::tgamma(l - k + real(1.5)));
}

real coeff_a(real lambda, int l, int k)
{
  if (!(lambda > real(0.5)))
    throw InvalidLambda("coeff_a: lambda > 1/2 required for the Gamma form");
  return std::pow(real(2), 2 * lambda - 1) * kPi * std::tgamma(k + lambda - real(0.5)) *
         std::tgamma(lambda + l - k) /
         (std::tgamma(2 * lambda - 1) * wigner::factorial(k) * std::tgamma(l - k + real(1.5)));
}

real coeff_a_general(real lambda, int l, int k)
{
  return 2 * std::pow(kPi, real(1.5)) * pochhammer(lambda - real(0.5), k) *
         pochhammer(lambda, l - k) / (wigner::factorial(k) * std::tgamma(l - k + real(1.5)));
}

cplx det_power_closed_form(real lambda, const CQuat &z, const CQuat &zp)
{
  const CQuat zpc = conj_complex(zp);
  const cplx base = cplx(1) - real(2) * vdot(z, zpc) + vdot(z, z) * vdot(zpc, zpc);
  return std::pow(base, cplx(-lambda));
}

Expansion det_power_expansion(real lambda, const CQuat &z, const CQuat &zp, int l_max, real tol)
{
  const CQuat zpc = conj_complex(zp);
  const cplx base = cplx(1) - real(2) * vdot(z, zpc) + vdot(z, z) * vdot(zpc, zpc);
  if (std::abs(base) < real(0.05))
    throw TruncationNotConverged(
        "det_power_expansion: closed-form base too close to zero for a certified sum");

  const cplx zz = vdot(z, z);
  const cplx wwc = std::conj(vdot(zp, zp));

  Expansion out;
  std::vector<real> shell_mags;
  cplx sum = 0;
  for (int l = 0; l <= l_max; ++l) {
    cplx shell = 0;
    for (int k = 0; 2 * k <= l; ++k) {
      const real a = coeff_a_general(lambda, l, k);
      if (a == real(0))
        continue;
      cplx zk = 1, wk = 1;
      for (int i = 0; i < k; ++i) {
        zk *= zz;
        wk *= wwc;
      }
      const int lr = l - 2 * k;
      cplx msum = 0;
      for (int m = -lr; m <= lr; ++m)
        msum += harmonics::solid_harmonic(lr, m, z) * std::conj(harmonics::solid_harmonic(lr, m, zp));
      shell += a * zk * wk * msum;
    }
    sum += shell;
    shell_mags.push_back(std::abs(shell));
    out.l_used = l;
  }
  out.value = sum;

  const int n = int(shell_mags.size());
  if (n >= 3) {
    real r1 = shell_mags[n - 2] > 0 ? shell_mags[n - 1] / shell_mags[n - 2] : 0;
    real r2 = shell_mags[n - 3] > 0 ? shell_mags[n - 2] / shell_mags[n - 3] : 0;
    real r = std::max(r1, r2);
    out.tail_estimate = (r < 1) ? shell_mags[n - 1] * r / (1 - r)
                                : std::numeric_limits<real>::infinity();
  } else {
    out.tail_estimate = shell_mags.empty() ? 0 : shell_mags.back();
  }
  if (tol > 0 && !(out.tail_estimate <= tol))
    throw TruncationNotConverged("det_power_expansion: tail estimate exceeds tolerance");
  return out;
}

cplx addition_theorem_lhs(int l, const CQuat &z, const CQuat &zp)
{
  // single principal root of the product ("first Riemann sheet"); the l-even/
  // odd branch ambiguity cancels because s^l C_l^{1/2}(d/s) is even in s.
  const CQuat zpc = conj_complex(zp);
  const cplx prod = vdot(z, z) * vdot(zpc, zpc);
  const cplx s = std::sqrt(prod);
  const cplx d = vdot(z, zpc);
  if (std::abs(s) < real(1e-100)) {
    // leading monomial of C_l^{1/2} survives: (1/2)_l 2^l / l! * d^l
    cplx dl = 1;
    for (int i = 0; i < l; ++i)
      dl *= d;
    return pochhammer(real(0.5), l) * std::pow(real(2), l) / wigner::factorial(l) * dl;
  }
  cplx sl = 1;
  for (int i = 0; i < l; ++i)
    sl *= s;
  return sl * gegenbauer_c(l, real(0.5), d / s);
}

} // namespace sp4rep::gegenbauer
