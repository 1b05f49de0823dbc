#include "sp4rep/harmonics.hpp"

#include <cmath>

#include "sp4rep/errors.hpp"
#include "sp4rep/wigner.hpp"

namespace sp4rep::harmonics {

namespace {

using wigner::factorial;

// Gamma((k+l+1)/2) / Gamma((k-l+1)/2) for l-k = 2n even; vanishing odd-k
// terms are never enumerated.
real gamma_ratio(int k, int n)
{
  return parity(n) * factorial(2 * (k + n)) * factorial(2 * n) /
         (std::pow(real(4), k + 2 * n) * factorial(k + n) * factorial(n));
}

QQi::Rat rat_factorial(int n)
{
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return QQi::Rat(f);
}

QQi::Rat rat_gamma_ratio(int k, int n)
{
  using boost::multiprecision::cpp_int;
  cpp_int num = 1, den = 1;
  for (int i = 2; i <= 2 * (k + n); ++i)
    num *= i;
  for (int i = 2; i <= 2 * n; ++i)
    num *= i;
  den = cpp_int(1) << (2 * (k + 2 * n)); // 4^(k+2n)
  for (int i = 2; i <= k + n; ++i)
    den *= i;
  for (int i = 2; i <= n; ++i)
    den *= i;
  QQi::Rat r(num, den);
  if (n % 2)
    r = -r;
  return r;
}

} // namespace

cplx solid_harmonic(int l, int m, cplx z1, cplx z2, cplx z3)
{
  const int am = std::abs(m);
  if (l < 0 || am > l)
    throw IndexOutOfRange("solid_harmonic: |m| <= l required");

  const cplx zz = z1 * z1 + z2 * z2 + z3 * z3;
  // negative m: Y_{l,-|m|} = (-1)^{|m|} conj(Y_{l,|m|}) on real arguments,
  // which mirrors the azimuthal factor and cancels the Condon-Shortley sign
  const cplx azim = (m >= 0) ? (z1 + kI * z2) : (z1 - kI * z2);

  cplx sum = 0;
  for (int k = am; k <= l; ++k) {
    if ((l - k) % 2)
      continue;
    const int n = (l - k) / 2;
    cplx term = gamma_ratio(k, n) / (factorial(k - am) * factorial(l - k));
    for (int i = 0; i < k - am; ++i)
      term *= z3;
    for (int i = 0; i < n; ++i)
      term *= zz;
    sum += term;
  }
  for (int i = 0; i < am; ++i)
    sum *= azim;

  real pref = std::sqrt(real(2 * l + 1) * factorial(l - am) / (4 * kPi * factorial(l + am)));
  pref *= std::pow(real(2), l);
  if (m > 0)
    pref *= parity(m);
  return pref * sum;
}

cplx solid_harmonic(int l, int m, const CQuat &z)
{
  return solid_harmonic(l, m, z.v[0], z.v[1], z.v[2]);
}

cplx product_expand(int l1, int m1, int l2, int m2, const CQuat &z)
{
  const int m3 = m1 + m2;
  const cplx zz = vdot(z, z);
  cplx sum = 0;
  for (int l3 = std::max(std::abs(l1 - l2), std::abs(m3)); l3 <= l1 + l2; ++l3) {
    if ((l1 + l2 - l3) % 2)
      continue; // forced even by the zero-m 3-j symbol
    real coup = wigner::three_j(2 * l1, 2 * l2, 2 * l3, 2 * m1, 2 * m2, -2 * m3) *
                wigner::three_j(2 * l1, 2 * l2, 2 * l3, 0, 0, 0);
    if (coup == real(0))
      continue;
    cplx zzp = 1;
    for (int i = 0; i < (l1 + l2 - l3) / 2; ++i)
      zzp *= zz;
    sum += parity(m3) *
           std::sqrt(real(2 * l1 + 1) * real(2 * l2 + 1) * real(2 * l3 + 1) / (4 * kPi)) * zzp *
           coup * solid_harmonic(l3, m3, z);
  }
  return sum;
}

cplx y_from_d(int l, int m, const CQuat &z)
{
  if (std::abs(m) > l)
    throw IndexOutOfRange("y_from_d: |m| <= l required");
  cplx sum = 0;
  for (int m1_2 = -l; m1_2 <= l; m1_2 += 2) {
    const int m2_2 = m1_2 + 2 * m;
    if (std::abs(m2_2) > l)
      continue;
    sum += phase_half(m1_2) * wigner::sigma2(l, m1_2, m2_2) * wigner::wigner_d(l, m1_2, m2_2, z);
  }
  return std::pow(real(2), -l) * std::sqrt(real(2 * l + 1) / (4 * kPi)) / wigner::sigma(2 * l, 2 * m) *
         sum;
}

cplx d_from_y(int l, int m1_2, int m2_2, const CQuat &z)
{
  if (!is_pure(z))
    throw Error("d_from_y: pure quaternion required");
  const int mp = (m2_2 - m1_2) / 2;
  const cplx zz = vdot(z, z);
  cplx sum = 0;
  for (int lp = (l % 2); lp <= l; lp += 2) {
    if (std::abs(mp) > lp)
      continue;
    const real tj = wigner::three_j(l, l, 2 * lp, m1_2, -m2_2, 2 * mp);
    if (tj == real(0))
      continue;
    cplx zzp = 1;
    for (int i = 0; i < (l - lp) / 2; ++i)
      zzp *= zz;
    sum += phase_half(2 * lp + m2_2) * std::pow(real(2), lp) * std::sqrt(real(2 * lp + 1)) *
           std::sqrt(factorial(l - lp) / factorial(l + lp + 1)) *
           (factorial((l + lp) / 2) / factorial((l - lp) / 2)) * tj * zzp *
           solid_harmonic(lp, mp, z);
  }
  return std::sqrt(4 * kPi) * sum;
}

PolyExact solid_harmonic_poly_unnormalized(int l, int m)
{
  const int am = std::abs(m);
  const auto z1 = PolyExact::variable(0);
  const auto z2 = PolyExact::variable(1);
  const auto z3 = PolyExact::variable(2);
  const auto zz = z1 * z1 + z2 * z2 + z3 * z3;
  // z1 +/- i z2
  PolyExact azim = z1 + z2.scaled(QQi(QQi::Rat(0), QQi::Rat(m >= 0 ? 1 : -1)));

  PolyExact sum;
  for (int k = am; k <= l; ++k) {
    if ((l - k) % 2)
      continue;
    const int n = (l - k) / 2;
    QQi coef(rat_gamma_ratio(k, n) / (rat_factorial(k - am) * rat_factorial(l - k)), QQi::Rat(0));
    sum = sum + (z3.pow(k - am) * zz.pow(n)).scaled(coef);
  }
  return sum * azim.pow(am);
}

PolyExact wigner_d_poly_unnormalized(int j2, int m1_2, int m2_2)
{
  const auto z1 = PolyExact::variable(0);
  const auto z2 = PolyExact::variable(1);
  const auto z3 = PolyExact::variable(2);
  const auto z4 = PolyExact::variable(3);
  const QQi plus_i(QQi::Rat(0), QQi::Rat(1));
  const QQi minus_i(QQi::Rat(0), QQi::Rat(-1));

  const PolyExact zp = z4 + z3.scaled(plus_i);
  const PolyExact zm = z4 + z3.scaled(minus_i);
  const PolyExact b1 = z1.scaled(plus_i) + z2.scaled(QQi(QQi::Rat(-1), QQi::Rat(0)));
  const PolyExact b2 = z1.scaled(plus_i) + z2;

  const int jm2 = (j2 - m2_2) / 2;
  const int jp1 = (j2 + m1_2) / 2;
  const int dm = (m1_2 - m2_2) / 2;

  PolyExact sum;
  for (int t = std::max(0, dm); t <= std::min(jm2, jp1); ++t) {
    QQi coef(QQi::Rat(1) / (rat_factorial(jm2 - t) * rat_factorial(jp1 - t) *
                            rat_factorial(t - dm) * rat_factorial(t)),
             QQi::Rat(0));
    sum = sum + (zp.pow(jm2 - t) * zm.pow(jp1 - t) * b1.pow(t - dm) * b2.pow(t)).scaled(coef);
  }
  return sum;
}

} // namespace sp4rep::harmonics
