#include "sp4rep/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace sp4rep::wigner {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

real to_real(const BigRat &q) { return real(BigFloat(q).convert_to<double>()); }

real sqrt_to_real(const BigRat &q) { return real(sqrt(BigFloat(q)).convert_to<double>()); }

constexpr int kExactLimit2 = 40; // doubled j up to which the exact path runs

real *factorial_table()
{
  static real table[171];
  static std::once_flag once;
  std::call_once(once, [] {
    table[0] = 1;
    for (int n = 1; n <= 170; ++n)
      table[n] = table[n - 1] * real(n);
  });
  return table;
}

const BigInt &big_factorial(int n)
{
  static std::vector<BigInt> table{BigInt(1)};
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  while (int(table.size()) <= n)
    table.push_back(table.back() * int(table.size()));
  return table[n];
}

real lgamma_int(int n) // log(n!) for n >= 0
{
  return std::lgamma(real(n) + 1);
}

// concurrent-read, atomic-insert cache keyed by packed doubled indices
class Memo {
public:
  bool find(uint64_t key, real &out) const
  {
    std::shared_lock lock(mtx_);
    auto it = map_.find(key);
    if (it == map_.end())
      return false;
    out = it->second;
    return true;
  }
  void insert(uint64_t key, real value)
  {
    std::unique_lock lock(mtx_);
    map_.emplace(key, value);
  }

private:
  mutable std::shared_mutex mtx_;
  std::unordered_map<uint64_t, real> map_;
};

uint64_t pack6(int a, int b, int c, int d, int e, int f)
{
  auto u = [](int x) { return uint64_t(uint16_t(x + 512)) & 0x3ff; };
  return u(a) | (u(b) << 10) | (u(c) << 20) | (u(d) << 30) | (u(e) << 40) | (u(f) << 50);
}

bool half_compatible(int j2, int m2) { return (j2 - m2) % 2 == 0 && std::abs(m2) <= j2; }

real three_j_exact(int j1_2, int j2_2, int j3_2, int m1_2, int m2_2, int m3_2)
{
  const int a = (j1_2 + j2_2 - j3_2) / 2;
  const int b = (j1_2 - j2_2 + j3_2) / 2;
  const int c = (-j1_2 + j2_2 + j3_2) / 2;
  const int per = (j1_2 + j2_2 + j3_2) / 2;

  BigRat triangle(big_factorial(a) * big_factorial(b) * big_factorial(c), big_factorial(per + 1));
  BigInt mfac = big_factorial((j1_2 + m1_2) / 2) * big_factorial((j1_2 - m1_2) / 2) *
                big_factorial((j2_2 + m2_2) / 2) * big_factorial((j2_2 - m2_2) / 2) *
                big_factorial((j3_2 + m3_2) / 2) * big_factorial((j3_2 - m3_2) / 2);

  // summation range keeping every factorial argument non-negative
  const int q1 = (j2_2 + m2_2) / 2;         // j'+m'
  const int q2 = (j1_2 - m1_2) / 2;         // j-m
  const int q3 = (j3_2 - j2_2 + m1_2) / 2;  // j''-j'+m (+s)
  const int q4 = (j3_2 - j1_2 - m2_2) / 2;  // j''-j-m' (+s)
  const int s_min = std::max({0, -q3, -q4});
  const int s_max = std::min({q1, q2, a});

  BigRat sum(0);
  for (int s = s_min; s <= s_max; ++s) {
    BigInt den = big_factorial(s) * big_factorial(q1 - s) * big_factorial(q2 - s) *
                 big_factorial(q3 + s) * big_factorial(q4 + s) * big_factorial(a - s);
    BigRat term(1, den);
    if (s % 2)
      sum -= term;
    else
      sum += term;
  }

  const int phase_exp = (j1_2 - j2_2 - m3_2) / 2;
  BigRat radicand = triangle * BigRat(mfac);
  return parity(phase_exp) * sqrt_to_real(radicand) * to_real(sum);
}

real three_j_lgamma(int j1_2, int j2_2, int j3_2, int m1_2, int m2_2, int m3_2)
{
  const int a = (j1_2 + j2_2 - j3_2) / 2;
  const int b = (j1_2 - j2_2 + j3_2) / 2;
  const int c = (-j1_2 + j2_2 + j3_2) / 2;
  const int per = (j1_2 + j2_2 + j3_2) / 2;

  real log_tri = real(0.5) * (lgamma_int(a) + lgamma_int(b) + lgamma_int(c) - lgamma_int(per + 1));
  real log_m = real(0.5) * (lgamma_int((j1_2 + m1_2) / 2) + lgamma_int((j1_2 - m1_2) / 2) +
                            lgamma_int((j2_2 + m2_2) / 2) + lgamma_int((j2_2 - m2_2) / 2) +
                            lgamma_int((j3_2 + m3_2) / 2) + lgamma_int((j3_2 - m3_2) / 2));

  const int q1 = (j2_2 + m2_2) / 2;
  const int q2 = (j1_2 - m1_2) / 2;
  const int q3 = (j3_2 - j2_2 + m1_2) / 2;
  const int q4 = (j3_2 - j1_2 - m2_2) / 2;
  const int s_min = std::max({0, -q3, -q4});
  const int s_max = std::min({q1, q2, a});

  // Kahan-compensated alternating sum of exp(log terms)
  real sum = 0, comp = 0;
  for (int s = s_min; s <= s_max; ++s) {
    real log_den = lgamma_int(s) + lgamma_int(q1 - s) + lgamma_int(q2 - s) +
                   lgamma_int(q3 + s) + lgamma_int(q4 + s) + lgamma_int(a - s);
    real term = parity(s) * std::exp(log_tri + log_m - log_den);
    real y = term - comp;
    real t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return parity((j1_2 - j2_2 - m3_2) / 2) * sum;
}

} // namespace

real factorial(int n)
{
  if (n < 0)
    throw IndexOutOfRange("factorial of negative integer");
  if (n <= 170)
    return factorial_table()[n];
  return std::exp(lgamma_int(n));
}

real sigma(int j2, int m2)
{
  if (!half_compatible(j2, m2))
    throw IndexOutOfRange("sigma: |m| <= j with matching half-integer class required");
  return 1 / std::sqrt(factorial((j2 - m2) / 2) * factorial((j2 + m2) / 2));
}

real sigma2(int j2, int m1_2, int m2_2) { return sigma(j2, m1_2) * sigma(j2, m2_2); }

real three_j(int j1_2, int j2_2, int j3_2, int m1_2, int m2_2, int m3_2)
{
  // selection rules; violating tuples evaluate to exactly zero
  if (m1_2 + m2_2 + m3_2 != 0)
    return 0;
  if ((j1_2 + j2_2 + j3_2) % 2 != 0)
    return 0;
  if (j3_2 < std::abs(j1_2 - j2_2) || j3_2 > j1_2 + j2_2)
    return 0;
  if (!half_compatible(j1_2, m1_2) || !half_compatible(j2_2, m2_2) || !half_compatible(j3_2, m3_2))
    return 0;

  static Memo memo;
  const uint64_t key = pack6(j1_2, j2_2, j3_2, m1_2, m2_2, m3_2);
  real cached;
  if (memo.find(key, cached))
    return cached;

  real value = (std::max({j1_2, j2_2, j3_2}) <= kExactLimit2)
                   ? three_j_exact(j1_2, j2_2, j3_2, m1_2, m2_2, m3_2)
                   : three_j_lgamma(j1_2, j2_2, j3_2, m1_2, m2_2, m3_2);
  memo.insert(key, value);
  return value;
}

real three_j_all_zero_m(int l1, int l2, int l3)
{
  const int J = l1 + l2 + l3;
  if (J % 2 != 0)
    return 0;
  if (l3 < std::abs(l1 - l2) || l3 > l1 + l2)
    return 0;
  const int h = J / 2;
  real r = std::sqrt(factorial(J - 2 * l1) * factorial(J - 2 * l2) * factorial(J - 2 * l3) /
                     factorial(J + 1));
  return parity(h) * r * factorial(h) /
         (factorial(h - l1) * factorial(h - l2) * factorial(h - l3));
}

real clebsch_gordan(int j_2, int m_2, int jp_2, int mp_2, int jpp_2, int M_2)
{
  const real tj = three_j(j_2, jp_2, jpp_2, m_2, mp_2, -M_2);
  if (tj == real(0))
    return 0;
  return parity((j_2 - jp_2 + M_2) / 2) * std::sqrt(real(jpp_2 + 1)) * tj;
}

cplx wigner_d(int j2, int m1_2, int m2_2, const CQuat &z)
{
  if (!half_compatible(j2, m1_2) || !half_compatible(j2, m2_2))
    throw IndexOutOfRange("wigner_d: |m1|,|m2| <= j required");

  const cplx zp = z.w + kI * z.v[2];   // z4 + i z3
  const cplx zm = z.w - kI * z.v[2];   // z4 - i z3
  const cplx b1 = kI * z.v[0] - z.v[1]; // -z2 + i z1
  const cplx b2 = z.v[1] + kI * z.v[0]; // z2 + i z1

  const int jm2 = (j2 - m2_2) / 2; // j - m2
  const int jp1 = (j2 + m1_2) / 2; // j + m1
  const int dm = (m1_2 - m2_2) / 2;

  const int t_min = std::max(0, dm);
  const int t_max = std::min(jm2, jp1);
  if (t_min > t_max)
    return 0;

  cplx sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    cplx term = std::pow(zp, jm2 - t) / factorial(jm2 - t);
    term *= std::pow(zm, jp1 - t) / factorial(jp1 - t);
    term *= std::pow(b1, t - dm) / factorial(t - dm);
    term *= std::pow(b2, t) / factorial(t);
    sum += term;
  }
  const real pref = std::sqrt(factorial(jp1) * factorial((j2 - m1_2) / 2) *
                              factorial((j2 + m2_2) / 2) * factorial(jm2));
  return parity(dm) * pref * sum;
}

MatX wigner_d_matrix(int j2, const CQuat &z)
{
  const int dim = j2 + 1;
  MatX d(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      d(r, c) = wigner_d(j2, j2 - 2 * r, j2 - 2 * c, z);
  return d;
}

cplx addition_theorem_sum(int j2, int m1_2, int m2_2, const CQuat &z, const CQuat &zp)
{
  cplx sum = 0;
  for (int jp2 = 0; jp2 <= j2; ++jp2) {
    const int jr2 = j2 - jp2;
    for (int p1_2 = -jp2; p1_2 <= jp2; p1_2 += 2) {
      if (std::abs(m1_2 - p1_2) > jr2)
        continue;
      for (int p2_2 = -jp2; p2_2 <= jp2; p2_2 += 2) {
        if (std::abs(m2_2 - p2_2) > jr2)
          continue;
        sum += sigma2(jr2, m1_2 - p1_2, m2_2 - p2_2) *
               wigner_d(jr2, m1_2 - p1_2, m2_2 - p2_2, z) * sigma2(jp2, p1_2, p2_2) *
               wigner_d(jp2, p1_2, p2_2, zp);
      }
    }
  }
  return sum / sigma2(j2, m1_2, m2_2);
}

SeriesValue inverse_addition_sum(int j2, int m1_2, int m2_2, const CQuat &z, const CQuat &zp,
                                 int jmax2, real tol)
{
  if (std::abs(det(z)) >= std::abs(det(zp)))
    throw Error("inverse_addition_sum requires |det z| < |det z'|");
  const CQuat zp_inv = inverse(zp);
  const cplx det_zp_inv = cplx(1) / det(zp);

  SeriesValue out;
  std::vector<real> shell_mags;
  cplx sum = 0;
  for (int jp2 = 0; jp2 <= jmax2; ++jp2) {
    cplx shell = 0;
    for (int p1_2 = -jp2; p1_2 <= jp2; p1_2 += 2) {
      for (int p2_2 = -jp2; p2_2 <= jp2; p2_2 += 2) {
        const int J2 = j2 + jp2;
        const int M1_2 = m1_2 + p2_2; // note the index crossing
        const int M2_2 = m2_2 + p1_2;
        if (std::abs(M1_2) > J2 || std::abs(M2_2) > J2)
          continue;
        shell += parity(jp2) * sigma2(jp2, p1_2, p2_2) * wigner_d(jp2, p1_2, p2_2, z) /
                 sigma2(J2, M1_2, M2_2) * det_zp_inv * wigner_d(J2, M1_2, M2_2, zp_inv);
      }
    }
    sum += shell;
    shell_mags.push_back(std::abs(shell));
    ++out.terms_used;
  }
  out.value = sigma2(j2, m1_2, m2_2) * sum;

  // tail bounded by the observed geometric ratio of the last three shells
  const int n = int(shell_mags.size());
  if (n >= 3) {
    real r1 = shell_mags[n - 2] > 0 ? shell_mags[n - 1] / shell_mags[n - 2] : 0;
    real r2 = shell_mags[n - 3] > 0 ? shell_mags[n - 2] / shell_mags[n - 3] : 0;
    real r = std::max(r1, r2);
    if (r >= 1) {
      out.tail_estimate = std::numeric_limits<real>::infinity();
    } else {
      out.tail_estimate = shell_mags[n - 1] * r / (1 - r);
    }
  } else {
    out.tail_estimate = shell_mags.empty() ? 0 : shell_mags.back();
  }
  if (tol > 0 && !(out.tail_estimate <= tol))
    throw TruncationNotConverged("inverse_addition_sum: tail estimate " +
                                 std::to_string(double(out.tail_estimate)) + " exceeds tolerance");
  return out;
}

cplx product_expansion(int j2, int m1_2, int m2_2, const CQuat &z, const CQuat &zp)
{
  cplx sum = 0;
  for (int mp_2 = -j2; mp_2 <= j2; mp_2 += 2)
    sum += wigner_d(j2, m1_2, mp_2, z) * wigner_d(j2, mp_2, m2_2, zp);
  return sum;
}

real tensor_reduce_check(int j2, int jp2, const CQuat &xi)
{
  real worst = 0;
  for (int m1_2 = -j2; m1_2 <= j2; m1_2 += 2)
    for (int m2_2 = -j2; m2_2 <= j2; m2_2 += 2)
      for (int mp1_2 = -jp2; mp1_2 <= jp2; mp1_2 += 2)
        for (int mp2_2 = -jp2; mp2_2 <= jp2; mp2_2 += 2) {
          const cplx lhs = wigner_d(j2, m1_2, m2_2, xi) * wigner_d(jp2, mp1_2, mp2_2, xi);

          cplx rhs1 = 0, rhs2 = 0;
          for (int jpp2 = std::abs(j2 - jp2); jpp2 <= j2 + jp2; jpp2 += 2) {
            // first line: m'' indices fixed by the zero-sum rule
            const int n1_2 = -(m1_2 + mp1_2);
            const int n2_2 = -(m2_2 + mp2_2);
            if (std::abs(n1_2) <= jpp2 && std::abs(n2_2) <= jpp2)
              rhs1 += real(jpp2 + 1) * three_j(j2, jp2, jpp2, m1_2, mp1_2, n1_2) *
                      three_j(j2, jp2, jpp2, m2_2, mp2_2, n2_2) *
                      std::conj(wigner_d(jpp2, n1_2, n2_2, xi));
            // second line
            const int k1_2 = m1_2 + mp1_2;
            const int k2_2 = m2_2 + mp2_2;
            if (std::abs(k1_2) <= jpp2 && std::abs(k2_2) <= jpp2)
              rhs2 += real(jpp2 + 1) * phase_half(k1_2 - k2_2) *
                      three_j(j2, jp2, jpp2, m1_2, mp1_2, -k1_2) *
                      three_j(j2, jp2, jpp2, m2_2, mp2_2, -k2_2) *
                      wigner_d(jpp2, k1_2, k2_2, xi);
          }
          worst = std::max(worst, std::abs(lhs - rhs1));
          worst = std::max(worst, std::abs(lhs - rhs2));
        }
  return worst;
}

} // namespace sp4rep::wigner
