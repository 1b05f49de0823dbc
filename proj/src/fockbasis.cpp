#include "sp4rep/fockbasis.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <unordered_map>

#include "sp4rep/errors.hpp"
#include "sp4rep/gegenbauer.hpp"
#include "sp4rep/harmonics.hpp"
#include "sp4rep/rng.hpp"
#include "sp4rep/sp4.hpp"
#include "sp4rep/wigner.hpp"

namespace sp4rep::fockbasis {

void RepLabel::validate() const
{
  const real sv = s.value();
  if (s.twice < 0)
    throw OutOfRegime("rep label: spin s >= 0 required");
  if (varsigma > sv + 1 && varsigma <= sv + 2)
    throw OutOfRegime("rep label: s+1 < varsigma <= s+2 is the Shilov-boundary regime, out of scope");
  if (!(varsigma > sv + 2))
    throw OutOfRegime("rep label: varsigma > s + 2 required");
}

bool ScalarIndex::valid() const
{
  return l >= 0 && k >= 0 && 2 * k <= l && 2 * k - l <= m && m <= l - 2 * k;
}

bool SpinIndex::valid(HalfInt s) const
{
  if (l < 0 || k < 0 || 2 * k > l)
    return false;
  const int lam2 = 2 * (l - 2 * k);
  if (J.twice < std::abs(lam2 - s.twice) || J.twice > lam2 + s.twice)
    return false;
  if ((J.twice - s.twice) % 2 != 0) // J couples integer lambda with s
    return false;
  return std::abs(M.twice) <= J.twice && (J.twice - M.twice) % 2 == 0;
}

real norm_const(const RepLabel &rep)
{
  rep.validate();
  const real sv = rep.s.value();
  return real(8) / (kPi * kPi * kPi) * (rep.varsigma + sv - real(1.5)) *
         (rep.varsigma - sv - 1) * (rep.varsigma - sv - 2);
}

VecX basis_vector_e(HalfInt s, HalfInt rho)
{
  if (std::abs(rho.twice) > s.twice || (s.twice - rho.twice) % 2 != 0)
    throw IndexOutOfRange("basis_vector_e: |rho| <= s with matching class required");
  VecX e = VecX::Zero(s.twice + 1);
  e((s.twice - rho.twice) / 2) = 1;
  return e;
}

std::vector<ScalarIndex> enumerate_scalar(int l)
{
  std::vector<ScalarIndex> out;
  for (int k = 0; 2 * k <= l; ++k)
    for (int m = 2 * k - l; m <= l - 2 * k; ++m)
      out.push_back({l, k, m});
  return out;
}

std::vector<ScalarIndex> enumerate_scalar_upto(int l_max)
{
  std::vector<ScalarIndex> out;
  for (int l = 0; l <= l_max; ++l)
    for (const auto &idx : enumerate_scalar(l))
      out.push_back(idx);
  return out;
}

std::vector<SpinIndex> enumerate_spin(HalfInt s, int l)
{
  std::vector<SpinIndex> out;
  for (int k = 0; 2 * k <= l; ++k) {
    const int lam2 = 2 * (l - 2 * k);
    for (int J2 = std::abs(lam2 - s.twice); J2 <= lam2 + s.twice; J2 += 2)
      for (int M2 = -J2; M2 <= J2; M2 += 2)
        out.push_back({l, k, HalfInt(J2), HalfInt(M2)});
  }
  return out;
}

std::vector<SpinIndex> enumerate_spin_upto(HalfInt s, int l_max)
{
  std::vector<SpinIndex> out;
  for (int l = 0; l <= l_max; ++l)
    for (const auto &idx : enumerate_spin(s, l))
      out.push_back(idx);
  return out;
}

int level_dimension(HalfInt s, int l) { return int(enumerate_spin(s, l).size()); }

real basis_coeff_a(real lambda, int l, int k) { return gegenbauer::coeff_a_general(lambda, l, k); }

cplx scalar_basis(const RepLabel &rep, const ScalarIndex &idx, const CQuat &z)
{
  rep.validate();
  if (!idx.valid())
    throw IndexOutOfRange("scalar_basis: invalid (l,k,m)");
  if (!sp4::in_domain(z))
    throw NotInDomain("scalar_basis: z outside the bounded domain");
  const cplx zz = vdot(z, z);
  cplx zk = 1;
  for (int i = 0; i < idx.k; ++i)
    zk *= zz;
  return std::sqrt(basis_coeff_a(rep.varsigma + rep.s.value(), idx.l, idx.k)) * zk *
         harmonics::solid_harmonic(idx.l - 2 * idx.k, idx.m, z);
}

VecX spin_basis(const RepLabel &rep, const SpinIndex &idx, const CQuat &z)
{
  rep.validate();
  if (!idx.valid(rep.s))
    throw IndexOutOfRange("spin_basis: invalid (l,k,J,M)");
  if (!sp4::in_domain(z))
    throw NotInDomain("spin_basis: z outside the bounded domain");

  const int s2 = rep.s.twice;
  const int lam = idx.l - 2 * idx.k;
  const cplx zz = vdot(z, z);
  cplx zk = 1;
  for (int i = 0; i < idx.k; ++i)
    zk *= zz;
  const real pref = std::sqrt(basis_coeff_a(rep.varsigma + rep.s.value(), idx.l, idx.k));

  VecX out = VecX::Zero(s2 + 1);
  for (int rho2 = -s2; rho2 <= s2; rho2 += 2) {
    const int m2 = idx.M.twice - rho2; // M = m + rho
    if (m2 % 2 != 0 || std::abs(m2) > 2 * lam)
      continue;
    const real cg =
        wigner::clebsch_gordan(s2, rho2, 2 * lam, m2, idx.J.twice, idx.M.twice);
    if (cg == real(0))
      continue;
    out((s2 - rho2) / 2) += pref * cg * zk * harmonics::solid_harmonic(lam, m2 / 2, z);
  }
  return out;
}

MatX d_s_matrix(HalfInt s, const Mat2 &A)
{
  return wigner::wigner_d_matrix(s.twice, from_matrix(A));
}

MatX kernel(const RepLabel &rep, const CQuat &z, const CQuat &zp)
{
  rep.validate();
  if (!sp4::in_domain(z) || !sp4::in_domain(zp))
    throw NotInDomain("kernel: arguments outside the bounded domain");
  const CQuat q = CQuat::one() + CQuat::pure(z.v) * conj_complex(CQuat::pure(zp.v));
  const cplx dq = det(q);
  return std::pow(dq, cplx(-rep.varsigma - rep.s.value())) *
         wigner::wigner_d_matrix(rep.s.twice, q);
}

namespace {

// sum over M of the unnormalized outer product Fhat(z) Fhat(z')^dag
MatX level_outer(int s2, int l, int k, int J2, const CQuat &z, const CQuat &zp)
{
  const int lam = l - 2 * k;
  const cplx zzk = std::pow(vdot(z, z), k);
  const cplx zzpk = std::pow(vdot(zp, zp), k);
  MatX out = MatX::Zero(s2 + 1, s2 + 1);
  for (int M2 = -J2; M2 <= J2; M2 += 2) {
    VecX f1 = VecX::Zero(s2 + 1), f2 = VecX::Zero(s2 + 1);
    for (int rho2 = -s2; rho2 <= s2; rho2 += 2) {
      const int m2 = M2 - rho2;
      if (m2 % 2 != 0 || std::abs(m2) > 2 * lam)
        continue;
      const real cg = wigner::clebsch_gordan(s2, rho2, 2 * lam, m2, J2, M2);
      if (cg == real(0))
        continue;
      f1((s2 - rho2) / 2) += cg * zzk * harmonics::solid_harmonic(lam, m2 / 2, z);
      f2((s2 - rho2) / 2) += cg * zzpk * harmonics::solid_harmonic(lam, m2 / 2, zp);
    }
    out += f1 * f2.adjoint();
  }
  return out;
}

// Exact bidegree-(l,l) part of the kernel: the degree-(l - 2s') slice of the
// determinant-power series times the degree-2s' slice of D^s(1 + z zbar').
MatX kernel_level_part(const RepLabel &rep, int l, const CQuat &z, const CQuat &zp)
{
  const int s2 = rep.s.twice;
  const real lam_par = rep.varsigma + rep.s.value();
  const CQuat zpc = conj_complex(CQuat::pure(zp.v));
  const CQuat zq = CQuat::pure(z.v);

  MatX out = MatX::Zero(s2 + 1, s2 + 1);
  for (int ss2 = 0; ss2 <= s2; ++ss2) { // 2s'
    const int Lf = l - ss2;
    if (Lf < 0)
      continue;
    cplx detpart = 0;
    for (int K = 0; 2 * K <= Lf; ++K) {
      const real a = gegenbauer::coeff_a_general(lam_par, Lf, K);
      const int Lam = Lf - 2 * K;
      cplx msum = 0;
      for (int M = -Lam; M <= Lam; ++M)
        msum += harmonics::solid_harmonic(Lam, M, z) *
                std::conj(harmonics::solid_harmonic(Lam, M, zp));
      detpart += a * std::pow(vdot(z, z), K) * std::conj(std::pow(vdot(zp, zp), K)) * msum;
    }
    for (int n1_2 = -s2; n1_2 <= s2; n1_2 += 2)
      for (int n2_2 = -s2; n2_2 <= s2; n2_2 += 2) {
        cplx dsum = 0;
        for (int p1_2 = -ss2; p1_2 <= ss2; p1_2 += 2) {
          const int p2_2 = p1_2 - n1_2 + n2_2;
          if (std::abs(p2_2) > ss2)
            continue;
          const int d_2 = n1_2 - p1_2;
          if (std::abs(d_2) > s2 - ss2)
            continue;
          const real wgt = wigner::sigma2(s2 - ss2, d_2, d_2) * wigner::sigma2(ss2, p1_2, p2_2);
          for (int t_2 = -ss2; t_2 <= ss2; t_2 += 2)
            dsum += wgt * wigner::wigner_d(ss2, p1_2, t_2, zq) *
                    wigner::wigner_d(ss2, t_2, p2_2, zpc);
        }
        out((s2 - n1_2) / 2, (s2 - n2_2) / 2) +=
            detpart * dsum / wigner::sigma2(s2, n1_2, n2_2);
      }
  }
  return out;
}

struct LevelKey {
  std::uint64_t vs_bits;
  int s2, l;
  bool operator==(const LevelKey &) const = default;
};
struct LevelKeyHash {
  size_t operator()(const LevelKey &k) const
  {
    return std::hash<std::uint64_t>()(k.vs_bits ^ (std::uint64_t(k.s2) << 48) ^
                                      (std::uint64_t(k.l) << 54));
  }
};

// coefficients for all (k, J) at level l, solved from the exact level part
const std::vector<real> &kernel_level_coeffs(const RepLabel &rep, int l)
{
  static std::unordered_map<LevelKey, std::vector<real>, LevelKeyHash> cache;
  static std::mutex mtx;
  std::uint64_t bits;
  static_assert(sizeof(double) == 8);
  const double vsd = double(rep.varsigma);
  std::memcpy(&bits, &vsd, 8);
  const LevelKey key{bits, rep.s.twice, l};
  {
    std::lock_guard lock(mtx);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }

  const int s2 = rep.s.twice;
  struct KJ {
    int k, J2;
  };
  std::vector<KJ> unknowns;
  for (const auto &idx : enumerate_spin(rep.s, l))
    if (idx.M == idx.J) // one entry per (k, J) multiplet
      unknowns.push_back({idx.k, idx.J.twice});
  const int n = int(unknowns.size());
  const int dim = s2 + 1;
  const int npts = 4 * n + 8;

  Eigen::MatrixXcd A(npts * dim * dim, n);
  Eigen::VectorXcd b(npts * dim * dim);
  std::uint64_t st = 0x5eed ^ (std::uint64_t(l) << 32) ^ std::uint64_t(s2);
  for (int p = 0; p < npts; ++p) {
    auto c = [&] { return cplx(rng_uniform(st, -1, 1), rng_uniform(st, -1, 1)); };
    const CQuat z = CQuat::pure(c(), c(), c());
    const CQuat zp = CQuat::pure(c(), c(), c());
    const MatX lhs = kernel_level_part(rep, l, z, zp);
    for (int r = 0; r < dim; ++r)
      for (int cidx = 0; cidx < dim; ++cidx)
        b(p * dim * dim + r * dim + cidx) = lhs(r, cidx);
    for (int q = 0; q < n; ++q) {
      const MatX outer = level_outer(s2, l, unknowns[q].k, unknowns[q].J2, z, zp);
      for (int r = 0; r < dim; ++r)
        for (int cidx = 0; cidx < dim; ++cidx)
          A(p * dim * dim + r * dim + cidx, q) = outer(r, cidx);
    }
  }
  Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);

  // store in the enumeration order of (k, J) pairs
  std::vector<real> coeffs(n);
  for (int q = 0; q < n; ++q)
    coeffs[q] = real(x(q).real());

  std::lock_guard lock(mtx);
  return cache.emplace(key, std::move(coeffs)).first->second;
}

} // namespace

real kernel_coeff(const RepLabel &rep, int l, int k, HalfInt J)
{
  rep.validate();
  if (rep.s.twice == 0)
    return basis_coeff_a(rep.varsigma, l, k);
  const auto &coeffs = kernel_level_coeffs(rep, l);
  int q = 0;
  for (const auto &idx : enumerate_spin(rep.s, l))
    if (idx.M == idx.J) {
      if (idx.k == k && idx.J.twice == J.twice)
        return coeffs[q];
      ++q;
    }
  throw IndexOutOfRange("kernel_coeff: no such (l,k,J) multiplet");
}

KernelCheck kernel_expansion_check(const RepLabel &rep, const CQuat &z, const CQuat &zp,
                                   const Truncation &trunc)
{
  const MatX closed = kernel(rep, z, zp);
  MatX sum = MatX::Zero(rep.s.twice + 1, rep.s.twice + 1);
  for (int l = 0; l <= trunc.l_max; ++l)
    for (const auto &idx : enumerate_spin(rep.s, l)) {
      // the paper's J-independent normalization cannot reproduce the D^s
      // factor; rescale each multiplet by the true expansion coefficient
      const real scale = kernel_coeff(rep, idx.l, idx.k, idx.J) /
                         basis_coeff_a(rep.varsigma + rep.s.value(), idx.l, idx.k);
      const VecX f = spin_basis(rep, idx, z);
      const VecX fp = spin_basis(rep, idx, zp);
      sum += scale * (f * fp.adjoint());
    }
  KernelCheck out;
  out.residual = (closed - sum).cwiseAbs().maxCoeff();
  out.l_max_used = trunc.l_max;
  return out;
}

namespace {

// domain weight [det(1 + z zbar)]^{vs - 3}, real and positive on the domain
real mc_weight(const RepLabel &rep, const CQuat &z)
{
  const CQuat zc = conj_complex(z);
  const cplx base = cplx(1) - real(2) * vdot(z, zc) + vdot(z, z) * vdot(zc, zc);
  return std::pow(std::real(base), rep.varsigma - 3);
}

CQuat mc_draw_box(std::uint64_t &state)
{
  return CQuat::pure(cplx(rng_uniform(state, -1, 1), rng_uniform(state, -1, 1)),
                     cplx(rng_uniform(state, -1, 1), rng_uniform(state, -1, 1)),
                     cplx(rng_uniform(state, -1, 1), rng_uniform(state, -1, 1)));
}

template <class F>
McEstimate mc_integrate(const RepLabel &rep, const Truncation &trunc, std::uint64_t seed, F &&f)
{
  if (trunc.mc_samples < 10000)
    throw InsufficientSamples("Monte Carlo: at least 1e4 samples required");
  const real vbox = 64; // [-1,1]^6
  const real nc = norm_const(rep);
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x853c49e6748fea9bull;

  McEstimate out;
  out.total = trunc.mc_samples;
  cplx sum = 0;
  real sum_abs2 = 0;
  for (std::uint64_t i = 0; i < trunc.mc_samples; ++i) {
    const CQuat z = mc_draw_box(state);
    if (!sp4::in_domain(z))
      continue;
    ++out.accepted;
    const cplx v = f(z) * mc_weight(rep, z);
    sum += v;
    sum_abs2 += std::norm(v);
  }
  const real n = real(trunc.mc_samples);
  out.value = nc * vbox * sum / n;
  // sample variance of the (zero-padded) integrand
  const real mean_abs2 = sum_abs2 / n;
  const real var = std::max(real(0), mean_abs2 - std::norm(sum / n));
  out.std_error = nc * vbox * std::sqrt(var / n);
  return out;
}

} // namespace

McEstimate mc_inner_product(const RepLabel &rep, const ScalarIndex &idx1, const ScalarIndex &idx2,
                            const Truncation &trunc, std::uint64_t seed)
{
  rep.validate();
  if (rep.s.twice != 0)
    throw OutOfRegime("mc_inner_product: scalar case (s = 0) only");
  if (!idx1.valid() || !idx2.valid())
    throw IndexOutOfRange("mc_inner_product: invalid index");
  return mc_integrate(rep, trunc, seed, [&](const CQuat &z) {
    return std::conj(scalar_basis(rep, idx1, z)) * scalar_basis(rep, idx2, z);
  });
}

McEstimate mc_reproducing(const RepLabel &rep, const ScalarIndex &idx, const CQuat &z0,
                          const Truncation &trunc, std::uint64_t seed)
{
  rep.validate();
  if (rep.s.twice != 0)
    throw OutOfRegime("mc_reproducing: scalar case (s = 0) only");
  return mc_integrate(rep, trunc, seed, [&](const CQuat &z) {
    return kernel(rep, z0, z)(0, 0) * scalar_basis(rep, idx, z);
  });
}

} // namespace sp4rep::fockbasis
