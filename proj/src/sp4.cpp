#include "sp4rep/sp4.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "sp4rep/errors.hpp"
#include "sp4rep/rng.hpp"

namespace sp4rep::sp4 {

namespace {

real qnorm(const CQuat &z) { return max_abs(z); }

real scale_of(const Sp4Element &g) { return 1 + std::max(qnorm(g.a), qnorm(g.b)); }

// argument in [0, 2 pi)
real arg2pi(cplx z)
{
  real a = std::arg(z);
  if (a < 0)
    a += 2 * kPi;
  return a;
}

} // namespace

Sp4Element identity() { return {CQuat::one(), CQuat::zero()}; }

Sp4Element boost_d(real t)
{
  return {cplx(std::cosh(t)) * CQuat::one(), CQuat::pure(std::sinh(t), 0, 0)};
}

Sp4Element mul(const Sp4Element &g1, const Sp4Element &g2)
{
  // [[a1,b1],[-c(b1),c(a1)]] [[a2,b2],[-c(b2),c(a2)]] stays in block form
  Sp4Element out;
  out.a = g1.a * g2.a - g1.b * conj_complex(g2.b);
  out.b = g1.a * g2.b + g1.b * conj_complex(g2.a);
  return out;
}

real membership_residual(const Sp4Element &g)
{
  const CQuat a = g.a, b = g.b;
  const CQuat r1 = a * adjoint(a) - b * adjoint(b) - CQuat::one();
  const CQuat r2 = a * conj_quat(b) + b * conj_quat(a);
  const CQuat r3 = adjoint(a) * a - conj_quat(b) * conj_complex(b) - CQuat::one();
  const CQuat r4 = adjoint(a) * b + conj_quat(b) * conj_complex(a);
  return std::max(std::max(qnorm(r1), qnorm(r2)), std::max(qnorm(r3), qnorm(r4)));
}

MembershipReport check_membership(const Sp4Element &g, real tol)
{
  const real res = membership_residual(g);
  return {res <= tol * scale_of(g), res};
}

Sp4Element inverse(const Sp4Element &g, real tol)
{
  const auto rep = check_membership(g, tol);
  if (!rep.ok)
    throw NotInGroup("sp4 inverse: membership residual " + std::to_string(double(rep.residual)));
  return {adjoint(g.a), conj_quat(g.b)};
}

Sp4Element inverse_b0(const Sp4Element &g)
{
  if (qnorm(g.b) > real(1e-12) * scale_of(g))
    throw Error("inverse_b0 requires b = 0");
  return {sp4rep::inverse(g.a), CQuat::zero()};
}

Mat4 to_matrix4(const Sp4Element &g)
{
  Mat4 m;
  m.block<2, 2>(0, 0) = to_matrix(g.a);
  m.block<2, 2>(0, 2) = to_matrix(g.b);
  m.block<2, 2>(2, 0) = to_matrix(-conj_complex(g.b));
  m.block<2, 2>(2, 2) = to_matrix(conj_complex(g.a));
  return m;
}

Sp4Element random_compact(std::uint64_t &state)
{
  real n[4];
  real norm2 = 0;
  do {
    norm2 = 0;
    for (auto &x : n) {
      x = rng_normal(state);
      norm2 += x * x;
    }
  } while (norm2 < real(1e-12));
  const real inv = 1 / std::sqrt(norm2);
  const cplx phase = std::exp(kI * rng_uniform(state, 0, 2 * kPi));
  return {phase * CQuat(n[0] * inv, n[1] * inv, n[2] * inv, n[3] * inv), CQuat::zero()};
}

Sp4Element random_element(std::uint64_t seed, real t_max)
{
  if (t_max < 0)
    throw Error("random_element: t_max >= 0 required");
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
  const Sp4Element k1 = random_compact(state);
  const real t = rng_uniform(state, 0, t_max);
  const Sp4Element k2 = random_compact(state);
  return k1 * boost_d(t) * k2;
}

real domain_radius_sq(const CQuat &z)
{
  const Mat2 m = to_matrix(CQuat::pure(z.v));
  const real tr = std::norm(m(0, 0)) + std::norm(m(0, 1)) + std::norm(m(1, 0)) + std::norm(m(1, 1));
  const real dt = std::norm(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const real disc = std::max(real(0), tr * tr - 4 * dt);
  return (tr + std::sqrt(disc)) / 2;
}

bool in_domain(const CQuat &z) { return domain_radius_sq(z) < 1; }

CQuat domain_action(const Sp4Element &g_inv, const CQuat &z)
{
  if (!is_pure(z, real(1e-10)))
    throw NotInDomain("domain_action: argument must be a pure quaternion");
  if (!in_domain(z))
    throw NotInDomain("domain_action: argument outside the bounded domain");
  const CQuat num = g_inv.a * z + g_inv.b;
  const CQuat den = -(conj_complex(g_inv.b) * z) + conj_complex(g_inv.a);
  if (std::abs(det(den)) <= real(1e-14) * (1 + qnorm(den) * qnorm(den)))
    throw SingularDenominator("domain_action: singular (-bbar z + abar)");
  CQuat w = num * sp4rep::inverse(den);
  if (std::abs(w.w) > real(1e-8) * (1 + max_abs(w)))
    throw Error("domain_action: result not pure (element outside the real group?)");
  w.w = 0;
  return w;
}

namespace {

// minimal matching distance between the spectrum and a candidate quadruple
real quadruple_distance(const std::array<cplx, 4> &spec, const std::array<cplx, 4> &quad)
{
  std::array<int, 4> perm{0, 1, 2, 3};
  real best = std::numeric_limits<real>::max();
  std::sort(perm.begin(), perm.end());
  do {
    real d = 0;
    for (int i = 0; i < 4; ++i)
      d += std::abs(spec[i] - quad[perm[i]]);
    best = std::min(best, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

} // namespace

EigenQuadruple eigenvalues(const Sp4Element &g)
{
  Eigen::ComplexEigenSolver<Mat4> solver(to_matrix4(g), false);
  std::array<cplx, 4> ev;
  for (int i = 0; i < 4; ++i)
    ev[i] = solver.eigenvalues()(i);

  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
    const real ax = std::abs(x), ay = std::abs(y);
    if (std::abs(ax - ay) > real(1e-12) * (1 + ax))
      return ax > ay;
    return arg2pi(x) < arg2pi(y);
  });

  // mu is the largest eigenvalue (ties by argument); nu is whichever of the
  // other three makes {mu, nu, conj nu, conj mu} reproduce the spectrum
  // best.  Spectra of the form {l, 1/l, r, 1/r} with two distinct real
  // hyperbolic pairs are not of the quadruple form at all; those are
  // reported with the degenerate flag set (pairing ambiguous), not fatal.
  EigenQuadruple out;
  out.mu = ev[0];
  real best = std::numeric_limits<real>::max();
  for (int i = 1; i < 4; ++i) {
    const std::array<cplx, 4> quad{out.mu, ev[i], std::conj(ev[i]), std::conj(out.mu)};
    const real d = quadruple_distance(ev, quad);
    const cplx cand = std::imag(ev[i]) <= 0 ? ev[i] : std::conj(ev[i]);
    if (d < best - real(1e-14)) {
      best = d;
      out.nu = cand;
    }
  }
  out.degenerate = best > real(1e-8) * (1 + std::abs(out.mu));
  return out;
}

Sp4Element make_diagonal(cplx mu, cplx nu)
{
  if (std::abs(std::abs(mu * nu) - 1) > real(1e-10))
    throw DeterminantNotOne("make_diagonal: |mu nu| = 1 required");
  const cplx z4 = (mu + nu) / real(2);
  const cplx z3 = (mu - nu) / (real(2) * kI);
  return {CQuat(z4, 0, 0, z3), CQuat::zero()};
}

bool is_real_form(const Sp4Element &g, real tol) { return check_membership(g, tol).ok; }

} // namespace sp4rep::sp4
