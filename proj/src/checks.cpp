#include "sp4rep/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "sp4rep/characters.hpp"
#include "sp4rep/cquat.hpp"
#include "sp4rep/errors.hpp"
#include "sp4rep/fockbasis.hpp"
#include "sp4rep/gegenbauer.hpp"
#include "sp4rep/harmonics.hpp"
#include "sp4rep/matrix_elements.hpp"
#include "sp4rep/polyexact.hpp"
#include "sp4rep/rng.hpp"
#include "sp4rep/sp4.hpp"
#include "sp4rep/wigner.hpp"

namespace sp4rep::checks {

namespace {

using fockbasis::RepLabel;
using fockbasis::ScalarIndex;
using fockbasis::SpinIndex;
using fockbasis::Truncation;
using matrix_elements::ElementEngine;
using sp4::Sp4Element;

struct Recorder {
  std::vector<CheckResult> results;
  void add(const std::string &name, double residual, double threshold)
  {
    results.push_back({name, residual <= threshold, residual, threshold});
  }
  void add_flag(const std::string &name, bool ok)
  {
    results.push_back({name, ok, ok ? 0.0 : 1.0, 0.5});
  }
};

CQuat random_cquat(std::uint64_t &st, real radius = 1)
{
  auto c = [&] { return cplx(rng_uniform(st, -radius, radius), rng_uniform(st, -radius, radius)); };
  return {c(), c(), c(), c()};
}

CQuat random_pure(std::uint64_t &st, real radius)
{
  auto c = [&] { return cplx(rng_uniform(st, -radius, radius), rng_uniform(st, -radius, radius)); };
  return CQuat::pure(c(), c(), c());
}

CQuat random_real_unit(std::uint64_t &st)
{
  real n[4], norm2 = 0;
  do {
    norm2 = 0;
    for (auto &x : n) {
      x = rng_normal(st);
      norm2 += x * x;
    }
  } while (norm2 < real(1e-12));
  const real inv = 1 / std::sqrt(norm2);
  return {n[0] * inv, n[1] * inv, n[2] * inv, n[3] * inv};
}

real qdist(const CQuat &x, const CQuat &y) { return max_abs(x - y); }

// --------------------------------------------------------------------------
// cquat suite
// --------------------------------------------------------------------------

SuiteResult suite_cquat(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0xc0ffee;

  const CQuat e1 = CQuat::pure(1, 0, 0), e2 = CQuat::pure(0, 1, 0), e3 = CQuat::pure(0, 0, 1);
  rec.add("e1*e2 = e3", qdist(e1 * e2, e3), 0);
  rec.add("e1*e1 = -1", qdist(e1 * e1, -CQuat::one()), 0);
  rec.add("det(e1) = 1", std::abs(det(e1) - cplx(1)), 0);
  rec.add("det(1) = 1", std::abs(det(CQuat::one()) - cplx(1)), 0);
  rec.add("inverse(1) = 1", qdist(inverse(CQuat::one()), CQuat::one()), 0);
  rec.add("inverse(e1) = -e1", qdist(inverse(e1), -e1), 0);
  rec.add("to_matrix(1) = id", (to_matrix(CQuat::one()) - Mat2::Identity()).cwiseAbs().maxCoeff(),
          0);
  {
    Mat2 d3;
    d3 << kI, 0, 0, -kI;
    rec.add("to_matrix(e3) = diag(i,-i)", (to_matrix(e3) - d3).cwiseAbs().maxCoeff(), 0);
  }
  {
    bool threw = false;
    try {
      inverse(CQuat(1, kI, 0, 0)); // null: det = 1 + i^2 = 0
    } catch (const SingularQuaternion &) {
      threw = true;
    }
    rec.add_flag("null quaternion inverse throws", threw);
  }

  real worst_assoc = 0, worst_detmul = 0, worst_anti = 0, worst_mat = 0, worst_conj = 0,
       worst_id = 0;
  for (int i = 0; i < 1000; ++i) {
    const CQuat x = random_cquat(st), y = random_cquat(st), z = random_cquat(st);
    const real scale = 1 + max_abs(x) * max_abs(y) * max_abs(z);
    worst_assoc = std::max(worst_assoc, qdist((x * y) * z, x * (y * z)) / scale);
    worst_detmul = std::max(worst_detmul, std::abs(det(x * y) - det(x) * det(y)) / scale);
    worst_detmul =
        std::max(worst_detmul, std::abs(det(x) - det(conj_quat(x))));
    worst_anti = std::max(worst_anti, qdist(conj_quat(x * y), conj_quat(y) * conj_quat(x)));
    worst_anti = std::max(worst_anti, qdist(adjoint(x * y), adjoint(y) * adjoint(x)));
    worst_anti =
        std::max(worst_anti, qdist(conj_complex(x * y), conj_complex(x) * conj_complex(y)));
    worst_mat = std::max(
        worst_mat, real((to_matrix(x * y) - to_matrix(x) * to_matrix(y)).cwiseAbs().maxCoeff()));
    worst_mat = std::max(
        worst_mat, std::abs(to_matrix(x).determinant() - det(x)) / (1 + std::abs(det(x))));
    worst_conj = std::max(worst_conj, qdist(conj_complex(conj_complex(x)), x));
    worst_conj = std::max(worst_conj, qdist(conj_quat(conj_quat(x)), x));
    worst_conj = std::max(worst_conj, qdist(adjoint(adjoint(x)), x));
    worst_id = std::max(worst_id, qdist(CQuat::one() * x, x));
    if (std::abs(det(x)) > real(1e-3))
      worst_id = std::max(worst_id, qdist(x * inverse(x), CQuat::one()));
  }
  rec.add("associativity (1000 random triples)", worst_assoc, 1e-12);
  rec.add("det multiplicativity and det z = det zt", worst_detmul, 1e-12);
  rec.add("conjugation (anti)homomorphisms", worst_anti, 1e-12);
  rec.add("matrix image homomorphism + det", worst_mat, 1e-12);
  rec.add("conjugations are involutions", worst_conj, 0);
  rec.add("identity element and inverses", worst_id, 1e-12);

  return {"cquat", rec.results, 0};
}

// --------------------------------------------------------------------------
// sp4 suite
// --------------------------------------------------------------------------

SuiteResult suite_sp4(std::uint64_t seed)
{
  Recorder rec;

  rec.add("identity membership", sp4::membership_residual(sp4::identity()), 1e-14);
  rec.add("boost d(0.3) membership", sp4::membership_residual(sp4::boost_d(real(0.3))), 1e-12);
  rec.add_flag("a=b=1 violates membership",
               !sp4::check_membership({CQuat::one(), CQuat::one()}).ok);

  real worst_member = 0, worst_inv = 0, worst_det = 0, worst_minv = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sp4Element g = sp4::random_element(seed + i, real(1.0));
    worst_member = std::max(worst_member, sp4::membership_residual(g));
    const Sp4Element gi = sp4::inverse(g);
    const Sp4Element prod = g * gi;
    worst_inv = std::max(worst_inv, qdist(prod.a, CQuat::one()));
    worst_inv = std::max(worst_inv, max_abs(prod.b));
    if (i % 50 == 0) {
      const Mat4 m = sp4::to_matrix4(g);
      worst_det = std::max(worst_det, real(std::abs(m.determinant() - cplx(1))));
      worst_minv = std::max(
          worst_minv, real((sp4::to_matrix4(gi) - m.inverse()).cwiseAbs().maxCoeff()));
    }
  }
  rec.add("random membership (1000 elements)", worst_member, 1e-10);
  rec.add("g * inverse(g) = e", worst_inv, 1e-10);
  rec.add("4x4 image determinant = 1", worst_det, 1e-10);
  rec.add("block inverse = 4x4 matrix inverse", worst_minv, 1e-10);

  rec.add_flag("seed determinism",
               qdist(sp4::random_element(7, real(0.5)).a, sp4::random_element(7, real(0.5)).a) == 0);
  rec.add_flag("t_max = 0 gives b = 0", max_abs(sp4::random_element(3, 0).b) < 1e-15);

  // domain
  rec.add_flag("in_domain(0)", sp4::in_domain(CQuat::zero()));
  rec.add_flag("in_domain(0.99 e1)", sp4::in_domain(CQuat::pure(real(0.99), 0, 0)));
  rec.add_flag("not in_domain(1.01 e1)", !sp4::in_domain(CQuat::pure(real(1.01), 0, 0)));
  {
    const CQuat z = CQuat::pure(real(0.9) * kI, 0, 0);
    rec.add_flag("0.9i e1 classified by eigenvalue test",
                 sp4::in_domain(z) == (sp4::domain_radius_sq(z) < 1));
  }
  {
    const CQuat z = random_pure(seed, real(0.3));
    std::uint64_t st = seed;
    const CQuat z2 = random_pure(st, real(0.3));
    rec.add("identity action fixes z", qdist(sp4::domain_action(sp4::identity(), z2), z2), 1e-15);
    const Sp4Element d = sp4::boost_d(real(0.4));
    const CQuat img = sp4::domain_action(d, CQuat::zero());
    rec.add("d(t) moves origin to tanh(t) e1",
            qdist(img, CQuat::pure(std::tanh(real(0.4)), 0, 0)), 1e-12);
    (void)z;
  }
  {
    real worst = 0;
    std::uint64_t st = seed ^ 0xabcd;
    for (int i = 0; i < 50; ++i) {
      const Sp4Element g1 = sp4::random_element(seed + 1000 + i, real(0.6));
      const Sp4Element g2 = sp4::random_element(seed + 2000 + i, real(0.6));
      const CQuat z = random_pure(st, real(0.35));
      const CQuat lhs = sp4::domain_action(sp4::inverse(g1 * g2), z);
      const CQuat rhs = sp4::domain_action(sp4::inverse(g2), sp4::domain_action(sp4::inverse(g1), z));
      worst = std::max(worst, qdist(lhs, rhs));
    }
    rec.add("left action: (g1 g2)^-1 <> z = g2^-1 <> (g1^-1 <> z)", worst, 1e-10);
  }

  // eigenvalues
  {
    const auto q = sp4::eigenvalues(sp4::identity());
    rec.add("identity eigenvalues", std::abs(q.mu - cplx(1)) + std::abs(q.nu - cplx(1)), 1e-12);
    const real th = real(0.8);
    const auto gd = sp4::make_diagonal(std::exp(kI * th), std::exp(-kI * th));
    const auto qd = sp4::eigenvalues(gd);
    rec.add("rotation eigenvalues e^{i th}, e^{-i th}",
            std::abs(qd.mu - std::exp(kI * th)) + std::abs(qd.nu - std::exp(-kI * th)), 1e-10);

    real worst_conj_closed = 0, worst_recip = 0;
    int representable = 0;
    for (int i = 0; i < 25; ++i) {
      const Sp4Element g = sp4::random_element(seed + 3000 + i, real(0.8));
      const auto e = sp4::eigenvalues(g);
      Eigen::ComplexEigenSolver<Mat4> solver(sp4::to_matrix4(g), false);
      // when the quadruple form exists, {mu, nu, conj nu, conj mu} (closed
      // under conjugation by construction) reproduces the 4x4 spectrum
      if (!e.degenerate) {
        ++representable;
        std::vector<cplx> expect{e.mu, e.nu, std::conj(e.nu), std::conj(e.mu)};
        for (int j = 0; j < 4; ++j) {
          real best = 1e30;
          for (const auto &x : expect)
            best = std::min(best, real(std::abs(solver.eigenvalues()(j) - x)));
          worst_conj_closed = std::max(worst_conj_closed, best);
        }
      }
      // reciprocal spectra, pairing-free
      Eigen::ComplexEigenSolver<Mat4> si(sp4::to_matrix4(sp4::inverse(g)), false);
      for (int a = 0; a < 4; ++a) {
        real best = 1e30;
        for (int b = 0; b < 4; ++b)
          best = std::min(best,
                          real(std::abs(si.eigenvalues()(b) - cplx(1) / solver.eigenvalues()(a))));
        worst_recip = std::max(worst_recip, best);
      }
    }
    rec.add("conjugation-closed quadruple reproduces spectrum", worst_conj_closed, 1e-9);
    rec.add("inverse has reciprocal spectrum", worst_recip, 1e-9);
    rec.add_flag("quadruple-representable classes found", representable > 0);
  }
  {
    const auto gd = sp4::make_diagonal(cplx(1), cplx(1));
    rec.add("make_diagonal(1,1) = identity", qdist(gd.a, CQuat::one()) + max_abs(gd.b), 0);
    const cplx mu = std::exp(kI * real(kPi / 3));
    const auto g = sp4::make_diagonal(mu, std::conj(mu));
    rec.add("make_diagonal(pi/3) block",
            qdist(g.a, CQuat(std::cos(kPi / 3), 0, 0, std::sin(kPi / 3))), 1e-14);
    const auto ext = sp4::make_diagonal(real(0.8) * mu, real(1.25) * std::conj(mu));
    rec.add_flag("extension diagonal accepted, flagged non-real",
                 !sp4::is_real_form(ext) && max_abs(ext.b) == 0);
    bool threw = false;
    try {
      sp4::make_diagonal(cplx(0.5), cplx(1));
    } catch (const DeterminantNotOne &) {
      threw = true;
    }
    rec.add_flag("make_diagonal rejects |mu nu| != 1", threw);
  }

  return {"sp4", rec.results, 0};
}

// --------------------------------------------------------------------------
// wigner suite
// --------------------------------------------------------------------------

SuiteResult suite_wigner(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0x517;

  // sigma examples
  rec.add("sigma^0_0 = 1", std::abs(wigner::sigma(0, 0) - 1), 0);
  rec.add("sigma^{1/2}_{1/2} = 1", std::abs(wigner::sigma(1, 1) - 1), 0);
  rec.add("sigma^1_0 = 1", std::abs(wigner::sigma(2, 0) - 1), 0);

  // 3-j values
  rec.add("3j(110;000) = -1/sqrt(3)",
          std::abs(wigner::three_j(2, 2, 0, 0, 0, 0) + 1 / std::sqrt(real(3))), 1e-15);
  rec.add("3j(111;000) = 0", std::abs(wigner::three_j(2, 2, 2, 0, 0, 0)), 0);
  rec.add("3j(110;1,-1,0) = 1/sqrt(3)",
          std::abs(wigner::three_j(2, 2, 0, 2, -2, 0) - 1 / std::sqrt(real(3))), 1e-15);
  {
    real worst = 0;
    for (int l1 = 0; l1 <= 6; ++l1)
      for (int l2 = 0; l2 <= 6; ++l2)
        for (int l3 = std::abs(l1 - l2); l3 <= std::min(6, l1 + l2); ++l3)
          worst = std::max(worst, std::abs(wigner::three_j(2 * l1, 2 * l2, 2 * l3, 0, 0, 0) -
                                           wigner::three_j_all_zero_m(l1, l2, l3)));
    rec.add("closed zero-m form = generic sum (l <= 6)", worst, 1e-14);
  }
  {
    // orthogonality for all j <= 2
    real worst = 0;
    for (int j1_2 = 0; j1_2 <= 4; ++j1_2)
      for (int j2_2 = 0; j2_2 <= 4; ++j2_2)
        for (int j3_2 = std::abs(j1_2 - j2_2); j3_2 <= j1_2 + j2_2; j3_2 += 2)
          for (int j3p_2 = std::abs(j1_2 - j2_2); j3p_2 <= j1_2 + j2_2; j3p_2 += 2)
            for (int m3_2 = -j3_2; m3_2 <= j3_2; m3_2 += 2)
              for (int m3p_2 = -j3p_2; m3p_2 <= j3p_2; m3p_2 += 2) {
                if ((j3_2 + m3_2) % 2 || (j3p_2 + m3p_2) % 2)
                  continue;
                real sum = 0;
                for (int m1_2 = -j1_2; m1_2 <= j1_2; m1_2 += 2) {
                  const int m2_2 = -m3_2 - m1_2;
                  if (std::abs(m2_2) > j2_2 || (j2_2 + m2_2) % 2)
                    continue;
                  sum += real(j3_2 + 1) * wigner::three_j(j1_2, j2_2, j3_2, m1_2, m2_2, m3_2) *
                         wigner::three_j(j1_2, j2_2, j3p_2, m1_2, m2_2, m3p_2);
                }
                const real expect = (j3_2 == j3p_2 && m3_2 == m3p_2) ? 1 : 0;
                worst = std::max(worst, std::abs(sum - expect));
              }
    rec.add("3j orthogonality (j <= 2)", worst, 1e-13);
  }

  // Clebsch-Gordan
  rec.add("CG identity coupling", std::abs(wigner::clebsch_gordan(4, 2, 0, 0, 4, 2) - 1), 1e-15);
  rec.add("CG (1/2 1/2, 1/2 -1/2 | 0 0) = 1/sqrt(2)",
          std::abs(wigner::clebsch_gordan(1, 1, 1, -1, 0, 0) - 1 / std::sqrt(real(2))), 1e-15);
  {
    // odd-J zero-m CG vanish
    real worst = std::abs(wigner::clebsch_gordan(2, 0, 2, 0, 2, 0));
    rec.add("CG zero-m odd J vanishes", worst, 0);
  }

  // D matrices
  rec.add("D^0 = 1",
          std::abs(wigner::wigner_d(0, 0, 0, random_cquat(st)) - cplx(1)), 0);
  {
    const CQuat z = random_cquat(st);
    // D^{1/2}(z) = sigma_y Z(z) sigma_y (the documented index correspondence)
    Mat2 sy;
    sy << 0, -kI, kI, 0;
    const Mat2 lhs = wigner::wigner_d_matrix(1, z);
    const Mat2 rhs = sy * to_matrix(z) * sy;
    rec.add("D^{1/2} = sigma_y Z sigma_y", (lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
  }
  {
    real worst = 0;
    for (int j2 = 0; j2 <= 4; ++j2) {
      const MatX d = wigner::wigner_d_matrix(j2, CQuat::one());
      worst = std::max(worst, real((d - MatX::Identity(j2 + 1, j2 + 1)).cwiseAbs().maxCoeff()));
    }
    rec.add("D^j(1) = identity", worst, 0);
  }
  {
    // homomorphism for j <= 3 over 200 random pairs
    real worst = 0;
    for (int i = 0; i < 200; ++i) {
      const CQuat x = random_cquat(st, real(0.8)), y = random_cquat(st, real(0.8));
      const CQuat xy = x * y;
      const int j2 = 1 + int(rng_next(st) % 6); // 1..6
      const MatX dx = wigner::wigner_d_matrix(j2, x);
      const MatX dy = wigner::wigner_d_matrix(j2, y);
      const MatX dxy = wigner::wigner_d_matrix(j2, xy);
      const real scale = std::max(real(1), real(dxy.cwiseAbs().maxCoeff()));
      worst = std::max(worst, real((dx * dy - dxy).cwiseAbs().maxCoeff()) / scale);
    }
    rec.add("homomorphism D(z z') = D(z) D(z') (j <= 3)", worst, 1e-11);
  }
  {
    // SU(2) unitarity
    real worst = 0;
    for (int i = 0; i < 40; ++i) {
      const CQuat xi = random_real_unit(st);
      const int j2 = 1 + int(rng_next(st) % 6);
      const MatX d = wigner::wigner_d_matrix(j2, xi);
      worst = std::max(
          worst, real((d.adjoint() * d - MatX::Identity(j2 + 1, j2 + 1)).cwiseAbs().maxCoeff()));
    }
    rec.add("unitarity on SU(2)", worst, 1e-12);
  }
  {
    // exact harmonicity of the monomial expansion
    bool ok = true;
    for (int j2 = 1; j2 <= 6 && ok; ++j2)
      for (int m1_2 = -j2; m1_2 <= j2 && ok; m1_2 += 2)
        for (int m2_2 = -j2; m2_2 <= j2 && ok; m2_2 += 2)
          ok = harmonics::wigner_d_poly_unnormalized(j2, m1_2, m2_2).laplacian(4).is_zero();
    rec.add_flag("exact polynomial harmonicity (j <= 3)", ok);
  }
  {
    // addition theorems
    real worst9 = 0, worst11 = 0;
    for (int i = 0; i < 30; ++i) {
      const CQuat x = random_cquat(st, real(0.7)), y = random_cquat(st, real(0.7));
      const int j2 = 1 + int(rng_next(st) % 4);
      for (int m1_2 = -j2; m1_2 <= j2; m1_2 += 2)
        for (int m2_2 = -j2; m2_2 <= j2; m2_2 += 2) {
          worst9 = std::max(worst9, real(std::abs(wigner::addition_theorem_sum(j2, m1_2, m2_2, x, y) -
                                                  wigner::wigner_d(j2, m1_2, m2_2, x + y))));
          worst11 = std::max(worst11, real(std::abs(wigner::product_expansion(j2, m1_2, m2_2, x, y) -
                                                    wigner::wigner_d(j2, m1_2, m2_2, x * y))));
        }
    }
    rec.add("first addition theorem (finite)", worst9, 1e-12);
    rec.add("product expansion identity", worst11, 1e-12);
  }
  {
    // z' = 0 collapse of the first addition theorem
    const CQuat x = random_cquat(st);
    rec.add("addition theorem with z' = 0",
            std::abs(wigner::addition_theorem_sum(3, 1, -1, x, CQuat::zero()) -
                     wigner::wigner_d(3, 1, -1, x)),
            1e-13);
  }
  {
    // inverse addition series: z = 0 collapse and truncated convergence
    const CQuat zp = CQuat::one() + random_cquat(st, real(0.1));
    const auto collapse = wigner::inverse_addition_sum(2, 0, 0, CQuat::zero(), zp, 0);
    const cplx expect = wigner::wigner_d(2, 0, 0, inverse(zp)) / det(zp);
    rec.add("inverse addition with z = 0", std::abs(collapse.value - expect), 1e-13);

    const CQuat zsm = random_cquat(st, real(0.08));
    const CQuat big = CQuat::one() + random_cquat(st, real(0.05));
    const cplx direct =
        wigner::wigner_d(2, 2, 0, inverse(zsm + big)) / det(zsm + big);
    real err_prev = 1e30;
    bool decreasing = true;
    for (int jmax2 : {4, 10, 16}) {
      const auto s = wigner::inverse_addition_sum(2, 2, 0, zsm, big, jmax2);
      const real err = std::abs(s.value - direct);
      if (err > err_prev * real(1.5))
        decreasing = false;
      err_prev = err;
    }
    rec.add("inverse addition truncation error", err_prev, 1e-9);
    rec.add_flag("inverse addition error decreasing in j_max", decreasing);
    bool threw = false;
    try {
      wigner::inverse_addition_sum(2, 0, 0, big, zsm, 8); // |det z| >= |det z'|
    } catch (const Error &) {
      threw = true;
    }
    rec.add_flag("inverse addition rejects |det z| >= |det z'|", threw);
  }
  {
    // tensor product reduction on SU(2)
    real worst = 0;
    worst = std::max(worst, wigner::tensor_reduce_check(0, 0, random_real_unit(st)));
    worst = std::max(worst, wigner::tensor_reduce_check(1, 1, random_real_unit(st)));
    worst = std::max(worst, wigner::tensor_reduce_check(2, 1, random_real_unit(st)));
    worst = std::max(worst, wigner::tensor_reduce_check(2, 2, random_real_unit(st)));
    rec.add("tensor-product reduction residual", worst, 1e-12);
  }

  return {"wigner", rec.results, 0};
}

// --------------------------------------------------------------------------
// harmonics suite
// --------------------------------------------------------------------------

// independent oracle: associated Legendre recurrence with Condon-Shortley
// phase, for real unit vectors
cplx sph_harm_oracle(int l, int m, real theta, real phi)
{
  const int am = std::abs(m);
  const real x = std::cos(theta);
  real pmm = 1;
  for (int i = 1; i <= am; ++i)
    pmm *= -(2 * i - 1) * std::sin(theta); // includes CS phase
  real plm = pmm;
  if (l > am) {
    real pm1 = pmm, pm0 = x * (2 * am + 1) * pmm;
    plm = pm0;
    for (int ll = am + 2; ll <= l; ++ll) {
      plm = ((2 * ll - 1) * x * pm0 - (ll + am - 1) * pm1) / (ll - am);
      pm1 = pm0;
      pm0 = plm;
    }
  }
  real norm = std::sqrt((2 * l + 1) / (4 * kPi) * wigner::factorial(l - am) /
                        wigner::factorial(l + am));
  cplx val = norm * plm * std::exp(kI * real(am) * phi);
  if (m < 0)
    val = parity(am) * std::conj(val);
  return val;
}

SuiteResult suite_harmonics(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0x4a11;

  {
    const CQuat z = random_pure(st, real(0.5));
    rec.add("Y00 = (4pi)^{-1/2}",
            std::abs(harmonics::solid_harmonic(0, 0, z) - cplx(1 / std::sqrt(4 * kPi))), 1e-16);
    rec.add("Y10 = sqrt(3/4pi) z3",
            std::abs(harmonics::solid_harmonic(1, 0, z) -
                     std::sqrt(real(3) / (4 * kPi)) * z.v[2]),
            1e-15);
  }
  {
    // against the Legendre-recurrence oracle on the real unit sphere
    real worst = 0;
    for (int i = 0; i < 20; ++i) {
      const real theta = rng_uniform(st, real(0.05), kPi - real(0.05));
      const real phi = rng_uniform(st, 0, 2 * kPi);
      const CQuat n = CQuat::pure(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                  std::cos(theta));
      for (int l = 0; l <= 6; ++l)
        for (int m = -l; m <= l; ++m)
          worst = std::max(worst, real(std::abs(harmonics::solid_harmonic(l, m, n) -
                                                sph_harm_oracle(l, m, theta, phi))));
    }
    rec.add("matches Legendre-recurrence oracle on S^2", worst, 1e-12);
  }
  {
    // homogeneity with complex scale
    real worst = 0;
    for (int i = 0; i < 10; ++i) {
      const CQuat z = random_pure(st, real(0.5));
      const cplx c(rng_uniform(st, -1, 1), rng_uniform(st, -1, 1));
      for (int l = 0; l <= 6; ++l) {
        cplx cl = 1;
        for (int p = 0; p < l; ++p)
          cl *= c;
        for (int m = -l; m <= l; ++m) {
          const cplx lhs = harmonics::solid_harmonic(l, m, c * z);
          const cplx rhs = cl * harmonics::solid_harmonic(l, m, z);
          worst = std::max(worst, real(std::abs(lhs - rhs) / (1 + std::abs(rhs))));
        }
      }
    }
    rec.add("homogeneity Y(c z) = c^l Y(z)", worst, 1e-12);
  }
  {
    // product linearization
    real worst = 0;
    for (int i = 0; i < 100; ++i) {
      const CQuat z = random_pure(st, real(0.6));
      const int l1 = int(rng_next(st) % 4), l2 = int(rng_next(st) % 4);
      const int m1 = l1 ? int(rng_next(st) % (2 * l1 + 1)) - l1 : 0;
      const int m2 = l2 ? int(rng_next(st) % (2 * l2 + 1)) - l2 : 0;
      const cplx direct =
          harmonics::solid_harmonic(l1, m1, z) * harmonics::solid_harmonic(l2, m2, z);
      const cplx expanded = harmonics::product_expand(l1, m1, l2, m2, z);
      worst = std::max(worst, real(std::abs(direct - expanded) / (1 + std::abs(direct))));
    }
    rec.add("product linearization (l <= 3)", worst, 1e-11);
  }
  {
    // Y from D: z4-independence and cross-module agreement
    real worst_ind = 0, worst_val = 0;
    for (int i = 0; i < 10; ++i) {
      const CQuat zp = random_pure(st, real(0.6));
      CQuat z1 = zp, z2 = zp;
      z2.w = real(0.7);
      for (int l = 0; l <= 6; ++l)
        for (int m = -l; m <= l; ++m) {
          const cplx a = harmonics::y_from_d(l, m, z1);
          const cplx b = harmonics::y_from_d(l, m, z2);
          worst_ind = std::max(worst_ind, real(std::abs(a - b)));
          worst_val =
              std::max(worst_val, real(std::abs(a - harmonics::solid_harmonic(l, m, zp))));
        }
    }
    rec.add("y_from_d independent of z4", worst_ind, 1e-12);
    rec.add("y_from_d = solid harmonic", worst_val, 1e-11);
  }
  {
    // D from Y and the roundtrip
    real worst = 0;
    for (int i = 0; i < 10; ++i) {
      const CQuat z = random_pure(st, real(0.6));
      for (int l = 0; l <= 6; ++l)
        for (int m1_2 = -l; m1_2 <= l; m1_2 += 2)
          for (int m2_2 = -l; m2_2 <= l; m2_2 += 2)
            worst = std::max(worst, real(std::abs(harmonics::d_from_y(l, m1_2, m2_2, z) -
                                                  wigner::wigner_d(l, m1_2, m2_2, z))));
    }
    rec.add("d_from_y = holomorphic D on pure quaternions", worst, 1e-11);
  }
  {
    bool ok = true;
    for (int l = 0; l <= 6 && ok; ++l)
      for (int m = -l; m <= l && ok; ++m)
        ok = harmonics::solid_harmonic_poly_unnormalized(l, m).laplacian(3).is_zero();
    rec.add_flag("exact polynomial harmonicity (l <= 6)", ok);
  }

  return {"harmonics", rec.results, 0};
}

// --------------------------------------------------------------------------
// gegenbauer suite
// --------------------------------------------------------------------------

SuiteResult suite_gegenbauer(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0x6e6;

  {
    const cplx t(rng_uniform(st, -1, 1), rng_uniform(st, -real(0.2), real(0.2)));
    rec.add("C_0 = 1", std::abs(gegenbauer::gegenbauer_c(0, real(2.5), t) - cplx(1)), 0);
    rec.add("C_1 = 2 lambda t",
            std::abs(gegenbauer::gegenbauer_c(1, real(2.5), t) - real(5) * t), 1e-15);
  }
  {
    // negative integer lambda: finite generating sum, exact
    real worst = 0;
    for (int i = 0; i < 20; ++i) {
      const cplx u(rng_uniform(st, -real(0.9), real(0.9)), rng_uniform(st, -real(0.3), real(0.3)));
      const cplx t(rng_uniform(st, -1, 1), 0);
      cplx sum = 0, up = 1;
      for (int l = 0; l <= 2; ++l) {
        sum += up * gegenbauer::gegenbauer_c(l, real(-1), t);
        up *= u;
      }
      const cplx closed = cplx(1) + u * u - real(2) * u * t;
      worst = std::max(worst, real(std::abs(sum - closed)));
      // and the recurrence terminates: C_l^{-1} = 0 beyond l = 2
      worst = std::max(worst, real(std::abs(gegenbauer::gegenbauer_c(3, real(-1), t))));
      worst = std::max(worst, real(std::abs(gegenbauer::gegenbauer_c(5, real(-1), t))));
    }
    rec.add("negative-integer lambda finite sum", worst, 1e-12);
  }
  {
    // generating function, geometric convergence
    real worst = 0;
    bool geometric = true;
    for (const real lambda : {real(0.5), real(1), real(2), real(3.5)}) {
      for (int i = 0; i < 10; ++i) {
        const cplx u(rng_uniform(st, -real(0.5), real(0.5)), 0);
        const cplx t(rng_uniform(st, -1, 1), 0);
        const cplx closed = std::pow(cplx(1) + u * u - real(2) * u * t, cplx(-lambda));
        cplx sum = 0, up = 1;
        real err20 = 0, err40 = 0;
        for (int l = 0; l <= 40; ++l) {
          sum += up * gegenbauer::gegenbauer_c(l, lambda, t);
          up *= u;
          if (l == 20)
            err20 = std::abs(sum - closed);
          if (l == 40)
            err40 = std::abs(sum - closed);
        }
        worst = std::max(worst, err40);
        if (err40 > err20 * real(0.9) + real(1e-14))
          geometric = false;
      }
    }
    rec.add("generating function partial sums", worst, 1e-7);
    rec.add_flag("generating-function error decays geometrically", geometric);
  }
  {
    // coefficient families
    rec.add("a_{2,0,0} = 4 pi", std::abs(gegenbauer::coeff_a(real(2), 0, 0) - 4 * kPi), 1e-12);
    rec.add("a_{2,0,0}/(4pi) = 1 consistency",
            std::abs(gegenbauer::coeff_a(real(2), 0, 0) / (4 * kPi) - 1), 1e-14);
    real worst = 0;
    for (const real lambda : {real(0.8), real(2), real(3.5), real(4.25)})
      for (int l = 0; l <= 6; ++l)
        for (int k = 0; 2 * k <= l; ++k) {
          const real ga = gegenbauer::coeff_a(lambda, l, k);
          const real pa = gegenbauer::coeff_a_general(lambda, l, k);
          worst = std::max(worst, std::abs(ga - pa) / (1 + std::abs(ga)));
          // d and d' relation: d_k = Gamma(lambda) Gamma(lambda - 1/2) d'_k
          const real d = gegenbauer::coeff_d(lambda, l, k);
          const real dp = gegenbauer::coeff_d_prime(lambda, l, k);
          worst = std::max(worst, std::abs(d - std::tgamma(lambda) * std::tgamma(lambda - real(0.5)) * dp) /
                                      (1 + std::abs(d)));
        }
    rec.add("Gamma form = Pochhammer form (incl. duplication)", worst, 1e-12);
    rec.add("d'_0(l=0) = 1/(2 Gamma(3/2))",
            std::abs(gegenbauer::coeff_d_prime(real(-1), 0, 0) -
                     real(0.5) / std::tgamma(real(1.5))),
            1e-14);
    bool threw = false;
    try {
      gegenbauer::coeff_a(real(0.25), 1, 0);
    } catch (const InvalidLambda &) {
      threw = true;
    }
    rec.add_flag("coeff_a rejects lambda <= 1/2", threw);
  }
  {
    // determinant power expansion vs closed form
    real worst = 0;
    bool monotone = true;
    for (const real lambda : {real(2), real(3), real(3.5)})
      for (int i = 0; i < 6; ++i) {
        const CQuat z = random_pure(st, real(0.17)); // |z| <= 0.3 overall
        const CQuat zp = random_pure(st, real(0.17));
        const cplx closed = gegenbauer::det_power_closed_form(lambda, z, zp);
        real prev = 1e30;
        for (int lmax : {8, 14, 20}) {
          const auto e = gegenbauer::det_power_expansion(lambda, z, zp, lmax);
          const real err = std::abs(e.value - closed);
          if (lmax == 20)
            worst = std::max(worst, err);
          if (lmax > 8 && err > prev * real(1.2) + real(1e-15))
            monotone = false;
          prev = err;
        }
      }
    rec.add("det-power expansion vs closed form (l_max 20)", worst, 1e-8);
    rec.add_flag("expansion error decreasing in l_max", monotone);

    // z' = 0 collapse
    const auto e0 =
        gegenbauer::det_power_expansion(real(2.5), random_pure(st, real(0.2)), CQuat::zero(), 0);
    rec.add("z' = 0 gives det(1)^{-lambda} = 1", std::abs(e0.value - cplx(1)), 1e-14);

    // negative integer lambda: exact finite polynomial
    real worst_neg = 0;
    for (int i = 0; i < 10; ++i) {
      const CQuat z = random_pure(st, real(0.4)), zp = random_pure(st, real(0.4));
      const auto e = gegenbauer::det_power_expansion(real(-1), z, zp, 4);
      const CQuat zpc = conj_complex(zp);
      const cplx direct = cplx(1) - real(2) * vdot(z, zpc) + vdot(z, z) * vdot(zpc, zpc);
      worst_neg = std::max(worst_neg, real(std::abs(e.value - direct)));
    }
    rec.add("lambda = -1 finite sum = det(1 + z zbar')", worst_neg, 1e-12);
  }
  {
    // addition theorem for C^{1/2}
    real worst = 0;
    for (int i = 0; i < 20; ++i) {
      const CQuat z = random_pure(st, real(0.5)), zp = random_pure(st, real(0.5));
      for (int l = 0; l <= 6; ++l) {
        cplx rhs = 0;
        for (int m = -l; m <= l; ++m)
          rhs += harmonics::solid_harmonic(l, m, z) * std::conj(harmonics::solid_harmonic(l, m, zp));
        rhs *= 4 * kPi / real(2 * l + 1);
        worst = std::max(worst,
                         real(std::abs(gegenbauer::addition_theorem_lhs(l, z, zp) - rhs)));
      }
    }
    rec.add("C^{1/2} addition theorem (l <= 6)", worst, 1e-11);
  }

  return {"gegenbauer", rec.results, 0};
}

// --------------------------------------------------------------------------
// fockbasis suite
// --------------------------------------------------------------------------

SuiteResult suite_fockbasis(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0xf0cb;

  {
    const RepLabel rep{4, HalfInt(0)};
    rec.add("N(4,0) = 120/pi^3",
            std::abs(fockbasis::norm_const(rep) - 120 / (kPi * kPi * kPi)), 1e-12);
    const RepLabel rep2{real(3.5), HalfInt(1)};
    const real expect = real(8) / (kPi * kPi * kPi) * real(2.5) * real(2.0) * real(1.0);
    rec.add("N(3.5,1/2) direct", std::abs(fockbasis::norm_const(rep2) - expect), 1e-12);
    bool threw = false;
    try {
      RepLabel{real(1.5), HalfInt(0)}.validate(); // inside the Shilov band
    } catch (const OutOfRegime &) {
      threw = true;
    }
    rec.add_flag("boundary regime rejected", threw);
    // the (vs - s - 2) factor vanishes toward the regime edge
    rec.add("norm constant -> 0 at vs -> s+2",
            std::abs(fockbasis::norm_const(RepLabel{real(2.0001), HalfInt(0)})) /
                (8 / (kPi * kPi * kPi)),
            1e-3);
  }
  {
    rec.add_flag("e_{0,0} = (1)", fockbasis::basis_vector_e(HalfInt(0), HalfInt(0)).size() == 1);
    const VecX e = fockbasis::basis_vector_e(HalfInt(1), HalfInt(1));
    rec.add("e_{1/2,+1/2} = (1,0)", std::abs(e(0) - cplx(1)) + std::abs(e(1)), 0);
    real worst = 0;
    for (int r1 = -3; r1 <= 3; r1 += 2)
      for (int r2 = -3; r2 <= 3; r2 += 2) {
        const cplx dot = fockbasis::basis_vector_e(HalfInt(3), HalfInt(r1))
                             .adjoint()
                             .dot(fockbasis::basis_vector_e(HalfInt(3), HalfInt(r2)).conjugate());
        worst = std::max(worst, real(std::abs(dot - cplx(r1 == r2 ? 1 : 0))));
      }
    rec.add("e vectors orthonormal", worst, 0);
  }
  {
    const RepLabel rep{4, HalfInt(0)};
    const CQuat z = random_pure(st, real(0.28));
    rec.add("F_{000} = sqrt(a/4pi)",
            std::abs(fockbasis::scalar_basis(rep, {0, 0, 0}, z) -
                     std::sqrt(fockbasis::basis_coeff_a(4, 0, 0) / (4 * kPi))),
            1e-13);
    rec.add("F_{l>0}(0) = 0", std::abs(fockbasis::scalar_basis(rep, {1, 0, 0}, CQuat::zero())), 0);
    rec.add("F_{100} composition",
            std::abs(fockbasis::scalar_basis(rep, {1, 0, 0}, z) -
                     std::sqrt(fockbasis::basis_coeff_a(4, 1, 0)) *
                         harmonics::solid_harmonic(1, 0, z)),
            1e-13);
  }
  {
    // spin basis: s = 0 reduction and the l = 0 closed form
    const RepLabel rep0{4, HalfInt(0)};
    const RepLabel repH{4, HalfInt(1)};
    const CQuat z = random_pure(st, real(0.28));
    real worst = 0;
    for (const auto &idx : fockbasis::enumerate_scalar_upto(3)) {
      const VecX v = fockbasis::spin_basis(
          rep0, {idx.l, idx.k, HalfInt(2 * (idx.l - 2 * idx.k)), HalfInt(2 * idx.m)}, z);
      worst =
          std::max(worst, real(std::abs(v(0) - fockbasis::scalar_basis(rep0, idx, z))));
    }
    rec.add("spin basis reduces to scalar at s = 0", worst, 1e-14);

    const VecX f = fockbasis::spin_basis(repH, {0, 0, HalfInt(1), HalfInt(1)}, z);
    const real expect = std::sqrt(fockbasis::basis_coeff_a(real(4.5), 0, 0) / (4 * kPi));
    rec.add("spin l=0 basis = e_{s,M} sqrt(a/4pi)",
            std::abs(f(0) - expect) + std::abs(f(1)), 1e-13);

    // converse relation via CG orthogonality: rebuild e^dag-projected scalars
    real worst_conv = 0;
    for (int l = 0; l <= 2; ++l)
      for (int k = 0; 2 * k <= l; ++k) {
        const int lam = l - 2 * k;
        for (int m = -lam; m <= lam; ++m)
          for (int rho2 = -1; rho2 <= 1; rho2 += 2) {
            // sum_{J,M} CG e^dag_{s rho} Y_{s,lam,JM} should rebuild delta_{rho rho'} Y_{lam m}
            cplx sum = 0;
            for (int J2 = std::abs(2 * lam - 1); J2 <= 2 * lam + 1; J2 += 2) {
              const int M2 = 2 * m + rho2;
              if (std::abs(M2) > J2)
                continue;
              const real cg = wigner::clebsch_gordan(1, rho2, 2 * lam, 2 * m, J2, M2);
              const VecX f2 = fockbasis::spin_basis(repH, {l, k, HalfInt(J2), HalfInt(M2)}, z);
              sum += cg * f2((1 - rho2) / 2);
            }
            const cplx expect2 = std::sqrt(fockbasis::basis_coeff_a(real(4.5), l, k)) *
                                 std::pow(vdot(z, z), k) *
                                 harmonics::solid_harmonic(lam, m, z);
            worst_conv = std::max(worst_conv, real(std::abs(sum - expect2)));
          }
      }
    rec.add("spin <-> scalar converse (CG orthogonality)", worst_conv, 1e-12);
  }
  {
    // D^s on matrices
    Mat2 A, B;
    A << cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.1, -0.3), cplx(0.9, 0.2);
    B << cplx(1.1, -0.2), cplx(0.3, 0.3), cplx(-0.4, 0.1), cplx(0.5, 0.0);
    rec.add_flag("D^0 = scalar 1", fockbasis::d_s_matrix(HalfInt(0), A).rows() == 1 &&
                                       std::abs(fockbasis::d_s_matrix(HalfInt(0), A)(0, 0) -
                                                cplx(1)) < 1e-15);
    {
      Mat2 sy;
      sy << 0, -kI, kI, 0;
      const MatX d = fockbasis::d_s_matrix(HalfInt(1), A);
      rec.add("D^{1/2}(A) = sigma_y A sigma_y", (d - sy * A * sy).cwiseAbs().maxCoeff(), 1e-14);
    }
    real worst = 0;
    for (int s2 = 0; s2 <= 3; ++s2) {
      const MatX dab = fockbasis::d_s_matrix(HalfInt(s2), Mat2(A * B));
      const MatX da = fockbasis::d_s_matrix(HalfInt(s2), A);
      const MatX db = fockbasis::d_s_matrix(HalfInt(s2), B);
      worst = std::max(worst, real((dab - da * db).cwiseAbs().maxCoeff() /
                                   (1 + dab.cwiseAbs().maxCoeff())));
      worst = std::max(worst,
                       real((fockbasis::d_s_matrix(HalfInt(s2), Mat2(Mat2::Identity())) -
                             MatX::Identity(s2 + 1, s2 + 1))
                                .cwiseAbs()
                                .maxCoeff()));
    }
    rec.add("D^s multiplicative on M(2,C) (s <= 3/2)", worst, 1e-11);
  }
  {
    // kernel closed form
    const RepLabel rep{4, HalfInt(0)};
    const RepLabel repH{4, HalfInt(1)};
    const CQuat z = random_pure(st, real(0.28)), zp = random_pure(st, real(0.28));
    rec.add("K(z, 0) = identity",
            (fockbasis::kernel(repH, z, CQuat::zero()) - MatX::Identity(2, 2))
                .cwiseAbs()
                .maxCoeff(),
            1e-13);
    rec.add("scalar kernel = det-power closed form",
            std::abs(fockbasis::kernel(rep, z, zp)(0, 0) -
                     gegenbauer::det_power_closed_form(4, z, zp)),
            1e-13);
    real worst_h = 0;
    for (int i = 0; i < 10; ++i) {
      const CQuat x = random_pure(st, real(0.28)), y = random_pure(st, real(0.28));
      const MatX k1 = fockbasis::kernel(repH, x, y);
      const MatX k2 = fockbasis::kernel(repH, y, x);
      worst_h = std::max(worst_h, real((k1.adjoint() - k2).cwiseAbs().maxCoeff()));
    }
    rec.add("kernel hermiticity K(z,z')^dag = K(z',z)", worst_h, 1e-12);
  }
  {
    // kernel expansion: acceptance tolerances
    Truncation tr;
    tr.l_max = 12;
    real worst0 = 0, worstH = 0, worst_zero = 0;
    bool monotone = true;
    for (int i = 0; i < 4; ++i) {
      const CQuat z = random_pure(st, real(0.17));
      const CQuat zp = random_pure(st, real(0.17));
      const RepLabel rep{4, HalfInt(0)};
      const RepLabel repH{4, HalfInt(1)};
      worst0 = std::max(worst0, fockbasis::kernel_expansion_check(rep, z, zp, tr).residual);
      worstH = std::max(worstH, fockbasis::kernel_expansion_check(repH, z, zp, tr).residual);
      Truncation t0;
      t0.l_max = 0;
      worst_zero = std::max(
          worst_zero, fockbasis::kernel_expansion_check(repH, z, CQuat::zero(), t0).residual);
      real prev = 1e30;
      for (int lm : {4, 8, 12}) {
        Truncation tm;
        tm.l_max = lm;
        const real r = fockbasis::kernel_expansion_check(rep, z, zp, tm).residual;
        if (lm > 4 && r > prev)
          monotone = false;
        prev = r;
      }
    }
    rec.add("kernel expansion residual, s=0 (l_max 12)", worst0, 1e-6);
    rec.add("kernel expansion residual, s=1/2 (l_max 12)", worstH, 1e-6);
    rec.add("z' = 0 expansion exact at l_max 0", worst_zero, 1e-12);
    rec.add_flag("kernel expansion residual monotone beyond l_max 4", monotone);
  }
  {
    // Monte Carlo orthonormality for all indices with l <= 2
    const RepLabel rep{4, HalfInt(0)};
    Truncation tr;
    tr.mc_samples = 100000;
    const auto indices = fockbasis::enumerate_scalar_upto(2);
    real worst_sigmas = 0;
    for (size_t i = 0; i < indices.size(); ++i)
      for (size_t j = i; j < indices.size(); ++j) {
        const auto est = fockbasis::mc_inner_product(rep, indices[i], indices[j], tr,
                                                     seed + 17 * i + j);
        const real expect = (i == j) ? 1 : 0;
        const real dev = std::abs(est.value - cplx(expect)) / std::max(est.std_error, real(1e-12));
        worst_sigmas = std::max(worst_sigmas, dev);
      }
    rec.add("MC orthonormality (l <= 2) within 3 std errors", worst_sigmas, 3.0);

    // reproducing property at a fixed point
    const CQuat z0 = CQuat::pure(real(0.21), real(-0.12), real(0.08));
    real worst_rep = 0;
    for (const auto &idx : fockbasis::enumerate_scalar_upto(1)) {
      const auto est = fockbasis::mc_reproducing(rep, idx, z0, tr, seed + 997 + idx.l + idx.m);
      const cplx expect = fockbasis::scalar_basis(rep, idx, z0);
      worst_rep = std::max(worst_rep,
                           real(std::abs(est.value - expect) / std::max(est.std_error, real(1e-12))));
    }
    rec.add("MC reproducing property within 3 std errors", worst_rep, 3.0);
  }

  return {"fockbasis", rec.results, 0};
}

// --------------------------------------------------------------------------
// elements suite
// --------------------------------------------------------------------------

// independent reachability predicate for the series selection rules
bool scalar_reachable(const ScalarIndex &in, const ScalarIndex &out)
{
  const int L = in.l - 2 * in.k;
  const int Lppp = out.l - 2 * out.k;
  for (int lf = 0; lf <= out.l; ++lf)
    for (int lb = 0; lb <= std::min(2 * in.k, out.l - lf); ++lb) {
      const int Lp = out.l - lf - lb;
      for (int kf = 0; 2 * kf <= lf; ++kf)
        for (int kb = 0; 2 * kb <= lb; ++kb) {
          if (lb - kb > in.k)
            continue; // Pochhammer (-k)_{lb-kb} vanishes
          const int lam_f = lf - 2 * kf, lam_b = lb - 2 * kb;
          for (int mf = -lam_f; mf <= lam_f; ++mf)
            for (int mb = -lam_b; mb <= lam_b; ++mb) {
              const int mbb = mf + mb, mpp = out.m - mbb;
              if (std::abs(mpp) > Lp)
                continue;
              for (int Lbb = std::max(std::abs(lam_f - lam_b), std::abs(mbb));
                   Lbb <= lam_f + lam_b; ++Lbb) {
                if ((lam_f + lam_b + Lbb) % 2)
                  continue;
                for (int Lpp = std::abs(mpp); Lpp <= Lp; ++Lpp) {
                  if ((Lp - Lpp) % 2)
                    continue;
                  if (Lppp < std::abs(Lbb - Lpp) || Lppp > Lbb + Lpp)
                    continue;
                  if ((Lbb + Lpp + Lppp) % 2)
                    continue;
                  // term-C reachability: L'' <= L1' + L3' <= L1 + L3 = L'
                  // with L1 <= L, parity L'' = L' mod 2 already enforced
                  if (Lpp <= Lp && (L + Lp) >= 0)
                    return true;
                }
              }
            }
        }
    }
  return false;
}

SuiteResult suite_elements(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0xe1e;

  // ---- oracle consistency, scalar ----
  {
    real worst14 = 0;
    bool decreasing = true;
    for (const real vs : {real(4), real(5)}) {
      const RepLabel rep{vs, HalfInt(0)};
      const Sp4Element g = sp4::random_element(seed + 11, real(0.2));
      ElementEngine eng(rep, g, Truncation{});
      std::vector<CQuat> pts;
      for (int i = 0; i < 20; ++i)
        pts.push_back(random_pure(st, real(0.145)));
      real err10 = 0, err12 = 0, err14 = 0;
      for (const auto &in : fockbasis::enumerate_scalar_upto(2))
        for (const auto &z : pts) {
          const cplx oracle =
              matrix_elements::apply_scalar_action(rep, g, {{in, cplx(1)}}, z);
          err10 = std::max(err10, real(std::abs(eng.reconstruct_scalar(in, z, 10) - oracle)));
          err12 = std::max(err12, real(std::abs(eng.reconstruct_scalar(in, z, 12) - oracle)));
          err14 = std::max(err14, real(std::abs(eng.reconstruct_scalar(in, z, 14) - oracle)));
        }
      worst14 = std::max(worst14, err14);
      if (!(err14 <= err12 && err12 <= err10))
        decreasing = false;
    }
    rec.add("scalar oracle consistency (l_max 14)", worst14, 1e-5);
    rec.add_flag("scalar truncation error decreasing in l_max", decreasing);
  }

  // ---- oracle consistency, spin 1/2 ----
  {
    real worst = 0;
    bool decreasing = true;
    for (const real vs : {real(4), real(5)}) {
      const RepLabel rep{vs, HalfInt(1)};
      const Sp4Element g = sp4::random_element(seed + 23, real(0.2));
      ElementEngine eng(rep, g, Truncation{});
      std::vector<CQuat> pts;
      for (int i = 0; i < 8; ++i)
        pts.push_back(random_pure(st, real(0.145)));
      real err10 = 0, err14 = 0;
      for (const auto &in : fockbasis::enumerate_spin_upto(HalfInt(1), 2))
        for (const auto &z : pts) {
          const VecX oracle = matrix_elements::apply_spin_action(rep, g, {{in, cplx(1)}}, z);
          err10 = std::max(err10, real((eng.reconstruct_spin(in, z, 10) - oracle)
                                           .cwiseAbs()
                                           .maxCoeff()));
          err14 = std::max(err14, real((eng.reconstruct_spin(in, z, 14) - oracle)
                                           .cwiseAbs()
                                           .maxCoeff()));
        }
      worst = std::max(worst, err14);
      if (err14 > err10)
        decreasing = false;
    }
    rec.add("spin oracle consistency (l_max 14)", worst, 1e-5);
    rec.add_flag("spin truncation error decreasing in l_max", decreasing);
  }

  // ---- b = 0 exactness and unitarity ----
  {
    std::uint64_t cst = seed ^ 0xb0;
    const Sp4Element kcomp = sp4::random_compact(cst);
    real worst_scalar = 0, worst_spin = 0, worst_unit = 0, worst_offdeg = 0;
    {
      const RepLabel rep{4, HalfInt(0)};
      ElementEngine eng(rep, kcomp, Truncation{});
      for (const auto &in : fockbasis::enumerate_scalar_upto(3))
        for (int i = 0; i < 5; ++i) {
          const CQuat z = random_pure(st, real(0.2));
          const cplx oracle =
              matrix_elements::apply_scalar_action(rep, kcomp, {{in, cplx(1)}}, z);
          worst_scalar = std::max(
              worst_scalar, real(std::abs(eng.reconstruct_scalar(in, z, in.l) - oracle)));
        }
      for (int l = 0; l <= 3; ++l) {
        const MatX u = eng.scalar_block(l, l);
        worst_unit = std::max(worst_unit,
                              real((u.adjoint() * u - MatX::Identity(u.rows(), u.cols()))
                                       .cwiseAbs()
                                       .maxCoeff()));
        for (int lo = 0; lo <= 4; ++lo) {
          if (lo == l)
            continue;
          worst_offdeg =
              std::max(worst_offdeg, real(eng.scalar_block(l, lo).cwiseAbs().maxCoeff()));
        }
      }
      // identity block
      ElementEngine eng_id(rep, sp4::identity(), Truncation{});
      for (int l = 0; l <= 2; ++l) {
        const MatX u = eng_id.scalar_block(l, l);
        worst_unit = std::max(worst_unit,
                              real((u - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff()));
      }
    }
    {
      const RepLabel rep{4, HalfInt(1)};
      ElementEngine eng(rep, kcomp, Truncation{});
      for (const auto &in : fockbasis::enumerate_spin_upto(HalfInt(1), 2))
        for (int i = 0; i < 3; ++i) {
          const CQuat z = random_pure(st, real(0.2));
          const VecX oracle = matrix_elements::apply_spin_action(rep, kcomp, {{in, cplx(1)}}, z);
          worst_spin = std::max(
              worst_spin,
              real((eng.reconstruct_spin(in, z, in.l) - oracle).cwiseAbs().maxCoeff()));
        }
      for (int l = 0; l <= 2; ++l) {
        const MatX u = eng.spin_block(l, l);
        worst_unit = std::max(worst_unit,
                              real((u.adjoint() * u - MatX::Identity(u.rows(), u.cols()))
                                       .cwiseAbs()
                                       .maxCoeff()));
      }
    }
    rec.add("b=0 scalar elements exact vs oracle", worst_scalar, 1e-11);
    rec.add("b=0 spin elements exact vs oracle", worst_spin, 1e-11);
    rec.add("compact fixed-l blocks unitary", worst_unit, 1e-10);
    rec.add("b=0 off-degree blocks exactly zero", worst_offdeg, 0);
  }

  // ---- cocycle composition of the pointwise oracle ----
  {
    const RepLabel rep{4, HalfInt(0)};
    real worst = 0;
    for (int i = 0; i < 6; ++i) {
      const Sp4Element g1 = sp4::random_element(seed + 100 + i, real(0.3));
      const Sp4Element g2 = sp4::random_element(seed + 200 + i, real(0.3));
      const Sp4Element h1 = sp4::inverse(g1);
      std::vector<std::pair<ScalarIndex, cplx>> f{{{0, 0, 0}, cplx(0.7, 0.1)},
                                                  {{1, 0, 1}, cplx(-0.3, 0.4)},
                                                  {{2, 1, 0}, cplx(0.2, -0.2)}};
      const CQuat z = random_pure(st, real(0.2));
      const CQuat zq = CQuat::pure(z.v);
      const CQuat den = -(conj_complex(h1.b) * zq) + conj_complex(h1.a);
      const cplx lhs = std::pow(det(den), cplx(-rep.varsigma)) *
                       matrix_elements::apply_scalar_action(rep, g2, f, sp4::domain_action(h1, zq));
      const cplx rhs = matrix_elements::apply_scalar_action(rep, g1 * g2, f, z);
      worst = std::max(worst, real(std::abs(lhs - rhs)));
    }
    rec.add("oracle cocycle: U(g1)(U(g2) f) = U(g1 g2) f", worst, 1e-10);
  }

  // ---- truncated-block homomorphism ----
  // fixed observable block (l <= 2); only the intermediate-state cutoff
  // grows, so the defect is the discarded tail and must shrink with l_max
  {
    const RepLabel rep{4, HalfInt(0)};
    const Sp4Element g1 = sp4::random_element(seed + 301, real(0.1));
    const Sp4Element g2 = sp4::random_element(seed + 302, real(0.1));
    const Sp4Element g12 = g1 * g2;
    ElementEngine e1(rep, g1, Truncation{});
    ElementEngine e2(rep, g2, Truncation{});
    ElementEngine e12(rep, g12, Truncation{});
    const auto obs = fockbasis::enumerate_scalar_upto(2);
    const int nobs = int(obs.size());
    MatX u12(nobs, nobs);
    for (int c = 0; c < nobs; ++c)
      for (int r = 0; r < nobs; ++r)
        u12(r, c) = e12.scalar_element(obs[c], obs[r]).value;
    real defect_last = 0, defect_prev = 1e30;
    bool decreasing = true;
    for (const int lmax : {4, 6, 8}) {
      const auto mids = fockbasis::enumerate_scalar_upto(lmax);
      MatX left(nobs, mids.size()), right(mids.size(), nobs);
      for (size_t m = 0; m < mids.size(); ++m) {
        for (int r = 0; r < nobs; ++r)
          left(r, m) = e1.scalar_element(mids[m], obs[r]).value;
        for (int c = 0; c < nobs; ++c)
          right(m, c) = e2.scalar_element(obs[c], mids[m]).value;
      }
      defect_last = (left * right - u12).cwiseAbs().maxCoeff();
      if (defect_last > defect_prev)
        decreasing = false;
      defect_prev = defect_last;
    }
    rec.add("block homomorphism defect (intermediate l_max 8)", defect_last, 1e-4);
    rec.add_flag("homomorphism defect decreasing in l_max", decreasing);
  }

  // ---- selection rules and finiteness ----
  {
    const RepLabel rep{4, HalfInt(0)};
    const Sp4Element g = sp4::random_element(seed + 401, real(0.25));
    ElementEngine eng(rep, g, Truncation{});
    real worst = 0;
    for (const auto &in : fockbasis::enumerate_scalar_upto(2))
      for (const auto &out : fockbasis::enumerate_scalar_upto(4)) {
        if (!scalar_reachable(in, out))
          worst = std::max(worst, real(std::abs(eng.scalar_element(in, out).value)));
      }
    rec.add("unreachable elements vanish", worst, 0);

    real worst_b = 0;
    for (int k = 0; k <= 3; ++k)
      for (int lb = 0; lb <= 10; ++lb)
        for (int kb = 0; 2 * kb <= lb; ++kb)
          if (lb - kb > k)
            worst_b = std::max(worst_b,
                               std::abs(gegenbauer::coeff_a_general(real(-k), lb, kb)));
    rec.add("B-term series terminates at 2k", worst_b, 0);

    // s = 0 spin path equals the scalar path identically
    real worst_s0 = 0;
    for (const auto &in : fockbasis::enumerate_scalar_upto(2))
      for (const auto &out : fockbasis::enumerate_scalar_upto(3)) {
        const SpinIndex si{in.l, in.k, HalfInt(2 * (in.l - 2 * in.k)), HalfInt(2 * in.m)};
        const SpinIndex so{out.l, out.k, HalfInt(2 * (out.l - 2 * out.k)), HalfInt(2 * out.m)};
        worst_s0 = std::max(worst_s0, real(std::abs(eng.spin_element(si, so).value -
                                                    eng.scalar_element(in, out).value)));
      }
    rec.add("spin engine collapses to scalar at s = 0", worst_s0, 0);
  }

  return {"elements", rec.results, 0};
}

// --------------------------------------------------------------------------
// characters suite
// --------------------------------------------------------------------------

SuiteResult suite_characters(std::uint64_t seed)
{
  Recorder rec;
  std::uint64_t st = seed ^ 0xc4a2;

  const real vs = 4;
  const RepLabel rep0{vs, HalfInt(0)};
  const RepLabel repH{vs, HalfInt(1)};

  // cross-consistency against the b=0 engine, compact and extension cases
  {
    real worst = 0, worst_off = 0;
    const characters::EigenPair eigs[] = {
        {std::exp(kI * real(0.7)), std::exp(-kI * real(0.7))},
        {std::exp(kI * real(0.4)), std::exp(kI * real(1.1))},
        {real(0.8) * std::exp(kI * real(0.5)), real(1.25) * std::exp(-kI * real(0.3))}};
    for (const auto &eig : eigs) {
      const bool compact = std::abs(std::abs(eig.mu) - 1) < real(1e-12);
      const Sp4Element gd = sp4::make_diagonal(eig.mu, eig.nu);
      ElementEngine eng(rep0, gd, Truncation{});
      for (const auto &idx : fockbasis::enumerate_scalar_upto(4)) {
        const cplx direct = characters::diag_element_scalar(vs, eig, idx.l, idx.k, idx.m);
        const cplx engine = eng.scalar_element(idx, idx).value;
        worst = std::max(worst, real(std::abs(direct - engine) / (1 + std::abs(engine))));
        // m' = m holds for any diagonal element; vanishing across k' as well
        // is a unitarity consequence and holds on the compact classes only
        for (const auto &out : fockbasis::enumerate_scalar(idx.l))
          if (!(out == idx) && (compact || out.m != idx.m))
            worst_off = std::max(worst_off, real(std::abs(eng.scalar_element(idx, out).value)));
      }
      ElementEngine engH(repH, gd, Truncation{});
      for (const auto &idx : fockbasis::enumerate_spin_upto(HalfInt(1), 3)) {
        const cplx direct =
            characters::diag_element_spin(repH, eig, idx.l, idx.k, idx.J, idx.M);
        const cplx engine = engH.spin_element(idx, idx).value;
        worst = std::max(worst, real(std::abs(direct - engine) / (1 + std::abs(engine))));
      }
    }
    rec.add("diagonal formulas = general engine on g_d", worst, 1e-11);
    rec.add("g_d off-diagonal elements vanish", worst_off, 1e-12);
  }

  // diagonal multiplicativity
  {
    const characters::EigenPair e1{std::exp(kI * real(0.3)), std::exp(-kI * real(0.8))};
    const characters::EigenPair e2{real(0.9) * std::exp(kI * real(0.2)),
                                   std::exp(kI * real(0.5)) / real(0.9)};
    const characters::EigenPair e12{e1.mu * e2.mu, e1.nu * e2.nu};
    real worst = 0;
    for (const auto &idx : fockbasis::enumerate_scalar_upto(4)) {
      const cplx a = characters::diag_element_scalar(vs, e1, idx.l, idx.k, idx.m);
      const cplx b = characters::diag_element_scalar(vs, e2, idx.l, idx.k, idx.m);
      const cplx ab = characters::diag_element_scalar(vs, e12, idx.l, idx.k, idx.m);
      worst = std::max(worst, real(std::abs(a * b - ab) / (1 + std::abs(ab))));
    }
    for (const auto &idx : fockbasis::enumerate_spin_upto(HalfInt(1), 3)) {
      const cplx a = characters::diag_element_spin(repH, e1, idx.l, idx.k, idx.J, idx.M);
      const cplx b = characters::diag_element_spin(repH, e2, idx.l, idx.k, idx.J, idx.M);
      const cplx ab = characters::diag_element_spin(repH, e12, idx.l, idx.k, idx.J, idx.M);
      worst = std::max(worst, real(std::abs(a * b - ab) / (1 + std::abs(ab))));
    }
    rec.add("diagonal multiplicativity", worst, 1e-11);
  }

  // identity-element Abel sums match level dimensions exactly
  {
    real worst = 0;
    for (const auto &rep : {rep0, repH}) {
      characters::CharacterRequest req;
      req.rep = rep;
      req.eig = {cplx(1), cplx(1)};
      req.trunc.l_max = 12;
      req.trunc.abel_t = real(0.5);
      const auto rpt = characters::character(req);
      cplx expect = 0;
      real tl = 1;
      for (int l = 0; l <= 12; ++l) {
        expect += tl * real(fockbasis::level_dimension(rep.s, l));
        tl *= real(0.5);
        worst = std::max(worst, real(std::abs(rpt.partial_sums[l] - expect)));
      }
    }
    rec.add("identity Abel sums = level dimension counts", worst, 1e-9);
  }

  // compact-conjugation invariance of complete-block traces
  {
    real worst = 0;
    std::uint64_t cst = st;
    for (const auto &rep : {rep0, repH}) {
      const characters::EigenPair eig{std::exp(kI * real(0.6)), std::exp(-kI * real(1.1))};
      const Sp4Element gd = sp4::make_diagonal(eig.mu, eig.nu);
      const Sp4Element k = sp4::random_compact(cst);
      const Sp4Element conj_gd = k * gd * sp4::inverse(k);
      ElementEngine e1(rep, gd, Truncation{});
      ElementEngine e2(rep, conj_gd, Truncation{});
      for (int l = 0; l <= 3; ++l) {
        const cplx t1 = rep.s.twice == 0 ? e1.scalar_block(l, l).trace() : e1.spin_block(l, l).trace();
        const cplx t2 = rep.s.twice == 0 ? e2.scalar_block(l, l).trace() : e2.spin_block(l, l).trace();
        worst = std::max(worst, real(std::abs(t1 - t2)));
      }
    }
    rec.add("block traces invariant under compact conjugation", worst, 1e-9);
  }

  // regularized partial sums: regression configuration is Cauchy
  {
    characters::CharacterRequest req;
    req.rep = rep0;
    req.eig = {std::exp(kI * real(0.7)), std::exp(-kI * real(0.7))};
    req.trunc.l_max = 40;
    req.trunc.abel_t = real(0.5);
    const auto rpt = characters::character(req);
    const real last = std::abs(rpt.partial_sums[40] - rpt.partial_sums[39]);
    rec.add("Abel partial sums Cauchy at L = 40", last, 1e-8);
    rec.add_flag("verdict reports convergence",
                 rpt.verdict == characters::Verdict::converged);
    // scalar diagonal against the pointwise oracle at a compact g_d
    const Sp4Element gd = sp4::make_diagonal(req.eig.mu, req.eig.nu);
    const cplx diag0 = characters::diag_element_scalar(vs, req.eig, 0, 0, 0);
    const cplx oracle = matrix_elements::apply_scalar_action(
        rep0, gd, {{ScalarIndex{0, 0, 0}, cplx(1)}}, CQuat::zero());
    rec.add("diag (0,0,0) element = oracle value", std::abs(diag0 - oracle), 1e-12);
  }

  return {"characters", rec.results, 0};
}

} // namespace

std::vector<std::string> suite_names()
{
  return {"cquat", "sp4", "wigner", "harmonics", "gegenbauer", "fockbasis", "elements",
          "characters"};
}

SuiteResult run_suite(const std::string &name, std::uint64_t seed)
{
  using Fn = SuiteResult (*)(std::uint64_t);
  static const std::pair<const char *, Fn> table[] = {
      {"cquat", suite_cquat},         {"sp4", suite_sp4},
      {"wigner", suite_wigner},       {"harmonics", suite_harmonics},
      {"gegenbauer", suite_gegenbauer}, {"fockbasis", suite_fockbasis},
      {"elements", suite_elements},   {"characters", suite_characters}};
  for (const auto &[n, fn] : table)
    if (name == n) {
      const auto t0 = std::chrono::steady_clock::now();
      SuiteResult r = fn(seed);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  throw ConfigError("unknown suite: " + name);
}

std::vector<SuiteResult> run_all(std::uint64_t seed)
{
  std::vector<SuiteResult> out;
  for (const auto &n : suite_names())
    out.push_back(run_suite(n, seed));
  return out;
}

} // namespace sp4rep::checks
