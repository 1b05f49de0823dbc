#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp4rep/gegenbauer.hpp"
#include "sp4rep/harmonics.hpp"
#include "testutil.hpp"

using namespace sp4rep;
namespace gg = sp4rep::gegenbauer;

TEST_CASE("recurrence basics")
{
  const cplx t(0.3, -0.1);
  CHECK(std::abs(gg::gegenbauer_c(0, 1.7, t) - cplx(1)) == 0);
  CHECK(std::abs(gg::gegenbauer_c(1, 1.7, t) - real(3.4) * t) < 1e-15);
  // C_2^lambda(t) = 2 lambda (lambda+1) t^2 - lambda
  const real lam = 2.5;
  CHECK(std::abs(gg::gegenbauer_c(2, lam, t) -
                 (2 * lam * (lam + 1) * t * t - cplx(lam))) < 1e-14);
}

TEST_CASE("generating function, positive and negative lambda")
{
  std::uint64_t st = 3;
  for (const real lam : {real(0.5), real(1), real(2), real(3.5)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const cplx u(rng_uniform(st, -0.5, 0.5), 0);
      const cplx t(rng_uniform(st, -1, 1), 0);
      cplx sum = 0, up = 1;
      for (int l = 0; l <= 60; ++l) {
        sum += up * gg::gegenbauer_c(l, lam, t);
        up *= u;
      }
      const cplx closed = std::pow(cplx(1) + u * u - real(2) * u * t, cplx(-lam));
      CHECK(std::abs(sum - closed) < 1e-9);
    }
  }
  // lambda = -1: exact finite sum 1 + u^2 - 2ut
  const cplx u(0.83, 0.2), t(0.4, 0);
  cplx sum = 0, up = 1;
  for (int l = 0; l <= 2; ++l) {
    sum += up * gg::gegenbauer_c(l, real(-1), t);
    up *= u;
  }
  CHECK(std::abs(sum - (cplx(1) + u * u - real(2) * u * t)) < 1e-14);
  CHECK(std::abs(gg::gegenbauer_c(3, real(-1), t)) < 1e-14);
}

TEST_CASE("coefficient families")
{
  CHECK(gg::coeff_a(2, 0, 0) == doctest::Approx(4 * double(kPi)).epsilon(1e-13));
  CHECK_THROWS_AS(gg::coeff_a(0.3, 2, 0), InvalidLambda);
  CHECK_THROWS_AS(gg::coeff_d(0.5, 2, 0), InvalidLambda);

  // Gamma form vs Pochhammer form (Legendre duplication built in)
  for (const real lam : {real(0.75), real(2), real(3.5)})
    for (int l = 0; l <= 8; ++l)
      for (int k = 0; 2 * k <= l; ++k) {
        const real a = gg::coeff_a(lam, l, k);
        const real ag = gg::coeff_a_general(lam, l, k);
        CHECK(std::abs(a - ag) < 1e-12 * (1 + std::abs(a)));
        const real d = gg::coeff_d(lam, l, k);
        const real dp = gg::coeff_d_prime(lam, l, k);
        CHECK(std::abs(d - std::tgamma(lam) * std::tgamma(lam - real(0.5)) * dp) <
              1e-12 * (1 + std::abs(d)));
      }

  // d'_0 at l = 0: (1/2)/Gamma(3/2), for any lambda
  CHECK(gg::coeff_d_prime(-1, 0, 0) == doctest::Approx(0.5 / std::tgamma(1.5)));
  // negative integer lambda truncation: (lambda)_{l-k} kills l-k > |lambda|
  CHECK(gg::coeff_d_prime(-1, 4, 1) == 0.0);
  CHECK(gg::coeff_a_general(-2, 7, 2) == 0.0);
}

TEST_CASE("determinant power expansion")
{
  std::uint64_t st = 7;

  SUBCASE("z' = 0 collapses to 1")
  {
    const auto e = gg::det_power_expansion(2.5, testutil::random_pure(st, 0.2), CQuat::zero(), 0);
    CHECK(std::abs(e.value - cplx(1)) < 1e-14);
  }

  SUBCASE("matches the closed form inside the domain")
  {
    for (const real lam : {real(2), real(3.5)})
      for (int trial = 0; trial < 3; ++trial) {
        const CQuat z = testutil::random_pure(st, 0.17);
        const CQuat zp = testutil::random_pure(st, 0.17);
        const auto e = gg::det_power_expansion(lam, z, zp, 20);
        CHECK(std::abs(e.value - gg::det_power_closed_form(lam, z, zp)) < 1e-8);
        CHECK(e.tail_estimate < 1e-6);
      }
  }

  SUBCASE("negative integer lambda is exact and finite")
  {
    const CQuat z = testutil::random_pure(st, 0.5);
    const CQuat zp = testutil::random_pure(st, 0.5);
    const CQuat zpc = conj_complex(zp);
    const cplx poly = cplx(1) - real(2) * vdot(z, zpc) + vdot(z, z) * vdot(zpc, zpc);
    const auto e = gg::det_power_expansion(-1, z, zp, 2);
    CHECK(std::abs(e.value - poly) < 1e-12);
    // higher l_max adds exact zeros only
    const auto e8 = gg::det_power_expansion(-1, z, zp, 8);
    CHECK(std::abs(e8.value - poly) < 1e-12);
  }

  SUBCASE("tolerance enforcement throws")
  {
    const CQuat z = CQuat::pure(0.45, 0.1, 0);
    CHECK_THROWS_AS(gg::det_power_expansion(3.5, z, z, 3, real(1e-12)), TruncationNotConverged);
  }
}

TEST_CASE("C^{1/2} addition theorem with the principal branch")
{
  std::uint64_t st = 11;
  for (int trial = 0; trial < 10; ++trial) {
    const CQuat z = testutil::random_pure(st, 0.5);
    const CQuat zp = testutil::random_pure(st, 0.5);
    for (int l = 0; l <= 6; ++l) {
      cplx rhs = 0;
      for (int m = -l; m <= l; ++m)
        rhs += harmonics::solid_harmonic(l, m, z) * std::conj(harmonics::solid_harmonic(l, m, zp));
      rhs *= 4 * kPi / real(2 * l + 1);
      CHECK(std::abs(gg::addition_theorem_lhs(l, z, zp) - rhs) < 1e-11);
    }
  }
}
