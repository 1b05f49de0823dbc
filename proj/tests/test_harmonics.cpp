#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp4rep/harmonics.hpp"
#include "sp4rep/wigner.hpp"
#include "testutil.hpp"

using namespace sp4rep;
namespace hm = sp4rep::harmonics;

TEST_CASE("low-order closed forms")
{
  std::uint64_t st = 2;
  const CQuat z = testutil::random_pure(st, 0.6);
  CHECK(std::abs(hm::solid_harmonic(0, 0, z) - cplx(1 / std::sqrt(4 * kPi))) < 1e-16);
  CHECK(std::abs(hm::solid_harmonic(1, 0, z) - std::sqrt(3 / (4 * kPi)) * z.v[2]) < 1e-15);
  // Y_{1,+-1} = -+ sqrt(3/8pi) (z1 +- i z2)
  CHECK(std::abs(hm::solid_harmonic(1, 1, z) +
                 std::sqrt(3 / (8 * kPi)) * (z.v[0] + kI * z.v[1])) < 1e-15);
  CHECK(std::abs(hm::solid_harmonic(1, -1, z) -
                 std::sqrt(3 / (8 * kPi)) * (z.v[0] - kI * z.v[1])) < 1e-15);
  // Y_20 = sqrt(5/16pi)(2 z3^2 - z1^2 - z2^2)
  const cplx y20 = std::sqrt(5 / (16 * kPi)) *
                   (real(2) * z.v[2] * z.v[2] - z.v[0] * z.v[0] - z.v[1] * z.v[1]);
  CHECK(std::abs(hm::solid_harmonic(2, 0, z) - y20) < 1e-15);
  CHECK_THROWS_AS(hm::solid_harmonic(1, 2, z), IndexOutOfRange);
}

TEST_CASE("homogeneity under complex scaling")
{
  std::uint64_t st = 5;
  for (int trial = 0; trial < 5; ++trial) {
    const CQuat z = testutil::random_pure(st, 0.5);
    const cplx c(rng_uniform(st, -1, 1), rng_uniform(st, -1, 1));
    for (int l = 0; l <= 6; ++l) {
      cplx cl = 1;
      for (int p = 0; p < l; ++p)
        cl *= c;
      for (int m = -l; m <= l; ++m) {
        const cplx rhs = cl * hm::solid_harmonic(l, m, z);
        CHECK(std::abs(hm::solid_harmonic(l, m, c * z) - rhs) < 1e-12 * (1 + std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("product linearization")
{
  std::uint64_t st = 8;
  for (int trial = 0; trial < 50; ++trial) {
    const CQuat z = testutil::random_pure(st, 0.6);
    for (int l1 = 0; l1 <= 3; ++l1)
      for (int l2 = 0; l2 <= 3 - (trial % 2); ++l2)
        for (int m1 = -l1; m1 <= l1; m1 += std::max(1, l1))
          for (int m2 = -l2; m2 <= l2; m2 += std::max(1, l2)) {
            const cplx direct = hm::solid_harmonic(l1, m1, z) * hm::solid_harmonic(l2, m2, z);
            const cplx expanded = hm::product_expand(l1, m1, l2, m2, z);
            CHECK(std::abs(direct - expanded) < 1e-11 * (1 + std::abs(direct)));
          }
  }
  // coupling with the constant harmonic: Y_00 Y_lm = (4pi)^{-1/2} Y_lm
  const CQuat z = testutil::random_pure(st, 0.5);
  CHECK(std::abs(hm::product_expand(2, 1, 0, 0, z) -
                 hm::solid_harmonic(2, 1, z) / std::sqrt(4 * kPi)) < 1e-13);
}

TEST_CASE("Y from D is z4-independent and consistent")
{
  std::uint64_t st = 11;
  const CQuat zp = testutil::random_pure(st, 0.5);
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) {
      CQuat with_w = zp;
      with_w.w = real(0.7);
      const cplx a = hm::y_from_d(l, m, zp);
      const cplx b = hm::y_from_d(l, m, with_w);
      CHECK(std::abs(a - b) < 1e-12);
      CHECK(std::abs(a - hm::solid_harmonic(l, m, zp)) < 1e-11);
    }
}

TEST_CASE("D from Y on pure quaternions and the roundtrip")
{
  std::uint64_t st = 13;
  const CQuat z = testutil::random_pure(st, 0.6);
  for (int l = 0; l <= 6; ++l)
    for (int m1_2 = -l; m1_2 <= l; m1_2 += 2)
      for (int m2_2 = -l; m2_2 <= l; m2_2 += 2)
        CHECK(std::abs(hm::d_from_y(l, m1_2, m2_2, z) - wigner::wigner_d(l, m1_2, m2_2, z)) <
              1e-11);
  CHECK_THROWS_AS(hm::d_from_y(2, 0, 0, CQuat(cplx(0.5), 0.1, 0, 0)), Error);
}

TEST_CASE("exact polynomial harmonicity")
{
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m)
      CHECK(hm::solid_harmonic_poly_unnormalized(l, m).laplacian(3).is_zero());
}

TEST_CASE("polynomial form matches the evaluator")
{
  std::uint64_t st = 17;
  const CQuat z = testutil::random_pure(st, 0.7);
  for (int l = 0; l <= 4; ++l)
    for (int m = -l; m <= l; ++m) {
      const int am = std::abs(m);
      const real pref = std::sqrt(real(2 * l + 1) * wigner::factorial(l - am) /
                                  (4 * kPi * wigner::factorial(l + am))) *
                        std::pow(real(2), l) * (m > 0 ? parity(m) : 1);
      const cplx via_poly =
          pref * hm::solid_harmonic_poly_unnormalized(l, m).eval({z.v[0], z.v[1], z.v[2], 0});
      CHECK(std::abs(via_poly - hm::solid_harmonic(l, m, z)) < 1e-13);
    }
}
