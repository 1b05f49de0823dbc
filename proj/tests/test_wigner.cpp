#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp4rep/harmonics.hpp"
#include "sp4rep/wigner.hpp"
#include "testutil.hpp"

using namespace sp4rep;
namespace wg = sp4rep::wigner;

TEST_CASE("sigma values and range errors")
{
  CHECK(wg::sigma(0, 0) == doctest::Approx(1.0));
  CHECK(wg::sigma(1, 1) == doctest::Approx(1.0));  // j = m = 1/2
  CHECK(wg::sigma(2, 0) == doctest::Approx(1.0));  // j = 1, m = 0
  CHECK(wg::sigma(4, 0) == doctest::Approx(0.5));  // 1/sqrt(2! 2!)
  CHECK(wg::sigma2(2, 2, -2) == doctest::Approx(0.5)); // product of 1/sqrt(2) twice
  CHECK_THROWS_AS(wg::sigma(2, 4), IndexOutOfRange);
  CHECK_THROWS_AS(wg::sigma(2, 1), IndexOutOfRange); // mismatched class
}

TEST_CASE("three-j values")
{
  // (1 1 0; 0 0 0) = -1/sqrt(3)  [closed form with J = 2]
  CHECK(wg::three_j(2, 2, 0, 0, 0, 0) == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
  // odd J vanishes
  CHECK(wg::three_j(2, 2, 2, 0, 0, 0) == 0.0);
  // (1 1 0; 1 -1 0) via the direct summation: 1/sqrt(3)
  CHECK(wg::three_j(2, 2, 0, 2, -2, 0) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
  // textbook half-integer case: (1/2 1/2 1; 1/2 1/2 -1) = -1/sqrt(3)
  CHECK(wg::three_j(1, 1, 2, 1, 1, -2) == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
  // selection rules return exact zero
  CHECK(wg::three_j(2, 2, 0, 1, -1, 0) == 0.0);
  CHECK(wg::three_j(2, 2, 6, 0, 0, 0) == 0.0);
  CHECK(wg::three_j(2, 2, 0, 2, -1, -1) == 0.0);
}

TEST_CASE("zero-m closed form matches the generic sum")
{
  for (int l1 = 0; l1 <= 6; ++l1)
    for (int l2 = 0; l2 <= 6; ++l2)
      for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3)
        CHECK(std::abs(wg::three_j(2 * l1, 2 * l2, 2 * l3, 0, 0, 0) -
                       wg::three_j_all_zero_m(l1, l2, l3)) < 1e-14);
}

TEST_CASE("Clebsch-Gordan relation to three-j")
{
  // identity coupling
  CHECK(wg::clebsch_gordan(4, 2, 0, 0, 4, 2) == doctest::Approx(1.0));
  // (1/2 1/2, 1/2 -1/2 | 0 0) = 1/sqrt(2)
  CHECK(wg::clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  // orthogonality over (rho, m) for fixed lambda = 2 and s = 1/2: J in {3/2, 5/2}
  for (int J2 = 3; J2 <= 5; J2 += 2)
    for (int J2p = 3; J2p <= 5; J2p += 2)
      for (int M2 = -J2; M2 <= J2; M2 += 2)
        for (int M2p = -J2p; M2p <= J2p; M2p += 2) {
          double sum = 0;
          for (int rho2 = -1; rho2 <= 1; rho2 += 2) {
            const int m2 = M2 - rho2, m2p = M2p - rho2;
            if (m2 != m2p || std::abs(m2) > 4)
              continue;
            sum += wg::clebsch_gordan(1, rho2, 4, m2, J2, M2) *
                   wg::clebsch_gordan(1, rho2, 4, m2p, J2p, M2p);
          }
          const double expect = (J2 == J2p && M2 == M2p) ? 1.0 : 0.0;
          CHECK(std::abs(sum - expect) < 1e-13);
        }
}

TEST_CASE("holomorphic D: j = 0 and identity")
{
  std::uint64_t st = 5;
  const CQuat z = testutil::random_cquat(st);
  CHECK(std::abs(wg::wigner_d(0, 0, 0, z) - cplx(1)) == 0);
  for (int j2 = 1; j2 <= 5; ++j2) {
    const MatX d = wg::wigner_d_matrix(j2, CQuat::one());
    CHECK((d - MatX::Identity(j2 + 1, j2 + 1)).cwiseAbs().maxCoeff() == 0);
  }
}

TEST_CASE("D^{1/2} equals the matrix image up to the fixed index correspondence")
{
  std::uint64_t st = 17;
  Mat2 sy;
  sy << 0, -kI, kI, 0;
  for (int i = 0; i < 20; ++i) {
    const CQuat z = testutil::random_cquat(st);
    const Mat2 lhs = wg::wigner_d_matrix(1, z);
    const Mat2 rhs = sy * to_matrix(z) * sy;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("homomorphism and unitarity")
{
  std::uint64_t st = 23;
  for (int i = 0; i < 50; ++i) {
    const CQuat x = testutil::random_cquat(st, 0.8), y = testutil::random_cquat(st, 0.8);
    const int j2 = 1 + int(rng_next(st) % 6);
    const MatX prod = wg::wigner_d_matrix(j2, x) * wg::wigner_d_matrix(j2, y);
    const MatX direct = wg::wigner_d_matrix(j2, x * y);
    CHECK((prod - direct).cwiseAbs().maxCoeff() <
          1e-11 * std::max(1.0, double(direct.cwiseAbs().maxCoeff())));
  }
  for (int i = 0; i < 20; ++i) {
    const CQuat xi = testutil::random_real_unit(st);
    const int j2 = 1 + int(rng_next(st) % 6);
    const MatX d = wg::wigner_d_matrix(j2, xi);
    CHECK((d.adjoint() * d - MatX::Identity(j2 + 1, j2 + 1)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("exact harmonicity of the monomial expansion")
{
  for (int j2 = 1; j2 <= 6; ++j2)
    for (int m1_2 = -j2; m1_2 <= j2; m1_2 += 2)
      for (int m2_2 = -j2; m2_2 <= j2; m2_2 += 2)
        CHECK(harmonics::wigner_d_poly_unnormalized(j2, m1_2, m2_2).laplacian(4).is_zero());
}

TEST_CASE("addition theorems")
{
  std::uint64_t st = 31;
  const CQuat x = testutil::random_cquat(st, 0.7), y = testutil::random_cquat(st, 0.7);

  SUBCASE("first addition theorem is an exact polynomial identity")
  {
    for (int j2 = 1; j2 <= 4; ++j2)
      for (int m1_2 = -j2; m1_2 <= j2; m1_2 += 2)
        for (int m2_2 = -j2; m2_2 <= j2; m2_2 += 2)
          CHECK(std::abs(wg::addition_theorem_sum(j2, m1_2, m2_2, x, y) -
                         wg::wigner_d(j2, m1_2, m2_2, x + y)) < 1e-12);
  }

  SUBCASE("z' = 0 collapse")
  {
    CHECK(std::abs(wg::addition_theorem_sum(4, 2, 0, x, CQuat::zero()) -
                   wg::wigner_d(4, 2, 0, x)) < 1e-13);
  }

  SUBCASE("product expansion equals D of the product")
  {
    for (int j2 = 1; j2 <= 4; ++j2)
      CHECK(std::abs(wg::product_expansion(j2, j2, -j2 + 2, x, y) -
                     wg::wigner_d(j2, j2, -j2 + 2, x * y)) < 1e-12);
  }

  SUBCASE("inverse addition: collapse, convergence, and guards")
  {
    const CQuat big = CQuat::one() + testutil::random_cquat(st, 0.05);
    const auto collapsed = wg::inverse_addition_sum(2, 0, 0, CQuat::zero(), big, 0);
    CHECK(std::abs(collapsed.value - wg::wigner_d(2, 0, 0, inverse(big)) / det(big)) < 1e-13);

    const CQuat small = testutil::random_cquat(st, 0.12);
    const cplx direct = wg::wigner_d(2, 0, 2, inverse(small + big)) / det(small + big);
    double prev = 1e9;
    for (int jmax2 : {2, 6, 10, 14}) {
      const auto s = wg::inverse_addition_sum(2, 0, 2, small, big, jmax2);
      const double err = std::abs(s.value - direct);
      CHECK(err < prev * 1.5 + 1e-15);
      prev = err;
    }
    CHECK(prev < 1e-8);

    CHECK_THROWS_AS(wg::inverse_addition_sum(2, 0, 0, big, small, 8), Error);
    CHECK_THROWS_AS(wg::inverse_addition_sum(2, 0, 0, small, big, 2, real(1e-30)),
                    TruncationNotConverged);
  }
}

TEST_CASE("tensor product reduction on SU(2)")
{
  std::uint64_t st = 37;
  CHECK(wg::tensor_reduce_check(0, 0, testutil::random_real_unit(st)) == 0.0);
  CHECK(wg::tensor_reduce_check(1, 1, testutil::random_real_unit(st)) < 1e-12);
  CHECK(wg::tensor_reduce_check(2, 1, testutil::random_real_unit(st)) < 1e-12);
}
