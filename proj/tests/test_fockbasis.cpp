#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp4rep/fockbasis.hpp"
#include "sp4rep/gegenbauer.hpp"
#include "sp4rep/harmonics.hpp"
#include "sp4rep/wigner.hpp"
#include "testutil.hpp"

using namespace sp4rep;
namespace fb = sp4rep::fockbasis;

TEST_CASE("rep label regime")
{
  CHECK_NOTHROW(fb::RepLabel{4, HalfInt(0)}.validate());
  CHECK_NOTHROW(fb::RepLabel{real(2.5), HalfInt(0)}.validate()); // vs > s+2 holds
  CHECK_THROWS_AS((fb::RepLabel{real(1.5), HalfInt(0)}.validate()), OutOfRegime); // Shilov band
  CHECK_THROWS_AS((fb::RepLabel{real(0.5), HalfInt(0)}.validate()), OutOfRegime);
  CHECK_THROWS_AS((fb::RepLabel{4, HalfInt(-1)}.validate()), OutOfRegime);
}

TEST_CASE("normalization constant")
{
  CHECK(fb::norm_const({4, HalfInt(0)}) ==
        doctest::Approx(120 / std::pow(double(kPi), 3)).epsilon(1e-14));
  CHECK(fb::norm_const({real(3.5), HalfInt(1)}) ==
        doctest::Approx(8 / std::pow(double(kPi), 3) * 2.5 * 2.0 * 1.0).epsilon(1e-14));
}

TEST_CASE("index enumeration and level dimensions")
{
  CHECK(fb::enumerate_scalar(0).size() == 1);
  CHECK(fb::enumerate_scalar(1).size() == 3);
  CHECK(fb::enumerate_scalar(2).size() == 6);
  for (int l = 0; l <= 8; ++l)
    CHECK(int(fb::enumerate_scalar(l).size()) == (l + 1) * (l + 2) / 2);
  // scalar enumeration = spin enumeration at s = 0
  CHECK(fb::level_dimension(HalfInt(0), 5) == 21);
  // s = 1/2 dimensions counted from the (2.13) ranges
  CHECK(fb::level_dimension(HalfInt(1), 0) == 2);
  CHECK(fb::level_dimension(HalfInt(1), 1) == 6);
  CHECK(fb::level_dimension(HalfInt(1), 2) == 12);
  CHECK_FALSE(fb::ScalarIndex{2, 2, 0}.valid());
  CHECK_FALSE(fb::ScalarIndex{2, 0, 3}.valid());
  CHECK(fb::ScalarIndex{2, 1, 0}.valid());
}

TEST_CASE("basis vectors e_{s rho}")
{
  CHECK(fb::basis_vector_e(HalfInt(0), HalfInt(0)).size() == 1);
  const VecX e = fb::basis_vector_e(HalfInt(1), HalfInt(1));
  CHECK(std::abs(e(0) - cplx(1)) == 0);
  CHECK(std::abs(e(1)) == 0);
  const VecX em = fb::basis_vector_e(HalfInt(1), HalfInt(-1));
  CHECK(std::abs(em(1) - cplx(1)) == 0);
  // integer layout
  const VecX e0 = fb::basis_vector_e(HalfInt(2), HalfInt(0));
  CHECK(std::abs(e0(1) - cplx(1)) == 0);
  CHECK_THROWS_AS(fb::basis_vector_e(HalfInt(1), HalfInt(3)), IndexOutOfRange);
  CHECK_THROWS_AS(fb::basis_vector_e(HalfInt(1), HalfInt(0)), IndexOutOfRange);
}

TEST_CASE("scalar basis values")
{
  const fb::RepLabel rep{4, HalfInt(0)};
  std::uint64_t st = 3;
  const CQuat z = testutil::random_pure(st, 0.28);
  CHECK(std::abs(fb::scalar_basis(rep, {0, 0, 0}, z) -
                 std::sqrt(fb::basis_coeff_a(4, 0, 0) / (4 * kPi))) < 1e-14);
  CHECK(std::abs(fb::scalar_basis(rep, {3, 1, 0}, CQuat::zero())) == 0);
  const cplx expect = std::sqrt(fb::basis_coeff_a(4, 2, 1)) * vdot(z, z) *
                      harmonics::solid_harmonic(0, 0, z);
  CHECK(std::abs(fb::scalar_basis(rep, {2, 1, 0}, z) - expect) < 1e-13);
  CHECK_THROWS_AS(fb::scalar_basis(rep, {2, 2, 0}, z), IndexOutOfRange);
  CHECK_THROWS_AS(fb::scalar_basis(rep, {1, 0, 0}, CQuat::pure(1.2, 0, 0)), NotInDomain);
}

TEST_CASE("spin basis reduces and recouples")
{
  const fb::RepLabel rep0{4, HalfInt(0)};
  const fb::RepLabel repH{4, HalfInt(1)};
  std::uint64_t st = 5;
  const CQuat z = testutil::random_pure(st, 0.28);

  for (const auto &idx : fb::enumerate_scalar_upto(3)) {
    const fb::SpinIndex si{idx.l, idx.k, HalfInt(2 * (idx.l - 2 * idx.k)), HalfInt(2 * idx.m)};
    CHECK(std::abs(fb::spin_basis(rep0, si, z)(0) - fb::scalar_basis(rep0, idx, z)) < 1e-14);
  }

  // l = 0, s = 1/2: single trivial coupling
  const VecX f = fb::spin_basis(repH, {0, 0, HalfInt(1), HalfInt(-1)}, z);
  CHECK(std::abs(f(1) - std::sqrt(fb::basis_coeff_a(real(4.5), 0, 0) / (4 * kPi))) < 1e-14);
  CHECK(std::abs(f(0)) == 0);

  CHECK_THROWS_AS(fb::spin_basis(repH, {1, 0, HalfInt(4), HalfInt(0)}, z), IndexOutOfRange);
}

TEST_CASE("D^s matrix argument")
{
  Mat2 A;
  A << cplx(0.4, 0.2), cplx(-0.1, 0.6), cplx(0.3, -0.2), cplx(1.0, 0.1);
  CHECK(std::abs(fb::d_s_matrix(HalfInt(0), A)(0, 0) - cplx(1)) == 0);
  Mat2 sy;
  sy << 0, -kI, kI, 0;
  CHECK((fb::d_s_matrix(HalfInt(1), A) - sy * A * sy).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((fb::d_s_matrix(HalfInt(2), Mat2(Mat2::Identity())) - MatX::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() == 0);
}

TEST_CASE("reproducing kernel closed form")
{
  const fb::RepLabel rep{4, HalfInt(0)};
  const fb::RepLabel repH{real(4.5), HalfInt(1)};
  std::uint64_t st = 7;
  const CQuat z = testutil::random_pure(st, 0.28), zp = testutil::random_pure(st, 0.28);

  CHECK(std::abs(fb::kernel(rep, z, CQuat::zero())(0, 0) - cplx(1)) < 1e-14);
  CHECK((fb::kernel(repH, CQuat::zero(), zp) - MatX::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK(std::abs(fb::kernel(rep, z, zp)(0, 0) - gegenbauer::det_power_closed_form(4, z, zp)) <
        1e-13);
  CHECK((fb::kernel(repH, z, zp).adjoint() - fb::kernel(repH, zp, z)).cwiseAbs().maxCoeff() <
        1e-13);
}

TEST_CASE("kernel expansion coefficients: s = 1/2 closed form")
{
  // the exact level solve reproduces the derived closed form
  for (const real vs : {real(4), real(3.1), real(5.75)}) {
    const fb::RepLabel rep{vs, HalfInt(1)};
    for (int l = 0; l <= 8; ++l)
      for (int k = 0; 2 * k <= l; ++k) {
        const int lam = l - 2 * k;
        const real a = fb::basis_coeff_a(vs + real(0.5), l, k);
        const real c_top = fb::kernel_coeff(rep, l, k, HalfInt(2 * lam + 1));
        CHECK(c_top == doctest::Approx(a * (vs - 1) / (vs - 1 + k)).epsilon(1e-9));
        if (lam > 0) {
          const real c_low = fb::kernel_coeff(rep, l, k, HalfInt(2 * lam - 1));
          CHECK(c_low == doctest::Approx(a * (vs - 1) / (vs + l - k - real(0.5))).epsilon(1e-9));
        }
      }
  }
  // s = 0 reduces to the scalar coefficients
  CHECK(fb::kernel_coeff({4, HalfInt(0)}, 3, 1, HalfInt(2)) ==
        doctest::Approx(fb::basis_coeff_a(4, 3, 1)).epsilon(1e-13));
}

TEST_CASE("kernel expansion convergence")
{
  std::uint64_t st = 9;
  const CQuat z = testutil::random_pure(st, 0.17), zp = testutil::random_pure(st, 0.17);
  fb::Truncation tr;
  tr.l_max = 12;
  CHECK(fb::kernel_expansion_check({4, HalfInt(0)}, z, zp, tr).residual < 1e-6);
  CHECK(fb::kernel_expansion_check({4, HalfInt(1)}, z, zp, tr).residual < 1e-6);
  fb::Truncation t0;
  t0.l_max = 2;
  CHECK(fb::kernel_expansion_check({4, HalfInt(1)}, z, CQuat::zero(), t0).residual < 1e-12);
}

TEST_CASE("Monte Carlo inner product")
{
  const fb::RepLabel rep{4, HalfInt(0)};
  fb::Truncation tr;
  tr.mc_samples = 40000;
  const auto on = fb::mc_inner_product(rep, {0, 0, 0}, {0, 0, 0}, tr, 12345);
  CHECK(std::abs(on.value - cplx(1)) < 4 * on.std_error);
  const auto off = fb::mc_inner_product(rep, {1, 0, 0}, {0, 0, 0}, tr, 999);
  CHECK(std::abs(off.value) < 4 * std::max(off.std_error, real(1e-6)));
  CHECK(on.accepted > 0);
  CHECK(on.accepted < on.total);

  fb::Truncation small;
  small.mc_samples = 100;
  CHECK_THROWS_AS(fb::mc_inner_product(rep, {0, 0, 0}, {0, 0, 0}, small, 1), InsufficientSamples);
  CHECK_THROWS_AS(fb::mc_inner_product({4, HalfInt(1)}, {0, 0, 0}, {0, 0, 0}, tr, 1), OutOfRegime);
}

TEST_CASE("Monte Carlo reproducing property")
{
  const fb::RepLabel rep{4, HalfInt(0)};
  fb::Truncation tr;
  tr.mc_samples = 60000;
  const CQuat z0 = CQuat::pure(0.2, -0.1, 0.05);
  const auto est = fb::mc_reproducing(rep, {1, 0, 1}, z0, tr, 777);
  const cplx expect = fb::scalar_basis(rep, {1, 0, 1}, z0);
  CHECK(std::abs(est.value - expect) < 4 * est.std_error);
}
