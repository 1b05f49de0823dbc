#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sp4rep/gegenbauer.hpp"
#include "sp4rep/harmonics.hpp"
#include "sp4rep/matrix_elements.hpp"
#include "testutil.hpp"

using namespace sp4rep;
namespace me = sp4rep::matrix_elements;
namespace fb = sp4rep::fockbasis;

namespace {
const fb::RepLabel kRep{4, HalfInt(0)};
const fb::Truncation kTrunc{};
} // namespace

TEST_CASE("pointwise oracle basics")
{
  std::uint64_t st = 1;
  const CQuat z = testutil::random_pure(st, 0.25);
  // identity action returns f(z)
  std::vector<std::pair<fb::ScalarIndex, cplx>> f{{{0, 0, 0}, cplx(2, 1)},
                                                  {{2, 1, 0}, cplx(0, -1)}};
  cplx direct = 0;
  for (const auto &[idx, c] : f)
    direct += c * fb::scalar_basis(kRep, idx, z);
  CHECK(std::abs(me::apply_scalar_action(kRep, sp4::identity(), f, z) - direct) < 1e-13);

  // constant function under a boost picks up exactly the multiplier
  const auto d = sp4::boost_d(0.3);
  const auto h = sp4::inverse(d);
  const CQuat den = -(conj_complex(h.b) * z) + conj_complex(h.a);
  const cplx expect = std::pow(det(den), cplx(-4));
  std::vector<std::pair<fb::ScalarIndex, cplx>> one{{{0, 0, 0}, cplx(1)}};
  // F_000 = 1 identically, so U(g) 1 = multiplier
  CHECK(std::abs(me::apply_scalar_action(kRep, d, one, z) - expect) < 1e-13);

  CHECK_THROWS_AS(me::apply_scalar_action(kRep, d, one, CQuat::pure(1.3, 0, 0)), NotInDomain);
}

TEST_CASE("oracle cocycle composition")
{
  std::uint64_t st = 4;
  std::vector<std::pair<fb::ScalarIndex, cplx>> f{{{0, 0, 0}, cplx(0.5, 0.2)},
                                                  {{1, 0, -1}, cplx(1, -0.3)}};
  for (int i = 0; i < 4; ++i) {
    const auto g1 = sp4::random_element(100 + i, 0.3);
    const auto g2 = sp4::random_element(200 + i, 0.3);
    const auto h1 = sp4::inverse(g1);
    const CQuat z = testutil::random_pure(st, 0.2);
    const CQuat den = -(conj_complex(h1.b) * z) + conj_complex(h1.a);
    const cplx lhs = std::pow(det(den), cplx(-4)) *
                     me::apply_scalar_action(kRep, g2, f, sp4::domain_action(h1, z));
    const cplx rhs = me::apply_scalar_action(kRep, g1 * g2, f, z);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("identity engine is the identity matrix")
{
  me::ElementEngine eng(kRep, sp4::identity(), kTrunc);
  CHECK(eng.b0_route());
  for (const auto &in : fb::enumerate_scalar_upto(3))
    for (const auto &out : fb::enumerate_scalar_upto(3)) {
      const cplx v = eng.scalar_element(in, out).value;
      const cplx expect = (in == out) ? cplx(1) : cplx(0);
      CHECK(std::abs(v - expect) < 1e-12);
    }
}

TEST_CASE("route selection")
{
  CHECK(me::ElementEngine(kRep, sp4::identity(), kTrunc).b0_route());
  CHECK_FALSE(me::ElementEngine(kRep, sp4::boost_d(0.2), kTrunc).b0_route());
  std::uint64_t cst = 3;
  CHECK(me::ElementEngine(kRep, sp4::random_compact(cst), kTrunc).b0_route());
  // non-group element is rejected on the series route
  CHECK_THROWS_AS(me::ElementEngine(kRep, {CQuat::one(), CQuat(0.5, 0.1, 0, 0)}, kTrunc),
                  NotInGroup);
}

TEST_CASE("series elements from the constant function match the det-power expansion")
{
  // U(g) F_000 = [det(-bbar z + abar)]^{-vs}; its coefficients are the
  // determinant-power expansion in w = bt at^{-1}, an independent oracle
  const auto g = sp4::boost_d(0.15);
  me::ElementEngine eng(kRep, g, kTrunc);
  const auto h = sp4::inverse(g);
  const CQuat abar = conj_complex(h.a);
  const CQuat w = conj_quat(h.b) * inverse(conj_quat(h.a));
  const cplx det_abar = det(abar);
  const cplx cww = std::conj(vdot(w, w));

  for (const auto &out : fb::enumerate_scalar_upto(6)) {
    cplx wk = 1;
    for (int i = 0; i < out.k; ++i)
      wk *= cww;
    const cplx expect = std::pow(det_abar, cplx(-4)) *
                        gegenbauer::coeff_a_general(4, out.l, out.k) /
                        std::sqrt(gegenbauer::coeff_a_general(4, out.l, out.k)) * wk *
                        std::conj(harmonics::solid_harmonic(out.l - 2 * out.k, out.m, w));
    const cplx got = eng.scalar_element({0, 0, 0}, out).value;
    CHECK(std::abs(got - expect) < 1e-12 * (1 + std::abs(expect)));
  }
}

TEST_CASE("series engine matches the pointwise oracle at modest truncation")
{
  std::uint64_t st = 6;
  const auto g = sp4::random_element(42, 0.15);
  me::ElementEngine eng(kRep, g, kTrunc);
  for (const auto &in : fb::enumerate_scalar_upto(1))
    for (int i = 0; i < 4; ++i) {
      const CQuat z = testutil::random_pure(st, 0.12);
      const cplx oracle = me::apply_scalar_action(kRep, g, {{in, cplx(1)}}, z);
      CHECK(std::abs(eng.reconstruct_scalar(in, z, 12) - oracle) < 1e-5);
    }
}

TEST_CASE("b0 engine: degree preservation, diagonal form, oracle exactness")
{
  std::uint64_t cst = 11, st = 12;
  const auto k = sp4::random_compact(cst);
  me::ElementEngine eng(kRep, k, kTrunc);

  SUBCASE("off-degree blocks vanish identically")
  {
    for (const auto &in : fb::enumerate_scalar_upto(2))
      for (const auto &out : fb::enumerate_scalar_upto(3))
        if (out.l != in.l)
          CHECK(std::abs(eng.scalar_element(in, out).value) == 0);
  }

  SUBCASE("exact against the pointwise oracle")
  {
    for (const auto &in : fb::enumerate_scalar_upto(2))
      for (int i = 0; i < 3; ++i) {
        const CQuat z = testutil::random_pure(st, 0.25);
        const cplx oracle = me::apply_scalar_action(kRep, k, {{in, cplx(1)}}, z);
        CHECK(std::abs(eng.reconstruct_scalar(in, z, in.l) - oracle) < 1e-11);
      }
  }

  SUBCASE("compact blocks are unitary; diagonal g_d is diagonal in (k, m)")
  {
    for (int l = 0; l <= 3; ++l) {
      const MatX u = eng.scalar_block(l, l);
      CHECK((u.adjoint() * u - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
    }
    const auto gd = sp4::make_diagonal(std::exp(kI * real(0.4)), std::exp(-kI * real(1.2)));
    me::ElementEngine engd(kRep, gd, kTrunc);
    for (const auto &in : fb::enumerate_scalar_upto(3))
      for (const auto &out : fb::enumerate_scalar(in.l))
        if (!(in == out))
          CHECK(std::abs(engd.scalar_element(in, out).value) < 1e-13);
  }
}

TEST_CASE("spin engine")
{
  const fb::RepLabel repH{4, HalfInt(1)};
  std::uint64_t st = 14, cst = 15;

  SUBCASE("s = 0 spin path equals scalar path")
  {
    const auto g = sp4::random_element(77, 0.2);
    me::ElementEngine eng(kRep, g, kTrunc);
    for (const auto &in : fb::enumerate_scalar_upto(1))
      for (const auto &out : fb::enumerate_scalar_upto(2)) {
        const fb::SpinIndex si{in.l, in.k, HalfInt(2 * (in.l - 2 * in.k)), HalfInt(2 * in.m)};
        const fb::SpinIndex so{out.l, out.k, HalfInt(2 * (out.l - 2 * out.k)),
                               HalfInt(2 * out.m)};
        CHECK(std::abs(eng.spin_element(si, so).value - eng.scalar_element(in, out).value) == 0);
      }
  }

  SUBCASE("b0 spin elements are exact vs the spin oracle")
  {
    const auto k = sp4::random_compact(cst);
    me::ElementEngine eng(repH, k, kTrunc);
    for (const auto &in : fb::enumerate_spin_upto(HalfInt(1), 2))
      for (int i = 0; i < 2; ++i) {
        const CQuat z = testutil::random_pure(st, 0.25);
        const VecX oracle = me::apply_spin_action(repH, k, {{in, cplx(1)}}, z);
        CHECK((eng.reconstruct_spin(in, z, in.l) - oracle).cwiseAbs().maxCoeff() < 1e-11);
      }
    for (int l = 0; l <= 2; ++l) {
      const MatX u = eng.spin_block(l, l);
      CHECK((u.adjoint() * u - MatX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("series spin element against the oracle, one low index")
  {
    const auto g = sp4::random_element(91, 0.12);
    me::ElementEngine eng(repH, g, kTrunc);
    const fb::SpinIndex in{0, 0, HalfInt(1), HalfInt(1)};
    const CQuat z = testutil::random_pure(st, 0.12);
    const VecX oracle = me::apply_spin_action(repH, g, {{in, cplx(1)}}, z);
    CHECK((eng.reconstruct_spin(in, z, 10) - oracle).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("index validation errors")
{
  me::ElementEngine eng(kRep, sp4::identity(), kTrunc);
  CHECK_THROWS_AS(eng.scalar_element({2, 2, 0}, {0, 0, 0}), IndexOutOfRange);
  CHECK_THROWS_AS(eng.scalar_element({0, 0, 0}, {2, 0, 3}), IndexOutOfRange);
  const fb::RepLabel repH{4, HalfInt(1)};
  me::ElementEngine engH(repH, sp4::identity(), kTrunc);
  CHECK_THROWS_AS(engH.spin_element({0, 0, HalfInt(3), HalfInt(1)}, {0, 0, HalfInt(1), HalfInt(1)}),
                  IndexOutOfRange);
}
