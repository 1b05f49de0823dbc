#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sp4rep/cquat.hpp"
#include "testutil.hpp"

using namespace sp4rep;
using testutil::dist;

TEST_CASE("basis multiplication table")
{
  const CQuat e1 = CQuat::pure(1, 0, 0), e2 = CQuat::pure(0, 1, 0), e3 = CQuat::pure(0, 0, 1);
  CHECK(dist(e1 * e2, e3) == 0);
  CHECK(dist(e2 * e3, e1) == 0);
  CHECK(dist(e3 * e1, e2) == 0);
  CHECK(dist(e2 * e1, -e3) == 0);
  CHECK(dist(e1 * e1, -CQuat::one()) == 0);
  CHECK(dist(e2 * e2, -CQuat::one()) == 0);
  CHECK(dist(e3 * e3, -CQuat::one()) == 0);
}

TEST_CASE("identity and componentwise arithmetic")
{
  std::uint64_t st = 42;
  const CQuat z = testutil::random_cquat(st);
  CHECK(dist(CQuat::one() * z, z) == 0);
  CHECK(dist(z * CQuat::one(), z) == 0);
  CHECK(dist(z + CQuat::zero(), z) == 0);
}

TEST_CASE("conjugations")
{
  const CQuat z(cplx(2, 1), cplx(0, 3), cplx(-1, 0), cplx(4, -2));
  CHECK(dist(conj_quat(z), CQuat(z.w, -z.v[0], -z.v[1], -z.v[2])) == 0);
  // adjoint((i,(i,0,0))) = (-i,(i,0,0))
  const CQuat y(kI, kI, 0, 0);
  CHECK(dist(adjoint(y), CQuat(-kI, kI, 0, 0)) == 0);

  std::uint64_t st = 7;
  for (int i = 0; i < 100; ++i) {
    const CQuat x = testutil::random_cquat(st), w = testutil::random_cquat(st);
    CHECK(dist(conj_quat(x * w), conj_quat(w) * conj_quat(x)) < 1e-13);
    CHECK(dist(adjoint(x * w), adjoint(w) * adjoint(x)) < 1e-13);
    CHECK(dist(conj_complex(x * w), conj_complex(x) * conj_complex(w)) < 1e-13);
    CHECK(dist(conj_complex(conj_complex(x)), x) == 0);
    CHECK(dist(conj_quat(conj_quat(x)), x) == 0);
    CHECK(dist(adjoint(adjoint(x)), x) == 0);
  }
}

TEST_CASE("determinant")
{
  CHECK(std::abs(det(CQuat::pure(1, 0, 0)) - cplx(1)) == 0);
  CHECK(std::abs(det(CQuat::one()) - cplx(1)) == 0);
  // z * conj_quat(z) = det z as a scalar quaternion
  std::uint64_t st = 3;
  for (int i = 0; i < 50; ++i) {
    const CQuat x = testutil::random_cquat(st), y = testutil::random_cquat(st);
    CHECK(std::abs(det(x * y) - det(x) * det(y)) < 1e-12 * (1 + std::abs(det(x) * det(y))));
    CHECK(std::abs(det(x) - det(conj_quat(x))) == 0);
    CHECK(dist(x * conj_quat(x), CQuat(det(x), 0, 0, 0)) < 1e-13);
  }
}

TEST_CASE("inverse")
{
  CHECK(dist(inverse(CQuat::one()), CQuat::one()) == 0);
  CHECK(dist(inverse(CQuat::pure(1, 0, 0)), CQuat::pure(-1, 0, 0)) == 0);
  CHECK_THROWS_AS(inverse(CQuat(1, kI, 0, 0)), SingularQuaternion); // null: det = 0
  std::uint64_t st = 11;
  for (int i = 0; i < 100; ++i) {
    const CQuat z = testutil::random_cquat(st);
    if (std::abs(det(z)) < 1e-3)
      continue;
    CHECK(dist(z * inverse(z), CQuat::one()) < 1e-12);
  }
}

TEST_CASE("matrix image")
{
  CHECK((to_matrix(CQuat::one()) - Mat2::Identity()).cwiseAbs().maxCoeff() == 0);
  Mat2 d3;
  d3 << kI, 0, 0, -kI;
  CHECK((to_matrix(CQuat::pure(0, 0, 1)) - d3).cwiseAbs().maxCoeff() == 0);

  std::uint64_t st = 13;
  for (int i = 0; i < 100; ++i) {
    const CQuat x = testutil::random_cquat(st), y = testutil::random_cquat(st);
    CHECK((to_matrix(x * y) - to_matrix(x) * to_matrix(y)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(to_matrix(x).determinant() - det(x)) < 1e-13);
    CHECK(dist(from_matrix(to_matrix(x)), x) < 1e-15);
  }
}

TEST_CASE("purity predicate")
{
  CHECK(is_pure(CQuat::pure(cplx(0.3, 0.2), 0, 1)));
  CHECK_FALSE(is_pure(CQuat(cplx(0.1, 0), 0, 0, 1)));
}
