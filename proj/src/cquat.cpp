#include "sp4rep/cquat.hpp"

namespace sp4rep {

Mat2 to_matrix(const CQuat &z)
{
  Mat2 m;
  m(0, 0) = z.w + kI * z.v[2];
  m(0, 1) = kI * z.v[0] - z.v[1];
  m(1, 0) = kI * z.v[0] + z.v[1];
  m(1, 1) = z.w - kI * z.v[2];
  return m;
}

CQuat from_matrix(const Mat2 &m)
{
  CQuat z;
  z.w = (m(0, 0) + m(1, 1)) / real(2);
  z.v[2] = (m(0, 0) - m(1, 1)) / (real(2) * kI);
  z.v[0] = (m(0, 1) + m(1, 0)) / (real(2) * kI);
  z.v[1] = (m(1, 0) - m(0, 1)) / real(2);
  return z;
}

} // namespace sp4rep
