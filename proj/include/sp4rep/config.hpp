#pragma once
#include <complex>

namespace sp4rep {

#ifdef SP4REP_EXTENDED_PRECISION
using real = long double;
#else
using real = double;
#endif

using cplx = std::complex<real>;

inline constexpr real kPi = real(3.14159265358979323846264338327950288L);
inline constexpr cplx kI = cplx(0, 1);

//! i^k for integer k (used for phases (-1)^x with x given as 2x).
inline cplx ipow(long k)
{
  switch (((k % 4) + 4) % 4) {
  case 0: return {1, 0};
  case 1: return {0, 1};
  case 2: return {-1, 0};
  default: return {0, -1};
  }
}

//! (-1)^x where x is a (half-)integer passed as twice_x = 2x.
inline cplx phase_half(long twice_x) { return ipow(twice_x); }

//! (-1)^n for plain integers.
inline real parity(long n) { return (n % 2) ? real(-1) : real(1); }

} // namespace sp4rep
