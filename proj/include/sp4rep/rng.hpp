#pragma once
#include <cstdint>

#include "sp4rep/config.hpp"

namespace sp4rep {

//! splitmix64 step; bit-reproducible across platforms (std distributions
//! are not), which the seeded-output determinism contract needs.
inline std::uint64_t rng_next(std::uint64_t &state)
{
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

//! Uniform in [0, 1).
inline real rng_uniform(std::uint64_t &state)
{
  return real(rng_next(state) >> 11) * real(1.0 / 9007199254740992.0); // 2^-53
}

//! Uniform in [lo, hi).
inline real rng_uniform(std::uint64_t &state, real lo, real hi)
{
  return lo + (hi - lo) * rng_uniform(state);
}

//! Standard normal via Box-Muller.
inline real rng_normal(std::uint64_t &state)
{
  real u1 = rng_uniform(state);
  while (u1 <= 0)
    u1 = rng_uniform(state);
  const real u2 = rng_uniform(state);
  return std::sqrt(-2 * std::log(u1)) * std::cos(2 * kPi * u2);
}

} // namespace sp4rep
