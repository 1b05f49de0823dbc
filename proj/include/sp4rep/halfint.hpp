#pragma once
#include "sp4rep/config.hpp"

namespace sp4rep {

//! Half-integer stored as twice its value, so index arithmetic stays exact.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int t) : twice(t) {}

  static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }
  static constexpr HalfInt from_twice(int t) { return HalfInt(t); }

  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr int as_int() const { return twice / 2; }
  real value() const { return real(twice) / 2; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice + b.twice); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice - b.twice); }
  friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.twice != b.twice; }
  friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
  friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }
  friend constexpr bool operator>(HalfInt a, HalfInt b) { return a.twice > b.twice; }
  friend constexpr bool operator>=(HalfInt a, HalfInt b) { return a.twice >= b.twice; }
};

} // namespace sp4rep
