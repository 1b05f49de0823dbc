#pragma once
#include <array>
#include <map>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "sp4rep/config.hpp"

namespace sp4rep {

//! Gaussian rational: exact coefficient re + i*im for polynomial identities
//! that must cancel identically (harmonicity checks run on these, not on
//! floating point or finite differences).
struct QQi {
  using Rat = boost::multiprecision::cpp_rational;
  Rat re{0}, im{0};

  QQi() = default;
  QQi(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit QQi(long n) : re(n) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend QQi operator+(const QQi &a, const QQi &b) { return {a.re + b.re, a.im + b.im}; }
  friend QQi operator-(const QQi &a, const QQi &b) { return {a.re - b.re, a.im - b.im}; }
  friend QQi operator*(const QQi &a, const QQi &b)
  {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

//! Sparse polynomial in four variables (z1, z2, z3, z4) with exact Gaussian
//! rational coefficients.  Three-variable polynomials keep exponent[3] = 0.
class PolyExact {
public:
  using Expo = std::array<int, 4>;

  static PolyExact constant(QQi c)
  {
    PolyExact p;
    if (!c.is_zero())
      p.terms_[{0, 0, 0, 0}] = std::move(c);
    return p;
  }
  static PolyExact variable(int axis)
  {
    PolyExact p;
    Expo e{0, 0, 0, 0};
    e[axis] = 1;
    p.terms_[e] = QQi(1);
    return p;
  }

  void add_term(const Expo &e, const QQi &c)
  {
    auto &slot = terms_[e];
    slot = slot + c;
    if (slot.is_zero())
      terms_.erase(e);
  }

  friend PolyExact operator+(const PolyExact &a, const PolyExact &b)
  {
    PolyExact out = a;
    for (const auto &[e, c] : b.terms_)
      out.add_term(e, c);
    return out;
  }

  friend PolyExact operator*(const PolyExact &a, const PolyExact &b)
  {
    PolyExact out;
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_) {
        Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
        out.add_term(e, ca * cb);
      }
    return out;
  }

  PolyExact scaled(const QQi &c) const
  {
    PolyExact out;
    if (c.is_zero())
      return out;
    for (const auto &[e, coef] : terms_)
      out.terms_[e] = coef * c;
    return out;
  }

  PolyExact pow(int n) const
  {
    PolyExact out = constant(QQi(1));
    for (int i = 0; i < n; ++i)
      out = out * (*this);
    return out;
  }

  PolyExact d2(int axis) const // second partial derivative
  {
    PolyExact out;
    for (const auto &[e, c] : terms_) {
      if (e[axis] < 2)
        continue;
      Expo d = e;
      d[axis] -= 2;
      out.add_term(d, c * QQi(long(e[axis]) * (e[axis] - 1)));
    }
    return out;
  }

  PolyExact laplacian(int n_vars) const
  {
    PolyExact out;
    for (int axis = 0; axis < n_vars; ++axis)
      out = out + d2(axis);
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t n_terms() const { return terms_.size(); }

  cplx eval(const std::array<cplx, 4> &z) const
  {
    cplx sum = 0;
    for (const auto &[e, c] : terms_) {
      cplx t(real(boost::multiprecision::cpp_bin_float_50(c.re).convert_to<double>()),
             real(boost::multiprecision::cpp_bin_float_50(c.im).convert_to<double>()));
      for (int axis = 0; axis < 4; ++axis)
        for (int k = 0; k < e[axis]; ++k)
          t *= z[axis];
      sum += t;
    }
    return sum;
  }

private:
  std::map<Expo, QQi> terms_;
};

} // namespace sp4rep
