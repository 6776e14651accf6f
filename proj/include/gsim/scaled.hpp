#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace gsim {

// Complex value kept as mantissa * 2^exp2 so that products of thousands of
// pivots neither overflow nor underflow. Mantissa is normalized to
// 0.5 <= |m| < 1 (or exactly 0).
struct ScaledComplex {
  std::complex<double> m{0.0, 0.0};
  int64_t exp2 = 0;

  static ScaledComplex zero() { return ScaledComplex{}; }
  static ScaledComplex one() { return ScaledComplex{{1.0, 0.0}, 0}.normalized(); }
  static ScaledComplex from(std::complex<double> z) {
    return ScaledComplex{z, 0}.normalized();
  }

  bool is_zero() const { return m.real() == 0.0 && m.imag() == 0.0; }

  ScaledComplex normalized() const {
    ScaledComplex r = *this;
    double a = std::abs(r.m);
    if (a == 0.0 || !std::isfinite(a)) {
      if (a == 0.0) return ScaledComplex{};
      return r;  // propagate inf/nan unchanged
    }
    int e;
    std::frexp(a, &e);
    r.m = std::complex<double>(std::ldexp(r.m.real(), -e), std::ldexp(r.m.imag(), -e));
    r.exp2 += e;
    return r;
  }

  ScaledComplex operator*(const ScaledComplex& o) const {
    if (is_zero() || o.is_zero()) return ScaledComplex{};
    return ScaledComplex{m * o.m, exp2 + o.exp2}.normalized();
  }
  ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }

  ScaledComplex operator*(std::complex<double> z) const { return *this * from(z); }
  ScaledComplex operator*(double d) const { return *this * from({d, 0.0}); }

  ScaledComplex operator/(const ScaledComplex& o) const {
    return ScaledComplex{m / o.m, exp2 - o.exp2}.normalized();
  }

  ScaledComplex operator+(const ScaledComplex& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // Align to the larger exponent; far-smaller term vanishes in double anyway.
    if (exp2 >= o.exp2) {
      int64_t d = exp2 - o.exp2;
      if (d > 2000) return *this;
      std::complex<double> om(std::ldexp(o.m.real(), (int)-d), std::ldexp(o.m.imag(), (int)-d));
      return ScaledComplex{m + om, exp2}.normalized();
    }
    return o + *this;
  }
  ScaledComplex& operator+=(const ScaledComplex& o) { return *this = *this + o; }

  ScaledComplex operator-() const { return ScaledComplex{-m, exp2}; }
  ScaledComplex operator-(const ScaledComplex& o) const { return *this + (-o); }

  ScaledComplex conj() const { return ScaledComplex{std::conj(m), exp2}; }

  // log2 of the magnitude; -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(m)) + (double)exp2;
  }

  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp2 > 1500) return {std::numeric_limits<double>::infinity(), 0.0};
    if (exp2 < -1500) return {0.0, 0.0};
    return std::complex<double>(std::ldexp(m.real(), (int)exp2), std::ldexp(m.imag(), (int)exp2));
  }

  double abs_ratio_to(const ScaledComplex& o) const {
    // |this| / |o|, saturating; useful for relative-error checks at any scale.
    if (o.is_zero()) return is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
    double dl = log2_abs() - o.log2_abs();
    if (dl > 1000) return std::numeric_limits<double>::infinity();
    return std::exp2(dl);
  }
};

inline double scaled_rel_err(const ScaledComplex& a, const ScaledComplex& b) {
  ScaledComplex d = a - b;
  if (b.is_zero()) return d.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  return d.abs_ratio_to(b);
}

}  // namespace gsim
