#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdlib>
#include <string>

namespace fhlab {

// Extended tier: ~50 significant decimal digits, enough to survive the
// digit-per-row loss of moment-Hankel matrices at desk scale.
using real_x = boost::multiprecision::cpp_bin_float_50;

enum class PrecisionTier { Double, Extended };

struct PrecisionContext {
  PrecisionTier tier = PrecisionTier::Double;

  static PrecisionContext doubles() { return {PrecisionTier::Double}; }
  static PrecisionContext extended() { return {PrecisionTier::Extended}; }

  // FHLAB_PRECISION=double|extended overrides the default tier.
  static PrecisionContext from_env(PrecisionTier fallback = PrecisionTier::Double) {
    if (const char* p = std::getenv("FHLAB_PRECISION")) {
      std::string s(p);
      if (s == "extended") return extended();
      if (s == "double") return doubles();
    }
    return {fallback};
  }
};

// Minimal complex type usable with both double and multiprecision reals.
// (std::complex is only specified for builtin floating point.)
template <class R>
struct Cx {
  R re{}, im{};

  Cx() = default;
  Cx(R r) : re(std::move(r)) {}
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
  Cx operator*(const Cx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cx operator/(const Cx& o) const {
    R d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  Cx& operator*=(const Cx& o) { *this = *this * o; return *this; }

  R abs2() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
};

}  // namespace fhlab
