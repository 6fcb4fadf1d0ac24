#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace fhlab {

inline double wrap_phase(double phi) {
  // canonical branch (-pi, pi]
  const double twopi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, twopi);
  if (phi <= -std::numbers::pi) phi += twopi;
  if (phi > std::numbers::pi) phi -= twopi;
  return phi;
}

// A nonzero value stored as log|v| and arg v, with a dedicated flag for
// exact zeros (e.g. Barnes G at nonpositive integers, singular matrices).
struct LogValue {
  double log_modulus = 0.0;
  double phase = 0.0;  // radians in (-pi, pi]
  bool zero = false;

  static LogValue make_zero() { return {0.0, 0.0, true}; }

  static LogValue from_real(double v) {
    if (v == 0.0) return make_zero();
    return {std::log(std::abs(v)), v > 0 ? 0.0 : std::numbers::pi, false};
  }

  static LogValue from_log(double lm, double ph = 0.0) {
    return {lm, wrap_phase(ph), false};
  }

  static LogValue from_complex_log(std::complex<double> l) {
    return {l.real(), wrap_phase(l.imag()), false};
  }

  std::complex<double> value() const {
    if (zero) return 0.0;
    return std::exp(log_modulus) * std::complex<double>(std::cos(phase), std::sin(phase));
  }

  double real_value() const { return value().real(); }

  std::complex<double> log() const {
    if (zero) throw std::domain_error("LogValue: log of exact zero");
    return {log_modulus, phase};
  }

  LogValue operator*(const LogValue& o) const {
    if (zero || o.zero) return make_zero();
    return from_log(log_modulus + o.log_modulus, phase + o.phase);
  }
  LogValue operator/(const LogValue& o) const {
    if (o.zero) throw std::domain_error("LogValue: division by exact zero");
    if (zero) return make_zero();
    return from_log(log_modulus - o.log_modulus, phase - o.phase);
  }
  LogValue pow(double e) const {
    if (zero) return e == 0.0 ? LogValue{} : make_zero();
    return from_log(e * log_modulus, e * phase);
  }
};

// Log-scaled determinant. Same layout as LogValue; separate name because
// the determinant engines and the harness treat it as a distinct concept.
using LogDet = LogValue;

}  // namespace fhlab
