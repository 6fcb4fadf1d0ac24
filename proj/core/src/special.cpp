#include "fhlab/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fhlab {

namespace {

constexpr double kZetaPrimeMinus1 = -0.16542114370045092921;  // zeta'(-1)
constexpr double kLog2Pi = 1.8378770664093454836;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Large-z expansion of log G(1+z); accurate to ~1e-15 for z >= 16.
double log_barnes_g1p_asymptotic(double z) {
  double lz = std::log(z);
  double s = 0.25 * z * z + z * std::lgamma(z + 1.0) -
             (0.5 * z * (z + 1.0) + 1.0 / 12.0) * lz - 1.0 / 12.0 +
             kZetaPrimeMinus1;
  double z2 = z * z;
  // B_{2k+2} / (2k (2k+1)(2k+2) z^{2k}), k = 1..4
  s += -1.0 / (720.0 * z2);
  s += 1.0 / (5040.0 * z2 * z2);
  s += -1.0 / (10080.0 * z2 * z2 * z2);
  s += 1.0 / (9504.0 * z2 * z2 * z2 * z2);
  return s;
}

double log_barnes_g_positive(double z) {
  double shift = 0.0;
  while (z < 17.0) {
    // log G(z) = log G(z+1) - log Gamma(z)
    shift -= std::lgamma(z);
    z += 1.0;
  }
  return log_barnes_g1p_asymptotic(z - 1.0) + shift;
}

}  // namespace

LogValue log_gamma(double x) {
  if (is_nonpositive_integer(x))
    throw std::domain_error("log_gamma: pole at nonpositive integer");
  if (x > 0.0) return LogValue::from_log(std::lgamma(x));
  SignedLog s = log_gamma_signed(x);
  return LogValue::from_log(s.log_abs, s.sign > 0 ? 0.0 : std::numbers::pi);
}

SignedLog log_gamma_signed(double x) {
  if (is_nonpositive_integer(x)) return {0.0, 0};
  if (x > 0.0) return {std::lgamma(x), +1};
  // Gamma alternates sign on (-n-1, -n): negative on (-1,0), positive on
  // (-2,-1), ...
  long long m = static_cast<long long>(std::floor(x));
  int sign = (m % 2 == 0) ? +1 : -1;
  return {std::lgamma(x), sign};
}

SignedLog log_binomial(double s, int k) {
  SignedLog num = log_gamma_signed(s + 1.0);
  SignedLog d1 = log_gamma_signed(static_cast<double>(k) + 1.0);
  SignedLog d2 = log_gamma_signed(s - k + 1.0);
  if (num.sign == 0)
    throw std::domain_error("log_binomial: Gamma(s+1) at a pole");
  if (d2.sign == 0) return {0.0, 0};  // reciprocal of a pole: exact zero
  return {num.log_abs - d1.log_abs - d2.log_abs, num.sign * d1.sign * d2.sign};
}

LogValue log_barnes_g(double z) {
  if (z <= 0.0) throw std::domain_error("log_barnes_g: requires z > 0");
  return LogValue::from_log(log_barnes_g_positive(z));
}

double barnes_g_ratio_asymptotic(double a, double b, int n) {
  double ln = std::log(static_cast<double>(n));
  return (b - a) * n + 0.5 * (a - b) * kLog2Pi +
         ((a - b) * n + 0.5 * (a * a - b * b)) * ln;
}

LogValue selberg_f(int n, double alpha, double c) {
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double num = alpha + j * c + 1.0;
    double den = j * c + 1.0;
    if (is_nonpositive_integer(num) || is_nonpositive_integer(den))
      throw std::domain_error("selberg_f: Gamma factor at a pole");
    SignedLog sn = log_gamma_signed(num);
    SignedLog sd = log_gamma_signed(den);
    if (sn.sign < 0 || sd.sign < 0)
      throw std::domain_error("selberg_f: negative Gamma factor");
    sum += sn.log_abs - sd.log_abs;
  }
  return LogValue::from_log(sum);
}

namespace {

// log f_n(alpha, c) for integer c >= 1, to o(1) in n.
LogValue selberg_f_integer_c_asymptotic(double alpha, int c, int n) {
  double ln = std::log(static_cast<double>(n));
  double s = alpha * n * ln + alpha * n * std::log(static_cast<double>(c)) -
             alpha * n +
             (alpha * alpha - (c - 1.0) * alpha) / (2.0 * c) * ln +
             0.5 * alpha * kLog2Pi;
  for (int p = 0; p < c; ++p) {
    double zg = 1.0 - static_cast<double>(p) / c;
    double za = (alpha - p) / c + 1.0;
    if (za <= 0.0) {
      if (is_nonpositive_integer(za)) return LogValue::make_zero();
      throw std::domain_error("selberg_f_asymptotic: Barnes G argument <= 0");
    }
    s += log_barnes_g(zg).log_modulus - log_barnes_g(za).log_modulus;
  }
  return LogValue::from_log(s);
}

}  // namespace

LogValue selberg_f_asymptotic(double alpha, int s, int r, int n) {
  if (s < 1 || r < 1) throw std::domain_error("selberg_f_asymptotic: s, r >= 1");
  double total = 0.0;
  for (int nu = 0; nu < r; ++nu) {
    double shift = static_cast<double>(s) * nu / r;
    LogValue num = selberg_f_integer_c_asymptotic(alpha + shift, s, n);
    LogValue den = selberg_f_integer_c_asymptotic(shift, s, n);
    if (num.zero) return LogValue::make_zero();
    if (den.zero)
      throw std::domain_error("selberg_f_asymptotic: zero denominator factor");
    total += num.log_modulus - den.log_modulus;
  }
  return LogValue::from_log(total);
}

namespace {

// log G at an argument that may be a G-zero (nonpositive integers) or
// otherwise out of the real-positive domain.
LogValue log_barnes_g_checked(double z) {
  if (z > 0.0) return log_barnes_g(z);
  if (is_nonpositive_integer(z)) return LogValue::make_zero();
  throw std::domain_error("Barnes G argument out of supported domain");
}

}  // namespace

LogValue morris_m(int n, double a, double b) {
  LogValue num = log_barnes_g_checked(n + 1.0 + a + b) *
                 log_barnes_g_checked(1.0 + a) * log_barnes_g_checked(1.0 + b) *
                 log_barnes_g_checked(n + 2.0);
  LogValue den = log_barnes_g_checked(1.0 + a + b) *
                 log_barnes_g_checked(n + 1.0 + a) *
                 log_barnes_g_checked(n + 1.0 + b);
  return num / den;
}

LogValue jacobi_norm(int n, double a, double b) {
  if (a <= -1.0 || b <= -1.0)
    throw std::domain_error("jacobi_norm: requires a, b > -1");
  LogValue num = log_barnes_g_checked(n + 1.0 + a) *
                 log_barnes_g_checked(n + 1.0 + b) *
                 log_barnes_g_checked(n + 1.0 + a + b) *
                 log_barnes_g_checked(n + 2.0);
  LogValue den = log_barnes_g_checked(1.0 + a) * log_barnes_g_checked(1.0 + b) *
                 log_barnes_g_checked(2.0 * n + 1.0 + a + b);
  return num / den;
}

LogValue cbeta_norm(int n, double beta) {
  if (beta <= 0.0) throw std::domain_error("cbeta_norm: requires beta > 0");
  return LogValue::from_log(std::lgamma(n * beta / 2.0 + 1.0) -
                            n * std::lgamma(beta / 2.0 + 1.0));
}

LogValue gaussian_norm(double n) {
  return LogValue::from_log(-0.5 * n * (n - 1.0) * std::numbers::ln2 +
                            0.5 * n * std::log(std::numbers::pi) +
                            log_barnes_g_checked(n + 2.0).log_modulus);
}

LogValue gaussian_norm_scaled(double n, double a) {
  LogValue g = gaussian_norm(n);
  return LogValue::from_log(g.log_modulus - n * n * std::log(a));
}

LogValue laguerre_norm(double n, double c, double aprime) {
  if (c <= 0.0) throw std::domain_error("laguerre_norm: requires c > 0");
  double ap = aprime - 0.5;
  return LogValue::from_log(-(n * n + n * ap) * std::log(c) +
                            log_barnes_g_checked(n + 2.0).log_modulus +
                            log_barnes_g_checked(aprime + n + 0.5).log_modulus -
                            log_barnes_g_checked(aprime + 0.5).log_modulus);
}

}  // namespace fhlab
