#include "fhlab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fhlab {

namespace {

// Forward DFT of samples f(2 pi j / M), j = 0..M-1, returning spectral
// coefficients c_p = (1/M) sum_j f_j e^{-2 pi i p j / M}.
std::vector<std::complex<double>> dft_coeffs(
    const std::vector<std::complex<double>>& samples) {
  int M = static_cast<int>(samples.size());
  std::vector<std::complex<double>> out(M);
  fftw_plan plan = fftw_plan_dft_1d(
      M,
      reinterpret_cast<fftw_complex*>(
          const_cast<std::complex<double>*>(samples.data())),
      reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
      FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  for (auto& v : out) v /= static_cast<double>(M);
  return out;
}

}  // namespace

std::complex<double> FourierSeries::eval(double theta) const {
  std::complex<double> sum = 0.0;
  for (int p = -order_; p <= order_; ++p) {
    if (coeff_[p + order_] == std::complex<double>(0.0)) continue;
    sum += coeff_[p + order_] *
           std::complex<double>(std::cos(p * theta), std::sin(p * theta));
  }
  return sum;
}

FourierSeries FourierSeries::truncated(int P) const {
  FourierSeries r(P);
  int m = std::min(P, order_);
  for (int p = -m; p <= m; ++p) r.set(p, c(p));
  return r;
}

FourierSeries FourierSeries::operator+(const FourierSeries& o) const {
  int P = std::max(order_, o.order_);
  FourierSeries r(P);
  for (int p = -P; p <= P; ++p) r.set(p, c(p) + o.c(p));
  return r;
}

FourierSeries& FourierSeries::operator*=(double s) {
  for (auto& v : coeff_) v *= s;
  return *this;
}

FourierSeries smooth_log_coeffs(
    const std::function<std::complex<double>(double)>& log_a, int P) {
  if (P < 1) throw std::invalid_argument("smooth_log_coeffs: P >= 1 required");
  int M = 4 * P;
  std::vector<std::complex<double>> samples(M);
  for (int j = 0; j < M; ++j) {
    double theta = 2.0 * std::numbers::pi * j / M;
    samples[j] = log_a(theta);
    if (!std::isfinite(samples[j].real()) || !std::isfinite(samples[j].imag()))
      throw std::domain_error("smooth_log_coeffs: non-finite sample");
  }
  auto spec = dft_coeffs(samples);
  FourierSeries s(P);
  s.set(0, spec[0]);
  for (int p = 1; p <= P; ++p) {
    s.set(p, spec[p]);
    s.set(-p, spec[M - p]);
  }
  return s;
}

FourierSeries log_pow_factor(double exponent, std::complex<double> zeta,
                             int sign, int P) {
  if (std::abs(zeta) > 1.0)
    throw std::domain_error("log_pow_factor: requires |zeta| <= 1");
  FourierSeries s(P);
  std::complex<double> pw = 1.0;
  for (int p = 1; p <= P; ++p) {
    pw *= -zeta;
    s.set(sign * p, -exponent * pw / static_cast<double>(p));
  }
  return s;
}

FourierSeries two_t_cos(double t, int P) {
  FourierSeries s(std::max(P, 1));
  s.set(1, t);
  s.set(-1, t);
  return s;
}

SzegoSum szego_sum(const FourierSeries& s) {
  SzegoSum r{0.0, 0.0};
  int P = s.order();
  int tail_start = std::max(1, P - P / 4);
  double tail = 0.0;
  for (int k = 1; k <= P; ++k) {
    std::complex<double> term = static_cast<double>(k) * s.c(k) * s.c(-k);
    r.value += term;
    if (k >= tail_start) tail += std::abs(term);
  }
  // the retained high quarter bounds the dropped tail for series with
  // geometric or faster decay
  r.tail_estimate = tail;
  return r;
}

double szego_condition(const FourierSeries& s) {
  double sum = 0.0;
  for (int k = 1; k <= s.order(); ++k)
    sum += 2.0 * k * std::abs(s.c(k) * s.c(-k));
  return sum;
}

WienerHopfSplit wiener_hopf_split(const FourierSeries& s, double theta) {
  WienerHopfSplit r{0.0, 0.0};
  for (int p = 1; p <= s.order(); ++p) {
    std::complex<double> e(std::cos(p * theta), std::sin(p * theta));
    r.log_a_plus += s.c(p) * e;
    r.log_a_minus += s.c(-p) * std::conj(e);
  }
  return r;
}

std::vector<std::complex<double>> exp_series_coeffs(const FourierSeries& s,
                                                    int K) {
  int M = 8;
  while (M < 4 * (K + s.order() + 1)) M *= 2;
  std::vector<std::complex<double>> samples(M);
  for (int j = 0; j < M; ++j) {
    double theta = 2.0 * std::numbers::pi * j / M;
    samples[j] = std::exp(s.eval(theta));
  }
  auto spec = dft_coeffs(samples);
  std::vector<std::complex<double>> table(2 * K + 1);
  table[K] = spec[0];
  for (int k = 1; k <= K; ++k) {
    table[K + k] = spec[k];
    table[K - k] = spec[M - k];
  }
  return table;
}

std::vector<std::complex<double>> convolve_tables(
    const std::vector<std::complex<double>>& a, int Ka,
    const std::vector<std::complex<double>>& b, int Kb, int Kout) {
  std::vector<std::complex<double>> out(2 * Kout + 1);
  for (int k = -Kout; k <= Kout; ++k) {
    std::complex<double> sum = 0.0;
    int lo = std::max(-Ka, k - Kb);
    int hi = std::min(Ka, k + Kb);
    for (int m = lo; m <= hi; ++m) sum += a[m + Ka] * b[k - m + Kb];
    out[k + Kout] = sum;
  }
  return out;
}

}  // namespace fhlab
