#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace fhlab {

// Two-sided Fourier series c_p, |p| <= P, for the log of a smooth symbol.
// c_0 is the mean of log a; for real symbols c_{-p} = conj(c_p).
class FourierSeries {
 public:
  FourierSeries() : order_(0), coeff_(1) {}
  explicit FourierSeries(int order)
      : order_(order), coeff_(2 * order + 1) {}

  int order() const { return order_; }

  std::complex<double> c(int p) const {
    if (p < -order_ || p > order_) return 0.0;
    return coeff_[p + order_];
  }
  void set(int p, std::complex<double> v) { coeff_[p + order_] = v; }
  void add(int p, std::complex<double> v) { coeff_[p + order_] += v; }

  std::complex<double> eval(double theta) const;  // sum c_p e^{ip theta}

  // Drop coefficients beyond P (or zero-pad up to P).
  FourierSeries truncated(int P) const;

  FourierSeries operator+(const FourierSeries& o) const;
  FourierSeries& operator*=(double s);

 private:
  int order_;
  std::vector<std::complex<double>> coeff_;
};

// Discrete Fourier analysis of log a on a uniform 4P grid, truncated to
// |p| <= P. Throws if any sample is non-finite.
FourierSeries smooth_log_coeffs(const std::function<std::complex<double>(double)>& log_a,
                                int P);

// log(1 + zeta e^{i sign theta})^{exponent} as a one-sided series:
// c_{sign p} = -exponent (-zeta)^p / p for p >= 1. Requires |zeta| < 1
// unless |zeta| == 1 is accepted by the caller for test use; here |zeta| <= 1.
FourierSeries log_pow_factor(double exponent, std::complex<double> zeta,
                             int sign, int P);

// log of e^{t(e^{i theta} + e^{-i theta})}: c_{+-1} = t.
FourierSeries two_t_cos(double t, int P);

// sum_{k>=1} k c_k c_{-k}, with an absolute tail estimate from the last
// quarter of retained coefficients.
struct SzegoSum {
  std::complex<double> value;
  double tail_estimate;
};
SzegoSum szego_sum(const FourierSeries& s);

// sum_p |p| |c_p c_{-p}| (finiteness is the strong Szego hypothesis).
double szego_condition(const FourierSeries& s);

// log a_+(theta) = sum_{p>=1} c_p e^{ip theta},
// log a_-(theta) = sum_{p<=-1} c_p e^{ip theta}.
struct WienerHopfSplit {
  std::complex<double> log_a_plus;
  std::complex<double> log_a_minus;
};
WienerHopfSplit wiener_hopf_split(const FourierSeries& s, double theta);

// Coefficients of exp of the series: table t_k, |k| <= K, computed by FFT of
// exp(s(theta)) on a fine grid. K defaults to grid/2 - 1 internally.
std::vector<std::complex<double>> exp_series_coeffs(const FourierSeries& s,
                                                    int K);

// Linear convolution of two coefficient tables indexed [-Ka..Ka], [-Kb..Kb],
// restricted to output indices [-Kout..Kout].
std::vector<std::complex<double>> convolve_tables(
    const std::vector<std::complex<double>>& a, int Ka,
    const std::vector<std::complex<double>>& b, int Kb, int Kout);

}  // namespace fhlab
