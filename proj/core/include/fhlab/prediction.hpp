#pragma once

#include "fhlab/determinants.hpp"
#include "fhlab/fourier.hpp"
#include "fhlab/log_value.hpp"
#include "fhlab/symbol.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace fhlab {

// Structured asymptotic prediction
//   value(n) ~ exp(coeff_n * n + coeff_logn * ln n + log_constant).
// The three components are kept separate so convergence studies can fit
// corrections to each. n_convention records what "n" means for the formula
// (matrix size, half size with a printed 2N, CbetaE size rn, ...); the
// harness always passes the size of the determinant it actually computed.
struct Prediction {
  std::complex<double> coeff_n{0.0, 0.0};
  double coeff_logn = 0.0;
  std::complex<double> log_constant{0.0, 0.0};
  std::string n_convention;
  std::string formula;     // which closed form produced this
  bool degenerate = false; // constant contains a Barnes-G zero
  bool proved_regime = false;

  LogValue evaluate(double n) const;
  std::string to_json() const;
};
Prediction prediction_from_json(const std::string& text);

// Strong Szego limit: coeff_n = c_0, constant = sum k c_k c_{-k}.
// Throws if the condition sum |p| |c_p c_{-p}| is not finite.
Prediction predict_szego(const FourierSeries& s);

// Fisher-Hartwig asymptotics for a Toeplitz determinant with algebraic/jump
// singularities. Degenerate flag is set when 1 + a_r + b_r or 1 + a_r - b_r
// hits a nonpositive integer (Barnes-G zero in the constant).
Prediction predict_fh(const FHSymbol& sym);

// High-temperature Ising row correlation: composition of the contour-shifted
// row symbol with predict_fh; coeff_n = -ln alpha2 and coeff_logn = -1/2.
// Requires alpha1 < 1 < alpha2 with alpha1 * alpha2 < 1.
Prediction predict_ising_highT(double alpha1, double alpha2);

// One point charge of a circular beta-ensemble symbol:
//   e^{-i (beta/2) b arg e^{i(phi + pi - theta)}} |e^{i theta} - e^{i phi}|^{beta q}.
struct BetaCharge {
  double phi;
  double q;
  double b = 0.0;
};

// Amplitude attached to a single charge in the beta-deformed Fisher-Hartwig
// formula, beta = 2s/r with gcd(s, r) = 1. Exact zero (degenerate) when a
// numerator Barnes G sits at a nonpositive integer.
LogValue beta_fh_amplitude(double q, double b, int s, int r);

// Beta-deformed Fisher-Hartwig asymptotics for the CbetaE_n average of
// a(theta) times the charge factors. Requires q_j beta > -1.
Prediction predict_beta_fh(const FourierSeries& smooth_log,
                           const std::vector<BetaCharge>& charges, int s,
                           int r);

// Asymptotics of det[g_{j-k} + g_{j+k+1}] for an even symbol with b == 0
// singularities in +-theta pairs; theta_r must avoid 0 and +-pi. n is the
// half size N; the printed 2N power of the log term is folded into the
// constant.
Prediction predict_toeplitz_hankel(const FHSymbol& sym);

// Asymptotics of the cosine-gas average with measure
//   prod (1+cos t)^{lambda1+1/2} (1-cos t)^{lambda2+1/2} prod (cos t_k - cos t_j)^2
// of the same even-symbol observable. lambda = (1/2, -1/2) reproduces
// predict_toeplitz_hankel exactly.
Prediction predict_cn_lambda(const FHSymbol& sym, double lambda1,
                             double lambda2);

// Gaussian-weight Hankel (GUE) prediction for
//   e^{-2N sum q_r y_r^2} G_N[e^{a(x)} prod |x-y_r|^{2q_r}] / G_{N+sum q}[1]
// with weight e^{-2N x^2}. Points must be distinct with |y_r| < 1, q_r > -1/2.
Prediction predict_hankel_gue(const std::vector<ChargedPoint>& points,
                              const SmoothPoly& a);

// Laguerre-weight Hankel (LUE) prediction for
//   prod y_r^{2a'q_r} e^{-4N q_r y_r^2} L_N[e^{a(x)} prod |x^2-y_r^2|^{2q_r}]
//     / L_{N+sum q}[1]
// with weight x^{2a'} e^{-x^2} mapped to positions in (0,1). Points must be
// distinct in (0,1), q_r > -1/2, a' > -1/2. a acts on the scaled position.
Prediction predict_hankel_lue(const std::vector<ChargedPoint>& points,
                              double aprime, const SmoothPoly& a);

// Universal bulk form for a charge insertion into a log-gas with equilibrium
// density rho on its support:
//   ratio ~ e^{-sum q_r a(y_r)} prod |y_k-y_j|^{-2 q_j q_k}
//           prod [G^2(q_r+1)/G(2q_r+1)] (2 pi n)^{q_r^2-q_r} rho(y_r)^{q_r^2}.
// rho(y_r) must be positive (interior points only).
Prediction predict_universal(const std::function<double(double)>& rho,
                             const std::vector<ChargedPoint>& points,
                             const std::function<double(double)>& a);

// Gaussian fluctuation parameters of the linear statistic sum a(theta_l):
// mean mu = n c_0, variance (4/beta) sum p c_p c_{-p}; point charges q_j in
// the symbol add a beta sum q_j^2 coefficient of ln n to the variance.
struct FluctuationParams {
  double mu_per_n = 0.0;
  double sigma2 = 0.0;
  double sigma2_logn_coeff = 0.0;
};
FluctuationParams gaussian_fluctuation_params(
    const FourierSeries& s, double beta,
    const std::vector<double>& charges_q = {});

}  // namespace fhlab
