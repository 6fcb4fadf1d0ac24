#pragma once

#include "fhlab/fourier.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace fhlab {

// One algebraic/jump singularity of the symbol: a factor
//   (1 + e^{i(theta - theta_r - pi)})^{a+b} (1 + e^{i(theta_r + pi - theta)})^{a-b}
// with principal-branch powers (arg in (-pi, pi]).
struct Singularity {
  double theta;  // location in (-pi, pi]
  double a;      // algebraic strength, a > -1/2
  double b;      // jump strength
};

struct FHSymbol {
  FourierSeries smooth_log;  // log a(theta)
  std::vector<Singularity> singularities;
};

// Direct pointwise evaluation of the full symbol.
std::complex<double> symbol_eval(const FHSymbol& sym, double theta);

// Smallest pairwise angular distance between singularities (2 pi if < 2).
double min_angular_separation(const FHSymbol& sym);

// Fourier coefficients of one singular factor, |k| <= K:
//   g_k = e^{-ik(theta_r+pi)} Gamma(2a+1) / (Gamma(a+b-k+1) Gamma(a-b+k+1)),
// exact zeros when a denominator Gamma sits at a pole.
std::vector<std::complex<double>> singular_factor_coeffs(const Singularity& s,
                                                         int K);

struct CoeffTable {
  std::vector<std::complex<double>> g;  // indices -K..K
  int K = 0;
  double tail_estimate = 0.0;  // max coefficient change under Kf halving

  std::complex<double> at(int k) const {
    if (k < -K || k > K) return 0.0;
    return g[k + K];
  }
};

// Coefficient table of the full symbol, |k| <= K. Singular factors use the
// exact Gamma-ratio coefficients, truncated at an internal order Kf and
// convolved with each other and with the smooth factor. Kf = 0 picks
// max(8K, 4096). Singularities closer than ~1e-2 rad trigger a warning.
CoeffTable symbol_fourier(const FHSymbol& sym, int K, int Kf = 0);

// --- Ising correlation symbols -------------------------------------------

// Diagonal symbol h (argument k), row symbol h_row (arguments alpha_1,
// alpha_2), and the derived coupling constants. winding_* is the power of
// e^{-i theta} split off so the remaining factor is branch-safe; the
// evaluators already include it.
struct IsingSymbols {
  double alpha1, alpha2, k;
  std::function<std::complex<double>(double)> h;      // diagonal
  std::function<std::complex<double>(double)> h_row;  // same-row
  int winding_diag;
  int winding_row;
};

IsingSymbols ising_symbols(double K1, double K2);

// Row symbol at criticality alpha_2 = 1: smooth part
// ((1+alpha1 e^{i theta})/(1+alpha1 e^{-i theta}))^{1/2}, one singularity
// (theta, a, b) = (-pi, 0, -1/2).
FHSymbol ising_critical_row_symbol(double alpha1, int P = 64);

// Contour-shifted high-temperature row symbol: valid for
// alpha1 < 1 < alpha2, alpha1*alpha2 < 1. Returns the shifted symbol
// (singularity (-pi, 1/4, -3/4), smooth c_0 = -ln alpha2) and the
// per-coefficient scale c = alpha2: original a_p = c^{-p} * shifted g_p.
struct TransformedSymbol {
  FHSymbol symbol;
  double scale;
};
TransformedSymbol ising_highT_transformed_symbol(double alpha1, double alpha2,
                                                 int P = 96);

// --- serialization --------------------------------------------------------

std::string symbol_to_json(const FHSymbol& sym);
FHSymbol symbol_from_json(const std::string& text);

}  // namespace fhlab
