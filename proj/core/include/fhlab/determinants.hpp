#pragma once

#include "fhlab/log_value.hpp"
#include "fhlab/precision.hpp"
#include "fhlab/symbol.hpp"

#include <string>
#include <vector>

namespace fhlab {

// det[g_{j-k}]_{j,k=0..n-1}; table must cover |k| <= n-1.
LogDet toeplitz_logdet(const CoeffTable& g, int n, const PrecisionContext& ctx);

// Toeplitz +- Hankel determinants over even coefficient tables.
//   OminusOdd: det[g_{j-k} + g_{j+k+1}]_{0..N-1}
//   OplusOdd:  same after replacing g_k -> (-1)^k g_k
//   OplusEven: det[g_{j-k} + g_{j+k}]_{0..N-1}
//   Sp:        det[g_{j-k} - g_{j+k+2}]_{0..N-1}
enum class THVariant { OplusOdd, OminusOdd, OplusEven, Sp };

LogDet toeplitz_hankel_logdet(THVariant v, const CoeffTable& g, int N,
                              const PrecisionContext& ctx);

// Raw dense log-scaled LU determinant of a general complex matrix given in
// row-major order, at the requested precision tier.
LogDet dense_logdet(const std::vector<std::complex<double>>& m, int n,
                    const PrecisionContext& ctx);

// --- moment-Hankel machinery ---------------------------------------------

// Integration weight: Gauss is e^{-a^2 x^2} on the real line; Laguerre is
// x^{aprime - 1/2} e^{-c x} on [0, inf); Jacobi is (1+x)^{l1} (1-x)^{l2}
// on [-1, 1].
struct WeightSpec {
  enum Kind { Gauss, Laguerre, Jacobi } kind;
  double a = 1.0;       // Gauss scale
  double c = 1.0;       // Laguerre exponential rate
  double aprime = 0.5;  // Laguerre power parameter, aprime > -1/2
  double l1 = 0.0;      // Jacobi power of (1+x), l1 > -1
  double l2 = 0.0;      // Jacobi power of (1-x), l2 > -1
};

// Extra factor |x - y|^{2q}; q > -1/2.
struct ChargedPoint {
  double y;
  double q;
};

// Smooth factor e^{a(x)} with a(x) a polynomial, so it can be evaluated at
// the extended tier without losing digits.
struct SmoothPoly {
  std::vector<double> coeff;  // a(x) = sum coeff[j] x^j

  template <class R>
  R eval(const R& x) const {
    R v = 0;
    for (size_t j = coeff.size(); j-- > 0;) v = v * x + coeff[j];
    return v;
  }
  bool empty() const { return coeff.empty(); }
};

// mu_k = int x^k prod_r |x - y_r|^{2 q_r} e^{a(x)} dmu_w(x), k = 0..kmax,
// computed at the ctx tier (extended moments are required for Hankel
// determinants beyond n = 8).
std::vector<real_x> weighted_moments(const WeightSpec& w,
                                     const std::vector<ChargedPoint>& extras,
                                     const SmoothPoly& smooth, int kmax,
                                     const PrecisionContext& ctx);

// det[mu_{j+k}]_{j,k=0..n-1}. Extended precision is forced for n > 8.
LogDet hankel_logdet(const std::vector<real_x>& moments, int n,
                     const PrecisionContext& ctx);

// CSV round-trip for moment tables, columns k,re,im (im always 0 here; kept
// for schema stability).
std::string moments_to_csv(const std::vector<real_x>& moments);
std::vector<real_x> moments_from_csv(const std::string& text);

}  // namespace fhlab
