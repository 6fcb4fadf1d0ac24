#pragma once

#include "fhlab/log_value.hpp"

namespace fhlab {

// log Gamma(x) for real x off the poles at 0, -1, -2, ...
LogValue log_gamma(double x);

// {log|Gamma(x)|, sign}; sign = 0 flags a pole. Used where reciprocal
// Gamma factors must evaluate to exact zeros.
struct SignedLog {
  double log_abs;
  int sign;  // +1, -1, or 0 at a pole
};
SignedLog log_gamma_signed(double x);

// log of binomial(s, k) = Gamma(s+1)/(Gamma(k+1) Gamma(s-k+1)) for real s,
// integer k >= 0; exact zero when Gamma(s-k+1) sits at a pole.
SignedLog log_binomial(double s, int k);

// log G(z) for z > 0, Barnes G. Recursion G(z+1) = Gamma(z) G(z) down to a
// window where the large-z expansion is accurate.
LogValue log_barnes_g(double z);

// log of G(n+1+a)/G(n+1+b) to o(1) for large n.
double barnes_g_ratio_asymptotic(double a, double b, int n);

// f_n(alpha, c) = prod_{j=0}^{n-1} (alpha + jc)! / (jc)!  in log form.
LogValue selberg_f(int n, double alpha, double c);

// log f_{rn}(alpha, s/r) composed from the integer-c expansion; valid to
// o(1) as n -> infinity; gcd(s, r) = 1.
LogValue selberg_f_asymptotic(double alpha, int s, int r, int n);

// Morris integral M_n(a, b) in Barnes-G closed form.
LogValue morris_m(int n, double a, double b);

// Jacobi-weight normalization H_{n,a,b}[1] in Barnes-G closed form; a,b > -1.
LogValue jacobi_norm(int n, double a, double b);

// C_{n,beta} = Gamma(n beta/2 + 1) / Gamma(beta/2 + 1)^n.
LogValue cbeta_norm(int n, double beta);

// Gaussian-weight normalization G_{n,1}[1] = 2^{-n(n-1)/2} pi^{n/2} G(n+2);
// real n so shifted sizes n + q are admissible.
LogValue gaussian_norm(double n);

// G_{n,a}[1] = a^{-n^2} G_{n,1}[1].
LogValue gaussian_norm_scaled(double n, double a);

// Laguerre-weight normalization: integral with weight x^{a'-1/2} e^{-c x},
// = c^{-N^2 - N(a'-1/2)} G(N+2) G(a'+N+1/2) / G(a'+1/2).
LogValue laguerre_norm(double n, double c, double aprime);

}  // namespace fhlab
