#pragma once

#include "fhlab/ensemble.hpp"
#include "fhlab/precision.hpp"
#include "fhlab/symbol.hpp"

namespace fhlab {

// Square-lattice Ising couplings with the derived correlator parameters.
enum class IsingRegime { Critical, HighT, Other };

struct IsingPoint {
  double K1 = 0.0, K2 = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, k = 0.0;
  IsingRegime regime = IsingRegime::Other;
};

IsingPoint ising_point(double K1, double K2);

enum class IsingDirection { Diagonal, Row };

// Spin-spin correlator <sigma_00 sigma_nn> (diagonal) or <sigma_00 sigma_0n>
// (row) as an n x n Toeplitz determinant of the correlator symbol. Smooth
// regimes use direct Fourier analysis of the symbol; at criticality the
// exact jump-factor coefficients are used instead.
double ising_correlation(const IsingPoint& pt, IsingDirection dir, int n,
                         const PrecisionContext& ctx);

// Ground-state density matrices of impenetrable bosons. Box geometries use
// the unit-length convention: x and y are the fractional positions x/L in
// (0, 1). Harmonic positions are in bulk-scaled units X = x/sqrt(2N) in
// (-1, 1); the half line uses X = x/(2 sqrt(N)) in (0, 1) with the x^{-2}
// repulsion exponent aprime.
enum class Geometry { Circle, Dirichlet, Neumann, Mixed, Harmonic, HalfLine };

struct DensityMatrixSpec {
  Geometry geometry = Geometry::Circle;
  int N = 2;       // particles minus one
  double x = 0.3;  // for Circle only x is used (one point fixed at 0)
  double y = 0.3;
  double aprime = 0.5;
};

// Exact finite-N density matrix value rho_{N+1}(x, y), including all
// prefactors. Circle reduces to a U(N) average, the box geometries to
// Sp/O^+ averages, and the harmonic/half-line cases to moment-Hankel
// determinant ratios.
double bose_density_matrix(const DensityMatrixSpec& spec,
                           const PrecisionContext& ctx);

// Zero-momentum occupation lambda_0 = L int_0^1 rho_{N+1}(LX; 0) dX.
// Defined by translation invariance, so only the circle geometry is
// admitted. asymptotic = false integrates the exact density matrix;
// asymptotic = true integrates the closed-form large-N profile
//   rho_0 G^4(3/2) (2 pi)^{-1/2} (pi / (N sin pi X))^{1/2},  rho_0 = (N+1)/L.
double bose_lambda0(Geometry geometry, int N, bool asymptotic,
                    const PrecisionContext& ctx);

// Large-N closed form for the scaled half-line density matrix
// 2 sqrt(N) rho^L_{N+1}(2 sqrt(N) X, 2 sqrt(N) Y); requires 0 < X != Y < 1.
double lue_density_matrix_asymptotic(double X, double Y, int N);

// Occupation scale of the half-line effective single particle states:
// lambda_j = sqrt(N) G^4(3/2) / pi * scaled eigenvalue.
double lue_occupation_scale(int N);

}  // namespace fhlab
