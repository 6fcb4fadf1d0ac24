#include "fhlab/physics.hpp"

#include "fhlab/determinants.hpp"
#include "fhlab/quadrature.hpp"
#include "fhlab/special.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fhlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Fourier coefficients of a smooth periodic evaluator, |p| <= K, by plain
// DFT on M uniform samples. Aliasing decays geometrically with the symbol's
// analyticity strip, so M >> K keeps the table at full accuracy.
CoeffTable evaluator_fourier(const std::function<std::complex<double>(double)>& f,
                             int K, int M = 16384) {
  std::vector<std::complex<double>> samples(M);
  for (int j = 0; j < M; ++j) samples[j] = f(2.0 * kPi * j / M);
  std::vector<std::complex<double>> out(M);
  fftw_plan plan = fftw_plan_dft_1d(
      M, reinterpret_cast<fftw_complex*>(samples.data()),
      reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  CoeffTable t;
  t.K = K;
  t.g.resize(2 * K + 1);
  for (int k = -K; k <= K; ++k)
    t.g[k + K] = out[(k + M) % M] / static_cast<double>(M);
  t.tail_estimate = std::abs(out[(K + 1 + M) % M]) / M;
  return t;
}

double barnes_g_32() {
  // G(3/2)
  return std::exp(log_barnes_g(1.5).log_modulus);
}

// Even symbol prod_r |2(cos theta - cos phi_r)| for the box density
// matrices; phi = pi x in the unit-length convention.
FHSymbol box_observable_symbol(double x, double y) {
  FHSymbol sym;
  for (double pos : {x, y}) {
    double phi = kPi * pos;
    sym.singularities.push_back({phi, 0.5, 0.0});
    sym.singularities.push_back({wrap_phase(-phi), 0.5, 0.0});
  }
  return sym;
}

double real_checked(const LogDet& d, const char* what) {
  if (d.zero) return 0.0;
  if (std::abs(wrap_phase(d.phase)) > 1e-6 &&
      std::abs(wrap_phase(d.phase - kPi)) > 1e-6)
    throw std::runtime_error(std::string(what) + ": non-real determinant");
  return d.real_value();
}

// rho^C_{N+1}(x; 0) on the unit circle, x in (0, 1).
double circle_density_matrix(double x, int N, const PrecisionContext& ctx) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("circle density matrix: x in (0,1)");
  FHSymbol sym;
  // |1 + e^{i theta}| |e^{2 pi i x} + e^{i theta}|: zeros at pi and pi+2 pi x
  sym.singularities.push_back({kPi, 0.5, 0.0});
  sym.singularities.push_back({wrap_phase(kPi + 2.0 * kPi * x), 0.5, 0.0});
  CoeffTable g = symbol_fourier(sym, std::max(N, 1));
  LogDet avg = group_average(GroupKind::U, g, N, ctx);
  return real_checked(avg, "circle density matrix");
}

}  // namespace

IsingPoint ising_point(double K1, double K2) {
  if (!(K1 > 0.0 && K2 > 0.0))
    throw std::invalid_argument("ising_point: K1, K2 > 0");
  IsingPoint pt;
  pt.K1 = K1;
  pt.K2 = K2;
  pt.alpha1 = std::exp(-2.0 * K2) * std::tanh(K1);
  pt.alpha2 = std::exp(-2.0 * K2) / std::tanh(K1);
  pt.k = std::sinh(2.0 * K1) * std::sinh(2.0 * K2);
  if (std::abs(pt.alpha2 - 1.0) < 1e-9)
    pt.regime = IsingRegime::Critical;
  else if (pt.alpha2 > 1.0 && pt.alpha1 < 1.0 && pt.alpha1 * pt.alpha2 < 1.0)
    pt.regime = IsingRegime::HighT;
  else
    pt.regime = IsingRegime::Other;
  return pt;
}

double ising_correlation(const IsingPoint& pt, IsingDirection dir, int n,
                         const PrecisionContext& ctx) {
  if (n < 1) throw std::invalid_argument("ising_correlation: n >= 1");
  IsingSymbols syms = ising_symbols(pt.K1, pt.K2);

  CoeffTable g;
  if (pt.regime == IsingRegime::Critical) {
    // jump symbols get the exact Gamma-ratio coefficients
    if (dir == IsingDirection::Row) {
      g = symbol_fourier(ising_critical_row_symbol(pt.alpha1), n);
    } else {
      FHSymbol sym;
      sym.singularities.push_back({-kPi, 0.0, -0.5});
      g = symbol_fourier(sym, n);
    }
  } else if (dir == IsingDirection::Row && pt.regime == IsingRegime::HighT) {
    // the winding symbol makes the raw Toeplitz determinant all-cancellation
    // beyond n ~ 30; the contour-shifted symbol has the same determinant
    // (diagonal similarity by powers of alpha2) without the cancellation
    TransformedSymbol ts =
        ising_highT_transformed_symbol(pt.alpha1, pt.alpha2, std::max(96, n));
    g = symbol_fourier(ts.symbol, n);
  } else {
    const auto& f = (dir == IsingDirection::Row) ? syms.h_row : syms.h;
    g = evaluator_fourier(f, n);
  }

  LogDet det = toeplitz_logdet(g, n, ctx);
  if (det.zero) return 0.0;
  if (std::abs(det.phase) > 1e-8 && std::abs(wrap_phase(det.phase - kPi)) > 1e-8)
    throw std::runtime_error("ising_correlation: correlator is not real");
  return det.real_value();
}

double bose_density_matrix(const DensityMatrixSpec& spec,
                           const PrecisionContext& ctx) {
  const int N = spec.N;
  if (N < 1) throw std::invalid_argument("bose_density_matrix: N >= 1");
  const double x = spec.x, y = spec.y;

  switch (spec.geometry) {
    case Geometry::Circle:
      return circle_density_matrix(x, N, ctx);

    case Geometry::Dirichlet:
    case Geometry::Neumann:
    case Geometry::Mixed: {
      if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
        throw std::invalid_argument("bose_density_matrix: x, y in (0,1)");
      FHSymbol sym = box_observable_symbol(x, y);
      CoeffTable g = symbol_fourier(sym, 2 * N + 2);
      if (spec.geometry == Geometry::Dirichlet) {
        LogDet avg = group_average(GroupKind::Sp, g, N, ctx);
        return 2.0 * std::sin(kPi * x) * std::sin(kPi * y) *
               real_checked(avg, "Dirichlet density matrix");
      }
      if (spec.geometry == Geometry::Neumann) {
        LogDet avg = group_average(GroupKind::OplusEven, g, N, ctx);
        return 0.5 * real_checked(avg, "Neumann density matrix");
      }
      LogDet avg = group_average(GroupKind::OplusOdd, g, N, ctx);
      return 2.0 * std::sin(kPi * x / 2.0) * std::sin(kPi * y / 2.0) *
             real_checked(avg, "mixed density matrix");
    }

    case Geometry::Harmonic: {
      // rho^H_{N+1}(sqrt(2N) X, sqrt(2N) Y)
      //   = (N+1) (2N)^{-1/2} e^{-N(X^2+Y^2)} G_N[|u-X||u-Y|] / G_{N+1}[1]
      // with weight e^{-2N u^2}.
      if (!(x > -1.0 && x < 1.0 && y > -1.0 && y < 1.0))
        throw std::invalid_argument("bose_density_matrix: X, Y in (-1,1)");
      WeightSpec w;
      w.kind = WeightSpec::Gauss;
      w.a = std::sqrt(2.0 * N);
      std::vector<ChargedPoint> charges{{x, 0.5}, {y, 0.5}};
      PrecisionContext xctx = PrecisionContext::extended();
      auto mu = weighted_moments(w, charges, {}, 2 * N - 2, xctx);
      LogDet h = hankel_logdet(mu, N, ctx);
      double log_gn = std::lgamma(N + 1.0) + h.log_modulus;
      double log_norm = gaussian_norm_scaled(N + 1.0, w.a).log_modulus;
      double lv = std::log(N + 1.0) - 0.5 * std::log(2.0 * N) -
                  N * (x * x + y * y) + log_gn - log_norm;
      return real_checked(LogDet::from_log(lv, h.phase),
                          "harmonic density matrix");
    }

    case Geometry::HalfLine: {
      // rho^L_{N+1}(2 sqrt(N) X, 2 sqrt(N) Y): substitute t = u^2 so the
      // half-line integrals become Laguerre-weight moment Hankels,
      //   L_N[f(u)] = 2^{-N} int prod f(sqrt t) t^{a'-1/2} e^{-4Nt} Delta^2.
      if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
        throw std::invalid_argument("bose_density_matrix: X, Y in (0,1)");
      WeightSpec w;
      w.kind = WeightSpec::Laguerre;
      w.c = 4.0 * N;
      w.aprime = spec.aprime;
      std::vector<ChargedPoint> charges{{x * x, 0.5}, {y * y, 0.5}};
      PrecisionContext xctx = PrecisionContext::extended();
      auto mu = weighted_moments(w, charges, {}, 2 * N - 2, xctx);
      LogDet h = hankel_logdet(mu, N, ctx);
      double log_ln = -N * std::numbers::ln2 + std::lgamma(N + 1.0) +
                      h.log_modulus;
      double log_norm = -(N + 1.0) * std::numbers::ln2 +
                        laguerre_norm(N + 1.0, w.c, spec.aprime).log_modulus;
      double lv = std::log(N + 1.0) - std::log(2.0 * std::sqrt(double(N))) -
                  2.0 * N * (x * x + y * y) +
                  spec.aprime * std::log(x * y) + log_ln - log_norm;
      return real_checked(LogDet::from_log(lv, h.phase),
                          "half-line density matrix");
    }
  }
  throw std::logic_error("bose_density_matrix: unknown geometry");
}

double bose_lambda0(Geometry geometry, int N, bool asymptotic,
                    const PrecisionContext& ctx) {
  if (geometry != Geometry::Circle)
    throw std::invalid_argument(
        "bose_lambda0: defined for the translation-invariant circle only");
  if (N < 2) throw std::invalid_argument("bose_lambda0: N >= 2");

  if (asymptotic) {
    double g4 = std::pow(barnes_g_32(), 4.0);
    double integral = integrate_with_singularities(
        [](double X) { return 1.0 / std::sqrt(std::sin(kPi * X)); }, 0.0, 1.0,
        {0.0, 1.0}, 1e-10);
    return (N + 1.0) * g4 / std::sqrt(2.0 * N) * integral;
  }

  // exact profile is smooth on (0,1) and symmetric about 1/2
  return integrate(
      [&](double X) { return circle_density_matrix(X, N, ctx); }, 0.0, 1.0,
      1e-7, 0.0, 8);
}

double lue_density_matrix_asymptotic(double X, double Y, int N) {
  if (!(X > 0.0 && X < 1.0 && Y > 0.0 && Y < 1.0))
    throw std::invalid_argument("lue_density_matrix_asymptotic: X, Y in (0,1)");
  if (X == Y)
    throw std::invalid_argument(
        "lue_density_matrix_asymptotic: diagonal X == Y excluded");
  double g4 = std::pow(barnes_g_32(), 4.0);
  return 2.0 * std::sqrt(double(N)) * g4 / kPi *
         std::pow(X * Y, 0.25) / std::sqrt(std::abs(X * X - Y * Y)) *
         std::pow(1.0 - X * X, 0.125) * std::pow(1.0 - Y * Y, 0.125);
}

double lue_occupation_scale(int N) {
  double g4 = std::pow(barnes_g_32(), 4.0);
  return std::sqrt(double(N)) * g4 / kPi;
}

}  // namespace fhlab
