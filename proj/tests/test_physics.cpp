#include "fhlab/physics.hpp"
#include "fhlab/determinants.hpp"
#include "fhlab/quadrature.hpp"
#include "fhlab/special.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace fhlab;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double barnes_g4_32() { return std::exp(4.0 * log_barnes_g(1.5).log_modulus); }

}  // namespace

TEST_SUITE_BEGIN("physics");

TEST_CASE("coupling-derived parameters and regime classification") {
  // criticality: tanh K1 = e^{-2 K2}  <=>  alpha2 = 1  <=>  k = 1
  double K1 = 0.4;
  double K2c = -0.5 * std::log(std::tanh(K1));
  IsingPoint crit = ising_point(K1, K2c);
  CHECK(crit.alpha2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(crit.k == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(crit.regime == IsingRegime::Critical);

  IsingPoint hot = ising_point(0.2, 0.25);
  CHECK(hot.alpha2 > 1.0);
  CHECK(hot.regime == IsingRegime::HighT);
  CHECK(hot.alpha1 * hot.alpha2 == doctest::Approx(std::exp(-4.0 * 0.25)).epsilon(1e-12));

  CHECK(ising_point(0.8, 0.9).regime == IsingRegime::Other);
}

TEST_CASE("critical diagonal correlator starts at 2/pi and decreases") {
  double K1 = 0.4;
  double K2c = -0.5 * std::log(std::tanh(K1));
  IsingPoint pt = ising_point(K1, K2c);
  auto ctx = PrecisionContext::doubles();
  double prev = ising_correlation(pt, IsingDirection::Diagonal, 1, ctx);
  CHECK(prev == doctest::Approx(2.0 / kPi).epsilon(1e-10));
  for (int n = 2; n <= 6; ++n) {
    double cur = ising_correlation(pt, IsingDirection::Diagonal, n, ctx);
    CHECK(cur > 0.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("high-temperature row route agrees with the raw symbol determinant") {
  // the shipped path goes through the contour-shifted symbol; at small n the
  // raw winding symbol is still numerically safe, so the two must agree
  IsingPoint pt = ising_point(0.2, 0.25);
  REQUIRE(pt.regime == IsingRegime::HighT);
  IsingSymbols syms = ising_symbols(pt.K1, pt.K2);

  int n = 8;
  const int M = 8192;
  CoeffTable g;
  g.K = n;
  g.g.assign(2 * n + 1, 0.0);
  for (int k = -n; k <= n; ++k) {
    cd acc = 0.0;
    for (int j = 0; j < M; ++j) {
      double th = 2.0 * kPi * j / M;
      acc += syms.h_row(th) * std::exp(cd(0, -k * th));
    }
    g.g[k + n] = acc / double(M);
  }
  auto ctx = PrecisionContext::doubles();
  double raw = toeplitz_logdet(g, n, ctx).real_value();
  double shipped = ising_correlation(pt, IsingDirection::Row, n, ctx);
  CHECK(shipped == doctest::Approx(raw).epsilon(1e-8));
}

TEST_CASE("circle density matrix: boundary value and symmetry") {
  auto ctx = PrecisionContext::doubles();
  DensityMatrixSpec s;
  s.geometry = Geometry::Circle;
  s.N = 8;
  s.x = 1e-4;
  // coincident points give the constant particle density N + 1
  CHECK(bose_density_matrix(s, ctx) == doctest::Approx(9.0).epsilon(1e-3));
  s.x = 0.23;
  double a = bose_density_matrix(s, ctx);
  s.x = 1.0 - 0.23;
  CHECK(a == doctest::Approx(bose_density_matrix(s, ctx)).epsilon(1e-10));
}

TEST_CASE("circle density matrix at N = 2 against the eigenvalue integral") {
  int N = 2;
  double x = 0.4;
  auto obs = [&](double th) {
    return std::abs(2.0 * std::sin(kPi * x - th / 2.0)) * std::abs(2.0 * std::sin(th / 2.0));
  };
  auto nested = [&](bool with_obs) {
    return integrate(
        [&](double t1) {
          return integrate(
              [&](double t2) {
                double vd = std::norm(std::polar(1.0, t2) - std::polar(1.0, t1));
                return with_obs ? vd * obs(t1) * obs(t2) : vd;
              },
              0.0, 2.0 * kPi, 1e-9);
        },
        0.0, 2.0 * kPi, 1e-9);
  };
  double expect = nested(true) / nested(false);
  DensityMatrixSpec s;
  s.geometry = Geometry::Circle;
  s.N = N;
  s.x = x;
  CHECK(bose_density_matrix(s, PrecisionContext::doubles()) ==
        doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("Dirichlet box at N = 1 from the two-particle ground state") {
  // rho_2(x, y) = int_0^1 |D(x,t)| |D(y,t)| dt with the Slater determinant
  // D(u, t) of the two lowest box modes
  double x = 0.3, y = 0.55;
  auto phi = [](int k, double u) { return std::sqrt(2.0) * std::sin(k * kPi * u); };
  auto D = [&](double u, double t) {
    return phi(1, u) * phi(2, t) - phi(2, u) * phi(1, t);
  };
  double expect = integrate(
      [&](double t) { return std::abs(D(x, t)) * std::abs(D(y, t)); }, 0.0, 1.0,
      1e-10);

  DensityMatrixSpec s;
  s.geometry = Geometry::Dirichlet;
  s.N = 1;
  s.x = x;
  s.y = y;
  CHECK(bose_density_matrix(s, PrecisionContext::doubles()) ==
        doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("box density matrices are symmetric in x and y") {
  auto ctx = PrecisionContext::doubles();
  for (Geometry geo : {Geometry::Dirichlet, Geometry::Neumann, Geometry::Mixed}) {
    DensityMatrixSpec s;
    s.geometry = geo;
    s.N = 4;
    s.x = 0.3;
    s.y = 0.62;
    double a = bose_density_matrix(s, ctx);
    std::swap(s.x, s.y);
    CHECK(a == doctest::Approx(bose_density_matrix(s, ctx)).epsilon(1e-9));
    CHECK(a > 0.0);
  }
}

TEST_CASE("box geometries factorize the unitary average") {
  // sin(pi x) sin(pi y) <prod obs>_{U(2N+1)} equals the product of the
  // Neumann (N+1) and Dirichlet (N) density matrices
  int N = 2;
  double x = 0.37, y = 0.61;
  auto ctx = PrecisionContext::doubles();
  FHSymbol sym;
  for (double p : {x, y}) {
    sym.singularities.push_back({kPi * p, 0.5, 0.0});
    sym.singularities.push_back({wrap_phase(-kPi * p), 0.5, 0.0});
  }
  CoeffTable g = symbol_fourier(sym, 2 * N + 4);
  LogDet avg = group_average(GroupKind::U, g, 2 * N + 1, ctx);
  double lhs = std::sin(kPi * x) * std::sin(kPi * y) * avg.real_value();

  DensityMatrixSpec sn;
  sn.geometry = Geometry::Neumann;
  sn.N = N + 1;
  sn.x = x;
  sn.y = y;
  DensityMatrixSpec sd = sn;
  sd.geometry = Geometry::Dirichlet;
  sd.N = N;
  double rhs = bose_density_matrix(sn, ctx) * bose_density_matrix(sd, ctx);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("harmonic trap at N = 2 against two-dimensional quadrature") {
  int N = 2;
  double X = 0.25, Y = -0.4;
  double a2 = 2.0 * N;  // weight e^{-2N u^2}
  auto obs = [&](double u) { return std::abs(u - X) * std::abs(u - Y); };
  double gn = integrate_with_singularities(
      [&](double u1) {
        return integrate_with_singularities(
            [&](double u2) {
              return obs(u1) * obs(u2) * (u1 - u2) * (u1 - u2) *
                     std::exp(-a2 * (u1 * u1 + u2 * u2));
            },
            -4.0, 4.0, {X, Y}, 1e-9);
      },
      -4.0, 4.0, {X, Y}, 1e-9);
  double expect = (N + 1.0) / std::sqrt(2.0 * N) * std::exp(-N * (X * X + Y * Y)) *
                  gn / std::exp(gaussian_norm_scaled(N + 1.0, std::sqrt(a2)).log_modulus);

  DensityMatrixSpec s;
  s.geometry = Geometry::Harmonic;
  s.N = N;
  s.x = X;
  s.y = Y;
  CHECK(bose_density_matrix(s, PrecisionContext::doubles()) ==
        doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("half line at N = 2 against two-dimensional quadrature") {
  int N = 2;
  double X = 0.35, Y = 0.6, aprime = 0.5;
  auto obs = [&](double u) { return std::abs(u * u - X * X) * std::abs(u * u - Y * Y); };
  double ln = integrate_with_singularities(
      [&](double u1) {
        return integrate_with_singularities(
            [&](double u2) {
              double vd = (u1 * u1 - u2 * u2);
              return obs(u1) * obs(u2) * vd * vd *
                     std::pow(u1 * u2, 2.0 * aprime) *
                     std::exp(-4.0 * N * (u1 * u1 + u2 * u2));
            },
            0.0, 3.0, {0.0, X, Y}, 1e-9);
      },
      0.0, 3.0, {0.0, X, Y}, 1e-9);
  double log_norm = -(N + 1.0) * std::numbers::ln2 +
                    laguerre_norm(N + 1.0, 4.0 * N, aprime).log_modulus;
  double expect = (N + 1.0) / (2.0 * std::sqrt(double(N))) *
                  std::exp(-2.0 * N * (X * X + Y * Y)) * std::pow(X * Y, aprime) *
                  ln / std::exp(log_norm);

  DensityMatrixSpec s;
  s.geometry = Geometry::HalfLine;
  s.N = N;
  s.x = X;
  s.y = Y;
  s.aprime = aprime;
  CHECK(bose_density_matrix(s, PrecisionContext::doubles()) ==
        doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("box geometries approach the universal off-diagonal profile") {
  int N = 32;
  double x = 0.35, y = 0.65;
  double X = (1.0 + std::cos(kPi * x)) / 2.0, Y = (1.0 + std::cos(kPi * y)) / 2.0;
  double pred = (N + 1.0) * barnes_g4_32() / std::sqrt(2.0 * N) *
                std::pow(X * (1.0 - X), 0.125) * std::pow(Y * (1.0 - Y), 0.125) /
                std::sqrt(std::abs(X - Y));
  auto ctx = PrecisionContext::doubles();
  for (Geometry geo : {Geometry::Dirichlet, Geometry::Neumann, Geometry::Mixed}) {
    DensityMatrixSpec s;
    s.geometry = geo;
    s.N = N;
    s.x = x;
    s.y = y;
    double ratio = bose_density_matrix(s, ctx) / pred;
    CHECK(std::abs(ratio - 1.0) < 0.06);
  }
}

TEST_CASE("half-line closed form tracks the exact scaled density matrix") {
  double X = 0.4, Y = 0.7;
  auto ctx = PrecisionContext::doubles();
  auto scaled_ratio = [&](int N) {
    DensityMatrixSpec s;
    s.geometry = Geometry::HalfLine;
    s.N = N;
    s.x = X;
    s.y = Y;
    double exact = 2.0 * std::sqrt(double(N)) * bose_density_matrix(s, ctx);
    return exact / lue_density_matrix_asymptotic(X, Y, N);
  };
  double r16 = scaled_ratio(16);
  double r32 = scaled_ratio(32);
  CHECK(std::abs(r32 - 1.0) < 0.05);
  CHECK(std::abs(r32 - 1.0) < std::abs(r16 - 1.0));
}

TEST_CASE("occupation scale and asymptotic-profile guards") {
  CHECK(lue_occupation_scale(25) ==
        doctest::Approx(5.0 * barnes_g4_32() / kPi).epsilon(1e-12));
  CHECK_THROWS(lue_density_matrix_asymptotic(0.5, 0.5, 16));
  CHECK_THROWS(bose_lambda0(Geometry::Dirichlet, 8, true, PrecisionContext::doubles()));
}

TEST_CASE("exact zero-momentum occupation matches a direct profile sum") {
  // trapezoid on the smooth symmetric profile vs the adaptive route
  int N = 4;
  auto ctx = PrecisionContext::doubles();
  double adaptive = bose_lambda0(Geometry::Circle, N, false, ctx);
  int M = 64;
  double trap = 0.0;
  for (int i = 0; i < M; ++i) {
    DensityMatrixSpec s;
    s.geometry = Geometry::Circle;
    s.N = N;
    s.x = (i + 0.5) / M;
    trap += bose_density_matrix(s, ctx);
  }
  trap /= M;
  CHECK(adaptive == doctest::Approx(trap).epsilon(1e-5));
}

TEST_SUITE_END();
