#include "fhlab/fourier.hpp"
#include "fhlab/quadrature.hpp"
#include "fhlab/symbol.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace fhlab;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Fourier coefficient by quadrature, splitting at the singular angles.
cd coeff_by_quadrature(const FHSymbol& sym, int k) {
  std::vector<double> pts{-kPi, kPi};
  for (const auto& s : sym.singularities) pts.push_back(s.theta);
  double re = integrate_with_singularities(
      [&](double th) { return (symbol_eval(sym, th) * std::exp(cd(0, -k * th))).real(); },
      -kPi, kPi, pts, 1e-11);
  double im = integrate_with_singularities(
      [&](double th) { return (symbol_eval(sym, th) * std::exp(cd(0, -k * th))).imag(); },
      -kPi, kPi, pts, 1e-11);
  return cd(re, im) / (2.0 * kPi);
}

}  // namespace

TEST_SUITE_BEGIN("fourier");

TEST_CASE("FourierSeries eval and truncation") {
  FourierSeries s(2);
  s.set(0, 0.3);
  s.set(1, cd(0.1, 0.2));
  s.set(-1, cd(0.1, -0.2));
  s.set(2, 0.05);
  double th = 0.9;
  cd expect = 0.3 + cd(0.1, 0.2) * std::exp(cd(0, th)) +
              cd(0.1, -0.2) * std::exp(cd(0, -th)) + 0.05 * std::exp(cd(0, 2 * th));
  CHECK(std::abs(s.eval(th) - expect) < 1e-14);
  CHECK(std::abs(s.truncated(1).eval(th) - (expect - 0.05 * std::exp(cd(0, 2 * th)))) < 1e-14);
}

TEST_CASE("smooth_log_coeffs recovers a known series") {
  double t = 0.37;
  auto s = smooth_log_coeffs(
      [&](double th) { return cd(2.0 * t * std::cos(th), 0.0); }, 16);
  CHECK(std::abs(s.c(1) - t) < 1e-12);
  CHECK(std::abs(s.c(-1) - t) < 1e-12);
  CHECK(std::abs(s.c(0)) < 1e-12);
  CHECK(std::abs(s.c(5)) < 1e-12);
}

TEST_CASE("log_pow_factor sums back to the logarithm") {
  double e = 0.7;
  cd zeta = 0.4;
  auto s = log_pow_factor(e, zeta, 1, 64);
  for (double th : {0.3, 2.0, -1.1}) {
    cd expect = e * std::log(1.0 + zeta * std::exp(cd(0, th)));
    CHECK(std::abs(s.eval(th) - expect) < 1e-12);
  }
  // one-sided: no negative coefficients for sign = +1
  CHECK(std::abs(s.c(-1)) == 0.0);
}

TEST_CASE("szego_sum of 2t cos is t^2") {
  double t = 0.5;
  auto s = two_t_cos(t, 8);
  auto sum = szego_sum(s);
  CHECK(sum.value.real() == doctest::Approx(t * t).epsilon(1e-14));
  // the condition sum runs over both signs of p
  CHECK(szego_condition(s) == doctest::Approx(2.0 * t * t).epsilon(1e-14));
}

TEST_CASE("Wiener-Hopf split reassembles the series") {
  auto s = log_pow_factor(0.5, 0.6, 1, 48) + log_pow_factor(-0.3, cd(0.2, 0.1), -1, 48);
  for (double th : {0.4, -2.2}) {
    auto split = wiener_hopf_split(s, th);
    cd total = split.log_a_plus + split.log_a_minus + s.c(0);
    CHECK(std::abs(total - s.eval(th)) < 1e-12);
  }
}

TEST_CASE("exp_series_coeffs of 2t cos gives Bessel I_k") {
  double t = 0.6;
  auto s = two_t_cos(t, 4);
  auto table = exp_series_coeffs(s, 6);
  // e^{2t cos theta} = sum_k I_k(2t) e^{ik theta}
  for (int k = -6; k <= 6; ++k) {
    double expect = std::cyl_bessel_i(std::abs(k), 2.0 * t);
    CHECK(std::abs(table[k + 6] - expect) < 1e-12);
  }
}

TEST_CASE("convolve_tables against a hand product") {
  // (1 + 2z)(3 + z^{-1}) = z^{-1}*3... expanded over z = e^{i theta}
  std::vector<cd> a{0.0, 1.0, 2.0};  // indices -1..1
  std::vector<cd> b{1.0, 3.0, 0.0};
  auto c = convolve_tables(a, 1, b, 1, 2);
  // product: (1 + 2z)(z^{-1} + 3) = z^{-1} + 3 + 2 + 6z
  CHECK(std::abs(c[1] - cd(1.0)) < 1e-14);   // k = -1
  CHECK(std::abs(c[2] - cd(5.0)) < 1e-14);   // k = 0
  CHECK(std::abs(c[3] - cd(6.0)) < 1e-14);   // k = 1
  CHECK(std::abs(c[0]) < 1e-14);
  CHECK(std::abs(c[4]) < 1e-14);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("symbol");

TEST_CASE("singular factor coefficients against quadrature") {
  FHSymbol sym;
  sym.singularities.push_back({0.7, 0.4, 0.15});
  auto g = singular_factor_coeffs(sym.singularities[0], 4);
  for (int k : {-3, 0, 2}) {
    cd expect = coeff_by_quadrature(sym, k);
    CHECK(std::abs(g[k + 4] - expect) < 1e-8);
  }
}

TEST_CASE("pure polynomial factor has one-sided exact-zero coefficients") {
  // (a, b) = (1/2, 1/2) is the factor 1 + e^{i(theta - theta_r - pi)}
  auto g = singular_factor_coeffs({0.0, 0.5, 0.5}, 4);
  CHECK(std::abs(g[4 - 1]) == 0.0);
  CHECK(std::abs(g[4 - 3]) == 0.0);
  CHECK(std::abs(g[4 + 0] - cd(1.0)) < 1e-14);
  CHECK(std::abs(g[4 + 1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symbol_fourier of a composite symbol against quadrature") {
  FHSymbol sym;
  sym.smooth_log = two_t_cos(0.3, 8);
  sym.singularities.push_back({1.1, 0.3, 0.0});
  sym.singularities.push_back({-2.0, 0.25, -0.2});
  CoeffTable g = symbol_fourier(sym, 3);
  for (int k : {-2, 0, 3}) {
    cd expect = coeff_by_quadrature(sym, k);
    CHECK(std::abs(g.at(k) - expect) < 1e-7);
  }
  CHECK(g.tail_estimate < 1e-6);
}

TEST_CASE("symbol JSON round trip") {
  FHSymbol sym;
  sym.smooth_log = FourierSeries(1);
  sym.smooth_log.set(1, cd(0.2, -0.1));
  sym.smooth_log.set(-1, cd(0.2, 0.1));
  sym.singularities.push_back({0.5, 0.25, -0.125});
  FHSymbol back = symbol_from_json(symbol_to_json(sym));
  REQUIRE(back.singularities.size() == 1);
  CHECK(back.singularities[0].theta == doctest::Approx(0.5));
  CHECK(back.singularities[0].a == doctest::Approx(0.25));
  CHECK(back.singularities[0].b == doctest::Approx(-0.125));
  for (double th : {0.1, 1.9}) CHECK(std::abs(back.smooth_log.eval(th) - sym.smooth_log.eval(th)) < 1e-12);
}

TEST_CASE("critical row symbol matches the raw evaluator") {
  double K1 = 0.4;
  double K2c = -0.5 * std::log(std::tanh(K1));
  IsingSymbols syms = ising_symbols(K1, K2c);
  FHSymbol sym = ising_critical_row_symbol(syms.alpha1);
  for (double th : {0.5, 1.7, -2.4}) {
    cd raw = syms.h_row(th);
    cd structured = symbol_eval(sym, th);
    CHECK(std::abs(raw - structured) < 1e-8);
  }
}

TEST_CASE("high-temperature contour shift preserves coefficients up to scale") {
  double alpha1 = 0.2, alpha2 = 2.0;
  double K1 = std::atanh(std::sqrt(alpha1 / alpha2));
  double K2 = -0.25 * std::log(alpha1 * alpha2);
  IsingSymbols syms = ising_symbols(K1, K2);
  TransformedSymbol ts = ising_highT_transformed_symbol(alpha1, alpha2);
  CHECK(ts.scale == doctest::Approx(alpha2).epsilon(1e-12));

  // a_p = scale^{-p} g_p, with a_p from a plain DFT of the raw evaluator
  CoeffTable g = symbol_fourier(ts.symbol, 3);
  const int M = 16384;
  for (int p : {-2, 0, 1, 3}) {
    cd ap = 0.0;
    for (int j = 0; j < M; ++j) {
      double th = 2.0 * kPi * j / M;
      ap += syms.h_row(th) * std::exp(cd(0, -p * th));
    }
    ap /= M;
    cd shifted = std::pow(ts.scale, -p) * g.at(p);
    CHECK(std::abs(ap - shifted) < 1e-6);
  }
}

TEST_SUITE_END();
