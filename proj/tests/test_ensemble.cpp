#include "fhlab/ensemble.hpp"
#include "fhlab/quadrature.hpp"
#include "fhlab/special.hpp"
#include "fhlab/symbol.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

using namespace fhlab;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Even real test symbol with a decaying spectrum.
double even_symbol(double th) { return std::exp(0.4 * std::cos(th) + 0.1 * std::cos(2.0 * th)); }

CoeffTable even_table(int K) {
  FourierSeries s(2);
  s.set(1, 0.2);
  s.set(-1, 0.2);
  s.set(2, 0.05);
  s.set(-2, 0.05);
  auto coeffs = exp_series_coeffs(s, K);
  CoeffTable t;
  t.K = K;
  t.g = std::move(coeffs);
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("ensemble");

TEST_CASE("group averages at the smallest size against Weyl-measure quadrature") {
  auto ctx = PrecisionContext::doubles();
  CoeffTable g = even_table(8);

  auto avg = [&](GroupKind kind) {
    return group_average(kind, g, 1, ctx).real_value();
  };
  auto weyl = [&](auto density) {
    double num = integrate([&](double th) { return even_symbol(th) * density(th); },
                           0.0, kPi, 1e-11);
    double den = integrate(density, 0.0, kPi, 1e-11);
    return num / den;
  };

  // U(1): plain mean
  CHECK(avg(GroupKind::U) ==
        doctest::Approx(weyl([](double) { return 1.0; })).epsilon(1e-10));
  // Sp(1): density sin^2
  CHECK(avg(GroupKind::Sp) ==
        doctest::Approx(weyl([](double th) { return std::sin(th) * std::sin(th); }))
            .epsilon(1e-10));
  // O+(2): free rotation angle, uniform density
  CHECK(avg(GroupKind::OplusEven) ==
        doctest::Approx(weyl([](double) { return 1.0; })).epsilon(1e-10));
  // O+(3): density 1 - cos, O-(3): density 1 + cos
  CHECK(avg(GroupKind::OplusOdd) ==
        doctest::Approx(weyl([](double th) { return 1.0 - std::cos(th); })).epsilon(1e-10));
  CHECK(avg(GroupKind::OminusOdd) ==
        doctest::Approx(weyl([](double th) { return 1.0 + std::cos(th); })).epsilon(1e-10));
}

TEST_CASE("U(2) and Sp(2) averages against two-dimensional quadrature") {
  auto ctx = PrecisionContext::doubles();
  CoeffTable g = even_table(8);

  auto pair_avg = [&](auto density) {
    auto outer = [&](bool with_symbol) {
      return integrate(
          [&](double t1) {
            return integrate(
                [&](double t2) {
                  double d = density(t1, t2);
                  return with_symbol ? even_symbol(t1) * even_symbol(t2) * d : d;
                },
                0.0, 2.0 * kPi, 1e-9);
          },
          0.0, 2.0 * kPi, 1e-9);
    };
    return outer(true) / outer(false);
  };

  double u2 = pair_avg([](double t1, double t2) {
    return std::norm(std::exp(cd(0, t1)) - std::exp(cd(0, t2)));
  });
  CHECK(group_average(GroupKind::U, g, 2, ctx).real_value() ==
        doctest::Approx(u2).epsilon(1e-7));

  double sp2 = pair_avg([](double t1, double t2) {
    if (t1 > kPi || t2 > kPi) return 0.0;
    double v = std::cos(t1) - std::cos(t2);
    return v * v * std::sin(t1) * std::sin(t1) * std::sin(t2) * std::sin(t2);
  });
  CHECK(group_average(GroupKind::Sp, g, 2, ctx).real_value() ==
        doctest::Approx(sp2).epsilon(1e-7));
}

TEST_CASE("cn_average against two-dimensional quadrature") {
  auto ctx = PrecisionContext::extended();
  double l1 = 1.0, l2 = 0.0, phi = 1.1, a = 0.4;

  auto f = [&](double th) { return std::pow(std::abs(2.0 * (std::cos(th) - std::cos(phi))), 2.0 * a); };
  auto meas = [&](double t1, double t2) {
    double v = std::cos(t2) - std::cos(t1);
    return std::pow((1.0 + std::cos(t1)) * (1.0 + std::cos(t2)), l1) *
           std::pow((1.0 - std::cos(t1)) * (1.0 - std::cos(t2)), l2) * v * v;
  };
  auto nested = [&](bool with_f) {
    return integrate_with_singularities(
        [&](double t1) {
          return integrate_with_singularities(
              [&](double t2) {
                double d = meas(t1, t2);
                return with_f ? f(t1) * f(t2) * d : d;
              },
              0.0, kPi, {phi}, 1e-9);
        },
        0.0, kPi, {phi}, 1e-9);
  };
  double expect = nested(true) / nested(false);
  LogDet got = cn_average(2, l1, l2, {{phi, a}}, ctx);
  CHECK(got.real_value() == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("cn_average at (1,1) reproduces the Sp group average") {
  auto ctx = PrecisionContext::extended();
  double phi = 0.9, a = 0.5;
  FHSymbol sym;
  sym.singularities.push_back({phi, a, 0.0});
  sym.singularities.push_back({-phi, a, 0.0});
  int N = 3;
  CoeffTable g = symbol_fourier(sym, 2 * N + 2);
  LogDet lhs = cn_average(N, 1.0, 1.0, {{phi, a}}, ctx);
  LogDet rhs = group_average(GroupKind::Sp, g, N, PrecisionContext::doubles());
  CHECK(lhs.log_modulus == doctest::Approx(rhs.log_modulus).epsilon(1e-7));
}

TEST_CASE("split_seed is deterministic and tag-sensitive") {
  auto s1 = split_seed(42, "case-a:16");
  auto s2 = split_seed(42, "case-a:16");
  auto s3 = split_seed(42, "case-a:32");
  auto s4 = split_seed(43, "case-a:16");
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  CHECK(s1 != s4);
}

TEST_CASE("sample batch CSV round trip") {
  SampleBatch b = gue_sample(4, 3, 99);
  SampleBatch back = batch_from_csv(batch_to_csv(b));
  REQUIRE(back.samples.size() == b.samples.size());
  CHECK(back.seed == b.seed);
  for (size_t i = 0; i < b.samples.size(); ++i) {
    REQUIRE(back.samples[i].size() == b.samples[i].size());
    for (size_t j = 0; j < b.samples[i].size(); ++j)
      CHECK(back.samples[i][j] == doctest::Approx(b.samples[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("mc_average of the unit observable") {
  SampleBatch b = gue_sample(5, 50, 3);
  auto est = mc_average(b, [](double) { return LogValue::from_real(1.0); });
  CHECK(est.mean.real_value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.stderr_rel == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("GUE sampler agrees with the exact charged-Hankel average") {
  // <prod |x_l - y|> over the e^{-2N x^2} eigenvalue density
  int N = 6;
  double y = 0.2;
  auto ctx = PrecisionContext::extended();
  WeightSpec w;
  w.kind = WeightSpec::Gauss;
  w.a = std::sqrt(2.0 * N);
  auto mu0 = weighted_moments(w, {}, {}, 2 * N - 2, ctx);
  auto mu1 = weighted_moments(w, {{y, 0.5}}, {}, 2 * N - 2, ctx);
  double exact = hankel_logdet(mu1, N, ctx).log_modulus -
                 hankel_logdet(mu0, N, ctx).log_modulus;

  SampleBatch b = gue_sample(N, 20000, 2024);
  auto est = mc_average(b, [&](double x) {
    return LogValue::from_log(std::log(std::abs(x - y)));
  });
  CHECK(std::abs(est.mean.log_modulus - exact) < 4.0 * est.stderr_rel + 1e-3);
}

TEST_CASE("LUE sampler agrees with the exact charged-Hankel average") {
  int N = 6;
  double aprime = 1.0, y2 = 0.25;
  auto ctx = PrecisionContext::extended();
  WeightSpec w;
  w.kind = WeightSpec::Laguerre;
  w.c = 4.0 * N;
  w.aprime = aprime;
  auto mu0 = weighted_moments(w, {}, {}, 2 * N - 2, ctx);
  auto mu1 = weighted_moments(w, {{y2, 0.5}}, {}, 2 * N - 2, ctx);
  double exact = hankel_logdet(mu1, N, ctx).log_modulus -
                 hankel_logdet(mu0, N, ctx).log_modulus;

  SampleBatch b = lue_sample(N, aprime, 20000, 77);
  auto est = mc_average(b, [&](double t) {
    return LogValue::from_log(std::log(std::abs(t - y2)));
  });
  CHECK(std::abs(est.mean.log_modulus - exact) < 4.0 * est.stderr_rel + 1e-3);
}

TEST_CASE("CbetaE Metropolis chain agrees with the exact Toeplitz average") {
  // beta = 2: <prod |1 + e^{i theta}|> is a one-singularity determinant
  int n = 8;
  FHSymbol sym;
  sym.singularities.push_back({kPi, 0.5, 0.0});
  CoeffTable g = symbol_fourier(sym, n);
  double exact = toeplitz_logdet(g, n, PrecisionContext::doubles()).log_modulus;

  SampleBatch b = cbeta_sample(n, 2.0, 24000, 5);
  CHECK(b.acceptance > 0.1);
  CHECK(b.acceptance < 0.9);
  auto est = mc_average(b, [](double th) {
    return LogValue::from_log(std::log(std::abs(2.0 * std::cos(th / 2.0))));
  });
  CHECK(std::abs(est.mean.log_modulus - exact) < 4.0 * est.stderr_rel + 2e-3);
}

TEST_CASE("linear statistic histogram bookkeeping") {
  SampleBatch b = gue_sample(10, 500, 11);
  auto a = [](double x) { return x * x; };
  Histogram h = linear_statistic_histogram(b, a, 21);
  REQUIRE(h.edges.size() == 22);
  REQUIRE(h.counts.size() == 21);
  REQUIRE(h.values.size() == 500);
  double total = 0.0;
  for (double c : h.counts) total += c;
  CHECK(total == doctest::Approx(500.0));
  double mean = 0.0;
  for (double v : h.values) mean += v;
  mean /= h.values.size();
  CHECK(h.mean == doctest::Approx(mean).epsilon(1e-12));
}

TEST_SUITE_END();
