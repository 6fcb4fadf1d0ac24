#include "fhlab/symbol.hpp"

#include "fhlab/special.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace fhlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> unit(double theta) {
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

std::complex<double> symbol_eval(const FHSymbol& sym, double theta) {
  std::complex<double> v = std::exp(sym.smooth_log.eval(theta));
  for (const auto& s : sym.singularities) {
    double phi = theta - s.theta - kPi;
    std::complex<double> z = 1.0 + unit(phi);
    std::complex<double> zb = 1.0 + unit(-phi);
    v *= std::pow(z, s.a + s.b) * std::pow(zb, s.a - s.b);
  }
  return v;
}

double min_angular_separation(const FHSymbol& sym) {
  double best = 2.0 * kPi;
  const auto& ss = sym.singularities;
  for (size_t i = 0; i < ss.size(); ++i)
    for (size_t j = i + 1; j < ss.size(); ++j) {
      double d = std::abs(wrap_phase(ss[i].theta - ss[j].theta));
      best = std::min(best, d);
    }
  return best;
}

std::vector<std::complex<double>> singular_factor_coeffs(const Singularity& s,
                                                         int K) {
  if (s.a <= -0.5)
    throw std::domain_error("singular_factor_coeffs: requires a > -1/2");
  std::vector<std::complex<double>> out(2 * K + 1);
  double lg_num = std::lgamma(2.0 * s.a + 1.0);
  for (int k = -K; k <= K; ++k) {
    SignedLog d1 = log_gamma_signed(s.a + s.b - k + 1.0);
    SignedLog d2 = log_gamma_signed(s.a - s.b + k + 1.0);
    if (d1.sign == 0 || d2.sign == 0) continue;  // exact zero
    double mag = std::exp(lg_num - d1.log_abs - d2.log_abs);
    double sign = static_cast<double>(d1.sign * d2.sign);
    out[k + K] = sign * mag * unit(-k * (s.theta + kPi));
  }
  return out;
}

namespace {

// One pass of the factor convolution at internal order Kf, output |k| <= K.
std::vector<std::complex<double>> assemble_coeffs(const FHSymbol& sym, int K,
                                                  int Kf) {
  // running table starts as the smooth factor; its coefficients decay
  // geometrically so a modest order suffices
  int Ks = std::max(64, 4 * sym.smooth_log.order());
  std::vector<std::complex<double>> table = exp_series_coeffs(sym.smooth_log, Ks);
  int Kt = Ks;
  for (size_t i = 0; i < sym.singularities.size(); ++i) {
    auto factor = singular_factor_coeffs(sym.singularities[i], Kf);
    int Kout = (i + 1 == sym.singularities.size()) ? K : Kf;
    table = convolve_tables(table, Kt, factor, Kf, Kout);
    Kt = Kout;
  }
  if (Kt != K) {
    // pure smooth symbol: restrict to the requested window
    std::vector<std::complex<double>> out(2 * K + 1);
    for (int k = -K; k <= K; ++k)
      out[k + K] = (std::abs(k) <= Kt) ? table[k + Kt] : 0.0;
    return out;
  }
  return table;
}

}  // namespace

CoeffTable symbol_fourier(const FHSymbol& sym, int K, int Kf) {
  if (Kf <= 0) Kf = std::max(8 * K, 4096);
  if (sym.singularities.size() >= 2 && min_angular_separation(sym) < 1e-2)
    std::fprintf(stderr,
                 "symbol_fourier: warning: singularities closer than 1e-2 rad; "
                 "asymptotic regime untested for coalescing singularities\n");

  CoeffTable t;
  t.K = K;
  t.g = assemble_coeffs(sym, K, Kf);
  if (!sym.singularities.empty()) {
    auto half = assemble_coeffs(sym, K, Kf / 2);
    double worst = 0.0;
    for (size_t i = 0; i < t.g.size(); ++i)
      worst = std::max(worst, std::abs(t.g[i] - half[i]));
    t.tail_estimate = worst;
  }
  return t;
}

// --- Ising ---------------------------------------------------------------

namespace {

// log of ((1+alpha e^{i theta})/(1+alpha e^{-i theta}))^{1/2} for alpha < 1,
// branch-safe (the arguments of log stay in the right half plane).
std::complex<double> half_log_ratio(double alpha, double theta) {
  std::complex<double> e = unit(theta);
  return 0.5 * (std::log(1.0 + alpha * e) - std::log(1.0 + alpha * std::conj(e)));
}

}  // namespace

IsingSymbols ising_symbols(double K1, double K2) {
  if (K1 <= 0.0 || K2 <= 0.0)
    throw std::domain_error("ising_symbols: requires K1, K2 > 0");
  IsingSymbols out;
  out.alpha1 = std::exp(-2.0 * K2) * std::tanh(K1);
  out.alpha2 = std::exp(-2.0 * K2) / std::tanh(K1);
  out.k = std::sinh(2.0 * K1) * std::sinh(2.0 * K2);

  double k = out.k;
  if (k > 1.0) {
    // ((1 + (1/k) e^{-i theta}) / (1 + (1/k) e^{i theta}))^{1/2}
    out.winding_diag = 0;
    out.h = [k](double theta) { return std::exp(-half_log_ratio(1.0 / k, theta)); };
  } else {
    // pull out e^{-i theta}: h = e^{-i theta}((1+k e^{i t})/(1+k e^{-i t}))^{1/2}
    out.winding_diag = 1;
    out.h = [k](double theta) {
      return unit(-theta) * std::exp(half_log_ratio(k, theta));
    };
  }

  double a1 = out.alpha1, a2 = out.alpha2;
  if (a2 < 1.0) {
    out.winding_row = 0;
    out.h_row = [a1, a2](double theta) {
      return std::exp(half_log_ratio(a1, theta) - half_log_ratio(a2, theta));
    };
  } else {
    // 1 + a2 e^{+-i t} = a2 e^{+-i t}(1 + e^{-+i t}/a2): winding -1 factor
    out.winding_row = 1;
    out.h_row = [a1, a2](double theta) {
      return unit(-theta) *
             std::exp(half_log_ratio(a1, theta) + half_log_ratio(1.0 / a2, theta));
    };
  }
  return out;
}

FHSymbol ising_critical_row_symbol(double alpha1, int P) {
  if (!(std::abs(alpha1) < 1.0))
    throw std::domain_error("ising_critical_row_symbol: requires |alpha1| < 1");
  FHSymbol sym;
  sym.smooth_log = log_pow_factor(0.5, alpha1, +1, P) +
                   log_pow_factor(-0.5, alpha1, -1, P);
  sym.singularities.push_back({-kPi, 0.0, -0.5});
  return sym;
}

TransformedSymbol ising_highT_transformed_symbol(double alpha1, double alpha2,
                                                 int P) {
  if (!(alpha1 < 1.0 && 1.0 < alpha2 && alpha1 * alpha2 < 1.0))
    throw std::domain_error(
        "ising_highT_transformed_symbol: requires alpha1 < 1 < alpha2, "
        "alpha1*alpha2 < 1");
  FHSymbol sym;
  sym.smooth_log = log_pow_factor(-0.5, 1.0 / (alpha2 * alpha2), -1, P) +
                   log_pow_factor(0.5, alpha1 * alpha2, +1, P) +
                   log_pow_factor(-0.5, alpha1 / alpha2, -1, P);
  sym.smooth_log.add(0, -std::log(alpha2));
  sym.singularities.push_back({-kPi, 0.25, -0.75});
  return {std::move(sym), alpha2};
}

// --- serialization --------------------------------------------------------

std::string symbol_to_json(const FHSymbol& sym) {
  nlohmann::json j;
  int P = sym.smooth_log.order();
  nlohmann::json smooth;
  smooth["type"] = "coeffs";
  smooth["P"] = P;
  std::vector<double> re, im;
  for (int p = -P; p <= P; ++p) {
    re.push_back(sym.smooth_log.c(p).real());
    im.push_back(sym.smooth_log.c(p).imag());
  }
  smooth["re"] = re;
  smooth["im"] = im;
  j["smooth"] = smooth;
  j["singularities"] = nlohmann::json::array();
  for (const auto& s : sym.singularities)
    j["singularities"].push_back({{"theta", s.theta}, {"a", s.a}, {"b", s.b}});
  return j.dump(2);
}

FHSymbol symbol_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FHSymbol sym;
  const auto& smooth = j.at("smooth");
  std::string type = smooth.value("type", "coeffs");
  if (type == "zero") {
    sym.smooth_log = FourierSeries(1);
  } else if (type == "two_t_cos") {
    sym.smooth_log = two_t_cos(smooth.at("t").get<double>(), 1);
  } else if (type == "coeffs") {
    int P = smooth.at("P").get<int>();
    auto re = smooth.at("re").get<std::vector<double>>();
    auto im = smooth.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != 2 * P + 1 || im.size() != re.size())
      throw std::invalid_argument("symbol_from_json: coefficient length mismatch");
    sym.smooth_log = FourierSeries(P);
    for (int p = -P; p <= P; ++p)
      sym.smooth_log.set(p, {re[p + P], im[p + P]});
  } else {
    throw std::invalid_argument("symbol_from_json: unknown smooth type " + type);
  }
  for (const auto& s : j.value("singularities", nlohmann::json::array())) {
    Singularity sg{s.at("theta").get<double>(), s.at("a").get<double>(),
                   s.at("b").get<double>()};
    if (sg.a <= -0.5)
      throw std::domain_error("symbol_from_json: requires a > -1/2");
    sym.singularities.push_back(sg);
  }
  return sym;
}

}  // namespace fhlab
