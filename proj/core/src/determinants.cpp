#include "fhlab/determinants.hpp"

#include "fhlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fhlab {

namespace {

template <class R>
LogDet lu_logdet(std::vector<Cx<R>> m, int n) {
  using std::atan2;
  using std::log;
  R logmod = 0, phase = 0;
  int swaps = 0;
  for (int i = 0; i < n; ++i) {
    int piv = i;
    R best = m[i * n + i].abs2();
    for (int r = i + 1; r < n; ++r) {
      R a2 = m[r * n + i].abs2();
      if (a2 > best) {
        best = a2;
        piv = r;
      }
    }
    if (best == 0) return LogDet::make_zero();
    if (piv != i) {
      for (int c = i; c < n; ++c) std::swap(m[i * n + c], m[piv * n + c]);
      ++swaps;
    }
    Cx<R> p = m[i * n + i];
    logmod += log(best) / 2;
    phase += atan2(p.im, p.re);
    for (int r = i + 1; r < n; ++r) {
      Cx<R> f = m[r * n + i] / p;
      if (f.is_zero()) continue;
      for (int c = i + 1; c < n; ++c) m[r * n + c] -= f * m[i * n + c];
    }
  }
  double ph = static_cast<double>(phase);
  if (swaps % 2) ph += std::numbers::pi;
  return LogDet::from_log(static_cast<double>(logmod), ph);
}

template <class R>
LogDet dense_logdet_tier(const std::vector<std::complex<double>>& m, int n) {
  std::vector<Cx<R>> w(m.size());
  for (size_t i = 0; i < m.size(); ++i) w[i] = Cx<R>(R(m[i].real()), R(m[i].imag()));
  return lu_logdet(std::move(w), n);
}

void require_even(const CoeffTable& g, int need) {
  double scale = 0.0;
  for (int k = 0; k <= need; ++k) scale = std::max(scale, std::abs(g.at(k)));
  for (int k = 1; k <= need; ++k)
    if (std::abs(g.at(k) - g.at(-k)) > 1e-10 * std::max(scale, 1.0))
      throw std::invalid_argument(
          "toeplitz_hankel_logdet: coefficient table is not even");
}

}  // namespace

LogDet dense_logdet(const std::vector<std::complex<double>>& m, int n,
                    const PrecisionContext& ctx) {
  if (static_cast<int>(m.size()) != n * n)
    throw std::invalid_argument("dense_logdet: size mismatch");
  if (ctx.tier == PrecisionTier::Extended) return dense_logdet_tier<real_x>(m, n);
  return dense_logdet_tier<double>(m, n);
}

LogDet toeplitz_logdet(const CoeffTable& g, int n, const PrecisionContext& ctx) {
  if (n <= 0) throw std::invalid_argument("toeplitz_logdet: n >= 1");
  if (g.K < n - 1)
    throw std::invalid_argument("toeplitz_logdet: table must cover |k| <= n-1");
  std::vector<std::complex<double>> m(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m[j * n + k] = g.at(j - k);
  return dense_logdet(m, n, ctx);
}

LogDet toeplitz_hankel_logdet(THVariant v, const CoeffTable& g, int N,
                              const PrecisionContext& ctx) {
  if (N <= 0) throw std::invalid_argument("toeplitz_hankel_logdet: N >= 1");
  int need = (v == THVariant::Sp) ? 2 * N : 2 * N - 1;
  if (g.K < need)
    throw std::invalid_argument("toeplitz_hankel_logdet: table too short");
  require_even(g, need);

  auto coeff = [&](int k) -> std::complex<double> {
    std::complex<double> c = g.at(k);
    if (v == THVariant::OplusOdd && (k % 2 != 0)) c = -c;
    return c;
  };
  std::vector<std::complex<double>> m(N * N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      switch (v) {
        case THVariant::OplusOdd:
        case THVariant::OminusOdd:
          m[j * N + k] = coeff(j - k) + coeff(j + k + 1);
          break;
        case THVariant::OplusEven:
          m[j * N + k] = coeff(j - k) + coeff(j + k);
          break;
        case THVariant::Sp:
          m[j * N + k] = coeff(j - k) - coeff(j + k + 2);
          break;
      }
    }
  return dense_logdet(m, N, ctx);
}

// --- moment-Hankel --------------------------------------------------------

namespace {

bool is_even_integer(double v) {
  return v == std::floor(v) && std::fmod(v, 2.0) == 0.0;
}

bool is_nonneg_integer(double v) { return v >= 0.0 && v == std::floor(v); }

template <class R>
R moment_integrand(const R& x, int k, const WeightSpec& w,
                   const std::vector<ChargedPoint>& extras,
                   const SmoothPoly& smooth) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::pow;
  R lg = 0;
  R v = 1;
  R xp = x;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) v *= xp;
    xp *= xp;
  }
  for (const auto& p : extras) {
    R d = abs(x - R(p.y));
    if (d == 0) return R(0);  // measure-zero point of an integrable factor
    lg += 2 * R(p.q) * log(d);
  }
  if (!smooth.empty()) lg += smooth.eval(x);
  if (w.kind == WeightSpec::Gauss) {
    lg -= R(w.a) * R(w.a) * x * x;
  } else if (w.kind == WeightSpec::Laguerre) {
    lg -= R(w.c) * x;
    if (w.aprime != 0.5) {
      if (x == 0) return R(0);  // endpoint of an integrable power factor
      lg += (R(w.aprime) - R(0.5)) * log(x);
    }
  } else {
    if (w.l1 != 0.0) {
      R u = 1 + x;
      if (u <= 0) return R(0);
      lg += R(w.l1) * log(u);
    }
    if (w.l2 != 0.0) {
      R u = 1 - x;
      if (u <= 0) return R(0);
      lg += R(w.l2) * log(u);
    }
  }
  return v * exp(lg);
}

template <class R>
std::vector<real_x> moments_tier(const WeightSpec& w,
                                 const std::vector<ChargedPoint>& extras,
                                 const SmoothPoly& smooth, int kmax,
                                 double tol_rel, double margin) {
  // cutoff where x^kmax e^{a(x)} w(x) has dropped `margin` nats below its peak
  double lo, hi;
  if (w.kind == WeightSpec::Jacobi) {
    if (w.l1 <= -1.0 || w.l2 <= -1.0)
      throw std::domain_error("weighted_moments: requires l1, l2 > -1");
    std::vector<R> sing;
    if (!is_nonneg_integer(w.l1)) sing.push_back(R(-1));
    if (!is_nonneg_integer(w.l2)) sing.push_back(R(1));
    for (const auto& p : extras) {
      if (p.q <= -0.5)
        throw std::domain_error("weighted_moments: requires q > -1/2");
      if (!is_even_integer(2.0 * p.q) && p.y > -1.0 && p.y < 1.0)
        sing.push_back(R(p.y));
    }
    std::vector<real_x> out(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
      auto f = [&](const R& x) { return moment_integrand(x, k, w, extras, smooth); };
      out[k] = real_x(integrate_with_singularities(f, R(-1), R(1), sing, tol_rel));
    }
    return out;
  }
  auto log_env = [&](double x) {
    double lg = (kmax > 0 && x != 0.0) ? kmax * std::log(std::abs(x)) : 0.0;
    for (const auto& p : extras)
      if (x != p.y) lg += 2.0 * p.q * std::log(std::abs(x - p.y));
    if (!smooth.empty()) lg += smooth.eval(x);
    if (w.kind == WeightSpec::Gauss)
      lg -= w.a * w.a * x * x;
    else
      lg -= w.c * x - (w.aprime - 0.5) * std::log(std::max(x, 1e-300));
    return lg;
  };
  double peak = 0.0;
  {
    double x0 = (w.kind == WeightSpec::Gauss)
                    ? std::sqrt(kmax + 1.0) / (std::sqrt(2.0) * w.a)
                    : (kmax + std::max(w.aprime, 0.5)) / w.c;
    peak = log_env(std::max(x0, 0.5));
    for (const auto& p : extras) peak = std::max(peak, log_env(p.y + 0.25));
  }
  auto extend = [&](double start, double dir) {
    double x = start;
    while (log_env(x) > peak - margin) x = x * 1.25 + dir * 0.5;
    return x;
  };
  if (w.kind == WeightSpec::Gauss) {
    double base = std::sqrt(kmax + 1.0) / w.a + 1.0;
    for (const auto& p : extras) base = std::max(base, std::abs(p.y) + 1.0);
    hi = extend(base, +1.0);
    lo = -extend(base, +1.0);
  } else {
    lo = 0.0;
    double base = (kmax + std::max(w.aprime, 0.5) + 1.0) / w.c + 1.0;
    for (const auto& p : extras) base = std::max(base, std::abs(p.y) + 1.0);
    hi = extend(base, +1.0);
  }

  std::vector<R> sing;
  for (const auto& p : extras) {
    if (p.q <= -0.5)
      throw std::domain_error("weighted_moments: requires q > -1/2");
    if (!is_even_integer(2.0 * p.q) && p.y > lo && p.y < hi) sing.push_back(R(p.y));
  }
  if (w.kind == WeightSpec::Laguerre) {
    if (w.aprime <= -0.5)
      throw std::domain_error("weighted_moments: requires aprime > -1/2");
    if (!is_nonneg_integer(w.aprime - 0.5)) sing.push_back(R(0));
  }

  std::vector<real_x> out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    auto f = [&](const R& x) { return moment_integrand(x, k, w, extras, smooth); };
    R v = integrate_with_singularities(f, R(lo), R(hi), sing, tol_rel);
    out[k] = real_x(v);
  }
  return out;
}

}  // namespace

std::vector<real_x> weighted_moments(const WeightSpec& w,
                                     const std::vector<ChargedPoint>& extras,
                                     const SmoothPoly& smooth, int kmax,
                                     const PrecisionContext& ctx) {
  if (ctx.tier == PrecisionTier::Extended)
    return moments_tier<real_x>(w, extras, smooth, kmax, 1e-42, 135.0);
  return moments_tier<double>(w, extras, smooth, kmax, 1e-13, 60.0);
}

LogDet hankel_logdet(const std::vector<real_x>& moments, int n,
                     const PrecisionContext& ctx) {
  if (static_cast<int>(moments.size()) < 2 * n - 1)
    throw std::invalid_argument("hankel_logdet: table must cover k <= 2n-2");
  bool extended = ctx.tier == PrecisionTier::Extended || n > 8;
  if (extended) {
    std::vector<Cx<real_x>> m(n * n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m[j * n + k] = Cx<real_x>(moments[j + k]);
    return lu_logdet(std::move(m), n);
  }
  std::vector<Cx<double>> m(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m[j * n + k] = Cx<double>(static_cast<double>(moments[j + k]));
  return lu_logdet(std::move(m), n);
}

std::string moments_to_csv(const std::vector<real_x>& moments) {
  std::ostringstream os;
  os << "k,re,im\n";
  os.precision(50);
  for (size_t k = 0; k < moments.size(); ++k)
    os << k << "," << moments[k] << ",0\n";
  return os.str();
}

std::vector<real_x> moments_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);  // header
  std::vector<real_x> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("moments_from_csv: malformed line");
    out.push_back(real_x(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  return out;
}

}  // namespace fhlab
