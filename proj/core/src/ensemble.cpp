#include "fhlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

extern "C" void dsterf_(int* n, double* d, double* e, int* info);

namespace fhlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> tridiag_eigenvalues(std::vector<double> d,
                                        std::vector<double> e) {
  int n = static_cast<int>(d.size());
  int info = 0;
  dsterf_(&n, d.data(), e.data(), &info);
  if (info != 0)
    throw std::runtime_error("tridiag_eigenvalues: dsterf failed to converge");
  return d;
}

}  // namespace

LogDet group_average(GroupKind kind, const CoeffTable& g, int size,
                     const PrecisionContext& ctx) {
  switch (kind) {
    case GroupKind::U:
      return toeplitz_logdet(g, size, ctx);
    case GroupKind::Sp:
      return toeplitz_hankel_logdet(THVariant::Sp, g, size, ctx);
    case GroupKind::OplusEven: {
      LogDet det = toeplitz_hankel_logdet(THVariant::OplusEven, g, size, ctx);
      return det / LogDet::from_real(2.0);
    }
    case GroupKind::OplusOdd:
      return toeplitz_hankel_logdet(THVariant::OplusOdd, g, size, ctx);
    case GroupKind::OminusOdd:
      return toeplitz_hankel_logdet(THVariant::OminusOdd, g, size, ctx);
  }
  throw std::logic_error("group_average: unknown kind");
}

LogDet cn_average(int N, double l1, double l2,
                  const std::vector<CosineCharge>& charges,
                  const PrecisionContext& ctx) {
  if (N < 1) throw std::invalid_argument("cn_average: N >= 1");
  WeightSpec w;
  w.kind = WeightSpec::Jacobi;
  // the measure is d theta; in x = cos theta the Jacobian contributes
  // (1 - x^2)^{-1/2}
  w.l1 = l1 - 0.5;
  w.l2 = l2 - 0.5;
  std::vector<ChargedPoint> extras;
  double log_two_power = 0.0;  // each |2(x-y)|^{2a} carries 2^{2a}
  for (const auto& c : charges) {
    if (c.a <= -0.5) throw std::domain_error("cn_average: requires a > -1/2");
    extras.push_back({std::cos(c.phi), c.a});
    log_two_power += 2.0 * c.a * std::numbers::ln2;
  }
  auto mu = weighted_moments(w, extras, {}, 2 * N - 2, ctx);
  auto mu0 = weighted_moments(w, {}, {}, 2 * N - 2, ctx);
  LogDet num = hankel_logdet(mu, N, ctx);
  LogDet den = hankel_logdet(mu0, N, ctx);
  LogDet ratio = num / den;
  return LogDet::from_log(ratio.log_modulus + N * log_two_power, ratio.phase);
}

// --- samplers -------------------------------------------------------------

SampleBatch cbeta_sample(int n, double beta, int sweeps, std::uint64_t seed) {
  if (n < 1 || beta <= 0.0)
    throw std::invalid_argument("cbeta_sample: n >= 1, beta > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<double> theta(n);
  for (int l = 0; l < n; ++l) theta[l] = wrap_phase(2.0 * kPi * (l + 0.5) / n);

  // log of prod_{m != l} |2 sin((t - theta_m)/2)|^beta, variable angle t
  auto log_weight = [&](int l, double t) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == l) continue;
      double d = std::abs(std::sin(0.5 * (t - theta[m])));
      if (d == 0.0) return -1e300;
      s += std::log(2.0 * d);
    }
    return beta * s;
  };

  SampleBatch batch;
  batch.seed = seed;
  batch.sweeps = sweeps;
  int burnin = sweeps / 4;
  double step = 2.0 * kPi / n;
  long accepted = 0, proposed = 0;
  long adapt_acc = 0, adapt_prop = 0;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int l = 0; l < n; ++l) {
      double t = wrap_phase(theta[l] + step * (2.0 * unif(rng) - 1.0));
      double dlog = log_weight(l, t) - log_weight(l, theta[l]);
      ++proposed;
      ++adapt_prop;
      if (dlog >= 0.0 || unif(rng) < std::exp(dlog)) {
        theta[l] = t;
        ++accepted;
        ++adapt_acc;
      }
    }
    if (sweep < burnin) {
      if (adapt_prop >= 50L * n) {
        double rate = static_cast<double>(adapt_acc) / adapt_prop;
        if (rate < 0.30) step *= 0.8;
        if (rate > 0.50) step = std::min(step * 1.25, kPi);
        adapt_acc = adapt_prop = 0;
      }
      continue;
    }
    batch.samples.push_back(theta);
  }
  batch.acceptance = proposed ? static_cast<double>(accepted) / proposed : 0.0;
  return batch;
}

SampleBatch gue_sample(int N, int count, std::uint64_t seed) {
  if (N < 1 || count < 1)
    throw std::invalid_argument("gue_sample: N >= 1, count >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SampleBatch batch;
  batch.seed = seed;
  double scale = 1.0 / (2.0 * std::sqrt(static_cast<double>(N)));
  for (int s = 0; s < count; ++s) {
    std::vector<double> d(N), e(N > 1 ? N - 1 : 0);
    for (int i = 0; i < N; ++i) d[i] = gauss(rng);
    for (int i = 0; i < N - 1; ++i) {
      std::gamma_distribution<double> chi(static_cast<double>(N - 1 - i), 1.0);
      e[i] = std::sqrt(chi(rng));
    }
    auto lam = tridiag_eigenvalues(std::move(d), std::move(e));
    for (auto& x : lam) x *= scale;
    batch.samples.push_back(std::move(lam));
  }
  return batch;
}

SampleBatch lue_sample(int N, double aprime, int count, std::uint64_t seed) {
  if (N < 1 || count < 1 || aprime <= -0.5)
    throw std::invalid_argument("lue_sample: N >= 1, count >= 1, aprime > -1/2");
  double alpha = aprime - 0.5;
  std::mt19937_64 rng(seed);
  SampleBatch batch;
  batch.seed = seed;
  double scale = 1.0 / (8.0 * N);
  for (int s = 0; s < count; ++s) {
    // lower-bidiagonal B with chi-distributed entries; T = B B^T
    std::vector<double> x(N), y(N > 1 ? N - 1 : 0);
    for (int i = 0; i < N; ++i) {
      std::gamma_distribution<double> chi2(alpha + N - i, 2.0);
      x[i] = std::sqrt(chi2(rng));
    }
    for (int i = 0; i < N - 1; ++i) {
      std::gamma_distribution<double> chi2(static_cast<double>(N - 1 - i), 2.0);
      y[i] = std::sqrt(chi2(rng));
    }
    std::vector<double> d(N), e(N > 1 ? N - 1 : 0);
    for (int i = 0; i < N; ++i) {
      d[i] = x[i] * x[i] + (i > 0 ? y[i - 1] * y[i - 1] : 0.0);
      if (i < N - 1) e[i] = x[i] * y[i];
    }
    auto lam = tridiag_eigenvalues(std::move(d), std::move(e));
    for (auto& v : lam) v *= scale;
    batch.samples.push_back(std::move(lam));
  }
  return batch;
}

McEstimate mc_average(const SampleBatch& batch,
                      const std::function<LogValue(double)>& f) {
  size_t S = batch.samples.size();
  if (S == 0) throw std::invalid_argument("mc_average: empty batch");
  std::vector<LogValue> vals(S);
  double max_log = -1e300;
  for (size_t s = 0; s < S; ++s) {
    double lm = 0.0, ph = 0.0;
    bool zero = false;
    for (double x : batch.samples[s]) {
      LogValue v = f(x);
      if (v.zero) {
        zero = true;
        break;
      }
      lm += v.log_modulus;
      ph += v.phase;
    }
    vals[s] = zero ? LogValue::make_zero() : LogValue::from_log(lm, ph);
    if (!zero) max_log = std::max(max_log, lm);
  }
  if (max_log == -1e300) return {LogValue::make_zero(), 0.0};

  auto scaled = [&](const LogValue& v) -> std::complex<double> {
    if (v.zero) return 0.0;
    return std::exp(v.log_modulus - max_log) *
           std::complex<double>(std::cos(v.phase), std::sin(v.phase));
  };
  std::complex<double> sum = 0.0;
  for (const auto& v : vals) sum += scaled(v);
  std::complex<double> mean = sum / static_cast<double>(S);

  // block jackknife on the scaled values
  int nblocks = std::min<size_t>(50, S);
  std::vector<std::complex<double>> bsum(nblocks, 0.0);
  std::vector<double> bcnt(nblocks, 0.0);
  for (size_t s = 0; s < S; ++s) {
    int b = static_cast<int>(s * nblocks / S);
    bsum[b] += scaled(vals[s]);
    bcnt[b] += 1.0;
  }
  double var = 0.0;
  for (int b = 0; b < nblocks; ++b) {
    std::complex<double> loo = (sum - bsum[b]) / (static_cast<double>(S) - bcnt[b]);
    var += std::norm(loo - mean);
  }
  var *= static_cast<double>(nblocks - 1) / nblocks;
  double se = std::sqrt(var);

  McEstimate est;
  if (mean == std::complex<double>(0.0)) {
    est.mean = LogValue::make_zero();
    est.stderr_rel = 0.0;
  } else {
    est.mean = LogValue::from_complex_log(std::log(mean) +
                                          std::complex<double>(max_log, 0.0));
    est.stderr_rel = se / std::abs(mean);
  }
  return est;
}

Histogram linear_statistic_histogram(const SampleBatch& batch,
                                     const std::function<double(double)>& a,
                                     int bins) {
  Histogram h;
  for (const auto& row : batch.samples) {
    double A = 0.0;
    for (double x : row) A += a(x);
    h.values.push_back(A);
  }
  size_t S = h.values.size();
  if (S == 0) throw std::invalid_argument("linear_statistic_histogram: empty");
  double lo = *std::min_element(h.values.begin(), h.values.end());
  double hi = *std::max_element(h.values.begin(), h.values.end());
  if (hi == lo) hi = lo + 1.0;
  h.edges.resize(bins + 1);
  h.counts.assign(bins, 0.0);
  for (int b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * b / bins;
  double m = 0.0, m2 = 0.0;
  for (double v : h.values) {
    int b = std::min(bins - 1, static_cast<int>((v - lo) / (hi - lo) * bins));
    h.counts[b] += 1.0;
    m += v;
  }
  m /= S;
  for (double v : h.values) m2 += (v - m) * (v - m);
  h.mean = m;
  h.variance = S > 1 ? m2 / (S - 1) : 0.0;
  return h;
}

std::string batch_to_csv(const SampleBatch& batch) {
  std::ostringstream os;
  os.precision(17);
  os << "# seed=" << batch.seed << " sweeps=" << batch.sweeps
     << " acceptance=" << batch.acceptance << "\n";
  for (const auto& row : batch.samples) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << row[i];
    }
    os << "\n";
  }
  return os.str();
}

SampleBatch batch_from_csv(const std::string& text) {
  SampleBatch batch;
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.empty() || line[0] != '#')
    throw std::invalid_argument("batch_from_csv: missing header");
  std::sscanf(line.c_str(), "# seed=%llu sweeps=%d acceptance=%lf",
              reinterpret_cast<unsigned long long*>(&batch.seed), &batch.sweeps,
              &batch.acceptance);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    batch.samples.push_back(std::move(row));
  }
  return batch;
}

std::uint64_t split_seed(std::uint64_t base, const std::string& tag) {
  // FNV-1a over the tag, mixed with the base seed
  std::uint64_t h = 1469598103934665603ULL ^ base;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

}  // namespace fhlab
