#pragma once

#include "fhlab/determinants.hpp"
#include "fhlab/log_value.hpp"
#include "fhlab/precision.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fhlab {

// Compact circular-ensemble and group identifiers. Sizes follow the group
// name: OplusOdd is O+(2N+1), OminusOdd is O-(2N+1), OplusEven is O+(2N).
enum class GroupKind { U, Sp, OplusEven, OplusOdd, OminusOdd };

// Exact <prod_l g(theta_l)> over the group eigenvalue measure, via the
// matching Toeplitz or Toeplitz+-Hankel determinant. size is n for U and N
// for the others. Non-unitary groups require an even coefficient table.
// O+(2N) uses det[g_{j-k} + g_{j+k}] / 2; the halving is forced by the
// normalization (g == 1 must average to 1) and is checked against direct
// quadrature in the tests.
LogDet group_average(GroupKind kind, const CoeffTable& g, int size,
                     const PrecisionContext& ctx);

// Exact <prod_l f(cos theta_l)> over the measure
//   prod_l (1+cos theta_l)^{l1} (1-cos theta_l)^{l2}
//   prod_{j<k} (cos theta_k - cos theta_j)^2,  theta_l in [0, pi],
// for f(x) = prod_r |2(x - cos phi_r)|^{2 a_r}, via a ratio of Jacobi-weight
// Hankel determinants. Sp(N) is (l1,l2)=(1,1), O+(2N) is (0,0),
// O-(2N+1) is (1,0), O+(2N+1) is (0,1).
struct CosineCharge {
  double phi;  // singular angle in (0, pi)
  double a;    // strength, a > -1/2
};
LogDet cn_average(int N, double l1, double l2,
                  const std::vector<CosineCharge>& charges,
                  const PrecisionContext& ctx);

// --- samplers -------------------------------------------------------------

struct SampleBatch {
  std::vector<std::vector<double>> samples;  // one configuration per row
  std::uint64_t seed = 0;
  int sweeps = 0;           // MCMC sweeps (0 for exact samplers)
  double acceptance = 1.0;  // Metropolis acceptance rate (1 for exact)
};

// Metropolis chain for the circular beta ensemble angle density
// ~ prod_{j<k} |e^{i theta_k} - e^{i theta_j}|^beta. The first sweeps/4
// sweeps are burn-in with step adaptation toward 30-50% acceptance; one
// configuration is recorded per post-burn-in sweep.
SampleBatch cbeta_sample(int n, double beta, int sweeps, std::uint64_t seed);

// Exact GUE eigenvalue sampler (tridiagonal beta=2 model), scaled so the
// positions follow the weight e^{-2N x^2} (semicircle support [-1,1]).
SampleBatch gue_sample(int N, int count, std::uint64_t seed);

// Exact LUE eigenvalue sampler (bidiagonal-squared beta=2 model), scaled so
// the positions follow the weight x^{aprime-1/2} e^{-4N x} (support ~[0,1]).
SampleBatch lue_sample(int N, double aprime, int count, std::uint64_t seed);

// Sample mean of the product observable prod_l f(x_l), accumulated in log
// space with a common shift. stderr_rel is a block-jackknife relative
// standard error of the mean modulus.
struct McEstimate {
  LogValue mean;
  double stderr_rel;
};
McEstimate mc_average(const SampleBatch& batch,
                      const std::function<LogValue(double)>& f);

// Empirical distribution of the linear statistic A = sum_l a(x_l).
struct Histogram {
  std::vector<double> edges;   // size bins+1
  std::vector<double> counts;  // size bins
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> values;  // raw per-sample statistics
};
Histogram linear_statistic_histogram(const SampleBatch& batch,
                                     const std::function<double(double)>& a,
                                     int bins = 41);

// CSV persistence (one row per configuration) with a small header.
std::string batch_to_csv(const SampleBatch& batch);
SampleBatch batch_from_csv(const std::string& text);

// Deterministic per-case seed derivation.
std::uint64_t split_seed(std::uint64_t base, const std::string& tag);

}  // namespace fhlab
