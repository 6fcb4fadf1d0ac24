#pragma once

#include "fhlab/fourier.hpp"
#include "fhlab/log_value.hpp"
#include "fhlab/precision.hpp"
#include "fhlab/prediction.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fhlab {

// One verification run: which catalog case, which sizes, and the pass
// tolerance applied to |ratio - 1| at the largest n.
struct CaseSpec {
  std::string id;
  std::vector<int> ns;  // strictly increasing
  double tolerance = 0.05;
  PrecisionTier tier = PrecisionTier::Double;
  int mc_samples = 0;  // 0 picks the case default
  std::uint64_t seed = 20260824ULL;
};

std::string case_spec_to_json(const CaseSpec& spec);
CaseSpec case_spec_from_json(const std::string& text);

struct VerificationRecord {
  int n = 0;
  LogValue exact;
  LogValue predicted;
  double ratio = 0.0;       // |exact| / |predicted|
  double stderr_rel = 0.0;  // MC relative standard error; 0 for exact routes
  double seconds = 0.0;
  std::string error;  // per-n component failure; the case continues
};

struct CaseResult {
  CaseSpec spec;
  std::string formula;      // closed form under test, e.g. "fisher-hartwig"
  std::string description;
  bool degenerate = false;  // prediction is an exact zero; no ratios
  bool passed = false;
  double fit_A = 0.0;  // ln|ratio| = A/n + B/n^2 least squares
  double fit_B = 0.0;
  double fit_residual = 0.0;
  std::vector<VerificationRecord> records;
};

// Fixed schema: case,n,log_exact,phase_exact,log_pred,ratio,stderr,seconds.
// Identical inputs (id, ns, seed, tier) give byte-identical rows except for
// the seconds column.
std::string result_to_csv(const CaseResult& r);
std::string result_to_json(const CaseResult& r);

// A shipped verification case: exact evaluator plus its predictor. The
// exact callback receives the per-n seed (derived from the case seed by the
// splitting rule) and the MC budget; stderr_out stays 0 on exact routes.
struct CaseDefinition {
  std::string id;
  std::string description;
  std::string formula;
  std::vector<int> default_ns;
  double default_tolerance = 0.05;
  PrecisionTier default_tier = PrecisionTier::Double;
  int default_mc = 0;
  std::function<LogValue(int n, std::uint64_t seed, int mc,
                         const PrecisionContext& ctx, double& stderr_out)>
      exact;
  std::function<Prediction()> predict;
};

const std::vector<CaseDefinition>& case_catalog();
const CaseDefinition& find_case(const std::string& id);

// Runs every n in the spec (in parallel for jobs > 1; records are ordered by
// n regardless), evaluates exact and predicted values, fits the correction
// model, and applies the pass rule at the largest n: |ratio - 1| <=
// tolerance + 3 * stderr. Degenerate predictions yield a structured report
// with no ratios and pass by flag propagation.
CaseResult run_case(const CaseSpec& spec, int jobs = 1);

// --- log-gas factorization probes -----------------------------------------
//
// Heuristic factorizations of charge-insertion partition functions into
// per-charge factors. Both sides are computed exactly (beta = 2 determinant
// routes) and the LHS/RHS ratio is reported per n; the conjectured behavior
// is convergence to a constant (1 for the charge-only kinds). A single
// charge has no cross terms, so CircleCharges is then an exact identity.
enum class ProbeKind {
  CircleSmoothCharge,  // smooth x charge decoupling on the circle
  CircleCharges,       // pairwise charge decoupling on the circle
  GaussCharges,        // same for Gaussian-weight Hankel averages
  LaguerreCharges      // same for Laguerre-weight Hankel averages
};

struct ProbeParams {
  FourierSeries smooth_log;  // CircleSmoothCharge only
  std::vector<double> phi;   // circle charge angles
  std::vector<double> y;     // Hankel charge positions
  std::vector<double> q;     // strengths, parallel to phi/y
  double aprime = 0.5;       // Laguerre weight parameter
};

struct ProbeRecord {
  int n = 0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  double ratio = 0.0;
};

std::vector<ProbeRecord> run_factorization_probe(ProbeKind kind,
                                                 const ProbeParams& params,
                                                 const std::vector<int>& ns,
                                                 const PrecisionContext& ctx);

}  // namespace fhlab
