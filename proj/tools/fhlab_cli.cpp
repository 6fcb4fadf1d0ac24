#include "fhlab/determinants.hpp"
#include "fhlab/ensemble.hpp"
#include "fhlab/harness.hpp"
#include "fhlab/physics.hpp"
#include "fhlab/prediction.hpp"
#include "fhlab/special.hpp"
#include "fhlab/symbol.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fhlab;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

PrecisionContext make_ctx(const std::string& precision) {
  if (precision == "extended") return PrecisionContext::extended();
  if (precision == "double") return PrecisionContext::doubles();
  return PrecisionContext::from_env();
}

nlohmann::json logvalue_json(const LogValue& v) {
  nlohmann::json j;
  j["zero"] = v.zero;
  if (!v.zero) {
    j["log_modulus"] = v.log_modulus;
    j["phase"] = v.phase;
    j["value"] = v.real_value();
  }
  return j;
}

int cmd_predict(const std::string& config, const std::string& predictor,
                int n) {
  FHSymbol sym = symbol_from_json(slurp(config));
  Prediction pred;
  if (predictor == "strong-szego") {
    if (!sym.singularities.empty())
      throw std::runtime_error("strong-szego requires a smooth symbol");
    pred = predict_szego(sym.smooth_log);
  } else if (predictor == "fisher-hartwig" || predictor.empty()) {
    pred = sym.singularities.empty() ? predict_szego(sym.smooth_log)
                                     : predict_fh(sym);
  } else if (predictor == "toeplitz-hankel") {
    pred = predict_toeplitz_hankel(sym);
  } else {
    throw std::runtime_error("unknown predictor: " + predictor);
  }
  nlohmann::json j = nlohmann::json::parse(pred.to_json());
  if (n > 0) j["evaluated"] = logvalue_json(pred.evaluate(double(n)));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_exact(const std::string& config, int n, const std::string& precision) {
  FHSymbol sym = symbol_from_json(slurp(config));
  PrecisionContext ctx = make_ctx(precision);
  LogDet det = toeplitz_logdet(symbol_fourier(sym, n), n, ctx);
  nlohmann::json j;
  j["n"] = n;
  j["determinant"] = logvalue_json(det);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(std::vector<std::string> ids, const std::string& config,
               const std::string& out_dir, const std::string& precision,
               std::uint64_t seed, bool seed_set, int jobs) {
  std::vector<CaseSpec> specs;
  if (!config.empty()) {
    specs.push_back(case_spec_from_json(slurp(config)));
  }
  if (ids.empty() && config.empty())
    for (const auto& d : case_catalog()) ids.push_back(d.id);
  for (const auto& id : ids) {
    CaseSpec s;
    s.id = id;
    specs.push_back(s);
  }

  bool all_passed = true;
  for (CaseSpec& spec : specs) {
    find_case(spec.id);  // fail fast on unknown ids
    if (precision == "extended") spec.tier = PrecisionTier::Extended;
    if (seed_set) spec.seed = seed;
    CaseResult res = run_case(spec, jobs);
    all_passed = all_passed && res.passed;
    const char* verdict = res.passed ? "PASS" : "FAIL";
    if (res.degenerate) {
      std::printf("%s  %-28s degenerate prediction (reported, not evaluated)\n",
                  verdict, res.spec.id.c_str());
    } else if (!res.records.empty()) {
      const auto& last = res.records.back();
      std::printf("%s  %-28s n=%-4d ratio=%.6f fit A=%.4g residual=%.2g\n",
                  verdict, res.spec.id.c_str(), last.n, last.ratio, res.fit_A,
                  res.fit_residual);
    }
    for (const auto& rec : res.records)
      if (!rec.error.empty())
        std::printf("      n=%d error: %s\n", rec.n, rec.error.c_str());
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::filesystem::path base(out_dir);
      spit(base / (res.spec.id + ".csv"), result_to_csv(res));
      spit(base / (res.spec.id + ".json"), result_to_json(res));
    }
  }
  return all_passed ? 0 : 1;
}

int cmd_sample(const std::string& ensemble, int n, double beta, double aprime,
               int count, std::uint64_t seed, const std::string& out) {
  SampleBatch batch;
  if (ensemble == "cbeta")
    batch = cbeta_sample(n, beta, count, seed);
  else if (ensemble == "gue")
    batch = gue_sample(n, count, seed);
  else if (ensemble == "lue")
    batch = lue_sample(n, aprime, count, seed);
  else
    throw std::runtime_error("unknown ensemble: " + ensemble);
  std::string csv = batch_to_csv(batch);
  if (out.empty())
    std::cout << csv;
  else
    spit(out, csv);
  return 0;
}

struct GeometryInfo {
  Geometry geometry;
  bool pair;  // uses both x and y
};

GeometryInfo parse_geometry(const std::string& name) {
  if (name == "circle") return {Geometry::Circle, false};
  if (name == "dirichlet") return {Geometry::Dirichlet, true};
  if (name == "neumann") return {Geometry::Neumann, true};
  if (name == "mixed") return {Geometry::Mixed, true};
  if (name == "harmonic") return {Geometry::Harmonic, true};
  if (name == "half-line") return {Geometry::HalfLine, true};
  throw std::runtime_error("unknown geometry: " + name);
}

FHSymbol pair_symbol(double x, double y) {
  const double pi = std::numbers::pi;
  FHSymbol sym;
  for (double pos : {x, y}) {
    sym.singularities.push_back({pi * pos, 0.5, 0.0});
    sym.singularities.push_back({wrap_phase(-pi * pos), 0.5, 0.0});
  }
  return sym;
}

// Predicted density matrix value: the geometry prefactors applied to the
// matching asymptotic formula for the determinant or Hankel ratio.
double predicted_density(const DensityMatrixSpec& spec) {
  const double pi = std::numbers::pi;
  const int N = spec.N;
  const double x = spec.x, y = spec.y;
  switch (spec.geometry) {
    case Geometry::Circle: {
      FHSymbol sym;
      sym.singularities.push_back({pi, 0.5, 0.0});
      sym.singularities.push_back({wrap_phase(pi + 2.0 * pi * x), 0.5, 0.0});
      return predict_fh(sym).evaluate(double(N)).real_value();
    }
    case Geometry::Dirichlet:
      return 2.0 * std::sin(pi * x) * std::sin(pi * y) *
             predict_cn_lambda(pair_symbol(x, y), 0.5, 0.5)
                 .evaluate(double(N))
                 .real_value();
    case Geometry::Neumann:
      return 0.5 * predict_cn_lambda(pair_symbol(x, y), -0.5, -0.5)
                       .evaluate(double(N))
                       .real_value();
    case Geometry::Mixed:
      return 2.0 * std::sin(pi * x / 2.0) * std::sin(pi * y / 2.0) *
             predict_cn_lambda(pair_symbol(x, y), -0.5, 0.5)
                 .evaluate(double(N))
                 .real_value();
    case Geometry::Harmonic: {
      Prediction p = predict_hankel_gue({{x, 0.5}, {y, 0.5}}, {});
      return (N + 1.0) / std::sqrt(2.0 * N) *
             p.evaluate(double(N)).real_value();
    }
    case Geometry::HalfLine: {
      Prediction p = predict_hankel_lue({{x, 0.5}, {y, 0.5}}, spec.aprime, {});
      return (N + 1.0) / (2.0 * std::sqrt(double(N))) *
             p.evaluate(double(N)).real_value();
    }
  }
  throw std::logic_error("predicted_density: unknown geometry");
}

int cmd_physics(const std::string& geometry, std::vector<int> Ns, double x,
                double y, double aprime, const std::string& precision,
                const std::string& out_dir) {
  GeometryInfo info = parse_geometry(geometry);
  PrecisionContext ctx = make_ctx(precision);
  std::ostringstream csv;
  csv << "N,exact,predicted,ratio\n";
  for (int N : Ns) {
    DensityMatrixSpec spec;
    spec.geometry = info.geometry;
    spec.N = N;
    spec.x = x;
    spec.y = info.pair ? y : x;
    spec.aprime = aprime;
    double exact = bose_density_matrix(spec, ctx);
    double pred = predicted_density(spec);
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g\n", N, exact, pred,
                  exact / pred);
    csv << line;
  }
  nlohmann::json sidecar;
  sidecar["geometry"] = geometry;
  sidecar["N"] = Ns;
  sidecar["x"] = x;
  if (info.pair) sidecar["y"] = y;
  if (info.geometry == Geometry::HalfLine) sidecar["aprime"] = aprime;
  if (out_dir.empty()) {
    std::cout << csv.str();
    std::cout << sidecar.dump(2) << "\n";
  } else {
    std::filesystem::create_directories(out_dir);
    std::filesystem::path base(out_dir);
    spit(base / ("physics-" + geometry + ".csv"), csv.str());
    spit(base / ("physics-" + geometry + ".json"), sidecar.dump(2) + "\n");
  }
  return 0;
}

int cmd_list_cases() {
  for (const auto& d : case_catalog()) {
    std::printf("%-28s [%s] n =", d.id.c_str(), d.formula.c_str());
    for (int n : d.default_ns) std::printf(" %d", n);
    std::printf("\n    %s\n", d.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fhlab: exact Toeplitz/Hankel determinants and random-matrix averages "
      "checked against their large-n asymptotics"};
  app.require_subcommand(1);

  std::string config, out_dir, precision, predictor, ensemble = "cbeta";
  std::string geometry = "circle";
  std::vector<std::string> ids;
  std::vector<int> Ns{8, 16, 32};
  int n = 0, count = 100, jobs = 1;
  double beta = 2.0, aprime = 0.5, x = 0.3, y = 0.6;
  std::uint64_t seed = 20260824ULL;

  auto* predict = app.add_subcommand("predict", "asymptotic prediction of a symbol");
  predict->add_option("--config", config, "symbol JSON file")->required();
  predict->add_option("--predictor", predictor,
                      "strong-szego | fisher-hartwig | toeplitz-hankel");
  predict->add_option("--n", n, "also evaluate at this size");

  auto* exact = app.add_subcommand("exact", "exact Toeplitz determinant of a symbol");
  exact->add_option("--config", config, "symbol JSON file")->required();
  exact->add_option("--n", n, "matrix size")->required();
  exact->add_option("--precision", precision, "double | extended");

  auto* verify = app.add_subcommand("verify", "run verification cases");
  verify->add_option("--case", ids, "case id (repeatable; default: all)");
  verify->add_option("--config", config, "case spec JSON file");
  verify->add_option("--out", out_dir, "directory for CSV/JSON reports");
  verify->add_option("--precision", precision, "double | extended");
  auto* seed_opt = verify->add_option("--seed", seed, "MC seed override");
  verify->add_option("--jobs", jobs, "parallel n-evaluations per case");

  auto* sample = app.add_subcommand("sample", "draw ensemble eigenvalue samples");
  sample->add_option("--ensemble", ensemble, "cbeta | gue | lue");
  sample->add_option("--n", n, "matrix size")->required();
  sample->add_option("--beta", beta, "CbetaE coupling");
  sample->add_option("--aprime", aprime, "LUE weight parameter");
  sample->add_option("--count", count, "configurations (cbeta: sweeps)");
  sample->add_option("--seed", seed, "RNG seed");
  sample->add_option("--out", out_dir, "output CSV path (default stdout)");

  auto* physics = app.add_subcommand(
      "physics", "Bose gas density matrices: exact vs predicted");
  physics->add_option("--geometry", geometry,
                      "circle | dirichlet | neumann | mixed | harmonic | half-line");
  physics->add_option("--N", Ns, "sizes to sweep");
  physics->add_option("--x", x, "first position (fraction / scaled)");
  physics->add_option("--y", y, "second position");
  physics->add_option("--aprime", aprime, "half-line weight parameter");
  physics->add_option("--precision", precision, "double | extended");
  physics->add_option("--out", out_dir, "directory for CSV + JSON sidecar");

  app.add_subcommand("list-cases", "print the built-in case catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("predict")) return cmd_predict(config, predictor, n);
    if (app.got_subcommand("exact")) return cmd_exact(config, n, precision);
    if (app.got_subcommand("verify"))
      return cmd_verify(ids, config, out_dir, precision, seed,
                        seed_opt->count() > 0, jobs);
    if (app.got_subcommand("sample"))
      return cmd_sample(ensemble, n, beta, aprime, count, seed, out_dir);
    if (app.got_subcommand("physics"))
      return cmd_physics(geometry, Ns, x, y, aprime, precision, out_dir);
    if (app.got_subcommand("list-cases")) return cmd_list_cases();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
