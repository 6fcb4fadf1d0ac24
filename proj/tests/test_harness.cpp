#include "fhlab/harness.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <regex>

using namespace fhlab;

namespace {

// the seconds column is timing noise; everything else must be reproducible
std::string strip_seconds(const std::string& csv) {
  std::string out;
  for (size_t pos = 0; pos < csv.size();) {
    size_t eol = csv.find('\n', pos);
    if (eol == std::string::npos) eol = csv.size();
    std::string line = csv.substr(pos, eol - pos);
    size_t comma = line.rfind(',');
    out += line.substr(0, comma);
    out += '\n';
    pos = eol + 1;
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("case spec JSON round trip") {
  CaseSpec spec;
  spec.id = "szego-2tcos";
  spec.ns = {8, 16};
  spec.tolerance = 1e-6;
  spec.tier = PrecisionTier::Extended;
  spec.mc_samples = 123;
  spec.seed = 99;
  CaseSpec back = case_spec_from_json(case_spec_to_json(spec));
  CHECK(back.id == spec.id);
  CHECK(back.ns == spec.ns);
  CHECK(back.tolerance == doctest::Approx(spec.tolerance));
  CHECK(back.tier == spec.tier);
  CHECK(back.mc_samples == spec.mc_samples);
  CHECK(back.seed == spec.seed);
}

TEST_CASE("catalog lookup") {
  CHECK(case_catalog().size() >= 15);
  CHECK(find_case("szego-2tcos").formula == "strong-szego");
  CHECK_THROWS(find_case("no-such-case"));
}

TEST_CASE("smooth-symbol case runs and passes at machine precision") {
  CaseSpec spec;
  spec.id = "szego-2tcos";
  CaseResult r = run_case(spec);
  CHECK(r.passed);
  CHECK_FALSE(r.degenerate);
  REQUIRE(r.records.size() == 3);
  CHECK(r.records.back().n == 32);
  CHECK(std::abs(r.records.back().ratio - 1.0) < 1e-10);
  for (const auto& rec : r.records) CHECK(rec.error.empty());
}

TEST_CASE("degenerate predictions give a structured report without ratios") {
  CaseSpec spec;
  spec.id = "fh-degenerate-highT-naive";
  CaseResult r = run_case(spec);
  CHECK(r.degenerate);
  CHECK(r.passed);
  for (const auto& rec : r.records) {
    CHECK(rec.ratio == 0.0);
    CHECK_FALSE(rec.exact.zero);
  }
  // the prediction is never evaluated, so the report carries no ratio column
  auto j = nlohmann::json::parse(result_to_json(r));
  CHECK(j.at("degenerate").get<bool>());
  CHECK_FALSE(j.at("records").at(0).contains("ratio"));
}

TEST_CASE("results are reproducible and independent of the job count") {
  CaseSpec spec;
  spec.id = "lenard-X0.5";
  spec.ns = {8, 16};
  std::string a = strip_seconds(result_to_csv(run_case(spec, 1)));
  std::string b = strip_seconds(result_to_csv(run_case(spec, 1)));
  std::string c = strip_seconds(result_to_csv(run_case(spec, 3)));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("CSV schema is stable") {
  CaseSpec spec;
  spec.id = "szego-2tcos";
  spec.ns = {8};
  std::string csv = result_to_csv(run_case(spec));
  CHECK(csv.rfind("case,n,log_exact,phase_exact,log_pred,ratio,stderr,seconds", 0) == 0);
  // one header plus one record
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("JSON report carries the verdict and the fit") {
  CaseSpec spec;
  spec.id = "lenard-X0.5";
  spec.ns = {8, 16, 32};
  CaseResult r = run_case(spec);
  auto j = nlohmann::json::parse(result_to_json(r));
  CHECK(j.at("spec").at("case") == "lenard-X0.5");
  CHECK(j.at("formula") == "fisher-hartwig");
  CHECK(j.at("passed").get<bool>() == r.passed);
  CHECK(j.at("records").size() == 3);
  CHECK(std::isfinite(j.at("fit").at("A").get<double>()));
}

TEST_CASE("single circle charge factorizes exactly") {
  ProbeParams p;
  p.phi = {0.9};
  p.q = {0.5};
  auto recs = run_factorization_probe(ProbeKind::CircleCharges, p, {4, 12},
                                      PrecisionContext::doubles());
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("smooth-times-charge factorization converges to one") {
  ProbeParams p;
  p.smooth_log = two_t_cos(0.4, 8);
  p.phi = {1.2};
  p.q = {0.5};
  auto recs = run_factorization_probe(ProbeKind::CircleSmoothCharge, p, {16, 64},
                                      PrecisionContext::doubles());
  REQUIRE(recs.size() == 2);
  CHECK(std::abs(recs.back().ratio - 1.0) < 0.01);
  CHECK(std::abs(recs.back().ratio - 1.0) < std::abs(recs.front().ratio - 1.0));
}

TEST_CASE("weighted-Hankel charge factorizations stay near one") {
  ProbeParams pg;
  pg.y = {-0.3, 0.4};
  pg.q = {0.5, 0.5};
  auto gauss = run_factorization_probe(ProbeKind::GaussCharges, pg, {16},
                                       PrecisionContext::extended());
  CHECK(std::abs(gauss.back().ratio - 1.0) < 0.05);

  ProbeParams pl;
  pl.y = {0.35, 0.6};
  pl.q = {0.5, 0.5};
  pl.aprime = 0.5;
  auto lag = run_factorization_probe(ProbeKind::LaguerreCharges, pl, {16},
                                     PrecisionContext::extended());
  CHECK(std::abs(lag.back().ratio - 1.0) < 0.05);
}

TEST_SUITE_END();
