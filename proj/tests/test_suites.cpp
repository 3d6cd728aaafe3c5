#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "pshlab/rng.hpp"
#include "pshlab/suites.hpp"

using namespace pshlab;

namespace {

MeasurableFamily real_pair(double p) {
  return make_family({{1.0, 2.0}},
                     {lp_space(Field::real, Exponent::finite(2.0), 2),
                      lp_space(Field::real, Exponent::finite(3.0), 2)},
                     Exponent::finite(p));
}

MeasurableFamily complex_pair(double p) {
  return make_family({{1.0, 1.0}},
                     {lp_space(Field::complex_, Exponent::finite(2.0), 2),
                      lp_space(Field::complex_, Exponent::finite(2.0), 1)},
                     Exponent::finite(p));
}

bool all_pass(const std::vector<CheckResult>& rs) {
  for (const CheckResult& r : rs) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("day pipeline on a constant segment is all-tight") {
  MeasurableFamily fam = real_pair(2.0);
  NormedSpace whole = build_space(fam);
  SegmentMap constant;
  constant.base = whole.random_vector(5, 1.0);
  constant.direction = whole.zero();
  DayReport r = day_pipeline(fam, constant);
  CHECK(r.equality_case);
  CHECK(r.per_point_constant);
  CHECK(std::abs(r.total_slack) < 1e-12);
  CHECK(std::abs(r.direct_gap) < 1e-12);
  CHECK(r.agree);
}

TEST_CASE("day pipeline detects strictness on random segments") {
  for (double p : {1.5, 2.0, 4.0}) {
    MeasurableFamily fam = real_pair(p);
    NormedSpace whole = build_space(fam);
    for (int i = 0; i < 20; ++i) {
      SegmentMap g = sample_segment(whole, derive_seed(311, static_cast<std::uint64_t>(i)));
      DayReport r = day_pipeline(fam, g);
      CHECK(r.agree);
      CHECK_FALSE(r.p1_warning);
      // total slack reproduces the direct midpoint gap
      CHECK(std::abs(r.total_slack - r.direct_gap) < 1e-10);
      CHECK(r.total_slack >= -1e-12);
      REQUIRE(r.links.size() == 3);
      for (const DayLink& link : r.links) CHECK(link.slack >= -1e-12);
    }
  }
}

TEST_CASE("day pipeline rejects p=1 and p=inf segments, warns on p=1 discs") {
  MeasurableFamily p1 = real_pair(1.0);
  SegmentMap g;
  g.base = {Scalar{1, 0}, Scalar{0, 0}, Scalar{0, 0}, Scalar{1, 0}};
  g.direction = {Scalar{0, 0}, Scalar{1, 0}, Scalar{0, 0}, Scalar{0, 0}};
  CHECK_THROWS_AS(day_pipeline(p1, g), std::invalid_argument);

  MeasurableFamily pinf =
      make_family({{1.0, 2.0}},
                  {lp_space(Field::real, Exponent::finite(2.0), 2),
                   lp_space(Field::real, Exponent::finite(3.0), 2)},
                  Exponent::inf());
  CHECK_THROWS_AS(day_pipeline(pinf, g), std::invalid_argument);

  MeasurableFamily c1 = complex_pair(1.0);
  NormedSpace whole = build_space(c1);
  DiscMap disc = sample_disc(whole, 2, 41);
  DayReport r = day_pipeline(c1, disc, 512);
  CHECK(r.p1_warning);
}

TEST_CASE("day pipeline on discs matches the direct psh gap") {
  for (double p : {1.5, 2.0}) {
    MeasurableFamily fam = complex_pair(p);
    NormedSpace whole = build_space(fam);
    for (int i = 0; i < 10; ++i) {
      DiscMap g = sample_disc(whole, 3, derive_seed(313, static_cast<std::uint64_t>(i)));
      DayReport r = day_pipeline(fam, g, 512);
      CHECK(r.agree);
      CHECK(std::abs(r.total_slack - r.direct_gap) < 1e-8);
      CHECK(r.total_slack >= -1e-9);
    }
  }
}

TEST_CASE("day pipeline equality case: embedded flat disc") {
  // (1, z) in the l-infinity component embeds to a sup-norm-constant map, but
  // the l^p aggregate over two points still smooths it out unless the other
  // component is zero; use a single-point family to hit true equality.
  MeasurableFamily singleton =
      make_family({{1.0}}, {lp_space(Field::complex_, Exponent::inf(), 2)},
                  Exponent::finite(2.0));
  DiscMap flat;
  flat.coeffs = {{Scalar{1, 0}, Scalar{0, 0}}, {Scalar{0, 0}, Scalar{1, 0}}};
  DayReport r = day_pipeline(singleton, flat, 512);
  CHECK(r.equality_case);
  CHECK(r.per_point_constant);  // the norm profile is constant even though eta is not
  CHECK(r.agree);
}

TEST_CASE("conv-int suite passes") {
  SuiteConfig cfg;
  cfg.name = "conv-int";
  cfg.restarts = 40;
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(rs.size() >= 12);
  CHECK(all_pass(rs));
  for (const CheckResult& r : rs) CHECK(r.suite == "conv-int");
}

TEST_CASE("psh-int suite passes") {
  SuiteConfig cfg;
  cfg.name = "psh-int";
  cfg.restarts = 20;
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(rs.size() >= 12);
  CHECK(all_pass(rs));
}

TEST_CASE("day suite passes") {
  SuiteConfig cfg;
  cfg.name = "day";
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(rs.size() == 60);
  CHECK(all_pass(rs));
}

TEST_CASE("counterexample suite passes") {
  SuiteConfig cfg;
  cfg.name = "counterexample";
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(all_pass(rs));
}

TEST_CASE("edge-p suite passes") {
  SuiteConfig cfg;
  cfg.name = "edge-p";
  cfg.restarts = 60;
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(all_pass(rs));
}

TEST_CASE("jensen suite passes") {
  SuiteConfig cfg;
  cfg.name = "jensen";
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(all_pass(rs));
}

TEST_CASE("involution suite passes") {
  SuiteConfig cfg;
  cfg.name = "involution";
  std::vector<CheckResult> rs = run_suite(cfg);
  CHECK(all_pass(rs));
}

TEST_CASE("unknown suite name is rejected") {
  SuiteConfig cfg;
  cfg.name = "nope";
  CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

TEST_CASE("suite results are deterministic for a fixed seed") {
  SuiteConfig cfg;
  cfg.name = "jensen";
  cfg.seed = 9;
  std::vector<CheckResult> a = run_suite(cfg);
  std::vector<CheckResult> b = run_suite(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].pass == b[i].pass);
    CHECK(a[i].value == b[i].value);
  }
}

TEST_CASE("report serialization") {
  std::vector<CheckResult> rs = {
      {"demo", "check,one", true, 0.5, "note, with comma"},
      {"demo", "zeta", false, 1.0 / 3.0, ""},
      {"demo", "alpha", true, 2.0, "x"},
  };
  std::string csv = results_to_csv(rs);
  CHECK(csv.substr(0, csv.find('\n')) == "suite,check,pass,value,details");
  CHECK(csv.find("check;one") != std::string::npos);
  CHECK(csv.find("note; with comma") != std::string::npos);
  // every data row has exactly 4 commas
  std::size_t pos = csv.find('\n') + 1;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string::npos) end = csv.size();
    std::string row = csv.substr(pos, end - pos);
    if (!row.empty()) {
      CHECK(std::count(row.begin(), row.end(), ',') == 4);
    }
    pos = end + 1;
  }

  nlohmann::json j = results_to_json(rs);
  REQUIRE(j.contains("checks"));
  CHECK(j["checks"].is_array());
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["suite"] == "demo");
  CHECK(j["checks"][1]["pass"] == false);

  // identical dumps across calls (sorted keys, fixed float formatting)
  CHECK(results_to_json(rs).dump(2) == j.dump(2));

  CHECK_THROWS_AS(emit_report({}, "/tmp/pshlab_empty.json", "json"), std::invalid_argument);
  CHECK_THROWS_AS(emit_report(rs, "/tmp/pshlab_report.bad", "xml"), std::invalid_argument);
  CHECK_THROWS_AS(emit_report(rs, "/nonexistent_dir_zz/x.json", "json"), std::runtime_error);

  const char* path = "/tmp/pshlab_report_test.csv";
  emit_report(rs, path, "csv");
  std::ifstream in(path);
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(contents == csv);
  std::remove(path);
}
