#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pshlab/certify.hpp"
#include "pshlab/direct_integral.hpp"

namespace pshlab {

struct SuiteConfig {
  std::string name;
  std::uint64_t seed = 0;
  int nodes = 512;
  int restarts = 100;
  int degree_cap = 6;
  double eq_tol = kEqTol;
  double flat_tol = kFlatTol;
  std::string out_path;
  std::string format = "json";
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string details;
};

// Per-point norm profile of a map into a direct integral: one row per
// parameter sample, one column per measure point.
struct RadialProfile {
  std::vector<double> center;                 // rho(0)(s)
  std::vector<std::vector<double>> boundary;  // node j -> rho at sample j, per s
};

struct DayLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
};

struct DayReport {
  std::vector<DayLink> links;
  double total_slack = 0.0;
  bool equality_case = false;      // all links tight: no strictness violated by this map
  bool per_point_constant = false; // meaningful in the equality case only
  double direct_gap = 0.0;         // mean-value gap of the norm on the same map
  bool agree = false;              // Day verdict == direct verdict
  bool p1_warning = false;         // the method's validity is not claimed at p = 1
};

// Appendix-style factorization of the mean-value inequality through the
// scalar space L^p(S; R): ||gamma(0)||_p = ||rho(0)||_p <= ||mean rho||_p
// <= mean ||rho||_p, with per-link slacks and a cross-check against the
// direct method on the same map. The convex (segment) case requires
// 1 < p < infinity.
DayReport day_pipeline(const MeasurableFamily& family, const SegmentMap& gamma);
DayReport day_pipeline(const MeasurableFamily& family, const DiscMap& gamma, int nodes);

// Runs the named suite and returns its checks; known names:
// conv-int, psh-int, day, counterexample, edge-p, jensen, involution.
std::vector<CheckResult> run_suite(const SuiteConfig& config);

// Deterministic serialization: JSON objects with sorted keys, CSV floats
// printed as %.12e. Rejects empty results and unwritable paths.
void emit_report(const std::vector<CheckResult>& results, const std::string& path,
                 const std::string& format);

nlohmann::json results_to_json(const std::vector<CheckResult>& results);
std::string results_to_csv(const std::vector<CheckResult>& results);

}  // namespace pshlab
