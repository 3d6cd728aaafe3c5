#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pshlab/means.hpp"

namespace pshlab {

inline constexpr double kFlatTol = 1e-9;  // epsilon_flat

// Max over the evaluation grid of | ||gamma(point)|| - 1 |; zero exactly when
// the image lies in the unit sphere at every grid point.
// Segment grid: 33 uniform parameters in [-1, 1].
// Disc grid: 64 points on |z| = 1 plus radii {0, 1/3, 2/3} at 32 angles each.
double segment_flatness(const NormedSpace& space, const SegmentMap& gamma);
double disc_flatness(const NormedSpace& space, const DiscMap& gamma);

enum class Mode { strict_convex, strict_psh };

struct Verdict {
  Mode mode = Mode::strict_convex;
  bool witness_found = false;
  double flatness = 0.0;  // witness flatness, or min flatness seen
  std::optional<SegmentMap> segment_witness;
  std::optional<DiscMap> disc_witness;
  int restarts = 0;
  int degree_cap = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

struct SearchConfig {
  int restarts = 100;
  int degree_cap = 6;
  std::uint64_t seed = 0;
  int nodes = 512;
  int samples = 50;  // sampled maps for cross-checks
};

// Falsification search for a non-constant segment in the unit sphere,
// normalized to ||direction|| = 1. Random restarts with a derivative-free
// compass polish (shrink factor 1/2, 200 iterations). Restarts run
// concurrently; each derives its own seed, so results are
// schedule-independent.
Verdict flat_segment_search(const NormedSpace& space, int restarts, std::uint64_t seed);

// Same search over polynomial disc coefficients c_0..c_d, normalized to
// sum_{k>=1} ||c_k|| = 1.
Verdict flat_disc_search(const NormedSpace& space, int degree_cap, int restarts,
                         std::uint64_t seed);

// Dispatches on mode; rejects a mode/field mismatch.
Verdict strict_verdict(const NormedSpace& space, Mode mode, const SearchConfig& config);

struct CrosscheckReport {
  Verdict verdict;
  double min_gap = 0.0;  // min strictness gap over sampled non-constant maps
  bool consistent = false;
};

// Compares the flat-search verdict (condition 1) against strictness of the
// reshaped norm (condition 3): psi = square over the norm for segments,
// psi = exp2 over the log-norm for discs. The witness map, when found, is
// included among the sampled maps.
CrosscheckReport equivalence_crosscheck(const NormedSpace& space, Mode mode,
                                        const SearchConfig& config);

struct MmpReport {
  bool violation = false;
  bool eta_constant = false;
  double global_max = 0.0;
  double interior_max = 0.0;  // max over grid points with |z| <= 2/3
};

// Checks whether ||eta|| attains its grid maximum at an interior point; a
// non-constant eta doing so witnesses a strong maximum modulus failure.
MmpReport strong_mmp_check(const NormedSpace& space, const DiscMap& eta, int nodes);

struct PullbackReport {
  double min_gap_all = 0.0;     // over all sampled discs
  double min_gap_strict = 0.0;  // over sampled non-constant discs
  int discs_checked = 0;
  bool psh_ok = false;     // min_gap_all >= -eq tolerance
  bool strict_ok = false;  // min_gap_strict > eq tolerance
};

// Pulls a convex function on R^n back to C^n through the coordinatewise real
// part and checks the mean-value gaps on sampled discs.
PullbackReport pullback_conv_psh_check(const ScalarFunction& f_real, int complex_dim,
                                       bool strictly_convex, int discs, int nodes,
                                       std::uint64_t seed);

struct CounterexampleReport {
  double equality_gap = 0.0;    // gap of g on the cancelling disc (z, -z^2)
  double min_affine_gap = 0.0;  // min gap over seeded non-constant affine discs
  int affine_discs = 0;
  bool pass = false;  // equality_gap <= eq tol and min_affine_gap > 0
};

// The composition g = |z_1^2 + z_2|^2 is strict on every non-constant affine
// disc yet flat on the non-constant disc z -> (z, -z^2).
CounterexampleReport counterexample_suite(std::uint64_t seed, int affine_discs = 1000,
                                          int nodes = 512);

// Verdict JSON:
// {"mode","outcome","flatness","witness":DiscMap|SegmentMap|null,
//  "restarts","degree_cap","seed"}
nlohmann::json verdict_to_json(const Verdict& v);

// Seeded samplers shared by the cross-checks and the experiment suites.
SegmentMap sample_segment(const NormedSpace& space, std::uint64_t seed, bool nonconstant = true);
DiscMap sample_disc(const NormedSpace& space, int degree, std::uint64_t seed,
                    bool nonconstant = true, double min_center_norm = 0.0);

}  // namespace pshlab
