#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pshlab/space.hpp"

namespace pshlab {

// Finite measure space: points 0..n-1 with strictly positive weights.
struct MeasureSpace {
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

// Finite measurable family of component spaces over a measure space, with the
// integrability exponent p. All components share one scalar field.
struct MeasurableFamily {
  MeasureSpace base;
  std::vector<NormedSpace> components;
  Exponent p = Exponent::finite(2.0);

  int size() const { return static_cast<int>(components.size()); }
  Field field() const { return components.at(0).field(); }
};

MeasurableFamily make_family(MeasureSpace base, std::vector<NormedSpace> components, Exponent p);

// One vector in each component space.
struct Section {
  std::vector<Coords> values;
};

// (sum_s mu(s) ||sigma(s)||^p)^{1/p}, or max_s ||sigma(s)|| at p = inf
// (ess sup = max: every weight is positive).
double section_norm_p(const MeasurableFamily& family, const Section& sigma);

// The direct integral as a normed space of dimension sum dim E_s; its norm is
// section_norm_p under canonical coordinate packing, so every certification
// operation applies to it directly.
NormedSpace build_space(const MeasurableFamily& family);

// packing helpers between sections and the built space's coordinates
Coords pack_section(const MeasurableFamily& family, const Section& sigma);
Section unpack_section(const MeasurableFamily& family, const Coords& packed);

struct EmbeddingResult {
  Section section;
  // p = inf has no mu^{-1/p} scaling; the unscaled indicator is still
  // isometric for the max norm
  bool unscaled_inf = false;
};

// Isometric embedding of a component: v -> mu(s)^{-1/p} * sigma_{{s},v}.
EmbeddingResult embed_component(const MeasurableFamily& family, int s, const Coords& v);

struct DecompositionReport {
  int groups = 0;
  double max_discrepancy = 0.0;
  int sections_checked = 0;
};

// Groups points with identical component descriptors and verifies on random
// sections that the section norm equals the l^p norm of per-group Bochner
// norms.
DecompositionReport decomposition_check(const MeasurableFamily& family, int sections = 100,
                                        std::uint64_t seed = 0);

// Candidate value for simple-section approximation, tagged with the
// descriptor of the space it lives in; membership in E_s means descriptor
// equality.
struct TaggedValue {
  Coords value;
  SpaceDesc space;
};

// sigma_n(s) = the candidate v_k, k <= n, with v_k in E_s and
// ||v_k|| <= ||sigma(s)||, at smallest k minimising ||sigma(s) - v_k||;
// zero when no candidate qualifies. Guarantees ||sigma_n(s)|| <= ||sigma(s)||.
Section approximate_simple(const MeasurableFamily& family, const Section& sigma,
                           const std::vector<TaggedValue>& candidates, int n);

// Family JSON: {"p":number|"inf","points":[{"weight":w,"space":<desc>},...]}
nlohmann::json family_to_json(const MeasurableFamily& family);
MeasurableFamily family_from_json(const nlohmann::json& j);

}  // namespace pshlab
