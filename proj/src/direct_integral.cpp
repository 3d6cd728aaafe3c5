#include "pshlab/direct_integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pshlab/rng.hpp"

namespace pshlab {

MeasurableFamily make_family(MeasureSpace base, std::vector<NormedSpace> components,
                             Exponent p) {
  if (components.empty() || base.weights.size() != components.size()) {
    throw std::invalid_argument("family needs one positive weight per component");
  }
  for (double w : base.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be strictly positive");
  }
  for (const auto& c : components) {
    if (c.field() != components[0].field()) {
      throw std::invalid_argument("components must share one scalar field");
    }
  }
  if (!p.is_inf && !(p.value >= 1.0)) throw std::invalid_argument("p must satisfy p >= 1");
  return MeasurableFamily{std::move(base), std::move(components), p};
}

namespace {

void check_compat(const MeasurableFamily& family, const Section& sigma) {
  if (static_cast<int>(sigma.values.size()) != family.size()) {
    throw std::invalid_argument("section size does not match the family");
  }
  for (int s = 0; s < family.size(); ++s) {
    if (static_cast<int>(sigma.values[static_cast<std::size_t>(s)].size()) !=
        family.components[static_cast<std::size_t>(s)].dim()) {
      throw std::invalid_argument("section value dimension mismatch at point " +
                                  std::to_string(s));
    }
  }
}

}  // namespace

double section_norm_p(const MeasurableFamily& family, const Section& sigma) {
  check_compat(family, sigma);
  if (family.p.is_inf) {
    double m = 0.0;
    for (int s = 0; s < family.size(); ++s) {
      m = std::max(m, family.components[static_cast<std::size_t>(s)].norm(
                          sigma.values[static_cast<std::size_t>(s)]));
    }
    return m;
  }
  double acc = 0.0;
  for (int s = 0; s < family.size(); ++s) {
    acc += family.base.weights[static_cast<std::size_t>(s)] *
           std::pow(family.components[static_cast<std::size_t>(s)].norm(
                        sigma.values[static_cast<std::size_t>(s)]),
                    family.p.value);
  }
  return std::pow(acc, 1.0 / family.p.value);
}

NormedSpace build_space(const MeasurableFamily& family) {
  SpaceDesc d;
  d.field = family.field();
  d.kind = NormKind::block;
  d.p = family.p;
  d.weights = family.base.weights;
  int dim = 0;
  for (const auto& c : family.components) {
    d.blocks.push_back(c.desc());
    dim += c.dim();
  }
  d.dim = dim;
  if (family.p.is_inf) d.weights.clear();  // max norm ignores weights
  return NormedSpace::make(std::move(d));
}

Coords pack_section(const MeasurableFamily& family, const Section& sigma) {
  check_compat(family, sigma);
  Coords packed;
  for (const Coords& v : sigma.values) packed.insert(packed.end(), v.begin(), v.end());
  return packed;
}

Section unpack_section(const MeasurableFamily& family, const Coords& packed) {
  Section sigma;
  std::size_t idx = 0;
  for (const auto& c : family.components) {
    if (idx + static_cast<std::size_t>(c.dim()) > packed.size()) {
      throw std::invalid_argument("packed coordinates too short for the family");
    }
    sigma.values.emplace_back(packed.begin() + static_cast<std::ptrdiff_t>(idx),
                              packed.begin() + static_cast<std::ptrdiff_t>(idx) + c.dim());
    idx += static_cast<std::size_t>(c.dim());
  }
  if (idx != packed.size()) {
    throw std::invalid_argument("packed coordinates too long for the family");
  }
  return sigma;
}

EmbeddingResult embed_component(const MeasurableFamily& family, int s, const Coords& v) {
  if (s < 0 || s >= family.size()) throw std::invalid_argument("point index out of range");
  EmbeddingResult res;
  for (int t = 0; t < family.size(); ++t) {
    res.section.values.push_back(family.components[static_cast<std::size_t>(t)].zero());
  }
  if (family.p.is_inf) {
    res.unscaled_inf = true;
    res.section.values[static_cast<std::size_t>(s)] = v;
  } else {
    double factor = std::pow(family.base.weights[static_cast<std::size_t>(s)],
                             -1.0 / family.p.value);
    res.section.values[static_cast<std::size_t>(s)] = scale(v, Scalar{factor, 0.0});
  }
  return res;
}

DecompositionReport decomposition_check(const MeasurableFamily& family, int sections,
                                        std::uint64_t seed) {
  // group points by descriptor equality
  std::vector<std::vector<int>> groups;
  for (int s = 0; s < family.size(); ++s) {
    bool placed = false;
    for (auto& g : groups) {
      if (family.components[static_cast<std::size_t>(g[0])].desc() ==
          family.components[static_cast<std::size_t>(s)].desc()) {
        g.push_back(s);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({s});
  }

  DecompositionReport rep;
  rep.groups = static_cast<int>(groups.size());
  rep.sections_checked = sections;
  for (int i = 0; i < sections; ++i) {
    Section sigma;
    for (int s = 0; s < family.size(); ++s) {
      sigma.values.push_back(family.components[static_cast<std::size_t>(s)].random_vector(
          derive_seed(seed, static_cast<std::uint64_t>(i * family.size() + s)), 1.5));
    }
    double direct = section_norm_p(family, sigma);
    // two-stage norm: Bochner norm inside each group, then l^p across groups
    double two_stage;
    if (family.p.is_inf) {
      two_stage = 0.0;
      for (const auto& g : groups) {
        double gn = 0.0;
        for (int s : g) {
          gn = std::max(gn, family.components[static_cast<std::size_t>(s)].norm(
                                sigma.values[static_cast<std::size_t>(s)]));
        }
        two_stage = std::max(two_stage, gn);
      }
    } else {
      double acc = 0.0;
      for (const auto& g : groups) {
        double gacc = 0.0;
        for (int s : g) {
          gacc += family.base.weights[static_cast<std::size_t>(s)] *
                  std::pow(family.components[static_cast<std::size_t>(s)].norm(
                               sigma.values[static_cast<std::size_t>(s)]),
                           family.p.value);
        }
        acc += std::pow(std::pow(gacc, 1.0 / family.p.value), family.p.value);
      }
      two_stage = std::pow(acc, 1.0 / family.p.value);
    }
    rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(direct - two_stage));
  }
  return rep;
}

Section approximate_simple(const MeasurableFamily& family, const Section& sigma,
                           const std::vector<TaggedValue>& candidates, int n) {
  check_compat(family, sigma);
  Section out;
  for (int s = 0; s < family.size(); ++s) {
    const NormedSpace& es = family.components[static_cast<std::size_t>(s)];
    double sigma_norm = es.norm(sigma.values[static_cast<std::size_t>(s)]);
    int best_k = -1;
    double best_dist = 0.0;
    int limit = std::min(n, static_cast<int>(candidates.size()) - 1);
    for (int k = 0; k <= limit; ++k) {
      const TaggedValue& cand = candidates[static_cast<std::size_t>(k)];
      if (!(cand.space == es.desc())) continue;
      if (es.norm(cand.value) > sigma_norm) continue;
      double dist = es.norm(sub(sigma.values[static_cast<std::size_t>(s)], cand.value));
      if (best_k < 0 || dist < best_dist) {
        best_k = k;
        best_dist = dist;
      }
    }
    out.values.push_back(best_k < 0 ? es.zero()
                                    : candidates[static_cast<std::size_t>(best_k)].value);
  }
  return out;
}

nlohmann::json family_to_json(const MeasurableFamily& family) {
  nlohmann::json j;
  if (family.p.is_inf) {
    j["p"] = "inf";
  } else {
    j["p"] = family.p.value;
  }
  nlohmann::json points = nlohmann::json::array();
  for (int s = 0; s < family.size(); ++s) {
    nlohmann::json pt;
    pt["weight"] = family.base.weights[static_cast<std::size_t>(s)];
    pt["space"] = space_to_json(family.components[static_cast<std::size_t>(s)].desc());
    points.push_back(pt);
  }
  j["points"] = points;
  return j;
}

MeasurableFamily family_from_json(const nlohmann::json& j) {
  const auto& jp = j.at("p");
  Exponent p = jp.is_string() ? Exponent::inf() : Exponent::finite(jp.get<double>());
  MeasureSpace base;
  std::vector<NormedSpace> components;
  for (const auto& pt : j.at("points")) {
    base.weights.push_back(pt.at("weight").get<double>());
    components.push_back(NormedSpace::make(space_from_json(pt.at("space"))));
  }
  return make_family(std::move(base), std::move(components), p);
}

}  // namespace pshlab
