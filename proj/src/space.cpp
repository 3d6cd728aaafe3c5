#include "pshlab/space.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "pshlab/rng.hpp"

namespace pshlab {

bool SpaceDesc::operator==(const SpaceDesc& o) const {
  return field == o.field && kind == o.kind && p == o.p && dim == o.dim &&
         weights == o.weights && blocks == o.blocks;
}

namespace {

void validate(const SpaceDesc& d) {
  if (d.dim < 1) throw SpaceError("space dimension must be >= 1");
  if (!d.p.is_inf && !(d.p.value >= 1.0)) {
    throw SpaceError("exponent p must satisfy p >= 1 (got " + std::to_string(d.p.value) + ")");
  }
  switch (d.kind) {
    case NormKind::lp:
      if (!d.weights.empty() || !d.blocks.empty()) {
        throw SpaceError("lp space takes no weights or blocks");
      }
      break;
    case NormKind::weighted_lp: {
      if (static_cast<int>(d.weights.size()) != d.dim) {
        throw SpaceError("weighted_lp needs one weight per coordinate");
      }
      for (double w : d.weights) {
        if (!(w > 0.0)) throw SpaceError("weights must be strictly positive");
      }
      break;
    }
    case NormKind::block: {
      if (d.blocks.empty()) throw SpaceError("block space needs at least one block");
      if (!d.weights.empty() && d.weights.size() != d.blocks.size()) {
        throw SpaceError("block weights must match block count");
      }
      for (double w : d.weights) {
        if (!(w > 0.0)) throw SpaceError("weights must be strictly positive");
      }
      int total = 0;
      for (const auto& b : d.blocks) {
        if (b.field != d.field) throw SpaceError("block fields must match the outer field");
        validate(b);
        total += b.dim;
      }
      if (total != d.dim) throw SpaceError("block dims must sum to the space dim");
      break;
    }
  }
}

// Hot path for the falsification searches; no allocations.
double norm_rec(const SpaceDesc& d, const Scalar* v) {
  switch (d.kind) {
    case NormKind::lp:
    case NormKind::weighted_lp: {
      if (d.p.is_inf) {
        // ess sup over a finite set with positive weights is the plain max
        double m = 0.0;
        for (int i = 0; i < d.dim; ++i) m = std::max(m, std::abs(v[i]));
        return m;
      }
      double s = 0.0;
      if (d.p.value == 1.0) {  // skip pow on the endpoint exponents
        for (int i = 0; i < d.dim; ++i) {
          double w =
              d.kind == NormKind::weighted_lp ? d.weights[static_cast<std::size_t>(i)] : 1.0;
          s += w * std::abs(v[i]);
        }
        return s;
      }
      if (d.p.value == 2.0) {
        for (int i = 0; i < d.dim; ++i) {
          double w =
              d.kind == NormKind::weighted_lp ? d.weights[static_cast<std::size_t>(i)] : 1.0;
          s += w * std::norm(v[i]);
        }
        return std::sqrt(s);
      }
      for (int i = 0; i < d.dim; ++i) {
        double w = d.kind == NormKind::weighted_lp ? d.weights[static_cast<std::size_t>(i)] : 1.0;
        s += w * std::pow(std::abs(v[i]), d.p.value);
      }
      return std::pow(s, 1.0 / d.p.value);
    }
    case NormKind::block: {
      const Scalar* cur = v;
      if (d.p.is_inf) {
        double m = 0.0;
        for (const auto& b : d.blocks) {
          m = std::max(m, norm_rec(b, cur));
          cur += b.dim;
        }
        return m;
      }
      double s = 0.0;
      for (std::size_t j = 0; j < d.blocks.size(); ++j) {
        double w = d.weights.empty() ? 1.0 : d.weights[j];
        s += w * std::pow(norm_rec(d.blocks[j], cur), d.p.value);
        cur += d.blocks[j].dim;
      }
      return std::pow(s, 1.0 / d.p.value);
    }
  }
  return 0.0;  // unreachable
}

}  // namespace

NormedSpace NormedSpace::make(SpaceDesc desc) {
  validate(desc);
  return NormedSpace(std::move(desc));
}

double NormedSpace::norm(const Coords& v) const {
  if (static_cast<int>(v.size()) != desc_.dim) {
    throw SpaceError("vector dimension mismatch: expected " + std::to_string(desc_.dim) +
                     ", got " + std::to_string(v.size()));
  }
  if (is_real()) {
    for (const Scalar& c : v) {
      if (c.imag() != 0.0) throw SpaceError("real space rejects complex input");
    }
  }
  return norm_rec(desc_, v.data());
}

Coords NormedSpace::random_vector(std::uint64_t seed, double s) const {
  Rng rng(seed);
  Coords v(static_cast<std::size_t>(desc_.dim));
  for (auto& c : v) {
    c = is_real() ? Scalar{s * rng.normal(), 0.0} : s * rng.normal_complex();
  }
  return v;
}

Coords NormedSpace::random_unit_vector(std::uint64_t seed) const {
  Rng rng(seed);
  for (;;) {
    Coords v(static_cast<std::size_t>(desc_.dim));
    for (auto& c : v) {
      c = is_real() ? Scalar{rng.normal(), 0.0} : rng.normal_complex();
    }
    double n = norm(v);
    if (n > 1e-12) return scale(v, Scalar{1.0 / n, 0.0});
  }
}

NormAxiomReport check_norm_axioms_fn(Field field, int dim,
                                     const std::function<double(const Coords&)>& norm_fn,
                                     int trials, std::uint64_t seed) {
  if (trials < 1) throw SpaceError("trials must be >= 1");
  bool real = field == Field::real;
  auto sample = [&](std::uint64_t s) {
    Rng rng(s);
    Coords v(static_cast<std::size_t>(dim));
    for (auto& c : v) c = real ? Scalar{2.0 * rng.normal(), 0.0} : 2.0 * rng.normal_complex();
    return v;
  };
  NormAxiomReport rep;
  char buf[160];
  for (int t = 0; t < trials; ++t) {
    rep.trials_run = t + 1;
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Coords u = sample(s);
    Coords v = sample(s ^ 0x5555555555555555ULL);
    Rng rng(s ^ 0xaaaaaaaaaaaaaaaaULL);
    Scalar c = real ? Scalar{3.0 * rng.normal(), 0.0} : 3.0 * rng.normal_complex();

    double nu = norm_fn(u);
    double nv = norm_fn(v);
    if (!(nu >= 0.0) || !(nv >= 0.0)) {
      rep.pass = false;
      rep.violation = "nonnegativity failed at trial " + std::to_string(t);
      return rep;
    }
    double ncu = norm_fn(scale(u, c));
    double want = std::abs(c) * nu;
    if (std::abs(ncu - want) > 1e-12 * std::max(1.0, want)) {
      std::snprintf(buf, sizeof buf, "homogeneity failed at trial %d: |c|*|u|=%.17g, |c u|=%.17g",
                    t, want, ncu);
      rep.pass = false;
      rep.violation = buf;
      return rep;
    }
    double nsum = norm_fn(add(u, v));
    if (nsum > nu + nv + 1e-12 * (nu + nv)) {
      std::snprintf(buf, sizeof buf, "triangle inequality failed at trial %d: %.17g > %.17g", t,
                    nsum, nu + nv);
      rep.pass = false;
      rep.violation = buf;
      return rep;
    }
  }
  // definiteness on the exact zero vector
  if (norm_fn(Coords(static_cast<std::size_t>(dim), Scalar{0.0, 0.0})) != 0.0) {
    rep.pass = false;
    rep.violation = "norm of the zero vector is not exactly 0";
  }
  return rep;
}

NormAxiomReport NormedSpace::check_norm_axioms(int trials, std::uint64_t seed) const {
  return check_norm_axioms_fn(desc_.field, desc_.dim,
                              [this](const Coords& v) { return norm(v); }, trials, seed);
}

Coords add(const Coords& a, const Coords& b) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Coords sub(const Coords& a, const Coords& b) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Coords scale(const Coords& a, Scalar c) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

nlohmann::json space_to_json(const SpaceDesc& d) {
  nlohmann::json j;
  j["field"] = d.field == Field::real ? "real" : "complex";
  switch (d.kind) {
    case NormKind::lp: j["kind"] = "lp"; break;
    case NormKind::weighted_lp: j["kind"] = "weighted_lp"; break;
    case NormKind::block: j["kind"] = "block"; break;
  }
  if (d.p.is_inf) {
    j["p"] = "inf";
  } else {
    j["p"] = d.p.value;
  }
  j["dim"] = d.dim;
  if (!d.weights.empty()) j["weights"] = d.weights;
  if (!d.blocks.empty()) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : d.blocks) blocks.push_back(space_to_json(b));
    j["blocks"] = blocks;
  }
  return j;
}

SpaceDesc space_from_json(const nlohmann::json& j) {
  SpaceDesc d;
  std::string field = j.at("field").get<std::string>();
  if (field == "real") {
    d.field = Field::real;
  } else if (field == "complex") {
    d.field = Field::complex_;
  } else {
    throw SpaceError("unknown field: " + field);
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "lp") {
    d.kind = NormKind::lp;
  } else if (kind == "weighted_lp") {
    d.kind = NormKind::weighted_lp;
  } else if (kind == "block") {
    d.kind = NormKind::block;
  } else {
    throw SpaceError("unknown norm kind: " + kind);
  }
  const auto& jp = j.at("p");
  d.p = jp.is_string() ? Exponent::inf() : Exponent::finite(jp.get<double>());
  if (jp.is_string() && jp.get<std::string>() != "inf") {
    throw SpaceError("p must be a number or \"inf\"");
  }
  d.dim = j.at("dim").get<int>();
  if (j.contains("weights")) d.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("blocks")) {
    for (const auto& b : j.at("blocks")) d.blocks.push_back(space_from_json(b));
  }
  return d;
}

NormedSpace lp_space(Field field, Exponent p, int dim) {
  SpaceDesc d;
  d.field = field;
  d.kind = NormKind::lp;
  d.p = p;
  d.dim = dim;
  return NormedSpace::make(std::move(d));
}

NormedSpace weighted_lp_space(Field field, Exponent p, std::vector<double> weights) {
  SpaceDesc d;
  d.field = field;
  d.kind = NormKind::weighted_lp;
  d.p = p;
  d.dim = static_cast<int>(weights.size());
  d.weights = std::move(weights);
  return NormedSpace::make(std::move(d));
}

}  // namespace pshlab
