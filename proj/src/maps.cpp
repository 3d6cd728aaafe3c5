#include "pshlab/maps.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pshlab {

bool SegmentMap::is_constant() const {
  for (const Scalar& c : direction) {
    if (c != Scalar{0.0, 0.0}) return false;
  }
  return true;
}

Coords SegmentMap::eval(double t) const {
  if (std::abs(t) > 1.0) {
    throw std::invalid_argument("segment parameter out of [-1, 1]");
  }
  return add(base, scale(direction, Scalar{t, 0.0}));
}

bool DiscMap::is_constant() const {
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    for (const Scalar& c : coeffs[k]) {
      if (c != Scalar{0.0, 0.0}) return false;
    }
  }
  return true;
}

Coords DiscMap::eval(Scalar z) const {
  if (std::abs(z) > radius) {
    throw std::invalid_argument("disc parameter outside the declared radius");
  }
  if (coeffs.empty()) return {};
  Coords acc = coeffs.back();
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) {
    acc = add(scale(acc, z), coeffs[static_cast<std::size_t>(k)]);
  }
  return acc;
}

Coords DiscMap::derivative_at(Scalar z) const {
  if (std::abs(z) > radius) {
    throw std::invalid_argument("disc parameter outside the declared radius");
  }
  if (coeffs.size() <= 1) return Coords(static_cast<std::size_t>(dim()), Scalar{0.0, 0.0});
  Coords acc = scale(coeffs.back(), Scalar{static_cast<double>(coeffs.size() - 1), 0.0});
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 1; --k) {
    acc = add(scale(acc, z),
              scale(coeffs[static_cast<std::size_t>(k)], Scalar{static_cast<double>(k), 0.0}));
  }
  return acc;
}

Coords PolySelfMap::eval(const Coords& v) const {
  if (static_cast<int>(v.size()) != input_dim) {
    throw std::invalid_argument("polynomial map input dimension mismatch");
  }
  Coords out(outputs.size(), Scalar{0.0, 0.0});
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    for (const Monomial& m : outputs[i]) {
      Scalar term = m.coeff;
      for (int j = 0; j < input_dim; ++j) {
        for (int e = 0; e < m.exponents[static_cast<std::size_t>(j)]; ++e) {
          term *= v[static_cast<std::size_t>(j)];
        }
      }
      out[i] += term;
    }
  }
  return out;
}

PolySelfMap PolySelfMap::identity(int dim) {
  PolySelfMap phi;
  phi.input_dim = dim;
  phi.outputs.resize(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    Monomial m;
    m.coeff = Scalar{1.0, 0.0};
    m.exponents.assign(static_cast<std::size_t>(dim), 0);
    m.exponents[static_cast<std::size_t>(i)] = 1;
    phi.outputs[static_cast<std::size_t>(i)].push_back(std::move(m));
  }
  return phi;
}

PolySelfMap PolySelfMap::diagonal(const Coords& factors) {
  PolySelfMap phi = identity(static_cast<int>(factors.size()));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    phi.outputs[i][0].coeff = factors[i];
  }
  return phi;
}

std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Scalar> r(a.size() + b.size() - 1, Scalar{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

std::vector<Scalar> poly_from_roots(Scalar leading, const std::vector<Scalar>& roots) {
  std::vector<Scalar> p{leading};
  for (const Scalar& r : roots) {
    p = poly_mul(p, {-r, Scalar{1.0, 0.0}});
  }
  return p;
}

namespace {

void trim(std::vector<Scalar>& p) {
  while (p.size() > 1 && p.back() == Scalar{0.0, 0.0}) p.pop_back();
}

}  // namespace

DiscMap compose_with_poly_map(const PolySelfMap& phi, const DiscMap& gamma) {
  if (phi.input_dim != gamma.dim()) {
    throw std::invalid_argument("polynomial map dimension does not match disc map");
  }
  // univariate polynomials for each coordinate of gamma
  std::vector<std::vector<Scalar>> comps(static_cast<std::size_t>(gamma.dim()));
  for (int j = 0; j < gamma.dim(); ++j) {
    auto& cj = comps[static_cast<std::size_t>(j)];
    cj.resize(gamma.coeffs.size());
    for (std::size_t k = 0; k < gamma.coeffs.size(); ++k) {
      cj[k] = gamma.coeffs[k][static_cast<std::size_t>(j)];
    }
    if (cj.empty()) cj.push_back(Scalar{0.0, 0.0});
  }

  std::vector<std::vector<Scalar>> out_polys;
  std::size_t max_len = 1;
  for (const auto& output : phi.outputs) {
    std::vector<Scalar> poly{Scalar{0.0, 0.0}};
    for (const Monomial& m : output) {
      std::vector<Scalar> term{m.coeff};
      for (int j = 0; j < phi.input_dim; ++j) {
        for (int e = 0; e < m.exponents[static_cast<std::size_t>(j)]; ++e) {
          term = poly_mul(term, comps[static_cast<std::size_t>(j)]);
        }
      }
      if (term.size() > poly.size()) poly.resize(term.size(), Scalar{0.0, 0.0});
      for (std::size_t k = 0; k < term.size(); ++k) poly[k] += term[k];
    }
    trim(poly);
    max_len = std::max(max_len, poly.size());
    out_polys.push_back(std::move(poly));
  }

  DiscMap result;
  result.radius = gamma.radius;
  result.coeffs.assign(max_len, Coords(out_polys.size(), Scalar{0.0, 0.0}));
  for (std::size_t i = 0; i < out_polys.size(); ++i) {
    for (std::size_t k = 0; k < out_polys[i].size(); ++k) {
      result.coeffs[k][i] = out_polys[i][k];
    }
  }
  return result;
}

nlohmann::json disc_to_json(const DiscMap& gamma) {
  nlohmann::json j;
  j["radius"] = gamma.radius;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Coords& c : gamma.coeffs) {
    nlohmann::json row = nlohmann::json::array();
    for (const Scalar& s : c) row.push_back({s.real(), s.imag()});
    coeffs.push_back(row);
  }
  j["coeffs"] = coeffs;
  return j;
}

DiscMap disc_from_json(const nlohmann::json& j) {
  DiscMap gamma;
  gamma.radius = j.at("radius").get<double>();
  if (!(gamma.radius > 1.0)) {
    throw std::invalid_argument("disc map radius must exceed 1");
  }
  for (const auto& row : j.at("coeffs")) {
    Coords c;
    for (const auto& s : row) {
      c.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    }
    gamma.coeffs.push_back(std::move(c));
  }
  for (const Coords& c : gamma.coeffs) {
    if (c.size() != gamma.coeffs.front().size()) {
      throw std::invalid_argument("disc map coefficient rows must have equal length");
    }
  }
  return gamma;
}

nlohmann::json segment_to_json(const SegmentMap& gamma) {
  nlohmann::json j;
  nlohmann::json base = nlohmann::json::array();
  nlohmann::json dir = nlohmann::json::array();
  for (const Scalar& c : gamma.base) base.push_back(c.real());
  for (const Scalar& c : gamma.direction) dir.push_back(c.real());
  j["base"] = base;
  j["direction"] = dir;
  return j;
}

SegmentMap segment_from_json(const nlohmann::json& j) {
  SegmentMap gamma;
  for (const auto& c : j.at("base")) gamma.base.emplace_back(c.get<double>(), 0.0);
  for (const auto& c : j.at("direction")) gamma.direction.emplace_back(c.get<double>(), 0.0);
  if (gamma.base.size() != gamma.direction.size()) {
    throw std::invalid_argument("segment base and direction must have equal length");
  }
  return gamma;
}

}  // namespace pshlab
