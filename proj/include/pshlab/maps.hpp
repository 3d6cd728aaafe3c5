#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pshlab/space.hpp"

namespace pshlab {

// Affine map gamma(t) = base + t * direction, t in [-1, 1], into a real space.
struct SegmentMap {
  Coords base;
  Coords direction;

  bool is_constant() const;
  Coords eval(double t) const;  // rejects |t| > 1
};

// Polynomial map gamma(z) = sum_k coeffs[k] * z^k on the closed unit disc,
// valid for |z| <= radius with radius > 1.
struct DiscMap {
  std::vector<Coords> coeffs;  // power k -> coordinate vector
  double radius = 1.25;

  int dim() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs[0].size()); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  // exact coefficient test, independent of evaluation noise
  bool is_constant() const;

  Coords eval(Scalar z) const;           // Horner; rejects |z| > radius
  Coords derivative_at(Scalar z) const;  // sum_k k coeffs[k] z^{k-1}
};

// Coordinatewise polynomial map K^m -> K^n given by monomial tables.
struct Monomial {
  Scalar coeff;
  std::vector<int> exponents;  // length m
};

struct PolySelfMap {
  int input_dim = 0;
  std::vector<std::vector<Monomial>> outputs;  // length n

  int output_dim() const { return static_cast<int>(outputs.size()); }

  Coords eval(const Coords& v) const;

  static PolySelfMap identity(int dim);
  static PolySelfMap diagonal(const Coords& factors);
};

// Coefficients of phi composed with gamma, by exact polynomial arithmetic.
// The declared radius is preserved.
DiscMap compose_with_poly_map(const PolySelfMap& phi, const DiscMap& gamma);

// Univariate scalar polynomial helpers (used for zero profiles and the
// one-dimensional Jensen checks).
std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
std::vector<Scalar> poly_from_roots(Scalar leading, const std::vector<Scalar>& roots);

/// DiscMap JSON: {"radius":r,"coeffs":[[[re,im],...],...]}
// (outer index = power k, inner = coordinate).
nlohmann::json disc_to_json(const DiscMap& gamma);
DiscMap disc_from_json(const nlohmann::json& j);

// SegmentMap JSON: {"base":[...],"direction":[...]} with real coordinates.
nlohmann::json segment_to_json(const SegmentMap& gamma);
SegmentMap segment_from_json(const nlohmann::json& j);

}  // namespace pshlab
