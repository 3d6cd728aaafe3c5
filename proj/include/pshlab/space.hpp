#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace pshlab {

using Scalar = std::complex<double>;
// Coordinates of a vector; real spaces require zero imaginary parts.
using Coords = std::vector<Scalar>;

enum class Field { real, complex_ };

enum class NormKind { lp, weighted_lp, block };

// Exponent p in [1, inf]; infinity is an explicit case, never a float sentinel.
struct Exponent {
  bool is_inf = false;
  double value = 2.0;  // meaningful only when !is_inf

  static Exponent inf() { return {true, 0.0}; }
  static Exponent finite(double p) { return {false, p}; }

  bool operator==(const Exponent& o) const {
    return is_inf == o.is_inf && (is_inf || value == o.value);
  }
};

struct SpaceDesc {
  Field field = Field::real;
  NormKind kind = NormKind::lp;
  Exponent p = Exponent::finite(2.0);
  int dim = 1;                     // for block: sum of block dims
  std::vector<double> weights;     // weighted_lp: per coordinate; block: per block
  std::vector<SpaceDesc> blocks;   // block only

  bool operator==(const SpaceDesc& o) const;
};

class SpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NormAxiomReport {
  bool pass = true;
  std::string violation;  // description of the first violation, if any
  int trials_run = 0;
};

// Finite-dimensional real or complex normed space. Immutable value type.
class NormedSpace {
 public:
  static NormedSpace make(SpaceDesc desc);

  double norm(const Coords& v) const;

  Field field() const { return desc_.field; }
  bool is_real() const { return desc_.field == Field::real; }
  int dim() const { return desc_.dim; }
  const SpaceDesc& desc() const { return desc_; }

  Coords zero() const { return Coords(static_cast<std::size_t>(desc_.dim), Scalar{0.0, 0.0}); }

  Coords random_unit_vector(std::uint64_t seed) const;
  Coords random_vector(std::uint64_t seed, double scale = 1.0) const;

  NormAxiomReport check_norm_axioms(int trials, std::uint64_t seed) const;

  bool operator==(const NormedSpace& o) const { return desc_ == o.desc_; }

 private:
  explicit NormedSpace(SpaceDesc desc) : desc_(std::move(desc)) {}
  SpaceDesc desc_;
};

// Runs the norm axioms against an arbitrary evaluator; NormedSpace's member
// delegates here. Violations are report contents, not errors.
NormAxiomReport check_norm_axioms_fn(Field field, int dim,
                                     const std::function<double(const Coords&)>& norm_fn,
                                     int trials, std::uint64_t seed);

// Linear-combination helpers on raw coordinates.
Coords add(const Coords& a, const Coords& b);
Coords sub(const Coords& a, const Coords& b);
Coords scale(const Coords& a, Scalar c);

// Space descriptor JSON:
// {"field":"real"|"complex","kind":"lp"|"weighted_lp"|"block",
//  "p":number|"inf","dim":int,"weights":[...],"blocks":[...]}
nlohmann::json space_to_json(const SpaceDesc& desc);
SpaceDesc space_from_json(const nlohmann::json& j);

// Convenience constructors for the catalog spaces used throughout.
NormedSpace lp_space(Field field, Exponent p, int dim);
NormedSpace weighted_lp_space(Field field, Exponent p, std::vector<double> weights);

}  // namespace pshlab
