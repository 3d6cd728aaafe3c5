#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "pshlab/maps.hpp"
#include "pshlab/space.hpp"

namespace pshlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Increasing convex reshaping map psi on R u {-inf}.
struct ConvexReshaper {
  enum class Tag { square, exp2, affine };
  Tag tag = Tag::square;
  double a = 1.0, b = 0.0;  // affine only

  static ConvexReshaper square() { return {Tag::square, 0.0, 0.0}; }
  static ConvexReshaper exp2() { return {Tag::exp2, 0.0, 0.0}; }
  static ConvexReshaper affine(double a, double b) { return {Tag::affine, a, b}; }

  bool strictly_convex() const { return tag != Tag::affine; }

  double operator()(double t) const;
};

// Evaluation oracle V -> R u {-inf} from a closed catalog: norms, log-norms,
// reshaped compositions, squared moduli of polynomials, pullbacks and
// coordinate projections. Deterministic; log_norm returns -inf exactly at 0.
class ScalarFunction {
 public:
  static ScalarFunction norm_of(NormedSpace space);
  static ScalarFunction log_norm(NormedSpace space);
  static ScalarFunction reshaped(ConvexReshaper psi, ScalarFunction inner);
  // |P(v)|^2 for a scalar-valued polynomial map P : K^m -> K
  static ScalarFunction sq_modulus_poly(PolySelfMap poly);
  static ScalarFunction pullback(ScalarFunction f, PolySelfMap phi);
  // g(v) = f((v_index)) on the one-dimensional slice
  static ScalarFunction coordinate_projection(ScalarFunction f, int index);
  // v -> Re(v_index)
  static ScalarFunction real_part(int index);
  // f_real composed with coordinatewise real part (the conjugation-involution
  // projection of C^n onto its real form)
  static ScalarFunction real_pullback(ScalarFunction f_real);

  double operator()(const Coords& v) const { return eval_(v); }

  const std::string& name() const { return name_; }

 private:
  ScalarFunction(std::string name, std::function<double(const Coords&)> eval)
      : name_(std::move(name)), eval_(std::move(eval)) {}

  std::string name_;
  std::function<double(const Coords&)> eval_;
};

}  // namespace pshlab
