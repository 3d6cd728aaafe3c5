#pragma once

#include <vector>

#include "pshlab/functions.hpp"
#include "pshlab/maps.hpp"
#include "pshlab/space.hpp"

namespace pshlab {

inline constexpr double kEqTol = 1e-9;  // equality detection tolerance

struct CircleMean {
  double value = 0.0;
  bool singular = false;  // some node hit -inf; value is -inf
};

// Trapezoid rule for (1/2pi) int f(gamma(e^{it})) dt on the uniform grid
// t_j = 2 pi j / nodes. Spectrally accurate for these periodic integrands.
// nodes must be a power of two, >= 16.
CircleMean circle_mean(const ScalarFunction& f, const DiscMap& gamma, int nodes);

// Serial reference kernel; the OpenMP path above must agree with it exactly.
CircleMean circle_mean_serial(const ScalarFunction& f, const DiscMap& gamma, int nodes);

// (f(gamma(-1)) + f(gamma(1))) / 2 - f(gamma(0)); >= 0 over all segments
// characterizes convexity of f.
double midpoint_gap(const ScalarFunction& f, const SegmentMap& gamma);

struct PshGap {
  double gap = 0.0;
  bool singular = false;
};

// circle_mean(f, gamma, nodes) - f(gamma(0)); >= 0 over all discs
// characterizes plurisubharmonicity of f.
PshGap psh_gap(const ScalarFunction& f, const DiscMap& gamma, int nodes);

// Zeros (with multiplicity) of a one-dimensional disc map inside the open disc.
struct ZeroProfile {
  struct Zero {
    Scalar location;
    int multiplicity = 1;
  };
  std::vector<Zero> zeros;
};

// | log|gamma(0)| - circle mean of log|gamma| + sum_roots log(1/|root|) |.
// gamma must be one-dimensional with gamma(0) != 0; every listed root must
// have 0 < |root| < 1.
double jensen_formula_residual(const DiscMap& gamma, const ZeroProfile& zeros, int nodes);

struct JensenReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs
};

// f(sum w_i x_i) <= sum w_i f(x_i) for convex f; weights must sum to 1.
JensenReport jensen_vector_check(const ScalarFunction& f, const std::vector<double>& weights,
                                 const std::vector<Coords>& points);

enum class ConstancyFlag { holds, violated, indeterminate };

struct JensenExtendedReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  // equality with finite sides forces all values equal; indeterminate when a
  // side is infinite
  ConstancyFlag constancy = ConstancyFlag::indeterminate;
};

// Jensen's inequality for psi on R u {-inf} applied to scalar values.
JensenExtendedReport jensen_extended_check(const std::vector<double>& values,
                                           const std::vector<double>& weights,
                                           const ConvexReshaper& psi);

struct AffineMinorant {
  Coords gradient;     // real dual coordinates
  double constant = 0.0;
  Coords touch_point;
  bool validated = false;
  std::string failure;  // non-smooth report when validation fails

  double eval(const Coords& x) const;
};

// Numerical supporting affine minorant of a convex f at x0, by central
// differences (step 1e-5), validated on 10^3 samples in a ball of radius 4.
AffineMinorant supporting_affine(const ScalarFunction& f, const Coords& x0,
                                 const NormedSpace& space, std::uint64_t seed = 0);

}  // namespace pshlab
