#include "pshlab/means.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pshlab/rng.hpp"

namespace pshlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_nodes(int nodes) {
  if (nodes < 16 || (nodes & (nodes - 1)) != 0) {
    throw std::invalid_argument("nodes must be a power of two, >= 16");
  }
}

// Node values are accumulated into a buffer and summed in index order, so the
// result does not depend on the thread schedule.
CircleMean mean_from_buffer(const std::vector<double>& vals) {
  CircleMean m;
  double sum = 0.0;
  for (double v : vals) {
    if (v == kNegInf) {
      m.singular = true;
      m.value = kNegInf;
      return m;
    }
    sum += v;
  }
  m.value = sum / static_cast<double>(vals.size());
  return m;
}

}  // namespace

CircleMean circle_mean_serial(const ScalarFunction& f, const DiscMap& gamma, int nodes) {
  check_nodes(nodes);
  std::vector<double> vals(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    double t = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
    vals[static_cast<std::size_t>(j)] = f(gamma.eval(Scalar{std::cos(t), std::sin(t)}));
  }
  return mean_from_buffer(vals);
}

CircleMean circle_mean(const ScalarFunction& f, const DiscMap& gamma, int nodes) {
  check_nodes(nodes);
  std::vector<double> vals(static_cast<std::size_t>(nodes));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nodes; ++j) {
    double t = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
    vals[static_cast<std::size_t>(j)] = f(gamma.eval(Scalar{std::cos(t), std::sin(t)}));
  }
  return mean_from_buffer(vals);
}

double midpoint_gap(const ScalarFunction& f, const SegmentMap& gamma) {
  return 0.5 * (f(gamma.eval(-1.0)) + f(gamma.eval(1.0))) - f(gamma.eval(0.0));
}

PshGap psh_gap(const ScalarFunction& f, const DiscMap& gamma, int nodes) {
  CircleMean m = circle_mean(f, gamma, nodes);
  PshGap g;
  g.singular = m.singular;
  if (m.singular) {
    g.gap = kNegInf;
    return g;
  }
  g.gap = m.value - f(gamma.eval(Scalar{0.0, 0.0}));
  return g;
}

double jensen_formula_residual(const DiscMap& gamma, const ZeroProfile& zeros, int nodes) {
  if (gamma.dim() != 1) {
    throw std::invalid_argument("jensen_formula_residual needs a one-dimensional disc map");
  }
  Scalar center = gamma.eval(Scalar{0.0, 0.0})[0];
  if (center == Scalar{0.0, 0.0}) {
    throw std::invalid_argument("jensen_formula_residual needs gamma(0) != 0");
  }
  double zero_term = 0.0;
  for (const auto& z : zeros.zeros) {
    double r = std::abs(z.location);
    if (!(r > 0.0) || r >= 1.0) {
      throw std::invalid_argument("listed zeros must satisfy 0 < |z| < 1");
    }
    zero_term += static_cast<double>(z.multiplicity) * std::log(1.0 / r);
  }
  ScalarFunction log_abs = ScalarFunction::log_norm(lp_space(Field::complex_, Exponent::finite(2.0), 1));
  CircleMean m = circle_mean(log_abs, gamma, nodes);
  if (m.singular) {
    throw std::invalid_argument("gamma vanishes at a quadrature node");
  }
  return std::abs(std::log(std::abs(center)) - m.value + zero_term);
}

JensenReport jensen_vector_check(const ScalarFunction& f, const std::vector<double>& weights,
                                 const std::vector<Coords>& points) {
  if (weights.size() != points.size() || points.empty()) {
    throw std::invalid_argument("weights and points must be nonempty and matching");
  }
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must sum to 1");
  }
  Coords mix(points[0].size(), Scalar{0.0, 0.0});
  double rhs = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    mix = add(mix, scale(points[i], Scalar{weights[i], 0.0}));
    rhs += weights[i] * f(points[i]);
  }
  JensenReport r;
  r.lhs = f(mix);
  r.rhs = rhs;
  r.gap = r.rhs - r.lhs;
  return r;
}

JensenExtendedReport jensen_extended_check(const std::vector<double>& values,
                                           const std::vector<double>& weights,
                                           const ConvexReshaper& psi) {
  if (weights.size() != values.size() || values.empty()) {
    throw std::invalid_argument("weights and values must be nonempty and matching");
  }
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must sum to 1");
  }
  double mix = 0.0;
  bool mix_inf = false;
  double rhs = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == kNegInf) {
      if (weights[i] > 0.0) mix_inf = true;
    } else {
      mix += weights[i] * values[i];
    }
    rhs += weights[i] * psi(values[i]);
  }
  JensenExtendedReport r;
  r.lhs = psi(mix_inf ? kNegInf : mix);
  r.rhs = rhs;
  r.gap = r.rhs - r.lhs;
  if (r.lhs == kNegInf || r.rhs == kNegInf) {
    // the equality case with infinite sides is outside the lemma's scope
    r.constancy = ConstancyFlag::indeterminate;
  } else if (r.gap > 1e-10 || !psi.strictly_convex()) {
    r.constancy = ConstancyFlag::holds;  // nothing to check: inequality strict or psi affine
  } else {
    bool all_equal = true;
    for (double v : values) {
      if (v == kNegInf || std::abs(v - values[0]) > 1e-8) all_equal = false;
    }
    r.constancy = all_equal ? ConstancyFlag::holds : ConstancyFlag::violated;
  }
  return r;
}

double AffineMinorant::eval(const Coords& x) const {
  double v = constant;
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    v += gradient[i].real() * (x[i].real() - touch_point[i].real());
  }
  return v;
}

AffineMinorant supporting_affine(const ScalarFunction& f, const Coords& x0,
                                 const NormedSpace& space, std::uint64_t seed) {
  if (!space.is_real()) {
    throw std::invalid_argument("supporting_affine needs a real space");
  }
  const double h = 1e-5;
  AffineMinorant a;
  a.touch_point = x0;
  a.constant = f(x0);
  a.gradient.assign(x0.size(), Scalar{0.0, 0.0});
  for (std::size_t i = 0; i < x0.size(); ++i) {
    Coords hi = x0, lo = x0;
    hi[i] += Scalar{h, 0.0};
    lo[i] -= Scalar{h, 0.0};
    a.gradient[i] = Scalar{(f(hi) - f(lo)) / (2.0 * h), 0.0};
  }
  // validation: alpha touches at x0 by construction; check alpha <= f
  a.validated = true;
  for (int t = 0; t < 1000; ++t) {
    // sample in the ball of radius 4 around the touch point
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    Coords dir = space.random_unit_vector(s);
    Rng rng(s ^ 0x0f0f0f0f0f0f0f0fULL);
    Coords x = add(x0, scale(dir, Scalar{4.0 * rng.uniform(), 0.0}));
    double fx = f(x);
    if (a.eval(x) > fx + 1e-8) {
      a.validated = false;
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "minorant exceeds f at sample %d by %.3e (non-smooth point?)", t,
                    a.eval(x) - fx);
      a.failure = buf;
      break;
    }
  }
  return a;
}

}  // namespace pshlab
