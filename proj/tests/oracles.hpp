// Test-only oracles, independent of the library's quadrature and search
// paths.
#pragma once

#include <cmath>
#include <functional>

#include "pshlab/functions.hpp"
#include "pshlab/maps.hpp"

namespace oracles {

// Reference circle mean at 8192 nodes: direct summation, no library calls
// beyond map evaluation.
inline double circle_mean_8192(const std::function<double(const pshlab::Coords&)>& f,
                               const pshlab::DiscMap& gamma) {
  const int n = 8192;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
    sum += f(gamma.eval(pshlab::Scalar{std::cos(t), std::sin(t)}));
  }
  return sum / static_cast<double>(n);
}

// Dense grid scan over segments (base, unit direction) in the Euclidean
// plane: the l2 sphere contains no segment, so flatness stays away from 0.
inline double min_flatness_euclidean_grid(const pshlab::NormedSpace& space) {
  double best = 1e300;
  const int nb = 24, na = 48;
  for (int ib = 0; ib < nb; ++ib) {
    double r = 0.05 + 1.6 * static_cast<double>(ib) / (nb - 1);
    for (int ia = 0; ia < na; ++ia) {
      double a = 2.0 * M_PI * static_cast<double>(ia) / na;
      for (int id = 0; id < na; ++id) {
        double d = 2.0 * M_PI * static_cast<double>(id) / na;
        pshlab::SegmentMap g;
        g.base = {pshlab::Scalar{r * std::cos(a), 0.0}, pshlab::Scalar{r * std::sin(a), 0.0}};
        g.direction = {pshlab::Scalar{std::cos(d), 0.0}, pshlab::Scalar{std::sin(d), 0.0}};
        double worst = 0.0;
        for (int i = 0; i < 33; ++i) {
          double t = -1.0 + 2.0 * static_cast<double>(i) / 32.0;
          worst = std::max(worst, std::abs(space.norm(g.eval(t)) - 1.0));
        }
        best = std::min(best, worst);
      }
    }
  }
  return best;
}

}  // namespace oracles
