#include "pshlab/functions.hpp"

#include <cmath>
#include <stdexcept>

namespace pshlab {

double ConvexReshaper::operator()(double t) const {
  switch (tag) {
    case Tag::square:
      if (t == kNegInf) throw std::domain_error("square reshaper is defined on R+ only");
      return t * t;
    case Tag::exp2:
      if (t == kNegInf) return 0.0;  // continuous extension
      return std::exp(2.0 * t);
    case Tag::affine:
      if (t == kNegInf) return a > 0.0 ? kNegInf : b;
      return a * t + b;
  }
  return 0.0;  // unreachable
}

ScalarFunction ScalarFunction::norm_of(NormedSpace space) {
  return {"norm", [space = std::move(space)](const Coords& v) { return space.norm(v); }};
}

ScalarFunction ScalarFunction::log_norm(NormedSpace space) {
  return {"log_norm", [space = std::move(space)](const Coords& v) {
            double n = space.norm(v);
            return n == 0.0 ? kNegInf : std::log(n);
          }};
}

ScalarFunction ScalarFunction::reshaped(ConvexReshaper psi, ScalarFunction inner) {
  return {"reshaped(" + inner.name() + ")",
          [psi, inner = std::move(inner)](const Coords& v) { return psi(inner(v)); }};
}

ScalarFunction ScalarFunction::sq_modulus_poly(PolySelfMap poly) {
  if (poly.output_dim() != 1) {
    throw std::invalid_argument("sq_modulus_poly needs a scalar-valued polynomial");
  }
  return {"sq_modulus_poly", [poly = std::move(poly)](const Coords& v) {
            double m = std::abs(poly.eval(v)[0]);
            return m * m;
          }};
}

ScalarFunction ScalarFunction::pullback(ScalarFunction f, PolySelfMap phi) {
  return {"pullback(" + f.name() + ")",
          [f = std::move(f), phi = std::move(phi)](const Coords& v) { return f(phi.eval(v)); }};
}

ScalarFunction ScalarFunction::coordinate_projection(ScalarFunction f, int index) {
  return {"proj(" + f.name() + ")", [f = std::move(f), index](const Coords& v) {
            return f(Coords{v.at(static_cast<std::size_t>(index))});
          }};
}

ScalarFunction ScalarFunction::real_part(int index) {
  return {"real_part",
          [index](const Coords& v) { return v.at(static_cast<std::size_t>(index)).real(); }};
}

ScalarFunction ScalarFunction::real_pullback(ScalarFunction f_real) {
  return {"real_pullback(" + f_real.name() + ")",
          [f = std::move(f_real)](const Coords& v) {
            Coords re(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) re[i] = Scalar{v[i].real(), 0.0};
            return f(re);
          }};
}

}  // namespace pshlab
