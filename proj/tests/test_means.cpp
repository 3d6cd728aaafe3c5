#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pshlab/certify.hpp"
#include "pshlab/means.hpp"
#include "pshlab/rng.hpp"

using namespace pshlab;

namespace {

NormedSpace complex_modulus() { return lp_space(Field::complex_, Exponent::finite(2.0), 1); }

DiscMap disc1(std::vector<Scalar> coeffs) {
  DiscMap g;
  for (const Scalar& c : coeffs) g.coeffs.push_back({c});
  return g;
}

ScalarFunction sq_modulus() {
  // |z|^2 on C
  return ScalarFunction::reshaped(ConvexReshaper::square(),
                                  ScalarFunction::norm_of(complex_modulus()));
}

}  // namespace

TEST_CASE("circle mean of |z+2|^2 is 5") {
  DiscMap g = disc1({Scalar{2, 0}, Scalar{1, 0}});
  CircleMean m = circle_mean(sq_modulus(), g, 512);
  CHECK_FALSE(m.singular);
  CHECK(m.value == doctest::Approx(5.0).epsilon(1e-13));
  // independent oracle at 8192 nodes
  double ref = oracles::circle_mean_8192(
      [](const Coords& v) { return std::norm(v[0]); }, g);
  CHECK(m.value == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("circle mean of Re(z) over the identity disc vanishes") {
  DiscMap id = disc1({Scalar{0, 0}, Scalar{1, 0}});
  CircleMean m = circle_mean(ScalarFunction::real_part(0), id, 512);
  CHECK(std::abs(m.value) < 1e-14);
}

TEST_CASE("circle mean of log|z - 0.5| vanishes (Jensen)") {
  DiscMap g = disc1({Scalar{-0.5, 0}, Scalar{1, 0}});
  CircleMean m = circle_mean(ScalarFunction::log_norm(complex_modulus()), g, 512);
  CHECK(std::abs(m.value) < 1e-10);
  double ref = oracles::circle_mean_8192(
      [](const Coords& v) { return std::log(std::abs(v[0])); }, g);
  CHECK(std::abs(ref) < 1e-10);
}

TEST_CASE("circle mean flags a singular node") {
  // gamma(z) = z hits 0 at no node; gamma(z) = z - 1 hits 0 at node t = 0
  DiscMap g = disc1({Scalar{-1, 0}, Scalar{1, 0}});
  CircleMean m = circle_mean(ScalarFunction::log_norm(complex_modulus()), g, 512);
  CHECK(m.singular);
  CHECK(m.value == kNegInf);
}

TEST_CASE("circle mean rejects bad node counts") {
  DiscMap g = disc1({Scalar{1, 0}});
  CHECK_THROWS_AS(circle_mean(sq_modulus(), g, 100), std::invalid_argument);
  CHECK_THROWS_AS(circle_mean(sq_modulus(), g, 8), std::invalid_argument);
}

TEST_CASE("quadrature exactness below the Nyquist degree") {
  DiscMap id = disc1({Scalar{0, 0}, Scalar{1, 0}});
  for (int k = 1; k < 32; ++k) {
    PolySelfMap pk;
    pk.input_dim = 1;
    pk.outputs.resize(1);
    pk.outputs[0].push_back({Scalar{1, 0}, {k}});
    ScalarFunction re_zk =
        ScalarFunction::pullback(ScalarFunction::real_part(0), pk);
    CHECK(std::abs(circle_mean(re_zk, id, 64).value) <= 1e-13);
  }
}

TEST_CASE("doubling stability for smooth catalog integrands") {
  // the l2 norm of a non-vanishing polynomial disc is real-analytic on the
  // circle, so the trapezoid value is fully converged at these node counts
  NormedSpace l2 = lp_space(Field::complex_, Exponent::finite(2.0), 2);
  for (int trial = 0; trial < 10; ++trial) {
    DiscMap g = sample_disc(l2, 3, derive_seed(31, static_cast<std::uint64_t>(trial)), true, 0.05);
    for (const ScalarFunction& f :
         {ScalarFunction::norm_of(l2), ScalarFunction::log_norm(l2)}) {
      double a = circle_mean(f, g, 256).value;
      double b = circle_mean(f, g, 512).value;
      CHECK(std::abs(a - b) <= 1e-9);
    }
  }
  // the l1 norm has kinks wherever a coordinate winds through zero; the
  // trapezoid rule still converges, just not spectrally
  NormedSpace l1 = lp_space(Field::complex_, Exponent::finite(1.0), 2);
  for (int trial = 0; trial < 10; ++trial) {
    DiscMap g = sample_disc(l1, 3, derive_seed(37, static_cast<std::uint64_t>(trial)), true, 0.05);
    double a = circle_mean(ScalarFunction::norm_of(l1), g, 512).value;
    double b = circle_mean(ScalarFunction::norm_of(l1), g, 1024).value;
    CHECK(std::abs(a - b) <= 1e-4);
  }
}

TEST_CASE("parallel and serial circle means agree exactly") {
  NormedSpace l2 = lp_space(Field::complex_, Exponent::finite(2.0), 3);
  DiscMap g = sample_disc(l2, 4, 77);
  ScalarFunction f = ScalarFunction::log_norm(l2);
  CHECK(circle_mean(f, g, 1024).value == circle_mean_serial(f, g, 1024).value);
}

TEST_CASE("midpoint gap examples") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  SegmentMap g;
  g.base = {Scalar{1, 0}, Scalar{0, 0}};
  g.direction = {Scalar{0, 0}, Scalar{1, 0}};
  CHECK(midpoint_gap(ScalarFunction::norm_of(l2), g) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));

  NormedSpace l1 = lp_space(Field::real, Exponent::finite(1.0), 2);
  SegmentMap sphere_seg;
  sphere_seg.base = {Scalar{0.5, 0}, Scalar{0.5, 0}};
  sphere_seg.direction = {Scalar{0.5, 0}, Scalar{-0.5, 0}};
  CHECK(std::abs(midpoint_gap(ScalarFunction::norm_of(l1), sphere_seg)) < 1e-15);

  SegmentMap constant;
  constant.base = {Scalar{2, 0}, Scalar{1, 0}};
  constant.direction = {Scalar{0, 0}, Scalar{0, 0}};
  CHECK(midpoint_gap(ScalarFunction::norm_of(l1), constant) == 0.0);
}

TEST_CASE("psh gap examples") {
  DiscMap g = disc1({Scalar{2, 0}, Scalar{1, 0}});
  CHECK(psh_gap(sq_modulus(), g, 512).gap == doctest::Approx(1.0).epsilon(1e-13));

  NormedSpace l1 = lp_space(Field::complex_, Exponent::finite(1.0), 2);
  DiscMap half;  // (0.5, 0.5 z)
  half.coeffs = {{Scalar{0.5, 0}, Scalar{0, 0}}, {Scalar{0, 0}, Scalar{0.5, 0}}};
  PshGap pg = psh_gap(ScalarFunction::log_norm(l1), half, 512);
  CHECK(pg.gap == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  DiscMap constant = disc1({Scalar{1, 2}});
  CHECK(psh_gap(sq_modulus(), constant, 512).gap == 0.0);
}

TEST_CASE("jensen formula residual examples") {
  {
    DiscMap g;
    for (const Scalar& c : poly_from_roots(Scalar{1, 0}, {Scalar{0.3, 0}, Scalar{0.5, 0}})) {
      g.coeffs.push_back({c});
    }
    ZeroProfile zp;
    zp.zeros = {{Scalar{0.3, 0}, 1}, {Scalar{0.5, 0}, 1}};
    CHECK(jensen_formula_residual(g, zp, 512) < 1e-10);
  }
  {
    DiscMap g = disc1({Scalar{2, 0}, Scalar{1, 0}});  // no roots inside
    CHECK(jensen_formula_residual(g, ZeroProfile{}, 512) < 1e-10);
  }
  {
    DiscMap constant = disc1({Scalar{3, 0}});
    CHECK(jensen_formula_residual(constant, ZeroProfile{}, 512) < 1e-14);
  }
}

TEST_CASE("jensen formula residual rejections") {
  DiscMap vanishing = disc1({Scalar{0, 0}, Scalar{1, 0}});
  CHECK_THROWS_AS(jensen_formula_residual(vanishing, ZeroProfile{}, 512), std::invalid_argument);

  DiscMap g = disc1({Scalar{2, 0}, Scalar{1, 0}});
  ZeroProfile outside;
  outside.zeros = {{Scalar{1.5, 0}, 1}};
  CHECK_THROWS_AS(jensen_formula_residual(g, outside, 512), std::invalid_argument);
}

TEST_CASE("jensen residual stays below 1e-8 on 100 random polynomials") {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(derive_seed(41, static_cast<std::uint64_t>(i)));
    int deg = 1 + rng.uniform_int(5);
    std::vector<Scalar> roots;
    ZeroProfile zp;
    for (int k = 0; k < deg; ++k) {
      double r = rng.uniform(0.05, 0.95);
      double t = rng.uniform(0.0, 2.0 * M_PI);
      roots.push_back({r * std::cos(t), r * std::sin(t)});
      zp.zeros.push_back({roots.back(), 1});
    }
    Scalar lead = rng.normal_complex();
    if (std::abs(lead) < 0.2) lead += Scalar{0.5, 0};
    DiscMap g;
    for (const Scalar& c : poly_from_roots(lead, roots)) g.coeffs.push_back({c});
    worst = std::max(worst, jensen_formula_residual(g, zp, 512));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("vector Jensen inequality") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  ScalarFunction f = ScalarFunction::norm_of(l2);

  JensenReport r = jensen_vector_check(
      f, {0.5, 0.5}, {{Scalar{1, 0}, Scalar{0, 0}}, {Scalar{0, 0}, Scalar{1, 0}}});
  CHECK(r.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.gap > 0.0);

  Coords x{Scalar{0.3, 0}, Scalar{-0.7, 0}};
  JensenReport same = jensen_vector_check(f, {0.25, 0.75}, {x, x});
  CHECK(std::abs(same.gap) < 1e-15);

  // affine catalog member: affine reshape of a coordinate
  ScalarFunction affine = ScalarFunction::reshaped(ConvexReshaper::affine(2.0, 1.0),
                                                   ScalarFunction::real_part(0));
  JensenReport flat = jensen_vector_check(
      affine, {0.5, 0.5}, {{Scalar{1, 0}, Scalar{0, 0}}, {Scalar{-3, 0}, Scalar{2, 0}}});
  CHECK(std::abs(flat.gap) < 1e-14);
}

TEST_CASE("extended Jensen with -inf values") {
  JensenExtendedReport r =
      jensen_extended_check({0.0, kNegInf}, {0.5, 0.5}, ConvexReshaper::exp2());
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.gap == doctest::Approx(0.5).epsilon(1e-15));

  JensenExtendedReport constant =
      jensen_extended_check({1.0, 1.0, 1.0}, {0.2, 0.3, 0.5}, ConvexReshaper::square());
  CHECK(std::abs(constant.gap) < 1e-14);
  CHECK(constant.constancy == ConstancyFlag::holds);

  JensenExtendedReport spread =
      jensen_extended_check({0.0, 2.0}, {0.5, 0.5}, ConvexReshaper::square());
  CHECK(spread.lhs == doctest::Approx(1.0));
  CHECK(spread.rhs == doctest::Approx(2.0));
  CHECK(spread.gap == doctest::Approx(1.0));

  // lhs = rhs = -inf is excluded by the lemma; flag stays indeterminate
  JensenExtendedReport inf_case =
      jensen_extended_check({kNegInf, kNegInf}, {0.5, 0.5}, ConvexReshaper::affine(1.0, 0.0));
  CHECK(inf_case.constancy == ConstancyFlag::indeterminate);
}

TEST_CASE("supporting affine minorant of the squared norm") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  ScalarFunction f = ScalarFunction::reshaped(ConvexReshaper::square(),
                                              ScalarFunction::norm_of(l2));
  Coords x0{Scalar{1, 0}, Scalar{0, 0}};
  AffineMinorant a = supporting_affine(f, x0, l2);
  CHECK(a.validated);
  CHECK(a.gradient[0].real() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(a.gradient[1].real()) < 1e-6);
  CHECK(a.eval(x0) == doctest::Approx(f(x0)).epsilon(1e-8));
  // touches only at x0 for strictly convex f
  Coords other{Scalar{0, 0}, Scalar{1, 0}};
  CHECK(f(other) - a.eval(other) > 1e-3);
}

TEST_CASE("supporting affine minorant of an affine function is the function") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  ScalarFunction affine = ScalarFunction::reshaped(ConvexReshaper::affine(3.0, -1.0),
                                                   ScalarFunction::real_part(1));
  Coords x0{Scalar{0.2, 0}, Scalar{-0.4, 0}};
  AffineMinorant a = supporting_affine(affine, x0, l2);
  CHECK(a.validated);
  for (int t = 0; t < 50; ++t) {
    Coords x = l2.random_vector(derive_seed(53, static_cast<std::uint64_t>(t)), 2.0);
    CHECK(std::abs(a.eval(x) - affine(x)) < 1e-7);
  }
}

TEST_CASE("supporting affine reports a failure for a concave function") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  ScalarFunction concave = ScalarFunction::reshaped(ConvexReshaper::affine(-1.0, 0.0),
                                                    ScalarFunction::norm_of(l2));
  AffineMinorant a = supporting_affine(concave, {Scalar{1, 0}, Scalar{0, 0}}, l2);
  CHECK_FALSE(a.validated);
  CHECK_FALSE(a.failure.empty());
}

TEST_CASE("norm midpoint gaps are nonnegative on sampled segments") {
  for (const NormedSpace& space :
       {lp_space(Field::real, Exponent::finite(1.0), 2),
        lp_space(Field::real, Exponent::finite(2.5), 3),
        lp_space(Field::real, Exponent::inf(), 2)}) {
    ScalarFunction f = ScalarFunction::norm_of(space);
    for (int t = 0; t < 200; ++t) {
      SegmentMap g = sample_segment(space, derive_seed(61, static_cast<std::uint64_t>(t)));
      CHECK(midpoint_gap(f, g) >= -1e-12);
    }
  }
}

TEST_CASE("log-norm psh gaps are nonnegative on sampled discs") {
  for (const NormedSpace& space :
       {lp_space(Field::complex_, Exponent::finite(1.0), 2),
        lp_space(Field::complex_, Exponent::inf(), 2)}) {
    ScalarFunction f = ScalarFunction::log_norm(space);
    for (int t = 0; t < 100; ++t) {
      DiscMap g = sample_disc(space, 3, derive_seed(67, static_cast<std::uint64_t>(t)), true, 0.05);
      CHECK(psh_gap(f, g, 512).gap >= -1e-8);
    }
  }
}

TEST_CASE("convex implies psh: squared l2 norm on C^n") {
  NormedSpace cx = lp_space(Field::complex_, Exponent::finite(2.0), 2);
  ScalarFunction f = ScalarFunction::reshaped(ConvexReshaper::square(),
                                              ScalarFunction::norm_of(cx));
  for (int t = 0; t < 100; ++t) {
    DiscMap g = sample_disc(cx, 3, derive_seed(71, static_cast<std::uint64_t>(t)));
    PshGap pg = psh_gap(f, g, 512);
    CHECK(pg.gap >= -1e-8);
    // strict for non-constant discs with sizeable coefficients
    CHECK(pg.gap > 1e-6);
  }
}
