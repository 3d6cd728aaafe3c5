#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "pshlab/rng.hpp"
#include "pshlab/space.hpp"

using namespace pshlab;

TEST_CASE("make_space accepts the catalog descriptors") {
  NormedSpace euclid = lp_space(Field::real, Exponent::finite(2.0), 3);
  CHECK(euclid.dim() == 3);
  CHECK(euclid.is_real());

  NormedSpace l1 = lp_space(Field::complex_, Exponent::finite(1.0), 2);
  CHECK(l1.field() == Field::complex_);
}

TEST_CASE("make_space rejects bad descriptors") {
  CHECK_THROWS_AS(lp_space(Field::real, Exponent::finite(0.5), 2), SpaceError);
  CHECK_THROWS_AS(lp_space(Field::real, Exponent::finite(2.0), 0), SpaceError);
  CHECK_THROWS_AS(weighted_lp_space(Field::real, Exponent::finite(1.0), {1.0, -2.0}), SpaceError);
  CHECK_THROWS_AS(weighted_lp_space(Field::real, Exponent::finite(1.0), {1.0, 0.0}), SpaceError);
}

TEST_CASE("norm values") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  CHECK(l2.norm({Scalar{3, 0}, Scalar{4, 0}}) == doctest::Approx(5.0).epsilon(1e-14));

  NormedSpace l1 = lp_space(Field::complex_, Exponent::finite(1.0), 2);
  CHECK(l1.norm({Scalar{1, 0}, Scalar{0, 1}}) == doctest::Approx(2.0).epsilon(1e-14));

  NormedSpace linf = lp_space(Field::complex_, Exponent::inf(), 2);
  // max(1, |0.5 + 0.5i| = 0.70710678...)
  CHECK(linf.norm({Scalar{1, 0}, Scalar{0.5, 0.5}}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("norm rejects dimension mismatch and complex input to real spaces") {
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  CHECK_THROWS_AS(l2.norm({Scalar{1, 0}}), SpaceError);
  CHECK_THROWS_AS(l2.norm({Scalar{1, 0}, Scalar{0, 1}}), SpaceError);
}

TEST_CASE("random_unit_vector normalizes and is deterministic") {
  for (const NormedSpace& space :
       {lp_space(Field::real, Exponent::finite(2.0), 2),
        lp_space(Field::complex_, Exponent::finite(1.0), 2),
        lp_space(Field::complex_, Exponent::inf(), 3)}) {
    Coords v = space.random_unit_vector(0);
    CHECK(space.norm(v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(space.random_unit_vector(1) == space.random_unit_vector(1));
    CHECK(space.random_unit_vector(1) != space.random_unit_vector(2));
  }
}

TEST_CASE("norm axioms hold for catalog spaces over 1000 samples") {
  for (const NormedSpace& space :
       {lp_space(Field::real, Exponent::finite(3.0), 2),
        lp_space(Field::real, Exponent::finite(1.0), 3),
        lp_space(Field::complex_, Exponent::finite(1.5), 2),
        lp_space(Field::complex_, Exponent::inf(), 2),
        weighted_lp_space(Field::real, Exponent::finite(1.0), {1.0, 2.0})}) {
    NormAxiomReport rep = space.check_norm_axioms(1000, 7);
    INFO(rep.violation);
    CHECK(rep.pass);
  }
}

TEST_CASE("a broken signed evaluator fails at nonnegativity") {
  auto signed_first = [](const Coords& v) { return v[0].real(); };
  NormAxiomReport rep = check_norm_axioms_fn(Field::real, 2, signed_first, 1000, 0);
  CHECK_FALSE(rep.pass);
  // whichever axiom trips first (nonnegativity or homogeneity), the report
  // must say so
  CHECK_FALSE(rep.violation.empty());
}

TEST_CASE("lp norms are monotone in coordinate modulus") {
  for (const NormedSpace& space :
       {lp_space(Field::real, Exponent::finite(1.5), 3),
        lp_space(Field::real, Exponent::inf(), 3)}) {
    for (int t = 0; t < 200; ++t) {
      Coords v = space.random_vector(derive_seed(11, static_cast<std::uint64_t>(t)), 1.0);
      Rng rng(derive_seed(13, static_cast<std::uint64_t>(t)));
      int i = rng.uniform_int(space.dim());
      Coords w = v;
      w[static_cast<std::size_t>(i)] *= Scalar{1.0 + rng.uniform(), 0.0};
      CHECK(space.norm(w) >= space.norm(v) - 1e-12);
    }
  }
}

TEST_CASE("descriptor JSON round trip") {
  SpaceDesc block;
  block.field = Field::complex_;
  block.kind = NormKind::block;
  block.p = Exponent::finite(1.5);
  block.weights = {1.0, 2.0};
  block.blocks = {lp_space(Field::complex_, Exponent::inf(), 2).desc(),
                  lp_space(Field::complex_, Exponent::finite(1.0), 3).desc()};
  block.dim = 5;
  SpaceDesc back = space_from_json(space_to_json(block));
  CHECK(back == block);

  NormedSpace space = NormedSpace::make(back);
  Coords v = space.random_vector(3, 1.0);
  CHECK(space.norm(v) == NormedSpace::make(block).norm(v));
}

TEST_CASE("block norm composes sub-norms") {
  // l^1 combination of (linf on 2 coords) and (modulus on 1 coord)
  SpaceDesc d;
  d.field = Field::real;
  d.kind = NormKind::block;
  d.p = Exponent::finite(1.0);
  d.blocks = {lp_space(Field::real, Exponent::inf(), 2).desc(),
              lp_space(Field::real, Exponent::finite(2.0), 1).desc()};
  d.dim = 3;
  NormedSpace space = NormedSpace::make(d);
  CHECK(space.norm({Scalar{1, 0}, Scalar{-2, 0}, Scalar{3, 0}}) ==
        doctest::Approx(5.0).epsilon(1e-14));
}
