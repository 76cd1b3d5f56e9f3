#include <doctest.h>

#include <cmath>

#include "jsr/bounds.hpp"
#include "jsr/families.hpp"
#include "jsr/limit_semigroup.hpp"
#include "oracles.hpp"

using jsr::Field;
using jsr::Matrix;
using jsr::MatrixSet;
using jsr::NormKind;

TEST_CASE("hare family") {
  const MatrixSet star = jsr::hare_family(jsr::kAlphaStar);
  CHECK(jsr::spectral_radius(star.generator(0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jsr::spectral_radius(star.generator(1)) ==
        doctest::Approx(jsr::kAlphaStar).epsilon(1e-14));

  const MatrixSet unit = jsr::hare_family(1.0);
  CHECK(jsr::spectral_radius(unit.generator(0)) == doctest::Approx(1.0));
  CHECK(jsr::spectral_radius(unit.generator(1)) == doctest::Approx(1.0));

  CHECK(jsr::spectral_radius(jsr::hare_family(0.5).generator(1)) == doctest::Approx(0.5));

  CHECK_THROWS_AS(jsr::hare_family(0.0), std::invalid_argument);
  CHECK_THROWS_AS(jsr::hare_family(1.5), std::invalid_argument);
}

TEST_CASE("morris family") {
  const MatrixSet m = jsr::morris_family(0.5);
  CHECK(jsr::spectral_radius(m.generator(0)) == doctest::Approx(1.0));
  CHECK(jsr::spectral_radius(m.generator(1)) == doctest::Approx(0.5));

  const jsr::BoundsTable t = jsr::bounds_table(m, 1, NormKind::Inf);
  CHECK(t.best_lo() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.best_hi() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(jsr::morris_family(1.0), std::invalid_argument);
  CHECK_THROWS_AS(jsr::morris_family(0.0), std::invalid_argument);
  CHECK_NOTHROW(jsr::morris_family(-0.5));
}

TEST_CASE("scaled rotation family") {
  const MatrixSet set = jsr::scaled_rotation_family({0.9, 0.8}, {1.0, std::sqrt(2.0)});
  CHECK(jsr::spectral_radius(set.generator(0)) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(jsr::spectral_radius(set.generator(1)) == doctest::Approx(0.8).epsilon(1e-12));

  // spectral radii of sampled pairs multiply
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double lhs = jsr::spectral_radius(set.generator(i) * set.generator(j));
      const double rhs = jsr::spectral_radius(set.generator(i)) *
                         jsr::spectral_radius(set.generator(j));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }

  const MatrixSet iso = jsr::scaled_rotation_family({1.0, 1.0}, {1.0, 2.0});
  CHECK(jsr::spectral_radius(iso.generator(0)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(jsr::scaled_rotation_family({0.9}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(jsr::scaled_rotation_family({0.9, -1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(jsr::scaled_rotation_family({0.9, 0.8}, {1.0}), std::invalid_argument);
}

TEST_CASE("morris and rotation families are irreducible") {
  CHECK(jsr::irreducibility(jsr::morris_family(0.5)).verdict ==
        jsr::IrreducibilityVerdict::Kind::Irreducible);
  CHECK(jsr::irreducibility(jsr::scaled_rotation_family({0.9, 0.8}, {1.0, std::sqrt(2.0)}))
            .verdict == jsr::IrreducibilityVerdict::Kind::Irreducible);
}

TEST_CASE("triangular family") {
  const MatrixSet t = jsr::triangular_family({{0.8, 0.5}, {0.6, 0.7}}, 1);
  CHECK(jsr::rho_n(t, 1).first == doctest::Approx(0.8).epsilon(1e-12));

  // strict upper parts do not move the spectra of triangular products
  const MatrixSet t2 = jsr::triangular_family({{0.8, 0.5}, {0.6, 0.7}}, 999);
  for (int n = 1; n <= 5; ++n)
    CHECK(jsr::rho_n(t, n).first == doctest::Approx(jsr::rho_n(t2, n).first).epsilon(1e-12));

  const MatrixSet z = jsr::triangular_family({{0.0, 0.0}, {0.0, 0.0}}, 3);
  CHECK(jsr::bounds_table(z, 3, NormKind::Inf).best_lo() == 0.0);

  CHECK_THROWS_AS(jsr::triangular_family({{0.5, 0.5}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(jsr::triangular_family({{0.5, 0.5}, {0.5}}, 1), std::invalid_argument);
}

TEST_CASE("sign pairs") {
  CHECK(jsr::SignPairStream::total_count() == 3321);
  jsr::SignPairStream s;
  MatrixSet pair = jsr::sign_pair(0);
  std::size_t count = 0;
  while (s.next(pair)) ++count;
  CHECK(count == 3321);

  const MatrixSet id_pair(Field::Real, 2,
                          {{"I", Matrix::identity(2)}, {"-I", -1.0 * Matrix::identity(2)}});
  const jsr::BoundsTable t = jsr::bounds_table(id_pair, 2, NormKind::Inf);
  CHECK(t.best_lo() == doctest::Approx(1.0));
  CHECK(t.best_hi() == doctest::Approx(1.0));

  // find the all-zero pair in the stream and check rho = 0
  const MatrixSet zero_pair = jsr::sign_pair(2460);
  CHECK(zero_pair.generator(0).is_zero());
  CHECK(zero_pair.generator(1).is_zero());
  CHECK(jsr::bounds_table(zero_pair, 2, NormKind::Inf).best_lo() == 0.0);

  CHECK_THROWS_AS(jsr::sign_pair(3321), std::invalid_argument);
}

TEST_CASE("family specs build from textual parameters") {
  const MatrixSet hare = jsr::FamilySpec{"hare", {{"alpha", "0.5"}}}.build();
  CHECK(hare.generator(1) == jsr::hare_family(0.5).generator(1));

  const MatrixSet tri =
      jsr::FamilySpec{"triangular", {{"diag1", "0.8,0.5"}, {"diag2", "0.6,0.7"}, {"seed", "1"}}}
          .build();
  CHECK(tri.generator(0) == jsr::triangular_family({{0.8, 0.5}, {0.6, 0.7}}, 1).generator(0));

  CHECK_THROWS_AS((jsr::FamilySpec{"nonesuch", {}}.build()), std::invalid_argument);
  CHECK_THROWS_AS((jsr::FamilySpec{"hare", {}}.build()), std::invalid_argument);
  CHECK_THROWS_AS((jsr::FamilySpec{"hare", {{"alpha", "x"}}}.build()), std::invalid_argument);
}

TEST_CASE("random family determinism and scaling") {
  const MatrixSet a = jsr::random_family(42, 3, 2, 1.0);
  const MatrixSet b = jsr::random_family(42, 3, 2, 1.0);
  for (int k = 0; k < 2; ++k) CHECK(a.generator(k) == b.generator(k));

  const MatrixSet z = jsr::random_family(42, 2, 2, 0.0);
  CHECK(jsr::bounds_table(z, 2, NormKind::Inf).best_lo() == 0.0);

  // the shipped small-scale seeds are depth-1 contractions in the inf norm
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MatrixSet s = jsr::random_family(seed, 2, 2, 0.1);
    CHECK(jsr::rho_hat_n(s, 1, NormKind::Inf).first < 1.0);
  }

  CHECK_THROWS_AS(jsr::random_family(1, 1, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(jsr::random_family(1, 2, 1, 1.0), std::invalid_argument);
}
