#include <doctest.h>

#include <cmath>

#include "jsr/families.hpp"
#include "jsr/limit_semigroup.hpp"
#include "oracles.hpp"

using jsr::cx;
using jsr::Field;
using jsr::IrreducibilityVerdict;
using jsr::Matrix;
using jsr::MatrixSet;
using jsr::Word;

namespace {

MatrixSet pure_rotations() {
  auto rot = [](double th) {
    return Matrix::from_rows(Field::Real, {{cx(std::cos(th)), cx(std::sin(th))},
                                           {cx(-std::sin(th)), cx(std::cos(th))}});
  };
  return MatrixSet(Field::Real, 2, {{"R1", rot(1.0)}, {"R2", rot(std::sqrt(2.0))}});
}

MatrixSet diagonal_pair() {
  return MatrixSet(Field::Real, 2,
                   {{"D1", Matrix::from_rows(Field::Real, {{cx(0.8), cx(0)}, {cx(0), cx(0.5)}})},
                    {"D2", Matrix::from_rows(Field::Real, {{cx(0.6), cx(0)}, {cx(0), cx(0.7)}})}});
}

// residual of v S against span{v}
double invariance_residual(const std::vector<cx>& v, const Matrix& m) {
  const int d = m.dim();
  std::vector<cx> u(d, cx(0, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) u[j] += v[i] * m(i, j);
  cx proj(0, 0);
  double vn = 0;
  for (int i = 0; i < d; ++i) vn += std::norm(v[i]);
  for (int i = 0; i < d; ++i) proj += u[i] * std::conj(v[i]);
  proj /= vn;
  double res = 0;
  for (int i = 0; i < d; ++i) res += std::norm(u[i] - proj * v[i]);
  return std::sqrt(res);
}

}  // namespace

TEST_CASE("irreducibility verdicts for d = 2") {
  const auto red = jsr::irreducibility(diagonal_pair());
  REQUIRE(red.verdict == IrreducibilityVerdict::Kind::Reducible);
  REQUIRE(red.witness.size() == 1);
  // witness direction is e1 up to phase, and invariant under every generator
  CHECK(std::abs(red.witness[0][1]) <= 1e-12);
  const MatrixSet dp = diagonal_pair();
  for (int k = 0; k < dp.size(); ++k)
    CHECK(invariance_residual(red.witness[0], dp.generator(k)) <= 1e-8);

  CHECK(jsr::irreducibility(jsr::hare_family(jsr::kAlphaStar)).verdict ==
        IrreducibilityVerdict::Kind::Irreducible);
  CHECK(jsr::irreducibility(jsr::hare_family(0.3)).verdict ==
        IrreducibilityVerdict::Kind::Irreducible);
  CHECK(jsr::irreducibility(jsr::morris_family(0.5)).verdict ==
        IrreducibilityVerdict::Kind::Irreducible);
  CHECK(jsr::irreducibility(pure_rotations()).verdict ==
        IrreducibilityVerdict::Kind::Irreducible);

  // scalar multiples of the identity: everything is invariant
  const MatrixSet scalars(
      Field::Real, 2,
      {{"A", Matrix::identity(2)},
       {"B", Matrix::from_rows(Field::Real, {{cx(0.5), cx(0)}, {cx(0), cx(0.5)}})}});
  CHECK(jsr::irreducibility(scalars).verdict == IrreducibilityVerdict::Kind::Reducible);
}

TEST_CASE("irreducibility for d = 3") {
  // common invariant row span{e3} for upper triangulars
  const MatrixSet tri = jsr::triangular_family({{0.8, 0.5, 0.3}, {0.6, 0.7, 0.2}}, 11);
  const auto red = jsr::irreducibility(tri);
  REQUIRE(red.verdict == IrreducibilityVerdict::Kind::Reducible);
  REQUIRE(red.witness.size() == 1);
  for (int k = 0; k < tri.size(); ++k)
    CHECK(invariance_residual(red.witness[0], tri.generator(k)) <= 1e-8);

  const MatrixSet rnd = jsr::random_family(4, 3, 2, 1.0);
  CHECK(jsr::irreducibility(rnd).verdict == IrreducibilityVerdict::Kind::Irreducible);
  CHECK(jsr::irreducibility(rnd).method == "algebra-span dimension");
}

TEST_CASE("limit points of morris powers collapse to rank one") {
  const MatrixSet set = jsr::morris_family(0.5);
  const jsr::LimitPointSet lps = jsr::sample_limit_points(set, 1.0, 40, 30, 7);
  REQUIRE(!lps.points.empty());
  // the deep cluster approaches diag(1, 0)
  const Matrix target = Matrix::from_rows(Field::Real, {{cx(1), cx(0)}, {cx(0), cx(0)}});
  bool found_deep = false;
  for (const jsr::LimitPoint& p : lps.points) {
    if (p.word_length >= 20) {
      found_deep = true;
      CHECK(p.rank == 1);
      CHECK(p.abs_det <= 1e-6);
      CHECK(oracle::matrices_close(p.representative, target, 1e-3));
    }
  }
  CHECK(found_deep);
}

TEST_CASE("limit points of rotations stay orthogonal") {
  const jsr::LimitPointSet lps = jsr::sample_limit_points(pure_rotations(), 1.0, 32, 24, 3);
  REQUIRE(!lps.points.empty());
  for (const jsr::LimitPoint& p : lps.points) {
    CHECK(p.abs_det == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.rank == 2);
  }
}

TEST_CASE("stored points respect the norm filter and radii are nonnegative") {
  for (std::uint64_t seed : {3u, 7u}) {
    const jsr::LimitPointSet lps =
        jsr::sample_limit_points(jsr::random_family(seed, 2, 2, 0.8), 0.6, 24, 16, seed);
    for (const jsr::LimitPoint& p : lps.points) {
      const double nn = jsr::induced_norm(p.representative, jsr::NormKind::Inf);
      CHECK(nn >= jsr::LimitPointSet::kMinNormFilter);
      CHECK(nn <= jsr::LimitPointSet::kMaxNormFilter);
      CHECK(p.cluster_radius >= 0.0);
      CHECK(p.multiplicity >= 1);
    }
  }
}

TEST_CASE("over-normalization empties the point set") {
  const jsr::LimitPointSet lps = jsr::sample_limit_points(pure_rotations(), 2.0, 32, 24, 3);
  CHECK(lps.points.empty());
}

TEST_CASE("normalization matches direct computation for short words") {
  const MatrixSet set = jsr::morris_family(0.5);
  // guided sampling with count 7 emits exactly the powers (1)^n, n = 6..12
  const jsr::LimitPointSet lps = jsr::sample_limit_points(set, 1.0, 7, 12, 1);
  REQUIRE(lps.points.size() == 7);
  for (const jsr::LimitPoint& p : lps.points) {
    Word w;
    w.idx.assign(p.word_length, 0);
    const Matrix direct = jsr::evaluate_word(set, w).to_matrix();  // rho_est = 1
    CHECK(oracle::matrices_close(p.representative, direct, 1e-12));
    CHECK(p.multiplicity == 1);
  }
}

TEST_CASE("limit sampling is deterministic per seed") {
  const MatrixSet set = jsr::random_family(9, 2, 2, 0.9);
  const jsr::LimitPointSet a = jsr::sample_limit_points(set, 0.8, 24, 16, 42);
  const jsr::LimitPointSet b = jsr::sample_limit_points(set, 0.8, 24, 16, 42);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].representative == b.points[i].representative);
    CHECK(a.points[i].abs_det == b.points[i].abs_det);
    CHECK(a.points[i].word_length == b.points[i].word_length);
    CHECK(a.points[i].cluster_radius == b.points[i].cluster_radius);
  }
}

TEST_CASE("nonsingular limit certificate") {
  const MatrixSet rot = pure_rotations();
  const jsr::LimitPointSet rot_lps = jsr::sample_limit_points(rot, 1.0, 32, 24, 3);
  const jsr::LimitCertificate cert = jsr::nonsingular_limit_certificate(rot, rot_lps, 1e-6);
  CHECK(cert.certified);
  CHECK(cert.message == "finiteness property certified (Thm 2.4)");
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->abs_det == doctest::Approx(1.0).epsilon(1e-9));

  // morris power sampling: every deep point is near-singular
  const MatrixSet morris = jsr::morris_family(0.5);
  const jsr::LimitPointSet ml = jsr::sample_limit_points(morris, 1.0, 40, 40, 7);
  const jsr::LimitCertificate none = jsr::nonsingular_limit_certificate(morris, ml, 1e-6);
  CHECK_FALSE(none.certified);
  CHECK(none.message.find("no certificate") != std::string::npos);

  // reducible input: precondition unmet, reason recorded
  const jsr::LimitPointSet dl = jsr::sample_limit_points(diagonal_pair(), 0.8, 16, 12, 1);
  const jsr::LimitCertificate red = jsr::nonsingular_limit_certificate(diagonal_pair(), dl, 1e-6);
  CHECK_FALSE(red.certified);
  CHECK(red.message.find("irreducibility precondition unmet") != std::string::npos);
}

TEST_CASE("rank profile") {
  CHECK(jsr::rank_profile(Matrix::from_rows(Field::Real, {{cx(1), cx(0)}, {cx(0), cx(0)}}),
                          1e-9) == 1);
  const auto rot = pure_rotations();
  CHECK(jsr::rank_profile(rot.generator(0), 1e-9) == 2);
  CHECK(jsr::rank_profile(Matrix(2, Field::Real), 1e-9) == 0);
}

TEST_CASE("sampler validates inputs") {
  CHECK_THROWS_AS(jsr::sample_limit_points(pure_rotations(), 0.0, 8, 8, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(jsr::sample_limit_points(pure_rotations(), -1.0, 8, 8, 1),
                  std::invalid_argument);
}
