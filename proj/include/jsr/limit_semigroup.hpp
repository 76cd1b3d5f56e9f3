#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jsr/words.hpp"

namespace jsr {

using RowVector = std::vector<cx>;

/// Three-valued verdict on common invariant subspaces (row sense: V*S in V).
/// Over the reals a deficient algebra span does not imply reducibility, so
/// "inconclusive" is a first-class outcome for d >= 3.
struct IrreducibilityVerdict {
  enum class Kind { Irreducible, Reducible, Inconclusive };
  Kind verdict = Kind::Inconclusive;
  std::vector<RowVector> witness;  // invariant-subspace basis when reducible
  std::string method;
};

// Exact for d == 2 over both fields (a proper invariant subspace is a common
// left eigendirection); for d >= 3, algebra span of dimension d^2 proves
// irreducibility, otherwise a common left eigendirection is searched for and
// the verdict is inconclusive when none is found.
IrreducibilityVerdict irreducibility(const MatrixSet& set);

/// A clustered accumulation-point estimate for rho^{-n} S_w as n grows.
struct LimitPoint {
  Matrix representative;  // longest-word member of the cluster
  int word_length = 0;
  double cluster_radius = 0.0;
  double abs_det = 0.0;
  int rank = 0;
  int multiplicity = 1;
};

struct LimitPointSet {
  double rho_estimate = 1.0;
  std::vector<LimitPoint> points;
  int sample_count = 0;
  int max_length = 0;
  std::uint64_t seed = 0;
  static constexpr double kMinNormFilter = 0.1;
  static constexpr double kMaxNormFilter = 10.0;
  static constexpr double kClusterRadius = 1e-4;
  static constexpr double kRankTol = 1e-6;
};

// Draws `count` words (spectrum-maximizing-product repetitions first, then
// uniform random draws), normalizes each product by rho_est^{-n}, keeps
// matrices with inf-norm in [0.1, 10], and single-linkage clusters them at
// inf-norm distance 1e-4.  Deterministic for a fixed seed.
LimitPointSet sample_limit_points(const MatrixSet& set, double rho_est, int count, int max_len,
                                  std::uint64_t seed);

struct LimitCertificate {
  bool certified = false;
  std::string message;  // "finiteness property certified (Thm 2.4)" or the reason why not
  std::optional<LimitPoint> witness;
};

// Finiteness certificate from a nonsingular limit point: requires the
// irreducibility verdict to be Irreducible and some cluster representative
// with |det| >= det_tol.  Absence of a witness is never reported as failure
// of the finiteness property.
LimitCertificate nonsingular_limit_certificate(const MatrixSet& set, const LimitPointSet& lps,
                                               double det_tol);

// Number of singular values above tol * (largest singular value).
int rank_profile(const Matrix& a, double tol);

}  // namespace jsr
