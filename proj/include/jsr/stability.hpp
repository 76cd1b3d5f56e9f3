#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jsr/bounds.hpp"
#include "jsr/words.hpp"

namespace jsr {

/// Classification boundary around 1: values within this band of 1 trigger
/// neither certificate, so sets with rho exactly 1 (pure rotations) report
/// "unknown" instead of flipping on rounding noise.
inline constexpr double kUnitBand = 1e-12;

/// Outcome of the depth-interleaved decision procedure.
///   stable:   rho_hat_n^{1/n} < 1 at witness_depth (norm certificate)
///   unstable: rho_n^{1/n} > 1 at witness_depth, witness word attached
///   unknown:  neither certificate fired up to the depth cap
struct Decision {
  enum class Outcome { Stable, Unstable, Unknown };
  Outcome outcome = Outcome::Unknown;
  int witness_depth = 0;
  std::optional<Word> witness;
  NormKind norm = NormKind::Inf;
  double certificate_value = 0.0;  // the bound that fired (or the last hi)
};

// True iff rho(S_w) < 1 for every word of length <= max_depth (a
// depth-bounded surrogate of the definition); otherwise false with the first
// violating necklace representative in depth-major lexicographic order.
std::pair<bool, std::optional<Word>> periodically_switched_stable(const MatrixSet& set,
                                                                  int max_depth,
                                                                  const SearchLimits& lim = {});

// For n = 1..max_depth: a norm bound below 1 certifies stability, a spectral
// bound above 1 certifies instability; both are sound unconditionally.
// Termination for rho != 1 is guaranteed only under the finiteness property.
Decision decide_stability(const MatrixSet& set, int max_depth, NormKind norm,
                          const SearchLimits& lim = {});

/// One-sided infinite switching sequence; produces 0-based generator indices
/// on demand.  periodic repeats a word; random is a seeded hash stream;
/// sturmian is the mechanical formula s_t = floor((t+1)g + d) - floor(tg + d)
/// over the first two generators.
class SwitchingSequence {
 public:
  static SwitchingSequence periodic(Word w);
  static SwitchingSequence random(std::uint64_t seed);
  static SwitchingSequence sturmian(double gamma, double delta);

  int index_at(std::int64_t t, int card) const;  // validates against card
  std::string describe() const;

 private:
  enum class Kind { Periodic, Random, Sturmian };
  Kind kind_ = Kind::Periodic;
  Word word_;
  std::uint64_t seed_ = 0;
  double gamma_ = 0.0;
  double delta_ = 0.0;
};

struct TrajectoryPoint {
  std::int64_t t = 0;
  double log_norm = 0.0;
};

// Row-vector dynamics x_t = x_{t-1} S_{i_t} with per-step log-norm
// accumulation; emits log ||x_t|| for t = 0..steps.
std::vector<TrajectoryPoint> simulate_trajectory(const MatrixSet& set,
                                                 const SwitchingSequence& seq,
                                                 const std::vector<cx>& x0, std::int64_t steps,
                                                 NormKind vec_norm = NormKind::Two);

// Least-squares slope of log ||x_t|| over the last half of the trajectory.
double growth_exponent(const std::vector<TrajectoryPoint>& series);

// Mechanical binary word of slope gamma in [0, 1] and intercept delta,
// mapped onto generator indices 1 and 2.
Word sturmian_word(double gamma, double delta, std::int64_t length);

}  // namespace jsr
