#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jsr/words.hpp"

namespace jsr {

/// Enumeration limits shared by the word-search operations.
///   max_products — refuse (BudgetExceeded) rather than truncate when an
///                  enumeration pass would evaluate more products than this;
///   threads      — worker cap, 0 = available parallelism.  Results are
///                  bit-identical for any thread count.
struct SearchLimits {
  std::uint64_t max_products = 20'000'000;
  int threads = 0;
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& msg, std::uint64_t budget)
      : std::runtime_error(msg), budget(budget) {}
  std::uint64_t budget;
};

/// One row of a BoundsTable.  lo = rho_n^{1/n} with its achieving word and
/// that word's peripheral ratio; hi = rho_hat_n^{1/n} with its achieving
/// word; best_* are the running hulls over depths <= n.
struct DepthEntry {
  int n = 0;
  double lo = 0.0;
  Word lo_word;
  double lo_kappa = 1.0;
  double hi = 0.0;
  Word hi_word;
  double best_lo = 0.0;
  double best_hi = 0.0;
};

struct BoundsTable {
  NormKind norm = NormKind::Inf;
  std::vector<DepthEntry> rows;
  std::uint64_t products_evaluated = 0;

  double best_lo() const { return rows.empty() ? 0.0 : rows.back().best_lo; }
  double best_hi() const { return rows.empty() ? 0.0 : rows.back().best_hi; }
};

/// Candidate spectrum-maximizing product extracted from a table.
struct SmpCandidate {
  Word word;
  double value = 0.0;  // rho(S_w)^{1/n}
  double kappa = 1.0;  // peripheral ratio of S_w
};

// Exact maximum of rho(S_w) over K^n, searched over necklace representatives
// (spectral radius is invariant under rotation); returns (rho_n^{1/n}, word).
// Ties resolved toward the lexicographically least word.
std::pair<double, Word> rho_n(const MatrixSet& set, int n, const SearchLimits& lim = {});

// Exact maximum of ||S_w|| over all of K^n (norms are not cyclic-invariant).
std::pair<double, Word> rho_hat_n(const MatrixSet& set, int n, NormKind norm,
                                  const SearchLimits& lim = {});

BoundsTable bounds_table(const MatrixSet& set, int max_depth, NormKind norm,
                         const SearchLimits& lim = {});

/// Result of the pruned search.  Depths 1..deepest_complete carry exactly the
/// exhaustive values and argmax words; deeper rows are absent.
struct RefineOutcome {
  BoundsTable table;
  int deepest_complete = 0;
  std::uint64_t nodes_visited = 0;
  bool budget_exhausted = false;
};

// Branch-and-bound variant of bounds_table: word prefixes whose norm already
// caps every extension strictly below the incumbent are discarded
// (submultiplicativity makes this sound).  Runs serially; node_budget counts
// matrix products across both bound sides.
RefineOutcome refine_bounds(const MatrixSet& set, std::uint64_t node_budget, NormKind norm,
                            int max_depth);

// Top candidates from a table, ranked by value, ties toward shorter then
// lexicographically smaller words.
std::vector<SmpCandidate> smp_candidates(const BoundsTable& table, int top);

// First necklace representative (depth-major, lexicographic within a depth)
// whose spectral radius satisfies rho(S_w) >= threshold^{|w|}; used by the
// stability scan.
std::optional<std::pair<int, Word>> first_word_with_rho_at_least(const MatrixSet& set, int max_depth,
                                                                 double threshold,
                                                                 const SearchLimits& lim = {});

}  // namespace jsr
