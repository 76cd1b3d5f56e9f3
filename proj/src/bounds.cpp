#include "jsr/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace jsr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int effective_threads(const SearchLimits& lim) {
  if (lim.threads > 0) return lim.threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void run_tasks(int threads, int count, const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mtx;
  std::exception_ptr err;
  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mtx);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Best word seen for one depth.  Comparison key is the total log value
// (log rho or log norm of the whole product, without the 1/n root), so the
// merge is a total order: larger value wins, exact ties go to the
// lexicographically smaller word.  That makes parallel merges bit-identical
// to the serial fold.
struct Incumbent {
  bool present = false;
  double log_value = kNegInf;
  Word word;
  double kappa = 1.0;

  void consider(double lv, const std::vector<int>& path, int len, double kap) {
    if (!present || lv > log_value) {
      present = true;
      log_value = lv;
      word.idx.assign(path.begin(), path.begin() + len);
      kappa = kap;
    }
  }

  void merge(const Incumbent& o) {
    if (!o.present) return;
    if (!present || o.log_value > log_value ||
        (o.log_value == log_value && o.word < word)) {
      *this = o;
    }
  }
};

struct SpectrumStats {
  double log_value;  // log rho(S_w) + accumulated scale; -inf for nilpotent
  double kappa;      // min|lambda| / rho, 1.0 when rho == 0
};

SpectrumStats spectrum_stats(const ProductAccumulator& acc) {
  if (acc.is_zero()) return {kNegInf, 1.0};
  const Spectrum sp = eigenvalues(acc.raw());
  if (sp.rho == 0.0) return {kNegInf, 1.0};
  return {std::log(sp.rho) + acc.log_scale(), sp.min_modulus / sp.rho};
}

// ---- full word tree -------------------------------------------------------

// Visits every word of length 1..maxd below the given node, lexicographically.
// visit(depth, path, acc) is called once per word.
template <class Visit>
void full_dfs_below(const MatrixSet& set, int maxd, std::vector<int>& path,
                    const ProductAccumulator& acc, Visit&& visit) {
  if (static_cast<int>(path.size()) == maxd) return;
  for (int c = 0; c < set.size(); ++c) {
    path.push_back(c);
    ProductAccumulator child = acc;
    child.append(set.generator(c));
    visit(static_cast<int>(path.size()), path, child);
    full_dfs_below(set, maxd, path, child, visit);
    path.pop_back();
  }
}

template <class Visit>
void full_dfs(const MatrixSet& set, int maxd, Visit&& visit) {
  std::vector<int> path;
  for (int c = 0; c < set.size(); ++c) {
    path.assign(1, c);
    ProductAccumulator acc(set.generator(c));
    visit(1, path, acc);
    full_dfs_below(set, maxd, path, acc, visit);
    path.clear();
  }
}

// Norm maxima for every depth 1..maxd over the full word tree, optionally
// partitioned across workers by length-p prefixes.
std::vector<Incumbent> full_norm_search(const MatrixSet& set, int maxd, NormKind norm,
                                        const SearchLimits& lim) {
  const int k = set.size();
  std::vector<Incumbent> best(static_cast<std::size_t>(maxd) + 1);
  const int threads = effective_threads(lim);

  const std::uint64_t total = count_words(k, maxd, 1u << 12);
  if (threads <= 1 || maxd < 2 || total <= (1u << 12)) {
    full_dfs(set, maxd, [&](int depth, const std::vector<int>& path, const ProductAccumulator& acc) {
      best[depth].consider(acc.log_norm(norm), path, depth, 1.0);
    });
    return best;
  }

  int p = 1;
  while (p < maxd - 1 && count_words(k, p, 1u << 12) < static_cast<std::uint64_t>(4 * threads)) ++p;

  // shallow part, serial
  full_dfs(set, p, [&](int depth, const std::vector<int>& path, const ProductAccumulator& acc) {
    best[depth].consider(acc.log_norm(norm), path, depth, 1.0);
  });

  // one task per length-p prefix
  std::vector<Word> prefixes;
  {
    WordStream ws(k, p);
    Word w;
    while (ws.next(w)) prefixes.push_back(w);
  }
  std::vector<std::vector<Incumbent>> partial(prefixes.size());
  run_tasks(threads, static_cast<int>(prefixes.size()), [&](int ti) {
    std::vector<Incumbent> local(static_cast<std::size_t>(maxd) + 1);
    const Word& pre = prefixes[ti];
    ProductAccumulator acc(set.generator(pre.idx[0]));
    for (int i = 1; i < pre.length(); ++i) acc.append(set.generator(pre.idx[i]));
    std::vector<int> path = pre.idx;
    full_dfs_below(set, maxd, path, acc,
                   [&](int depth, const std::vector<int>& pth, const ProductAccumulator& a) {
                     local[depth].consider(a.log_norm(norm), pth, depth, 1.0);
                   });
    partial[ti] = std::move(local);
  });
  for (const auto& local : partial)
    for (int n = p + 1; n <= maxd; ++n) best[n].merge(local[n]);
  return best;
}

// ---- necklace tree --------------------------------------------------------

// FKM prefix tree: a node at depth t holds a prenecklace a[0..t-1] with
// period p; the word is a necklace representative exactly when p divides t.
// descend(t, acc) gates expansion (used for pruning and early exit);
// visit(t, path, acc) fires on representatives only.
struct NecklaceSearch {
  const MatrixSet& set;
  int maxd;
  std::vector<int> a;
  std::uint64_t nodes = 0;

  std::function<void(int, const std::vector<int>&, const ProductAccumulator&)> visit;
  std::function<bool(int, const ProductAccumulator&)> descend;

  explicit NecklaceSearch(const MatrixSet& s, int maxdepth)
      : set(s), maxd(maxdepth), a(static_cast<std::size_t>(maxdepth), 0) {}

  void run(int first_symbol_lo, int first_symbol_hi) {
    for (int c = first_symbol_lo; c <= first_symbol_hi; ++c) {
      a[0] = c;
      ProductAccumulator acc(set.generator(c));
      ++nodes;
      rec(1, 1, acc);
    }
  }

 private:
  void rec(int t, int p, const ProductAccumulator& acc) {
    if (t % p == 0) visit(t, a, acc);
    if (t == maxd) return;
    if (descend && !descend(t, acc)) return;
    const int base = a[t - p];
    for (int c = base; c < set.size(); ++c) {
      a[t] = c;
      ProductAccumulator child = acc;
      child.append(set.generator(c));
      ++nodes;
      rec(t + 1, c == base ? p : t + 1, child);
    }
  }
};

// Spectral-radius maxima (and the achieving words' peripheral ratios) over
// necklace representatives for every depth 1..maxd.
std::vector<Incumbent> necklace_rho_search(const MatrixSet& set, int maxd, const SearchLimits& lim,
                                           std::uint64_t& nodes) {
  const int k = set.size();
  const int threads = std::min(effective_threads(lim), k);
  std::vector<Incumbent> best(static_cast<std::size_t>(maxd) + 1);

  auto make_visitor = [&](std::vector<Incumbent>& out) {
    return [&out](int t, const std::vector<int>& path, const ProductAccumulator& acc) {
      const SpectrumStats st = spectrum_stats(acc);
      out[t].consider(st.log_value, path, t, st.kappa);
    };
  };

  if (threads <= 1) {
    NecklaceSearch s(set, maxd);
    s.visit = make_visitor(best);
    s.run(0, k - 1);
    nodes += s.nodes;
    return best;
  }

  std::vector<std::vector<Incumbent>> partial(k);
  std::vector<std::uint64_t> counts(k, 0);
  run_tasks(threads, k, [&](int c) {
    std::vector<Incumbent> local(static_cast<std::size_t>(maxd) + 1);
    NecklaceSearch s(set, maxd);
    s.visit = make_visitor(local);
    s.run(c, c);
    counts[c] = s.nodes;
    partial[c] = std::move(local);
  });
  for (int c = 0; c < k; ++c) {
    nodes += counts[c];
    for (int n = 1; n <= maxd; ++n) best[n].merge(partial[c][n]);
  }
  return best;
}

std::uint64_t full_tree_size(int k, int maxd, std::uint64_t clamp) {
  std::uint64_t total = 0;
  for (int n = 1; n <= maxd; ++n) {
    const std::uint64_t c = count_words(k, n, clamp);
    if (c > clamp || total > clamp - c) return clamp + 1;
    total += c;
  }
  return total;
}

void check_budget(std::uint64_t need, const SearchLimits& lim, const std::string& what) {
  if (need > lim.max_products)
    throw BudgetExceeded(what + " needs more than the enumeration budget of " +
                             std::to_string(lim.max_products) + " product evaluations",
                         lim.max_products);
}

double root_value(double log_value, int n) {
  return std::exp(log_value / static_cast<double>(n));
}

}  // namespace

std::pair<double, Word> rho_n(const MatrixSet& set, int n, const SearchLimits& lim) {
  if (n < 1) throw std::invalid_argument("depth must be >= 1");
  check_budget(count_words(set.size(), n, lim.max_products), lim,
               "rho_" + std::to_string(n) + " over " + std::to_string(set.size()) + "^" +
                   std::to_string(n) + " words");
  std::uint64_t nodes = 0;
  std::vector<Incumbent> best = necklace_rho_search(set, n, lim, nodes);
  return {root_value(best[n].log_value, n), best[n].word};
}

std::pair<double, Word> rho_hat_n(const MatrixSet& set, int n, NormKind norm,
                                  const SearchLimits& lim) {
  if (n < 1) throw std::invalid_argument("depth must be >= 1");
  check_budget(count_words(set.size(), n, lim.max_products), lim,
               "rho_hat_" + std::to_string(n) + " over " + std::to_string(set.size()) + "^" +
                   std::to_string(n) + " words");
  std::vector<Incumbent> best = full_norm_search(set, n, norm, lim);
  return {root_value(best[n].log_value, n), best[n].word};
}

BoundsTable bounds_table(const MatrixSet& set, int max_depth, NormKind norm,
                         const SearchLimits& lim) {
  if (max_depth < 1) throw std::invalid_argument("depth must be >= 1");
  const std::uint64_t full_nodes = full_tree_size(set.size(), max_depth, lim.max_products);
  check_budget(full_nodes, lim,
               "bounds table to depth " + std::to_string(max_depth));

  std::uint64_t neck_nodes = 0;
  std::vector<Incumbent> lo = necklace_rho_search(set, max_depth, lim, neck_nodes);
  std::vector<Incumbent> hi = full_norm_search(set, max_depth, norm, lim);

  BoundsTable t;
  t.norm = norm;
  t.products_evaluated = full_nodes + neck_nodes;
  double best_lo = 0.0, best_hi = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= max_depth; ++n) {
    DepthEntry e;
    e.n = n;
    e.lo = root_value(lo[n].log_value, n);
    e.lo_word = lo[n].word;
    e.lo_kappa = lo[n].kappa;
    e.hi = root_value(hi[n].log_value, n);
    e.hi_word = hi[n].word;
    best_lo = std::max(best_lo, e.lo);
    best_hi = std::min(best_hi, e.hi);
    e.best_lo = best_lo;
    e.best_hi = best_hi;
    t.rows.push_back(std::move(e));
  }
  return t;
}

namespace {

struct PassAborted {};

}  // namespace

RefineOutcome refine_bounds(const MatrixSet& set, std::uint64_t node_budget, NormKind norm,
                            int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (node_budget < static_cast<std::uint64_t>(set.size()))
    throw std::invalid_argument("node budget must be at least card(K)");

  RefineOutcome out;
  out.table.norm = norm;
  const double log_max_gen_norm = [&] {
    const double m = set.max_generator_norm(norm);
    return m == 0.0 ? kNegInf : std::log(m);
  }();

  std::uint64_t nodes = 0;
  double best_lo = 0.0, best_hi = std::numeric_limits<double>::infinity();

  for (int n = 1; n <= max_depth; ++n) {
    if (nodes >= node_budget) {
      out.budget_exhausted = true;
      break;
    }

    // Upper side: exhaustive norm maximum at this depth.
    Incumbent hi_best;
    Incumbent lo_best;
    try {
      std::uint64_t local = 0;
      full_dfs(set, n, [&](int depth, const std::vector<int>& path, const ProductAccumulator& acc) {
        if (++local + nodes > node_budget) throw PassAborted{};
        if (depth == n) hi_best.consider(acc.log_norm(norm), path, depth, 1.0);
      });
      nodes += local;

      // Lower side: necklace tree with Gripenberg-style pruning.  A prefix w
      // of length t caps every depth-n extension at ||S_w|| * M^(n-t); when
      // that cap is strictly below the incumbent the subtree cannot contain
      // the argmax (ties cannot win either: they are lexicographically later).
      NecklaceSearch s(set, n);
      s.visit = [&](int t, const std::vector<int>& path, const ProductAccumulator& acc) {
        if (t != n) return;
        if (lo_best.present && acc.log_norm(norm) < lo_best.log_value) return;
        const SpectrumStats st = spectrum_stats(acc);
        lo_best.consider(st.log_value, path, t, st.kappa);
      };
      s.descend = [&](int t, const ProductAccumulator& acc) {
        if (s.nodes + nodes > node_budget) throw PassAborted{};
        if (!lo_best.present) return true;
        const double cap = acc.log_norm(norm) + (n - t) * log_max_gen_norm;
        return !(cap < lo_best.log_value);
      };
      s.run(0, set.size() - 1);
      nodes += s.nodes;
    } catch (const PassAborted&) {
      out.budget_exhausted = true;
      break;
    }

    DepthEntry e;
    e.n = n;
    e.lo = root_value(lo_best.log_value, n);
    e.lo_word = lo_best.word;
    e.lo_kappa = lo_best.kappa;
    e.hi = root_value(hi_best.log_value, n);
    e.hi_word = hi_best.word;
    best_lo = std::max(best_lo, e.lo);
    best_hi = std::min(best_hi, e.hi);
    e.best_lo = best_lo;
    e.best_hi = best_hi;
    out.table.rows.push_back(std::move(e));
    out.deepest_complete = n;
  }

  out.nodes_visited = nodes;
  out.table.products_evaluated = nodes;
  return out;
}

std::vector<SmpCandidate> smp_candidates(const BoundsTable& table, int top) {
  std::vector<SmpCandidate> cands;
  cands.reserve(table.rows.size());
  for (const DepthEntry& e : table.rows) {
    if (e.lo_word.empty()) continue;
    cands.push_back(SmpCandidate{e.lo_word, e.lo, e.lo_kappa});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const SmpCandidate& a, const SmpCandidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.word.length() != b.word.length()) return a.word.length() < b.word.length();
    return a.word < b.word;
  });
  if (top >= 0 && static_cast<int>(cands.size()) > top) cands.resize(top);
  return cands;
}

std::optional<std::pair<int, Word>> first_word_with_rho_at_least(const MatrixSet& set, int max_depth,
                                                                 double threshold,
                                                                 const SearchLimits& lim) {
  const double log_thr = threshold <= 0.0 ? kNegInf : std::log(threshold);
  for (int n = 1; n <= max_depth; ++n) {
    check_budget(count_words(set.size(), n, lim.max_products), lim,
                 "periodic-stability scan at depth " + std::to_string(n));
    std::optional<Word> found;
    NecklaceSearch s(set, n);
    s.visit = [&](int t, const std::vector<int>& path, const ProductAccumulator& acc) {
      if (found || t != n) return;
      const SpectrumStats st = spectrum_stats(acc);
      if (st.log_value >= n * log_thr)
        found = Word(std::vector<int>(path.begin(), path.begin() + t));
    };
    s.descend = [&](int, const ProductAccumulator&) { return !found; };
    s.run(0, set.size() - 1);
    if (found) return std::make_pair(n, *found);
  }
  return std::nullopt;
}

}  // namespace jsr
