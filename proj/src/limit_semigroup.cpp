#include "jsr/limit_semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "jsr/bounds.hpp"

namespace jsr {

namespace {

double vec_norm2(const RowVector& v) {
  double s = 0.0;
  for (cx x : v) s += std::norm(x);
  return std::sqrt(s);
}

RowVector row_times(const RowVector& v, const Matrix& m) {
  const int d = m.dim();
  RowVector r(d, cx(0.0, 0.0));
  for (int i = 0; i < d; ++i) {
    if (v[i] == cx(0.0, 0.0)) continue;
    for (int j = 0; j < d; ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

// Distance of v*S from span{v}, relative to ||v*S||.
bool direction_invariant(const RowVector& v, const Matrix& m) {
  RowVector u = row_times(v, m);
  const double un = vec_norm2(u);
  if (un == 0.0) return true;  // maps into the subspace trivially
  cx proj(0.0, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) proj += u[i] * std::conj(v[i]);
  double res = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(u[i] - proj * v[i]);
  return std::sqrt(res) <= 1e-10 * un;
}

bool is_scalar_multiple_of_identity(const Matrix& m) {
  const int d = m.dim();
  const double scale = std::max(m.max_abs(), 1.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const cx want = (i == j) ? m(0, 0) : cx(0.0, 0.0);
      if (std::abs(m(i, j) - want) > 1e-14 * scale) return false;
    }
  return true;
}

// Left eigendirections of a 2x2 generator, restricted to the set's field.
std::vector<RowVector> left_eigendirections_2x2(const Matrix& m, Field field) {
  const Matrix t = m.transpose();  // left eigenvectors of m = eigenvectors of m^T
  const cx a = t(0, 0), b = t(0, 1), c = t(1, 0), dd = t(1, 1);
  const cx tr = a + dd;
  const cx det = a * dd - b * c;
  const cx disc2 = tr * tr - 4.0 * det;
  if (field == Field::Real && disc2.real() < 0.0)
    return {};  // complex-conjugate pair: no real eigendirection
  const cx disc = std::sqrt(disc2);
  std::vector<cx> lambdas;
  lambdas.push_back(0.5 * (tr + disc));
  if (std::abs(disc) > 1e-14 * std::max(1.0, std::abs(tr))) lambdas.push_back(0.5 * (tr - disc));

  std::vector<RowVector> dirs;
  for (cx l : lambdas) {
    // null vector of (t - l I): pick the larger of the two candidate rows
    RowVector v1{-b, a - l};   // orthogonal-ish to row 1
    RowVector v2{dd - l, -c};  // orthogonal-ish to row 2
    RowVector v = (vec_norm2(v1) >= vec_norm2(v2)) ? v1 : v2;
    const double n = vec_norm2(v);
    if (n == 0.0) continue;
    for (cx& x : v) x /= n;
    dirs.push_back(std::move(v));
  }
  return dirs;
}

// Frobenius inner product <a, b> = sum a_ij conj(b_ij)
cx frob_dot(const Matrix& a, const Matrix& b) {
  cx s(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * std::conj(b(i, j));
  return s;
}

double frob_norm(const Matrix& a) { return std::sqrt(std::abs(frob_dot(a, a).real())); }

// Dimension of the unital algebra generated by the set, capped at d^2.
int algebra_span_dimension(const MatrixSet& set) {
  const int d = set.dim();
  const int full = d * d;
  std::vector<Matrix> basis;  // orthonormal in the Frobenius inner product
  std::vector<Matrix> work;

  auto try_add = [&](Matrix m) {
    const double orig = frob_norm(m);
    if (orig == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize once
      for (const Matrix& b : basis) {
        const cx coef = frob_dot(m, b);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) m(i, j) -= coef * b(i, j);
      }
    const double rem = frob_norm(m);
    if (rem <= 1e-10 * orig) return false;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) /= rem;
    basis.push_back(m);
    work.push_back(std::move(m));
    return true;
  };

  try_add(Matrix::identity(d, set.field()));
  while (!work.empty() && static_cast<int>(basis.size()) < full) {
    Matrix w = std::move(work.back());
    work.pop_back();
    for (int k = 0; k < set.size(); ++k) {
      if (static_cast<int>(basis.size()) >= full) break;
      try_add(w * set.generator(k));
    }
  }
  return static_cast<int>(basis.size());
}

// Left eigendirections of a d x d generator via LU-based inverse iteration on
// the transpose, one direction per distinct eigenvalue.
std::vector<RowVector> left_eigendirections(const Matrix& m, Field field) {
  const int d = m.dim();
  if (d == 2) return left_eigendirections_2x2(m, field);
  const Matrix t = m.transpose();
  const Spectrum sp = eigenvalues(t);
  const double scale = std::max(1.0, induced_norm(t, NormKind::Inf));

  std::vector<RowVector> dirs;
  std::vector<cx> used;
  for (cx l : sp.eigenvalues) {
    if (field == Field::Real && std::abs(l.imag()) > 1e-10 * scale) continue;
    if (field == Field::Real) l = cx(l.real(), 0.0);
    bool dup = false;
    for (cx u : used)
      if (std::abs(l - u) <= 1e-9 * scale) dup = true;
    if (dup) continue;
    used.push_back(l);

    // inverse iteration on (t - (l + eps) I)
    Matrix shifted = t;
    const double jitter = 1e-11 * scale;
    for (int i = 0; i < d; ++i) shifted(i, i) -= l + cx(jitter, jitter);

    // LU factorization with partial pivoting
    Matrix lu = shifted;
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    bool singular = false;
    for (int k = 0; k < d; ++k) {
      int piv = k;
      double best = std::abs(lu(k, k));
      for (int i = k + 1; i < d; ++i)
        if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); piv = i; }
      if (best == 0.0) { singular = true; break; }
      if (piv != k) {
        for (int j = 0; j < d; ++j) std::swap(lu(k, j), lu(piv, j));
        std::swap(perm[k], perm[piv]);
      }
      for (int i = k + 1; i < d; ++i) {
        lu(i, k) /= lu(k, k);
        for (int j = k + 1; j < d; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
      }
    }
    if (singular) continue;
    auto solve = [&](RowVector b) {
      RowVector x(d);
      for (int i = 0; i < d; ++i) x[i] = b[perm[i]];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
      for (int i = d - 1; i >= 0; --i) {
        for (int j = i + 1; j < d; ++j) x[i] -= lu(i, j) * x[j];
        x[i] /= lu(i, i);
      }
      return x;
    };

    RowVector v(d, cx(0.0, 0.0));
    for (int i = 0; i < d; ++i) v[i] = cx(1.0 / (i + 1.0), 0.0);
    for (int it = 0; it < 4; ++it) {
      v = solve(std::move(v));
      const double n = vec_norm2(v);
      if (n == 0.0) break;
      for (cx& x : v) x /= n;
    }
    if (vec_norm2(v) > 0.5) dirs.push_back(std::move(v));
  }
  return dirs;
}

std::optional<RowVector> common_left_eigendirection(const MatrixSet& set) {
  int source = -1;
  for (int k = 0; k < set.size(); ++k)
    if (!is_scalar_multiple_of_identity(set.generator(k))) { source = k; break; }
  if (source < 0) return RowVector{};  // caller interprets: every direction works

  for (RowVector& v : left_eigendirections(set.generator(source), set.field())) {
    bool all = true;
    for (int k = 0; k < set.size() && all; ++k)
      if (!direction_invariant(v, set.generator(k))) all = false;
    if (all) return v;
  }
  return std::nullopt;
}

}  // namespace

IrreducibilityVerdict irreducibility(const MatrixSet& set) {
  IrreducibilityVerdict out;
  const int d = set.dim();

  if (d == 2) {
    out.method = "common-left-eigendirection (exact, d=2)";
    auto v = common_left_eigendirection(set);
    if (!v) {
      out.verdict = IrreducibilityVerdict::Kind::Irreducible;
      return out;
    }
    out.verdict = IrreducibilityVerdict::Kind::Reducible;
    if (v->empty()) {
      // every generator is a scalar multiple of the identity
      RowVector e1(d, cx(0.0, 0.0));
      e1[0] = 1.0;
      out.witness = {e1};
    } else {
      out.witness = {*v};
    }
    return out;
  }

  out.method = "algebra-span dimension";
  if (algebra_span_dimension(set) == d * d) {
    out.verdict = IrreducibilityVerdict::Kind::Irreducible;
    return out;
  }
  auto v = common_left_eigendirection(set);
  if (v) {
    out.verdict = IrreducibilityVerdict::Kind::Reducible;
    if (v->empty()) {
      RowVector e1(d, cx(0.0, 0.0));
      e1[0] = 1.0;
      out.witness = {e1};
    } else {
      out.witness = {*v};
    }
    return out;
  }
  out.verdict = IrreducibilityVerdict::Kind::Inconclusive;
  return out;
}

namespace {

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

LimitPointSet sample_limit_points(const MatrixSet& set, double rho_est, int count, int max_len,
                                  std::uint64_t seed) {
  if (!(rho_est > 0.0)) throw std::invalid_argument("rho_est must be > 0");
  if (count < 1 || max_len < 1) throw std::invalid_argument("count and max_len must be >= 1");

  LimitPointSet out;
  out.rho_estimate = rho_est;
  out.sample_count = count;
  out.max_length = max_len;
  out.seed = seed;

  // Word list: s.m.p.-guided repetitions first, then uniform random draws.
  // Only words of length >= max_len/2 are sampled; short products are not
  // meaningful accumulation-point estimates.
  const int min_len = std::max(1, max_len / 2);
  std::vector<Word> words;
  {
    const int probe_depth = std::min(6, max_len);
    SearchLimits lim;
    const BoundsTable t = bounds_table(set, probe_depth, NormKind::Inf, lim);
    std::vector<SmpCandidate> cands = smp_candidates(t, 3);
    for (const SmpCandidate& c : cands) {
      const int len = c.word.length();
      for (int reps = (min_len + len - 1) / len; reps * len <= max_len; ++reps) {
        Word w;
        for (int r = 0; r < reps; ++r)
          w.idx.insert(w.idx.end(), c.word.idx.begin(), c.word.idx.end());
        words.push_back(std::move(w));
        if (static_cast<int>(words.size()) >= count) break;
      }
      if (static_cast<int>(words.size()) >= count) break;
    }
  }
  std::mt19937_64 eng(seed);
  while (static_cast<int>(words.size()) < count) {
    const int len = min_len + static_cast<int>(uniform01(eng) * (max_len - min_len + 1));
    Word w;
    w.idx.reserve(len);
    for (int i = 0; i < len; ++i)
      w.idx.push_back(static_cast<int>(uniform01(eng) * set.size()));
    words.push_back(std::move(w));
  }

  // normalize and filter
  const double log_rho_est = std::log(rho_est);
  struct Sample {
    Matrix m;
    int len;
  };
  std::vector<Sample> kept;
  for (const Word& w : words) {
    ProductAccumulator acc(set.generator(w.idx[0]));
    for (std::size_t i = 1; i < w.idx.size(); ++i) acc.append(set.generator(w.idx[i]));
    if (acc.is_zero()) continue;
    const double shift = acc.log_scale() - w.length() * log_rho_est;
    const double log_norm = std::log(induced_norm(acc.raw(), NormKind::Inf)) + shift;
    if (log_norm < std::log(LimitPointSet::kMinNormFilter) ||
        log_norm > std::log(LimitPointSet::kMaxNormFilter))
      continue;
    Matrix m = acc.raw();
    const double f = std::exp(shift);
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) m(i, j) *= f;
    kept.push_back(Sample{std::move(m), w.length()});
  }

  // single-linkage clustering at fixed radius (union-find)
  const std::size_t n = kept.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = induced_norm(kept[i].m - kept[j].m, NormKind::Inf);
      if (dist <= LimitPointSet::kClusterRadius) parent[find(i)] = find(j);
    }

  std::vector<std::vector<std::size_t>> clusters;
  {
    std::vector<int> idx_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = find(i);
      if (idx_of[r] < 0) {
        idx_of[r] = static_cast<int>(clusters.size());
        clusters.emplace_back();
      }
      clusters[idx_of[r]].push_back(i);
    }
  }

  for (const std::vector<std::size_t>& members : clusters) {
    // representative: longest supporting word (best approximant of the limit)
    std::size_t rep = members.front();
    for (std::size_t m : members)
      if (kept[m].len > kept[rep].len) rep = m;
    double radius = 0.0;
    for (std::size_t m : members)
      radius = std::max(radius, induced_norm(kept[m].m - kept[rep].m, NormKind::Inf));
    out.points.push_back(LimitPoint{kept[rep].m, kept[rep].len, radius,
                                    std::abs(determinant(kept[rep].m)),
                                    rank_profile(kept[rep].m, LimitPointSet::kRankTol),
                                    static_cast<int>(members.size())});
  }
  return out;
}

LimitCertificate nonsingular_limit_certificate(const MatrixSet& set, const LimitPointSet& lps,
                                               double det_tol) {
  LimitCertificate cert;
  const IrreducibilityVerdict verdict = irreducibility(set);
  if (verdict.verdict != IrreducibilityVerdict::Kind::Irreducible) {
    cert.certified = false;
    cert.message = std::string("no certificate: irreducibility precondition unmet (verdict: ") +
                   (verdict.verdict == IrreducibilityVerdict::Kind::Reducible ? "reducible"
                                                                              : "inconclusive") +
                   ")";
    return cert;
  }
  for (const LimitPoint& p : lps.points) {
    if (p.abs_det >= det_tol) {
      cert.certified = true;
      cert.message = "finiteness property certified (Thm 2.4)";
      cert.witness = p;
      return cert;
    }
  }
  cert.certified = false;
  cert.message = "no certificate: no sampled limit point with |det| >= tolerance";
  return cert;
}

int rank_profile(const Matrix& a, double tol) {
  const std::vector<double> sv = singular_values(a);
  if (sv.empty() || sv.front() == 0.0) return 0;
  int r = 0;
  for (double s : sv)
    if (s > tol * sv.front()) ++r;
  return r;
}

}  // namespace jsr
