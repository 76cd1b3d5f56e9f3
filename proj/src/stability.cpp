#include "jsr/stability.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsr {

std::pair<bool, std::optional<Word>> periodically_switched_stable(const MatrixSet& set,
                                                                  int max_depth,
                                                                  const SearchLimits& lim) {
  auto hit = first_word_with_rho_at_least(set, max_depth, 1.0 - kUnitBand, lim);
  if (hit) return {false, hit->second};
  return {true, std::nullopt};
}

Decision decide_stability(const MatrixSet& set, int max_depth, NormKind norm,
                          const SearchLimits& lim) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  Decision d;
  d.norm = norm;
  for (int n = 1; n <= max_depth; ++n) {
    auto [hi, hi_word] = rho_hat_n(set, n, norm, lim);
    if (hi < 1.0 - kUnitBand) {
      d.outcome = Decision::Outcome::Stable;
      d.witness_depth = n;
      d.certificate_value = hi;
      return d;
    }
    auto [lo, lo_word] = rho_n(set, n, lim);
    if (lo > 1.0 + kUnitBand) {
      d.outcome = Decision::Outcome::Unstable;
      d.witness_depth = n;
      d.witness = lo_word;
      d.certificate_value = lo;
      return d;
    }
    d.certificate_value = hi;
  }
  d.outcome = Decision::Outcome::Unknown;
  d.witness_depth = max_depth;
  return d;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int sturmian_symbol(double gamma, double delta, std::int64_t t) {
  const double a = std::floor((static_cast<double>(t) + 1.0) * gamma + delta);
  const double b = std::floor(static_cast<double>(t) * gamma + delta);
  return static_cast<int>(a - b);
}

}  // namespace

SwitchingSequence SwitchingSequence::periodic(Word w) {
  if (w.empty()) throw std::invalid_argument("periodic switching needs a nonempty word");
  SwitchingSequence s;
  s.kind_ = Kind::Periodic;
  s.word_ = std::move(w);
  return s;
}

SwitchingSequence SwitchingSequence::random(std::uint64_t seed) {
  SwitchingSequence s;
  s.kind_ = Kind::Random;
  s.seed_ = seed;
  return s;
}

SwitchingSequence SwitchingSequence::sturmian(double gamma, double delta) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  SwitchingSequence s;
  s.kind_ = Kind::Sturmian;
  s.gamma_ = gamma;
  s.delta_ = delta;
  return s;
}

int SwitchingSequence::index_at(std::int64_t t, int card) const {
  int idx = 0;
  switch (kind_) {
    case Kind::Periodic:
      idx = word_.idx[static_cast<std::size_t>(t % word_.length())];
      break;
    case Kind::Random: {
      const std::uint64_t h = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(t)));
      idx = static_cast<int>(h % static_cast<std::uint64_t>(card));
      break;
    }
    case Kind::Sturmian:
      idx = sturmian_symbol(gamma_, delta_, t);
      break;
  }
  if (idx < 0 || idx >= card)
    throw std::invalid_argument("switching sequence produced index " + std::to_string(idx + 1) +
                                " outside 1.." + std::to_string(card));
  return idx;
}

std::string SwitchingSequence::describe() const {
  switch (kind_) {
    case Kind::Periodic: return "periodic:" + word_.display();
    case Kind::Random: return "random:" + std::to_string(seed_);
    case Kind::Sturmian:
      return "sturmian:" + std::to_string(gamma_) + "," + std::to_string(delta_);
  }
  return "?";
}

namespace {

double vec_norm(const std::vector<cx>& v, NormKind kind) {
  switch (kind) {
    case NormKind::One: {
      double s = 0.0;
      for (cx x : v) s += std::abs(x);
      return s;
    }
    case NormKind::Inf: {
      double m = 0.0;
      for (cx x : v) m = std::max(m, std::abs(x));
      return m;
    }
    case NormKind::Two: {
      double s = 0.0;
      for (cx x : v) s += std::norm(x);
      return std::sqrt(s);
    }
  }
  return 0.0;
}

}  // namespace

std::vector<TrajectoryPoint> simulate_trajectory(const MatrixSet& set,
                                                 const SwitchingSequence& seq,
                                                 const std::vector<cx>& x0, std::int64_t steps,
                                                 NormKind vnorm) {
  const int d = set.dim();
  if (static_cast<int>(x0.size()) != d) throw std::invalid_argument("x0 must have dimension d");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  double n0 = vec_norm(x0, vnorm);
  if (n0 == 0.0) throw std::invalid_argument("x0 must be nonzero");

  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  std::vector<cx> x = x0;
  for (cx& v : x) v /= n0;  // keep the state normalized; accumulate the log
  double log_acc = std::log(n0);
  out.push_back({0, log_acc});

  std::vector<cx> y(d);
  for (std::int64_t t = 1; t <= steps; ++t) {
    const Matrix& s = set.generator(seq.index_at(t - 1, set.size()));
    for (int j = 0; j < d; ++j) {
      cx acc(0.0, 0.0);
      for (int i = 0; i < d; ++i) acc += x[i] * s(i, j);
      y[j] = acc;
    }
    const double n = vec_norm(y, vnorm);
    if (n == 0.0) {
      // trajectory hit the origin exactly; log-norm is -inf from here on
      const double ninf = -std::numeric_limits<double>::infinity();
      for (std::int64_t r = t; r <= steps; ++r) out.push_back({r, ninf});
      return out;
    }
    for (int j = 0; j < d; ++j) x[j] = y[j] / n;
    log_acc += std::log(n);
    out.push_back({t, log_acc});
  }
  return out;
}

double growth_exponent(const std::vector<TrajectoryPoint>& series) {
  if (series.size() < 2) throw std::invalid_argument("series too short");
  const std::size_t start = series.size() / 2;
  const std::size_t m = series.size() - start;
  double st = 0.0, sy = 0.0;
  for (std::size_t i = start; i < series.size(); ++i) {
    st += static_cast<double>(series[i].t);
    sy += series[i].log_norm;
  }
  const double mt = st / m, my = sy / m;
  double num = 0.0, den = 0.0;
  for (std::size_t i = start; i < series.size(); ++i) {
    const double dt = static_cast<double>(series[i].t) - mt;
    num += dt * (series[i].log_norm - my);
    den += dt * dt;
  }
  if (den == 0.0) return 0.0;
  return num / den;
}

Word sturmian_word(double gamma, double delta, std::int64_t length) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  Word w;
  w.idx.reserve(static_cast<std::size_t>(length));
  for (std::int64_t t = 0; t < length; ++t) w.idx.push_back(sturmian_symbol(gamma, delta, t));
  return w;
}

}  // namespace jsr
