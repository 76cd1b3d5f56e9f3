#include "jsr/words.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsr {

namespace {
constexpr double kLn2 = 0.6931471805599453094;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

std::string Word::display() const {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i] + 1);
  }
  return s;
}

Word Word::parse(std::string_view text, int card) {
  Word w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? text.size() - pos
                                                                            : comma - pos);
    if (tok.empty()) throw std::invalid_argument("empty index in word '" + std::string(text) + "'");
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad index '" + std::string(tok) + "' in word");
      v = v * 10 + (c - '0');
      if (v > 1'000'000) throw std::invalid_argument("index out of range in word");
    }
    w.idx.push_back(v - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  validate_word(w, card);
  return w;
}

Word Word::rotated(int shift) const {
  const int n = length();
  Word r;
  r.idx.resize(n);
  for (int i = 0; i < n; ++i) r.idx[i] = idx[(i + shift) % n];
  return r;
}

void validate_word(const Word& w, int card) {
  if (w.idx.empty()) throw std::invalid_argument("word must have length >= 1");
  for (int v : w.idx)
    if (v < 0 || v >= card)
      throw std::invalid_argument("word index " + std::to_string(v + 1) + " outside 1.." +
                                  std::to_string(card));
}

MatrixSet::MatrixSet(Field field, int d, std::vector<std::pair<std::string, Matrix>> generators,
                     std::string name)
    : field_(field), d_(d), gens_(std::move(generators)), name_(std::move(name)) {
  if (gens_.size() < 2) throw std::invalid_argument("card(K) >= 2 required");
  for (const auto& [label, m] : gens_) {
    if (m.dim() != d_) throw std::invalid_argument("generator '" + label + "' has wrong dimension");
    if (field_ == Field::Real && m.field() != Field::Real)
      throw std::invalid_argument("generator '" + label + "' is complex in a real set");
  }
}

double MatrixSet::max_generator_rho() const {
  double r = 0.0;
  for (const auto& [label, m] : gens_) r = std::max(r, spectral_radius(m));
  return r;
}

double MatrixSet::max_generator_norm(NormKind kind) const {
  double r = 0.0;
  for (const auto& [label, m] : gens_) r = std::max(r, induced_norm(m, kind));
  return r;
}

double ScaledMatrix::log_inf_norm() const {
  if (base.is_zero()) return kNegInf;
  return std::log(induced_norm(base, NormKind::Inf)) + log_scale;
}

Matrix ScaledMatrix::to_matrix() const {
  const double f = std::exp(log_scale);
  Matrix r = base;
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) r(i, j) *= f;
  return r;
}

ProductAccumulator::ProductAccumulator(const Matrix& first) : p_(first) { maybe_rescale(); }

void ProductAccumulator::append(const Matrix& g) {
  if (zero_) return;
  p_ = p_ * g;
  maybe_rescale();
}

void ProductAccumulator::maybe_rescale() {
  const double n = induced_norm(p_, NormKind::Inf);
  if (n == 0.0) {
    zero_ = true;
    log_scale_ = 0.0;
    return;
  }
  if (n < 0x1p-8 || n > 0x1p8) {
    const int e = std::ilogb(n);
    p_.scale_pow2(-e);
    log_scale_ += e * kLn2;
  }
}

double ProductAccumulator::log_inf_norm() const {
  if (zero_) return kNegInf;
  return std::log(induced_norm(p_, NormKind::Inf)) + log_scale_;
}

double ProductAccumulator::log_norm(NormKind kind) const {
  if (zero_) return kNegInf;
  return std::log(induced_norm(p_, kind)) + log_scale_;
}

ScaledMatrix ProductAccumulator::normalized() const {
  if (zero_) return ScaledMatrix{Matrix(p_.dim(), p_.field()), 0.0};
  const double n = induced_norm(p_, NormKind::Inf);
  ScaledMatrix r{p_, log_scale_};
  if (n < 1.0 || n >= 2.0) {
    const int e = std::ilogb(n);
    r.base.scale_pow2(-e);
    r.log_scale += e * kLn2;
  }
  return r;
}

ScaledMatrix evaluate_word(const MatrixSet& set, const Word& w) {
  validate_word(w, set.size());
  ProductAccumulator acc(set.generator(w.idx[0]));
  for (std::size_t i = 1; i < w.idx.size(); ++i) acc.append(set.generator(w.idx[i]));
  return acc.normalized();
}

WordStream::WordStream(int card, int length) : k_(card), n_(length), fixed_(0) {
  if (card < 2) throw std::invalid_argument("card(K) >= 2 required");
  if (length < 1) throw std::invalid_argument("word length must be >= 1");
  cur_.assign(n_, 0);
}

WordStream WordStream::from_prefix(int card, int length, const Word& prefix) {
  WordStream s(card, length);
  validate_word(prefix, card);
  if (prefix.length() > length) throw std::invalid_argument("prefix longer than word length");
  s.fixed_ = prefix.length();
  for (int i = 0; i < s.fixed_; ++i) s.cur_[i] = prefix.idx[i];
  return s;
}

bool WordStream::next(Word& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    out.idx = cur_;
    return true;
  }
  // odometer over the free suffix
  int i = n_ - 1;
  while (i >= fixed_ && cur_[i] == k_ - 1) {
    cur_[i] = 0;
    --i;
  }
  if (i < fixed_) {
    done_ = true;
    return false;
  }
  ++cur_[i];
  out.idx = cur_;
  return true;
}

NecklaceStream::NecklaceStream(int card, int length) : k_(card), n_(length) {
  if (card < 2) throw std::invalid_argument("card(K) >= 2 required");
  if (length < 1) throw std::invalid_argument("word length must be >= 1");
  a_.assign(n_, 0);
}

NecklaceStream NecklaceStream::resume_after(int card, const Word& representative) {
  NecklaceStream s(card, representative.length());
  validate_word(representative, card);
  s.a_ = representative.idx;
  s.started_ = true;  // next() yields the successor of the given word
  return s;
}

bool NecklaceStream::next(Word& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    out.idx = a_;  // all zeros is the first necklace
    return true;
  }
  // FKM successor: bump the last sub-maximal symbol, extend periodically, and
  // keep the result only when the period divides n.
  for (;;) {
    int t = n_ - 1;
    while (t >= 0 && a_[t] == k_ - 1) --t;
    if (t < 0) {
      done_ = true;
      return false;
    }
    ++a_[t];
    const int p = t + 1;
    for (int j = p; j < n_; ++j) a_[j] = a_[j - p];
    if (n_ % p == 0) {
      out.idx = a_;
      return true;
    }
  }
}

std::uint64_t count_words(int card, int length, std::uint64_t clamp) {
  std::uint64_t c = 1;
  for (int i = 0; i < length; ++i) {
    if (c > clamp / static_cast<std::uint64_t>(card)) return clamp + 1;
    c *= static_cast<std::uint64_t>(card);
  }
  return c;
}

}  // namespace jsr
