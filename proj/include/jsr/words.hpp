#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jsr/matrix.hpp"

namespace jsr {

/// A finite index sequence naming the product S_{i1} ... S_{in}.
/// Indices are 0-based internally; all text I/O is 1-based.
struct Word {
  std::vector<int> idx;

  Word() = default;
  explicit Word(std::vector<int> v) : idx(std::move(v)) {}

  int length() const { return static_cast<int>(idx.size()); }
  bool empty() const { return idx.empty(); }

  std::string display() const;                                // "1,2,1"
  static Word parse(std::string_view text, int card);         // 1-based text
  Word rotated(int shift) const;

  auto operator<=>(const Word&) const = default;
};

void validate_word(const Word& w, int card);  // throws std::invalid_argument

/// An indexed family {S_k} of d x d generators, card(K) >= 2.
class MatrixSet {
 public:
  MatrixSet(Field field, int d, std::vector<std::pair<std::string, Matrix>> generators,
            std::string name = "");

  Field field() const { return field_; }
  int dim() const { return d_; }
  int size() const { return static_cast<int>(gens_.size()); }  // card(K)
  const Matrix& generator(int k) const { return gens_[k].second; }
  const std::string& label(int k) const { return gens_[k].first; }
  const std::string& name() const { return name_; }

  double max_generator_rho() const;                 // sup_k rho(S_k)
  double max_generator_norm(NormKind kind) const;   // max_k ||S_k||

 private:
  Field field_;
  int d_;
  std::vector<std::pair<std::string, Matrix>> gens_;
  std::string name_;
};

/// base * exp(log_scale); if base != 0 its inf-norm lies in [1, 2).
struct ScaledMatrix {
  Matrix base;
  double log_scale = 0.0;

  bool is_zero() const { return base.is_zero(); }
  double log_inf_norm() const;  // -inf when zero
  Matrix to_matrix() const;     // may overflow for extreme scales
};

/// Left-to-right product accumulator with lazy power-of-two rescaling; the
/// working matrix keeps its inf-norm inside [2^-8, 2^8].  Rescales are exact,
/// so two accumulators fed the same factor sequence agree bit for bit.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(const Matrix& first);
  void append(const Matrix& g);  // right-multiply

  bool is_zero() const { return zero_; }
  const Matrix& raw() const { return p_; }
  double log_scale() const { return log_scale_; }
  double log_inf_norm() const;                 // log ||product||_inf, -inf when zero
  double log_norm(NormKind kind) const;        // log ||product||_kind
  ScaledMatrix normalized() const;             // final [1, 2) form

 private:
  void maybe_rescale();
  Matrix p_;
  double log_scale_ = 0.0;
  bool zero_ = false;
};

ScaledMatrix evaluate_word(const MatrixSet& set, const Word& w);

/// Pull-based lexicographic stream over K^n.  Restartable from a word prefix,
/// in which case only the words extending that prefix are produced.
class WordStream {
 public:
  WordStream(int card, int length);
  static WordStream from_prefix(int card, int length, const Word& prefix);
  bool next(Word& out);

 private:
  int k_;
  int n_;
  int fixed_;
  std::vector<int> cur_;
  bool started_ = false;
  bool done_ = false;
};

/// Lexicographic stream of necklace representatives (lexicographically least
/// rotations), one per cyclic class, via the iterative FKM successor rule.
/// Restartable: resume_after continues the enumeration past a given
/// representative.
class NecklaceStream {
 public:
  NecklaceStream(int card, int length);
  static NecklaceStream resume_after(int card, const Word& representative);
  bool next(Word& out);

 private:
  int k_;
  int n_;
  std::vector<int> a_;
  bool started_ = false;
  bool done_ = false;
};

std::uint64_t count_words(int card, int length, std::uint64_t clamp);  // min(k^n, clamp)

}  // namespace jsr
