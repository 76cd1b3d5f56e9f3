#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jsr {

using cx = std::complex<double>;

enum class Field { Real, Complex };

enum class NormKind { One, Inf, Two };

const char* to_string(Field f);
const char* to_string(NormKind k);
bool parse_norm_kind(std::string_view text, NormKind& out);

/// Dense d x d matrix, 2 <= d <= 16.  Entries are stored as complex doubles;
/// a Field::Real matrix keeps im == 0 on every entry and is never promoted.
class Matrix {
 public:
  Matrix(int d, Field field);  // zero matrix
  static Matrix identity(int d, Field field = Field::Real);
  static Matrix from_rows(Field field, const std::vector<std::vector<cx>>& rows);

  int dim() const { return d_; }
  Field field() const { return field_; }

  const cx& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * d_ + j]; }
  cx& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * d_ + j]; }

  bool is_zero() const;
  double max_abs() const;  // max over entries of max(|re|, |im|)
  Matrix adjoint() const;
  Matrix transpose() const;

  // Multiplies every entry by 2^e.  Exact in binary floating point.
  void scale_pow2(int e);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  bool operator==(const Matrix& o) const;

 private:
  int d_;
  Field field_;
  std::vector<cx> e_;  // row-major
};

/// All d eigenvalues with algebraic multiplicity, sorted by decreasing
/// modulus (ties by decreasing real part, then decreasing imaginary part).
struct Spectrum {
  std::vector<cx> eigenvalues;
  double rho = 0.0;          // max |lambda|
  double min_modulus = 0.0;  // min |lambda|
};

/// Raised when the eigenvalue iteration fails to converge within the cap;
/// carries the offending matrix.
struct NumericFailure : std::runtime_error {
  NumericFailure(const std::string& msg, Matrix m)
      : std::runtime_error(msg), offender(std::move(m)) {}
  Matrix offender;
};

// Closed form for d == 2; Hessenberg reduction plus shifted QR iteration for
// d >= 3 (iteration cap 100*d^2) with a characteristic-polynomial root
// fallback.  Deterministic for identical input bits.
Spectrum eigenvalues(const Matrix& a);

double spectral_radius(const Matrix& a);

// Cofactor expansion for d <= 4, LU with partial pivoting otherwise.
cx determinant(const Matrix& a);

// one: max column abs sum, inf: max row abs sum, two: largest singular value.
double induced_norm(const Matrix& a, NormKind kind);

// Singular values in decreasing order, computed from the spectrum of A^H A.
std::vector<double> singular_values(const Matrix& a);

}  // namespace jsr
