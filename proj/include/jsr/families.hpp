#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jsr/words.hpp"

namespace jsr {

/// The parameter at which the pair {[[1,1],[0,1]], a*[[1,0],[1,1]]} loses the
/// finiteness property; stored to full published precision (it is unknown
/// whether the value is rational).
inline constexpr double kAlphaStar =
    0.749326546330367557943961948091344672091327370236064317358024;

// {S1 = [[1,1],[0,1]], S2 = alpha*[[1,0],[1,1]]}, 0 < alpha <= 1.
MatrixSet hare_family(double alpha);

// {[[1,0],[0,lambda]], [[0,lambda],[lambda,0]]}, 0 < |lambda| < 1.
MatrixSet morris_family(double lambda);

// Generators c_j * R(theta_j); every finite product is a scaled rotation.
MatrixSet scaled_rotation_family(const std::vector<double>& scales,
                                 const std::vector<double>& angles);

// Upper-triangular generators with the given diagonals and seeded strict
// upper parts; rho of the set equals the largest |diagonal entry|.
MatrixSet triangular_family(const std::vector<std::vector<double>>& diagonals,
                            std::uint64_t strict_upper_seed);

// All unordered pairs (with repetition) of 2x2 matrices over {-1, 0, 1}.
class SignPairStream {
 public:
  bool next(MatrixSet& out);
  static std::size_t total_count();  // 3321

 private:
  std::size_t i_ = 0;
  std::size_t j_ = 0;
};

MatrixSet sign_pair(std::size_t index);  // index in [0, total_count)

// k generators with entries i.i.d. uniform on [-scale, scale]; bit-for-bit
// reproducible per seed.
MatrixSet random_family(std::uint64_t seed, int d, int k, double scale);

/// A family by name with a textual parameter map, as the CLI receives it.
/// Lists are comma-separated ("scales=0.9,0.8"); triangular diagonals are
/// diag1=..., diag2=..., and so on.
struct FamilySpec {
  std::string name;
  std::map<std::string, std::string> params;
  MatrixSet build() const;  // throws std::invalid_argument on domain violations
};

}  // namespace jsr
