#include "jsr/families.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace jsr {

namespace {

Matrix real2(double a, double b, double c, double d) {
  return Matrix::from_rows(Field::Real, {{cx(a), cx(b)}, {cx(c), cx(d)}});
}

double uniform01(std::mt19937_64& eng) {
  // mt19937_64 output is standardized; the mapping avoids the
  // implementation-defined std::uniform_real_distribution.
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

MatrixSet hare_family(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  return MatrixSet(Field::Real, 2,
                   {{"S1", real2(1, 1, 0, 1)}, {"S2", real2(alpha, 0, alpha, alpha)}},
                   "hare(alpha=" + std::to_string(alpha) + ")");
}

MatrixSet morris_family(double lambda) {
  if (!(std::abs(lambda) > 0.0 && std::abs(lambda) < 1.0))
    throw std::invalid_argument("lambda must satisfy 0 < |lambda| < 1");
  return MatrixSet(Field::Real, 2,
                   {{"S1", real2(1, 0, 0, lambda)}, {"S2", real2(0, lambda, lambda, 0)}},
                   "morris(lambda=" + std::to_string(lambda) + ")");
}

MatrixSet scaled_rotation_family(const std::vector<double>& scales,
                                 const std::vector<double>& angles) {
  if (scales.size() != angles.size())
    throw std::invalid_argument("scales and angles must have equal length");
  if (scales.size() < 2) throw std::invalid_argument("need at least 2 generators");
  std::vector<std::pair<std::string, Matrix>> gens;
  for (std::size_t j = 0; j < scales.size(); ++j) {
    const double c = scales[j];
    if (!(c > 0.0)) throw std::invalid_argument("scales must be positive");
    const double th = angles[j];
    gens.emplace_back("R" + std::to_string(j + 1),
                      real2(c * std::cos(th), c * std::sin(th), -c * std::sin(th),
                            c * std::cos(th)));
  }
  return MatrixSet(Field::Real, 2, std::move(gens), "scaled_rotation");
}

MatrixSet triangular_family(const std::vector<std::vector<double>>& diagonals,
                            std::uint64_t strict_upper_seed) {
  if (diagonals.size() < 2) throw std::invalid_argument("need at least 2 diagonals");
  const int d = static_cast<int>(diagonals.front().size());
  std::mt19937_64 eng(strict_upper_seed);
  std::vector<std::pair<std::string, Matrix>> gens;
  for (std::size_t g = 0; g < diagonals.size(); ++g) {
    if (static_cast<int>(diagonals[g].size()) != d)
      throw std::invalid_argument("all diagonals must have equal length");
    Matrix m(d, Field::Real);
    for (int i = 0; i < d; ++i) {
      m(i, i) = diagonals[g][i];
      for (int j = i + 1; j < d; ++j) m(i, j) = 2.0 * uniform01(eng) - 1.0;
    }
    gens.emplace_back("T" + std::to_string(g + 1), std::move(m));
  }
  return MatrixSet(Field::Real, d, std::move(gens), "triangular");
}

namespace {

Matrix sign_matrix(std::size_t code) {
  // code in [0, 81): four base-3 digits, row-major, mapped to {-1, 0, 1}
  Matrix m(2, Field::Real);
  std::size_t c = code;
  for (int pos = 3; pos >= 0; --pos) {
    m(pos / 2, pos % 2) = static_cast<double>(static_cast<int>(c % 3) - 1);
    c /= 3;
  }
  return m;
}

}  // namespace

bool SignPairStream::next(MatrixSet& out) {
  if (i_ >= 81) return false;
  out = MatrixSet(Field::Real, 2,
                  {{"A" + std::to_string(i_), sign_matrix(i_)},
                   {"B" + std::to_string(j_), sign_matrix(j_)}},
                  "sign_pair(" + std::to_string(i_) + "," + std::to_string(j_) + ")");
  if (++j_ >= 81) {
    ++i_;
    j_ = i_;
  }
  return true;
}

std::size_t SignPairStream::total_count() { return 81 * 80 / 2 + 81; }

MatrixSet sign_pair(std::size_t index) {
  if (index >= SignPairStream::total_count())
    throw std::invalid_argument("sign pair index out of range");
  std::size_t i = 0, rem = index;
  while (rem >= 81 - i) {
    rem -= 81 - i;
    ++i;
  }
  const std::size_t j = i + rem;
  return MatrixSet(Field::Real, 2,
                   {{"A" + std::to_string(i), sign_matrix(i)},
                    {"B" + std::to_string(j), sign_matrix(j)}},
                   "sign_pair(" + std::to_string(i) + "," + std::to_string(j) + ")");
}

MatrixSet random_family(std::uint64_t seed, int d, int k, double scale) {
  if (d < 2 || d > 16) throw std::invalid_argument("dimension must be in [2, 16]");
  if (k < 2) throw std::invalid_argument("card(K) >= 2 required");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be >= 0");
  std::mt19937_64 eng(seed);
  std::vector<std::pair<std::string, Matrix>> gens;
  for (int g = 0; g < k; ++g) {
    Matrix m(d, Field::Real);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = scale * (2.0 * uniform01(eng) - 1.0);
    gens.emplace_back("G" + std::to_string(g + 1), std::move(m));
  }
  return MatrixSet(Field::Real, d, std::move(gens), "random(seed=" + std::to_string(seed) + ")");
}

namespace {

double spec_double(const std::map<std::string, std::string>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw std::invalid_argument("missing family parameter '" + key + "'");
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(it->second, &used);
  } catch (...) {
    throw std::invalid_argument("bad value for parameter '" + key + "': '" + it->second + "'");
  }
  if (used != it->second.size())
    throw std::invalid_argument("bad value for parameter '" + key + "': '" + it->second + "'");
  return v;
}

std::vector<double> spec_list(const std::map<std::string, std::string>& m,
                              const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw std::invalid_argument("missing family parameter '" + key + "'");
  std::vector<double> out;
  const std::string& s = it->second;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok =
        s.substr(pos, comma == std::string::npos ? s.size() - pos : comma - pos);
    if (tok.empty()) throw std::invalid_argument("empty element in parameter '" + key + "'");
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw std::invalid_argument("bad value in parameter '" + key + "': '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

MatrixSet FamilySpec::build() const {
  if (name == "hare") return hare_family(spec_double(params, "alpha"));
  if (name == "morris") return morris_family(spec_double(params, "lambda"));
  if (name == "scaled_rotation")
    return scaled_rotation_family(spec_list(params, "scales"), spec_list(params, "angles"));
  if (name == "triangular") {
    std::vector<std::vector<double>> diagonals;
    for (int i = 1;; ++i) {
      const std::string key = "diag" + std::to_string(i);
      if (!params.count(key)) break;
      diagonals.push_back(spec_list(params, key));
    }
    std::uint64_t seed = 1;
    if (params.count("seed")) seed = static_cast<std::uint64_t>(spec_double(params, "seed"));
    return triangular_family(diagonals, seed);
  }
  if (name == "random")
    return random_family(static_cast<std::uint64_t>(spec_double(params, "seed")),
                         static_cast<int>(spec_double(params, "d")),
                         static_cast<int>(spec_double(params, "k")),
                         spec_double(params, "scale"));
  if (name == "sign_pair")
    return sign_pair(static_cast<std::size_t>(spec_double(params, "index")));
  throw std::invalid_argument(
      "unknown family '" + name +
      "' (known: hare, morris, scaled_rotation, triangular, random, sign_pair)");
}

}  // namespace jsr
