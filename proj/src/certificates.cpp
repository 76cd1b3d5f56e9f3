#include "jsr/certificates.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace jsr {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSandwichSlack = 1e-10;  // relative slack as a log gap
}  // namespace

double peripheral_ratio(const Matrix& a) {
  const Spectrum sp = eigenvalues(a);
  if (sp.rho == 0.0) return 1.0;
  return sp.min_modulus / sp.rho;
}

PeripheralReport peripheral_report(const MatrixSet& set, const Word& w) {
  validate_word(w, set.size());
  const int n = w.length();
  const int d = set.dim();

  ProductAccumulator acc(set.generator(w.idx[0]));
  for (int i = 1; i < n; ++i) acc.append(set.generator(w.idx[i]));

  PeripheralReport r;
  r.word = w;
  if (acc.is_zero()) {
    r.rho = 0.0;
    r.kappa = 1.0;
    r.det_root = 0.0;
    r.value = 0.0;
    r.log_rho = kNegInf;
    r.log_det_root = kNegInf;
    return r;
  }

  const Spectrum sp = eigenvalues(acc.raw());
  const double adet = std::abs(determinant(acc.raw()));
  r.log_rho = sp.rho == 0.0 ? kNegInf : std::log(sp.rho) + acc.log_scale();
  r.log_det_root = adet == 0.0 ? kNegInf : std::log(adet) / d + acc.log_scale();
  r.kappa = sp.rho == 0.0 ? 1.0 : sp.min_modulus / sp.rho;
  r.rho = std::exp(r.log_rho);
  r.det_root = std::exp(r.log_det_root);
  r.value = std::exp(r.log_rho / n);
  if (sp.rho == 0.0) {
    r.gap_low = 0.0;
    r.gap_high = 0.0;
  } else {
    // All three quantities carry the same exp(log_scale) factor, so the
    // residuals can be formed from the rescaled product directly.
    const double det_root_raw = std::pow(adet, 1.0 / d);
    r.gap_low = (det_root_raw - sp.min_modulus) / sp.rho;
    r.gap_high = (sp.rho - det_root_raw) / sp.rho;
  }
  return r;
}

bool check_uniform_subperipheral(const std::vector<PeripheralReport>& reports, double kappa_min) {
  if (reports.empty()) throw std::invalid_argument("empty report list");
  if (!(kappa_min > 0.0 && kappa_min < 1.0))
    throw std::invalid_argument("kappa_min must lie in (0, 1)");
  for (const PeripheralReport& r : reports)
    if (r.kappa < kappa_min) return false;
  return true;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

Certificate certify_finiteness(const MatrixSet& set, const std::vector<Word>& words,
                               double kappa_min, double tol) {
  if (words.size() < 3) throw std::invalid_argument("need at least 3 words of increasing length");
  for (std::size_t i = 0; i < words.size(); ++i) {
    validate_word(words[i], set.size());
    if (i > 0 && words[i].length() <= words[i - 1].length())
      throw std::invalid_argument("word lengths must be strictly increasing");
  }
  if (!(kappa_min > 0.0 && kappa_min < 1.0))
    throw std::invalid_argument("kappa_min must lie in (0, 1)");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be >= 0");

  Certificate cert;
  cert.kappa_floor = kappa_min;
  cert.tol = tol;
  cert.reports.reserve(words.size());
  for (const Word& w : words) cert.reports.push_back(peripheral_report(set, w));
  for (const PeripheralReport& r : cert.reports) cert.values.push_back(r.value);

  const double sup_rho = set.max_generator_rho();
  const double log_sup = sup_rho == 0.0 ? kNegInf : std::log(sup_rho);
  cert.certified_value = sup_rho;

  // (a) uniform sub-peripherality
  for (const PeripheralReport& r : cert.reports) {
    if (r.kappa < kappa_min) {
      cert.status = Certificate::Status::Rejected;
      cert.rejection_reason = "clause (a): word (" + r.word.display() + ") has kappa " +
                              fmt(r.kappa) + " < kappa_min " + fmt(kappa_min);
      return cert;
    }
  }

  // (b) the value sequence approaches sup_k rho(S_k); judged at the two
  //     longest words
  for (std::size_t i = words.size() - 2; i < words.size(); ++i) {
    const double v = cert.values[i];
    if (std::abs(v - sup_rho) > tol * sup_rho) {
      cert.status = Certificate::Status::Rejected;
      cert.rejection_reason = "clause (b): word (" + words[i].display() + ") has value " + fmt(v) +
                              ", not within tol " + fmt(tol) + " of sup_k rho(S_k) = " +
                              fmt(sup_rho);
      return cert;
    }
  }

  // (c) determinant chain, per word, in log space:
  //     kappa*rho <= |det|^{1/d} <= prod_j rho(S_ij) <= sup^n
  std::vector<double> log_gen_rho(set.size());
  for (int k = 0; k < set.size(); ++k) {
    const double r = spectral_radius(set.generator(k));
    log_gen_rho[k] = r == 0.0 ? kNegInf : std::log(r);
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    const PeripheralReport& r = cert.reports[i];
    const int n = words[i].length();
    if (r.log_rho == kNegInf) continue;  // nilpotent product: chain is 0 <= 0 <= 0
    double log_prod_gen = 0.0;
    for (int v : words[i].idx) log_prod_gen += log_gen_rho[v];
    const double slack = kSandwichSlack * std::max(1.0, static_cast<double>(n));
    const bool ok = r.gap_low >= -kSandwichSlack && r.gap_high >= -kSandwichSlack &&
                    r.log_det_root <= log_prod_gen + slack &&
                    log_prod_gen <= n * log_sup + slack;
    if (!ok) {
      cert.status = Certificate::Status::Rejected;
      cert.rejection_reason =
          "clause (c): determinant chain violated for word (" + words[i].display() + ")";
      return cert;
    }
  }

  cert.status = Certificate::Status::Certified;
  return cert;
}

std::vector<std::pair<int, double>> r1_diagnostic(const MatrixSet& set, int max_depth,
                                                  const SearchLimits& lim) {
  const BoundsTable t = bounds_table(set, max_depth, NormKind::Inf, lim);
  std::vector<std::pair<int, double>> series;
  series.reserve(t.rows.size());
  for (const DepthEntry& e : t.rows) series.emplace_back(e.n, e.lo_kappa);
  return series;
}

}  // namespace jsr
