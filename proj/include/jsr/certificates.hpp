#pragma once

#include <string>
#include <vector>

#include "jsr/bounds.hpp"
#include "jsr/words.hpp"

namespace jsr {

// min|lambda| / rho(A); defined as 1.0 when rho(A) == 0 (the eigenvalue
// sandwich kappa*rho <= |lambda| <= rho holds vacuously for nilpotents).
double peripheral_ratio(const Matrix& a);

/// Per-product spectral diagnostics for one word.
struct PeripheralReport {
  Word word;
  double rho = 0.0;       // rho(S_w)
  double kappa = 1.0;     // min|lambda| / rho(S_w)
  double det_root = 0.0;  // |det S_w|^{1/d}
  double value = 0.0;     // rho(S_w)^{1/n}
  double log_rho = 0.0;
  double log_det_root = 0.0;
  // Residuals of kappa*rho <= |det|^{1/d} <= rho, relative to rho:
  //   gap_low  = (|det|^{1/d} - kappa*rho) / rho
  //   gap_high = (rho - |det|^{1/d}) / rho
  // Both are >= 0 up to rounding; computed in the rescaled product space, so
  // they stay finite for arbitrarily long words.
  double gap_low = 0.0;
  double gap_high = 0.0;
};

PeripheralReport peripheral_report(const MatrixSet& set, const Word& w);

// True iff every report's kappa is >= kappa_min (inclusive).  Requires
// 0 < kappa_min < 1 and a nonempty list.
bool check_uniform_subperipheral(const std::vector<PeripheralReport>& reports, double kappa_min);

/// Outcome of the finiteness check over a word sequence of growing length.
struct Certificate {
  enum class Status { Certified, Rejected };
  Status status = Status::Rejected;
  double kappa_floor = 0.0;
  std::vector<PeripheralReport> reports;   // one per word, in input order
  std::vector<double> values;              // rho(S_w)^{1/n} series
  double certified_value = 0.0;            // sup_k rho(S_k) when certified
  std::string rejection_reason;            // names the first failed clause
  double tol = 0.0;
  // The limit over word lengths is approximated by the two longest words; a
  // finite surrogate for an asymptotic condition, flagged in all output.
  static constexpr const char* kLimitSurrogate = "two-longest-words";
};

// Certifies sup_k rho(S_k) as the joint/generalized spectral radius when
//  (a) every word's spectrum has kappa >= kappa_min,
//  (b) rho(S_w)^{1/n} at the two longest words is within tol (relative) of
//      sup_k rho(S_k), and
//  (c) the determinant chain kappa*rho <= |det|^{1/d} <= prod_j rho(S_ij)
//      <= (sup_k rho(S_k))^n holds numerically for every word.
// Words must be at least 3, strictly increasing in length.  A rejection is
// one-sided: it never asserts that the finiteness property fails.
Certificate certify_finiteness(const MatrixSet& set, const std::vector<Word>& words,
                               double kappa_min, double tol = 1e-6);

// For each depth n <= max_depth, the peripheral ratio of the word achieving
// rho_n.  No monotonicity is asserted.
std::vector<std::pair<int, double>> r1_diagnostic(const MatrixSet& set, int max_depth,
                                                  const SearchLimits& lim = {});

}  // namespace jsr
