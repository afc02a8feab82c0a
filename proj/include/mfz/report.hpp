#pragma once

// Report generation: plot-ready CSV/JSON artifacts plus a plain-text summary
// that compares computed values with reference constants.

#include <cstdint>
#include <string>
#include <vector>

#include "mfz/arcbound.hpp"

namespace mfz {

enum class ReportKind { Thresholds, Curves, Zeros, CM, SzegoConvergence };
ReportKind parse_report_kind(const std::string& s);
std::string report_kind_name(ReportKind k);

struct ReportParams {
  long intervals = 1000;
  double bstep = 0.0005;
  mpfr_prec_t precision = 128;
  int jobs = 1;
  double tolerance = 1e-30;
  std::int64_t k = 12, m = 0;                  // zeros
  std::vector<double> deltas{0.5, 0.98, 1.05};  // curves
  int samples = 800;
  std::vector<long> szego_degrees{10, 20, 40, 80};
  std::vector<std::int64_t> miller_ks{2400, 4800};  // szego-convergence at delta_miller
  double delta_miller = 0.98;
  std::vector<long> screen_degrees{2, 3, 4, 5, 6};  // cm screens, all six k'
};

// One line per compared quantity: value, reference, tolerance, PASS/FAIL.
struct ComparisonLine {
  std::string name;
  double value = 0, reference = 0, tolerance = 0;
  bool pass = false;
  std::string note;
};
std::string format_comparison(const ComparisonLine& c);

// The statement of the P(delta) convention included in every thresholds report.
std::string proportion_convention();

// Summary text for the two grid searches and the cutoff constants.
std::string thresholds_summary(const ArcBoundTable& holomorphic, const ArcBoundTable& weak);

// True iff the first 4 decimals of value are exactly those of prefix.
bool matches_prefix(double value, const std::string& prefix);

// Writes the artifacts of one report kind under dir (created if needed) and
// returns their paths in write order; summary.txt-style text goes to *summary.
std::vector<std::string> emit_report(ReportKind kind, const ReportParams& params, const std::string& dir,
                                     std::string* summary = nullptr);

}  // namespace mfz
