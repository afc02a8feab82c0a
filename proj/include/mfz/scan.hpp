#pragma once

// Threshold scans over m: for each weight k, the smallest m from which not
// every zero lies on the arc, and the smallest m from which none does.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mfz {

struct MSelector {
  enum Kind { All, Range, DeltaWindow } kind = All;
  std::int64_t lo = 0, hi = 0;        // Range: m in [lo, hi]
  double delta_lo = 0, delta_hi = 0;  // DeltaWindow: m / l in [delta_lo, delta_hi]
};

// "all", "range:LO:HI" or "delta:LO:HI".
MSelector parse_m_selector(const std::string& s);

struct ScanRequest {
  std::vector<std::int64_t> ks;
  MSelector m;
  double tolerance = 1e-30;
  int jobs = 1;
  std::string cache_dir;  // empty: no cache
  std::string out;        // CSV path; empty: none
};

// Inclusive m range searched for weight k. All: 0..l-1 for l > 0 and
// floor(1.3 l)..l-1 for l < 0 (the weak side is all on the arc well before
// m / l = 1.3). Only D = l - m >= 1 is ever searched.
std::pair<std::int64_t, std::int64_t> m_search_range(std::int64_t k, const MSelector& sel);

struct ScanRow {
  std::int64_t k = 0, ell = 0;
  std::optional<std::int64_t> min_m_not_all;  // from here to l - 1 some zero is off the arc
  std::optional<std::int64_t> min_m_none;     // from here to l - 1 no zero is on the arc
  long evaluations = 0;
  std::string error;  // per-(k, m) failure; the scan moves on to the next k
};

// Arc-zero counts per (k, m), one file each, published by rename.
class CountCache {
 public:
  explicit CountCache(std::string dir);
  std::optional<long> load(std::int64_t k, std::int64_t m) const;
  void store(std::int64_t k, std::int64_t m, long count) const;

 private:
  std::string dir_;
};

// Exact count_arc_roots of Faber(k, m), through the cache when given.
long arc_count(std::int64_t k, std::int64_t m, const CountCache* cache);

// Exact thresholds: every m from the reported value up to l - 1 satisfies the
// predicate and m - 1 does not (or lies below the range). Membership is not
// monotone in m (k = 18000 has all zeros on the arc at m = 935 but not at 934
// or 936), so m is walked down from l - 1, jobs counts at a time, until both
// predicates have failed once.
ScanRow scan_weight(std::int64_t k, const MSelector& sel, const CountCache* cache, int jobs = 1);

// Weights in request order, each scanned with req.jobs threads over m.
std::vector<ScanRow> run_scan(const ScanRequest& req);

std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace mfz
