#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfz/miller.hpp"
#include "mfz/report.hpp"
#include "mfz/roots.hpp"
#include "mfz/scan.hpp"

using namespace mfz;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mfz_test_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

// Thresholds by definition: 1 + the largest m in [lo, hi] failing the
// predicate, from every count in the range.
std::pair<std::optional<std::int64_t>, std::optional<std::int64_t>> brute_thresholds(std::int64_t k) {
  const auto ell = decompose_weight(k).ell;
  auto [lo, hi] = m_search_range(k, MSelector{});
  std::optional<std::int64_t> fail_all, fail_none;
  for (std::int64_t m = lo; m <= hi; ++m) {
    long c = count_arc_roots(faber_poly(k, m));
    if (c == ell - m) fail_all = m;
    if (c > 0) fail_none = m;
  }
  auto t = [&](std::optional<std::int64_t> f) -> std::optional<std::int64_t> {
    std::int64_t v = f ? *f + 1 : lo;
    if (v > hi) return std::nullopt;
    return v;
  };
  return {t(fail_all), t(fail_none)};
}

}  // namespace

TEST_CASE("m selectors") {
  CHECK(parse_m_selector("all").kind == MSelector::All);
  auto r = parse_m_selector("range:3:9");
  CHECK(r.kind == MSelector::Range);
  CHECK(r.lo == 3);
  CHECK(r.hi == 9);
  auto d = parse_m_selector("delta:0.5:0.7");
  CHECK(d.kind == MSelector::DeltaWindow);
  CHECK_THROWS_AS(parse_m_selector("range:9:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_m_selector("some"), std::invalid_argument);

  CHECK(m_search_range(1200, MSelector{}) == std::pair<std::int64_t, std::int64_t>{0, 99});
  CHECK(m_search_range(-1200, MSelector{}) == std::pair<std::int64_t, std::int64_t>{-130, -101});
  CHECK(m_search_range(1200, d) == std::pair<std::int64_t, std::int64_t>{50, 70});
  // The window flips with the sign of l, and D >= 1 always.
  CHECK(m_search_range(-1200, parse_m_selector("delta:1.0:1.2")) == std::pair<std::int64_t, std::int64_t>{-120, -101});
}

TEST_CASE("scan of tiny weights has no thresholds") {
  auto row = scan_weight(12, MSelector{}, nullptr);
  CHECK(row.ell == 1);
  CHECK_FALSE(row.min_m_not_all);
  CHECK_FALSE(row.min_m_none);
  CHECK(row.error.empty());
  // l = 31: the D = 1 root 744 - 24 l sits at j = 0, so m = 30 is off (0, 1728).
  auto r372 = scan_weight(372, MSelector{}, nullptr);
  CHECK(r372.min_m_none == 30);
}

TEST_CASE("scan matches exhaustive enumeration, including non-monotone rows") {
  // 396 and -1200 have m values where membership flips back; a bisection would
  // report 23 and -110 there.
  for (std::int64_t k : {372, 396, 600, 1200, 1212, -1200, -600}) {
    auto row = scan_weight(k, MSelector{}, nullptr, 3);
    auto [a, n] = brute_thresholds(k);
    CAPTURE(k);
    CHECK(row.min_m_not_all == a);
    CHECK(row.min_m_none == n);
    CHECK(row.error.empty());
    if (row.min_m_not_all && row.min_m_none) CHECK(*row.min_m_none >= *row.min_m_not_all);
  }
  CHECK(scan_weight(396, MSelector{}, nullptr).min_m_not_all == 25);
  CHECK(scan_weight(-1200, MSelector{}, nullptr).min_m_not_all == -106);
}

TEST_CASE("scan resumes from its cache byte for byte") {
  auto dir = fresh_dir("resume");
  ScanRequest req;
  req.ks = {600, 840, -960};
  req.jobs = 2;
  req.cache_dir = dir.string();
  req.out = (dir / "a.csv").string();
  auto rows = run_scan(req);
  const std::string first = slurp(req.out);
  // Interrupted run: drop some cached counts, then rerun.
  long removed = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "counts")) {
    if (removed++ % 3 == 0) std::filesystem::remove(e.path());
  }
  req.out = (dir / "b.csv").string();
  req.jobs = 3;
  run_scan(req);
  CHECK(slurp(req.out) == first);
  req.cache_dir.clear();
  req.out = (dir / "c.csv").string();
  run_scan(req);
  CHECK(slurp(req.out) == first);
  CHECK(first.rfind("k,ell,min_m_not_all_on_arc,min_m_no_roots_on_arc,error\n", 0) == 0);
  CHECK(rows.size() == 3);
  CHECK_THROWS_AS(run_scan(ScanRequest{}), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("zeros report for weight 12") {
  auto dir = fresh_dir("zeros");
  ReportParams p;
  p.k = 12;
  p.m = 0;
  std::string summary;
  auto files = emit_report(ReportKind::Zeros, p, dir.string(), &summary);
  REQUIRE(files.size() == 3);
  std::string csv = slurp(files[0]);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header and one zero
  CHECK(csv.find(",arc\n") != std::string::npos);
  CHECK(summary.find("on arc 1") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("thresholds summary states the convention and the cutoff prefixes") {
  GridOptions g;
  g.N = 40;
  auto h = grid_search(ArcMode::Holomorphic, g);
  auto w = grid_search(ArcMode::Weak, g);
  auto text = thresholds_summary(h, w);
  CHECK(text.find(proportion_convention()) != std::string::npos);
  CHECK(text.find("max(0, ...)") != std::string::npos);
  for (const char* pre : {"0.6265", "0.9551", "1.1040", "1.1609"}) CHECK(text.find(pre) != std::string::npos);
  CHECK(text.find("delta_A+                           0.6265") != std::string::npos);
  CHECK(matches_prefix(0.955181, "0.9551"));
  CHECK_FALSE(matches_prefix(0.95519, "0.9552"));
  CHECK(parse_report_kind("szego-convergence") == ReportKind::SzegoConvergence);
  CHECK_THROWS_AS(parse_report_kind("plots"), std::invalid_argument);
}

TEST_CASE("cm report artifacts") {
  auto dir = fresh_dir("cm");
  ReportParams p;
  p.screen_degrees = {2, 3};
  std::string summary;
  auto files = emit_report(ReportKind::CM, p, dir.string(), &summary);
  CHECK(files.size() == 5);
  CHECK(summary.find("30 holomorphic rows") != std::string::npos);
  CHECK(summary.find("screen k'=6 D=2: inconclusive") != std::string::npos);
  CHECK(slurp(files[0]).find("131268706320384374") != std::string::npos);
  std::filesystem::remove_all(dir);
}
