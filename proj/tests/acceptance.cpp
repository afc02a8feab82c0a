// Acceptance run: one PASS/FAIL line per criterion, every tolerance pinned
// below. Criterion 11 runs only with --long-running. Exit status is nonzero
// when any criterion that ran failed.

#include <gmpxx.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mfz/arcbound.hpp"
#include "mfz/cm.hpp"
#include "mfz/miller.hpp"
#include "mfz/report.hpp"
#include "mfz/roots.hpp"
#include "mfz/scan.hpp"
#include "mfz/szego.hpp"

using namespace mfz;

namespace {

// Criterion 1.
constexpr double kHoloAllRef = 0.6194, kHoloAllTol = 0.0005;
constexpr double kHoloNoneRef = 0.9546, kHoloNoneTol = 0.001;
// Criterion 2.
constexpr double kWeakAllRef = 1.1598, kWeakNoneRef = 1.1026, kWeakTol = 0.002;
// Criterion 6.
constexpr double kSmallDeltaLimit = 0.55;
// Criterion 7.
constexpr double kFaberDeviationLimit = 0.1;
// Criterion 8.
constexpr double kSzegoLimit = 0.15;
constexpr double kMillerDelta = 0.98;
constexpr int kCurveSamples = 800;
// Criterion 9.
constexpr double kCosLimit = 0.5;
constexpr int kCosGrid = 50;
// Criterion 10: the additive constant of the logarithmic bound.
constexpr double kImSlack = 10.0;
// Criterion 12.
constexpr long kOracleEll = 30, kOracleDegree = 30;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& body) {
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) body(i);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::string f6(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6f", v);
  return b;
}

// Largest D with D^10 <= k^3, i.e. floor(k^0.3) exactly.
long floor_k_pow_03(std::int64_t k) {
  mpz_class k3 = mpz_class(static_cast<long>(k)) * k * k;
  long D = static_cast<long>(std::pow(static_cast<double>(k), 0.3)) + 2;
  for (;;) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(D), 10);
    if (p <= k3) return D;
    --D;
  }
}

// Shared state across criteria: the arc-bound tables feed 13, the zero sets
// of 6 and 8 feed 10.
struct State {
  int jobs = 1;
  std::string out_dir;
  std::optional<ArcBoundTable> holo, weak;
  double max_im_ratio_excess = -1e300;  // max over zeros of Im tau - bound(k)
  double max_im = 0;
  long im_zeros = 0;   // located explicitly
  long arc_zeros = 0;  // known to be on the arc from exact counts, Im tau <= 1
  std::int64_t im_worst_k = 0;
  std::mutex mu;

  void record_zero(std::int64_t k, double im) {
    std::lock_guard<std::mutex> lock(mu);
    const double c = std::exp(2 * M_PI) / 1728.0;
    const double bound = 2 * std::log(static_cast<double>(std::llabs(k))) / (1 - c) + kImSlack;
    ++im_zeros;
    if (im > max_im) {
      max_im = im;
      im_worst_k = k;
    }
    max_im_ratio_excess = std::max(max_im_ratio_excess, im - bound);
  }
};

GridOptions grid_options(const State& s) {
  GridOptions g;
  g.N = 1000;
  g.bstep = 0.0005;
  g.prec = 128;
  g.jobs = s.jobs;
  return g;
}

Outcome c1(State& s) {
  s.holo = grid_search(ArcMode::Holomorphic, grid_options(s));
  const double a = s.holo->delta_cutoff_all, n = s.holo->delta_cutoff_none;
  bool ok = std::fabs(a - kHoloAllRef) <= kHoloAllTol && std::fabs(n - kHoloNoneRef) <= kHoloNoneTol;
  return {ok, "delta_cutoff_all " + f6(a) + " (ref 0.6194 +- 0.0005), P = 0 from " + f6(n) + " (ref 0.9546 +- 0.001)"};
}

Outcome c2(State& s) {
  s.weak = grid_search(ArcMode::Weak, grid_options(s));
  const double a = s.weak->delta_cutoff_all, n = s.weak->delta_cutoff_none;
  bool ok = std::fabs(a - kWeakAllRef) <= kWeakTol && std::fabs(n - kWeakNoneRef) <= kWeakTol;
  return {ok, "all " + f6(a) + " (ref 1.1598), none " + f6(n) + " (ref 1.1026), tol 0.002"};
}

Outcome c3(State&) {
  auto cs = cutoffs(128);
  struct {
    const Real* v;
    const char* prefix;
  } rows[] = {{&cs.A_plus, "0.6265"}, {&cs.S_plus, "0.9551"}, {&cs.S_minus, "1.1040"}, {&cs.A_minus, "1.1609"}};
  bool ok = true;
  std::string d;
  for (const auto& r : rows) {
    double v = r.v->to_double();
    ok = ok && matches_prefix(v, r.prefix);
    char b[64];
    std::snprintf(b, sizeof b, "%.8f ", v);
    d += b;
  }
  return {ok, d + "vs prefixes 0.6265 0.9551 1.1040 1.1609"};
}

Outcome c4(State&) {
  // Reference constant terms of the six closed forms: x + 24 l - c.
  const std::pair<int, long> table[] = {{0, 744}, {4, 984}, {6, 240}, {8, 1224}, {10, 480}, {14, 720}};
  long checked = 0, bad = 0;
  for (auto [kp, c] : table) {
    for (long ell = 1; ell <= 50; ++ell) {
      IntPoly expect({mpz_class(24 * ell - c), mpz_class(1)});
      auto f = faber_poly(12 * ell + kp, ell - 1).poly();
      ++checked;
      if (!(f == expect) || !(d1_faber_closed_form(kp, ell) == expect)) ++bad;
    }
  }
  return {bad == 0, std::to_string(checked) + " (k', l) pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome c5(State&) {
  const std::vector<std::string> expect{
      "442740", "442864", "442494", "442988", "442618", "442742",
      "6144372", "6144496", "6144126", "6144620", "6144250", "6144374",
      "442368372", "442368496", "442368126", "442368620", "442368250", "442368374",
      "73598976372", "73598976496", "73598976126", "73598976620", "73598976250", "73598976374",
      "131268706320384372", "131268706320384496", "131268706320384126",
      "131268706320384620", "131268706320384250", "131268706320384374"};
  auto rows = d1_classification(false);
  std::vector<std::string> got;
  for (const auto& r : rows) got.push_back(r.k.get_str());
  bool ok = got == expect;
  std::string d = std::to_string(got.size()) + " rows";
  if (!ok) d += ", differ from the 30 reference values";
  if (!rows.empty()) d += ", last " + rows.back().zero + " k = " + got.back();
  return {ok, d};
}

Outcome c6(State& s) {
  struct Task {
    std::int64_t k, m;
  };
  std::vector<Task> tasks;
  for (std::int64_t k = 12; k <= 1200; k += 2) {
    const auto ell = decompose_weight(k).ell;
    for (std::int64_t m = 0; ell > 0 && static_cast<double>(m) / static_cast<double>(ell) < kSmallDeltaLimit; ++m)
      tasks.push_back({k, m});
  }
  std::vector<long> counts(tasks.size()), degrees(tasks.size());
  parallel_for(tasks.size(), s.jobs, [&](size_t i) {
    auto f = faber_poly(tasks[i].k, tasks[i].m);
    degrees[i] = f.D;
    counts[i] = count_arc_roots(f);
  });
  std::vector<size_t> failures;
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (counts[i] == degrees[i]) {
      // Every zero sits on the unit arc, so Im tau = sin theta <= 1, far
      // below the bound for any k >= 12.
      s.arc_zeros += degrees[i];
    } else {
      failures.push_back(i);
    }
  }
  // Off-arc zeros of failing pairs are located explicitly for criterion 10.
  for (size_t i : failures) {
    auto zs = zeros_of_miller(tasks[i].k, tasks[i].m);
    for (const auto& z : zs.zeros) s.record_zero(tasks[i].k, z.tau.im.to_double());
  }
  std::string d = std::to_string(tasks.size()) + " (k, m) pairs, " + std::to_string(failures.size()) + " with count != l - m";
  for (size_t j = 0; j < std::min<size_t>(failures.size(), 5); ++j) {
    const auto& t = tasks[failures[j]];
    d += " (" + std::to_string(t.k) + "," + std::to_string(t.m) + ")";
  }
  return {failures.empty(), d};
}

Outcome c7(State&) {
  bool below = true, decreasing = true;
  double prev = 1e300;
  std::string d;
  for (std::int64_t k : {1200, 2400, 4800, 9600}) {
    const long D = floor_k_pow_03(k);
    auto f = faber_poly(k, decompose_weight(k).ell - D);
    const double dev = faber_ratio_deviation(f);
    below = below && dev < kFaberDeviationLimit;
    decreasing = decreasing && dev < prev;
    prev = dev;
    d += "k=" + std::to_string(k) + " D=" + std::to_string(D) + " dev " + f6(dev) + "; ";
  }
  d += std::string("below 0.1: ") + (below ? "yes" : "no") + ", strictly decreasing: " + (decreasing ? "yes" : "no");
  return {below && decreasing, d};
}

Outcome c8(State& s) {
  auto S = szego_curve(kCurveSamples);
  const double d40 = hausdorff(szego_rescaled_roots(40), S).distance;
  const double d80 = hausdorff(szego_rescaled_roots(80), S).distance;
  bool ok = d40 < kSzegoLimit && d80 < d40;
  std::string d = "E_40 " + f6(d40) + " (< 0.15), E_80 " + f6(d80) + "; delta 0.98:";
  double prev = 1e300;
  bool decreasing = true;
  for (std::int64_t k : {2400, 4800, 9600}) {
    const auto ell = decompose_weight(k).ell;
    const auto m = static_cast<std::int64_t>(std::llround(kMillerDelta * static_cast<double>(ell)));
    auto zs = zeros_of_miller(k, m);
    for (const auto& z : zs.zeros) s.record_zero(k, z.tau.im.to_double());
    const double dist = miller_szego_distance(zs, kCurveSamples).distance;
    decreasing = decreasing && dist < prev;
    prev = dist;
    d += " k=" + std::to_string(k) + " D=" + std::to_string(zs.D) + " " + f6(dist);
  }
  d += decreasing ? " (decreasing)" : " (not decreasing)";
  return {ok && decreasing, d};
}

Outcome c9(State&) {
  auto grid = arc_grid(kCosGrid);
  const double e1 = cos_approx_error(2400, 0, grid).max_error;
  const double e2 = cos_approx_error(4800, 0, grid).max_error;
  char b[96];
  std::snprintf(b, sizeof b, "k=2400 %.3e (< 0.5), k=4800 %.3e", e1, e2);
  return {e1 < kCosLimit && e2 < e1, b};
}

Outcome c10(State& s) {
  if (s.im_zeros == 0) return {false, "no zeros recorded (criteria 6 and 8 did not run)"};
  const double c = std::exp(2 * M_PI) / 1728.0;
  const bool arc_ok = 1.0 <= 2 * std::log(12.0) / (1 - c) + kImSlack;
  return {s.max_im_ratio_excess <= 0 && arc_ok,
          std::to_string(s.im_zeros) + " zeros located, empirical max Im tau " + f6(s.max_im) + " (k=" +
              std::to_string(s.im_worst_k) + "), smallest margin to 2 log k/(1-c) + 10 is " +
              f6(-s.max_im_ratio_excess) + "; " + std::to_string(s.arc_zeros) + " arc zeros from exact counts (Im <= 1)"};
}

Outcome c11(State& s) {
  ScanRequest req;
  req.ks = {18000, -12000};
  req.jobs = std::min(s.jobs, 2);
  req.cache_dir = (std::filesystem::path(s.out_dir) / "scan_cache").string();
  auto rows = run_scan(req);
  auto show = [](const ScanRow& r) {
    auto o = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("none"); };
    return "k=" + std::to_string(r.k) + " (" + o(r.min_m_not_all) + ", " + o(r.min_m_none) + ")";
  };
  bool ok = rows[0].min_m_not_all == 936 && rows[0].min_m_none == 1433 && rows[1].min_m_not_all == -1154 &&
            rows[1].min_m_none == -1090 && rows[0].error.empty() && rows[1].error.empty();
  return {ok, show(rows[0]) + " ref (936, 1433); " + show(rows[1]) + " ref (-1154, -1090)"};
}

Outcome c12(State& s) {
  struct Task {
    std::int64_t k, m;
  };
  std::vector<Task> tasks;
  for (long ell = -kOracleEll; ell <= kOracleEll; ++ell) {
    for (int kp : {0, 4, 6, 8, 10, 14}) {
      const std::int64_t k = 12 * ell + kp;
      if (k == 2) continue;
      for (long D = 0; D <= kOracleDegree; ++D) tasks.push_back({k, ell - D});
    }
  }
  std::atomic<long> bad{0};
  parallel_for(tasks.size(), s.jobs, [&](size_t i) {
    if (!(faber_poly(tasks[i].k, tasks[i].m) == faber_via_reduction(tasks[i].k, tasks[i].m))) ++bad;
  });
  return {bad == 0, std::to_string(tasks.size()) + " (k, m) pairs with |l| <= 30, 0 <= D <= 30, " +
                        std::to_string(bad.load()) + " mismatches"};
}

Outcome c13(State& s) {
  if (!s.holo || !s.weak) return {false, "grid searches of criteria 1 and 2 did not run"};
  const std::string text = thresholds_summary(*s.holo, *s.weak);
  std::filesystem::create_directories(s.out_dir);
  const auto path = (std::filesystem::path(s.out_dir) / "thresholds_summary.txt").string();
  std::ofstream(path) << text;
  bool ok = text.find(proportion_convention()) != std::string::npos && text.find("max(0, ...)") != std::string::npos;
  return {ok, "convention stated in " + path};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  bool long_running = false;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<int> only;
  std::string out_dir = "acceptance_artifacts";
  app.add_flag("--long-running", long_running, "also run criterion 11 (hours)");
  app.add_option("--jobs", jobs)->check(CLI::Range(1, 1024));
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  app.add_option("--out-dir", out_dir);
  CLI11_PARSE(app, argc, argv);

  State s;
  s.jobs = jobs;
  s.out_dir = out_dir;
  const std::vector<std::pair<int, Outcome (*)(State&)>> criteria{
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7},
      {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}};
  const std::set<int> selected(only.begin(), only.end());
  int failed = 0;
  for (auto [id, fn] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    if (id == 11 && !long_running) {
      std::printf("criterion 11: SKIP  long-running tier, rerun with --long-running\n");
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn(s);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
