// Command-line front end. Every subcommand writes to stdout unless --out is
// given; errors go to stderr with exit status 1.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mfz/arcbound.hpp"
#include "mfz/cm.hpp"
#include "mfz/miller.hpp"
#include "mfz/qseries.hpp"
#include "mfz/report.hpp"
#include "mfz/roots.hpp"
#include "mfz/scan.hpp"
#include "mfz/szego.hpp"

using namespace mfz;

namespace {

// Scans whose weights exceed this |l| take hours and need --long-running.
constexpr std::int64_t kShortScanEll = 300;

struct Globals {
  int precision_bits = 128;
  double tolerance = 1e-30;
  int jobs = 1;
  std::string cache_dir;
  bool long_running = false;
};

void emit(const std::string& out, const std::string& body) {
  if (out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << body;
}

// "a:b" or "a:b:step" expands to the even weights in range; otherwise a comma list.
std::vector<std::int64_t> parse_ks(const std::string& s) {
  std::vector<std::int64_t> ks;
  if (s.find(':') != std::string::npos) {
    std::vector<std::int64_t> v;
    std::stringstream in(s);
    for (std::string t; std::getline(in, t, ':');) v.push_back(std::stoll(t));
    if (v.size() < 2 || v.size() > 3) throw std::invalid_argument("k range is LO:HI[:STEP]");
    std::int64_t step = v.size() == 3 ? v[2] : 2;
    if (step <= 0) throw std::invalid_argument("k step must be positive");
    for (std::int64_t k = v[0]; k <= v[1]; k += step) {
      if (k % 2 == 0 && k != 2) ks.push_back(k);
    }
  } else {
    std::stringstream in(s);
    for (std::string t; std::getline(in, t, ',');) ks.push_back(std::stoll(t));
  }
  return ks;
}

Construction parse_construction(const std::string& s) {
  if (s == "exact") return Construction::Exact;
  if (s == "asymptotic") return Construction::Asymptotic;
  throw std::invalid_argument("construction is exact or asymptotic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Miller basis modular forms: Faber polynomials, zeros, arc bounds, Szego curves, CM zeros"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--precision-bits", g.precision_bits, "working precision in bits")->check(CLI::Range(53, 1 << 20));
  app.add_option("--tolerance", g.tolerance, "root inclusion radius target")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--cache-dir", g.cache_dir, "cache directory for Faber polynomials and scan counts");
  app.add_flag("--long-running", g.long_running, "allow runs documented to take hours");

  // series
  auto* series = app.add_subcommand("series", "exact q-expansion of a named series");
  std::string s_name = "j", s_out;
  long s_order = 10;
  int s_kprime = 0;
  series->add_option("name", s_name, "E4 E6 E8 E10 E14 Delta j InvDelta InvE")->required();
  series->add_option("--order", s_order, "truncation order (exclusive)")->check(CLI::Range(1L, 1000000L));
  series->add_option("--kprime", s_kprime, "k' for InvE");
  series->add_option("--out", s_out, "write a cache-format file instead of printing");

  // faber
  auto* faber = app.add_subcommand("faber", "Faber polynomial of g_{k,m}");
  std::int64_t f_k = 0, f_m = 0;
  bool f_oracle = false, f_json = false;
  std::string f_out;
  faber->add_option("k", f_k)->required();
  faber->add_option("m", f_m)->required();
  faber->add_flag("--oracle", f_oracle, "also run the reduction oracle and compare");
  faber->add_flag("--json", f_json, "JSON output");
  faber->add_option("--out", f_out);

  // zeros
  auto* zeros = app.add_subcommand("zeros", "zeros of g_{k,m} in the fundamental domain");
  std::int64_t z_k = 0, z_m = 0;
  std::string z_format = "csv", z_out;
  zeros->add_option("k", z_k)->required();
  zeros->add_option("m", z_m)->required();
  zeros->add_option("--format", z_format)->check(CLI::IsMember({"csv", "json"}));
  zeros->add_option("--out", z_out);

  // scan
  auto* scan = app.add_subcommand("scan", "arc-membership thresholds over m");
  std::string sc_k, sc_m = "all", sc_out;
  scan->add_option("--k", sc_k, "LO:HI[:STEP] or a comma list")->required();
  scan->add_option("--m", sc_m, "all, range:LO:HI or delta:LO:HI");
  scan->add_option("--out", sc_out);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "interval grid search for the arc bounds");
  std::string b_mode = "holomorphic", b_out;
  long b_intervals = 1000;
  double b_bstep = 0.0005;
  int b_precision = 0;
  bounds->add_option("--mode", b_mode)->check(CLI::IsMember({"holomorphic", "weak"}));
  bounds->add_option("--intervals", b_intervals)->check(CLI::Range(1L, 1000000L));
  bounds->add_option("--bstep", b_bstep)->check(CLI::PositiveNumber);
  bounds->add_option("--precision", b_precision, "enclosure precision (defaults to --precision-bits)");
  bounds->add_option("--out", b_out, "path prefix for .csv and .json");

  // szego
  auto* szego = app.add_subcommand("szego", "Szego-type curves as CSV");
  std::string sz_curve = "szego", sz_construction, sz_out;
  double sz_delta = 0.98;
  int sz_sign = 1, sz_samples = 800;
  szego->add_option("curve", sz_curve)->check(CLI::IsMember({"szego", "log", "sdelta", "hull", "expzeros"}));
  szego->add_option("--delta", sz_delta);
  szego->add_option("--sign", sz_sign)->check(CLI::IsMember({-1, 1}));
  szego->add_option("--samples", sz_samples)->check(CLI::Range(8, 1000000));
  szego->add_option("--construction", sz_construction)->check(CLI::IsMember({"exact", "asymptotic"}));
  long sz_degree = 40;
  szego->add_option("--degree", sz_degree, "D for expzeros")->check(CLI::Range(1L, 5000L));
  szego->add_option("--out", sz_out);

  // cm
  auto* cm = app.add_subcommand("cm", "CM zeros and class polynomials");
  cm->require_subcommand(1);
  auto* cm_classify = cm->add_subcommand("classify", "D = 1 classification as JSON");
  bool cm_weak = false;
  cm_classify->add_flag("--weak", cm_weak, "include l <= 0 solutions");
  auto* cm_hcp = cm->add_subcommand("hcp", "Hilbert class polynomial of -d");
  long cm_d = 0;
  cm_hcp->add_option("d", cm_d)->required();
  auto* cm_check = cm->add_subcommand("check", "divisibility of Faber(k, m) by H_{-d}");
  std::int64_t cm_k = 0, cm_m = 0;
  cm_check->add_option("k", cm_k)->required();
  cm_check->add_option("m", cm_m)->required();
  cm_check->add_option("d", cm_d)->required();
  auto* cm_screen = cm->add_subcommand("screen", "mod-p factor-pattern screen");
  int cm_kprime = 0, cm_budget = 1000;
  long cm_D = 2;
  std::int64_t cm_ell_eval = 0;
  cm_screen->add_option("kprime", cm_kprime)->required();
  cm_screen->add_option("D", cm_D)->required();
  cm_screen->add_option("--ell-eval", cm_ell_eval);
  cm_screen->add_option("--budget", cm_budget)->check(CLI::Range(1, 1000000));

  // report
  auto* report = app.add_subcommand("report", "write report artifacts and a summary");
  std::string r_kind, r_dir = "report";
  ReportParams rp;
  report->add_option("kind", r_kind)->required()->check(
      CLI::IsMember({"thresholds", "curves", "zeros", "cm", "szego-convergence"}));
  report->add_option("--dir", r_dir, "output directory");
  report->add_option("--intervals", rp.intervals);
  report->add_option("--bstep", rp.bstep);
  report->add_option("--k", rp.k);
  report->add_option("--m", rp.m);
  report->add_option("--deltas", rp.deltas)->delimiter(',');
  report->add_option("--samples", rp.samples);
  report->add_option("--degrees", rp.szego_degrees)->delimiter(',');
  report->add_option("--miller-ks", rp.miller_ks)->delimiter(',');
  report->add_option("--miller-delta", rp.delta_miller);
  report->add_option("--screen-degrees", rp.screen_degrees)->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    RootOptions ropt;
    ropt.tol = g.tolerance;
    const auto prec = static_cast<mpfr_prec_t>(g.precision_bits);

    if (*series) {
      auto name = parse_series_name(s_name);
      auto s = series_basic(name, s_order, s_kprime);
      if (!s_out.empty()) {
        write_series_file(s_out, series_name_string(name, s_kprime), s);
      } else {
        for (long n = s.lead(); n < s.order(); ++n) std::cout << n << ' ' << s.at(n).get_str() << '\n';
      }
    } else if (*faber) {
      auto f = g.cache_dir.empty() ? faber_poly(f_k, f_m) : FaberCache(g.cache_dir + "/faber").get(f_k, f_m);
      std::ostringstream o;
      if (f_json) {
        std::vector<std::string> ys;
        for (const auto& y : f.y) ys.push_back(y.get_str());
        o << "{\"k\": " << f.k << ", \"m\": " << f.m << ", \"D\": " << f.D << ", \"y\": [";
        for (size_t i = 0; i < ys.size(); ++i) o << (i ? ", " : "") << '"' << ys[i] << '"';
        o << "]}\n";
      } else {
        o << f.poly().to_string() << '\n';
      }
      emit(f_out, o.str());
      if (f_oracle) {
        bool same = faber_via_reduction(f_k, f_m) == f;
        std::cerr << "reduction oracle: " << (same ? "identical" : "MISMATCH") << '\n';
        if (!same) return 1;
      }
    } else if (*zeros) {
      auto zs = zeros_of_miller(z_k, z_m, ropt);
      emit(z_out, z_format == "json" ? zeroset_json(zs) : zeroset_csv(zs));
    } else if (*scan) {
      ScanRequest req;
      req.ks = parse_ks(sc_k);
      req.m = parse_m_selector(sc_m);
      req.tolerance = g.tolerance;
      req.jobs = g.jobs;
      req.cache_dir = g.cache_dir;
      for (auto k : req.ks) {
        auto ell = decompose_weight(k).ell;
        if ((ell > kShortScanEll || ell < -kShortScanEll) && !g.long_running) {
          std::cerr << "k = " << k << " needs --long-running (expected runtime: hours)\n";
          return 1;
        }
      }
      auto rows = run_scan(req);
      emit(sc_out, scan_csv(rows));
    } else if (*bounds) {
      GridOptions opt;
      opt.N = b_intervals;
      opt.bstep = b_bstep;
      opt.prec = b_precision > 0 ? b_precision : prec;
      opt.jobs = g.jobs;
      auto t = grid_search(b_mode == "weak" ? ArcMode::Weak : ArcMode::Holomorphic, opt);
      if (!b_out.empty()) {
        emit(b_out + ".csv", t.csv());
        emit(b_out + ".json", t.json());
      }
      std::printf("mode %s, %ld intervals, bstep %g\n", b_mode.c_str(), opt.N, opt.bstep);
      std::printf("delta_cutoff_all  %.6f\n", t.delta_cutoff_all);
      std::printf("delta_cutoff_none %.6f\n", t.delta_cutoff_none);
      std::printf("%s\n", proportion_convention().c_str());
    } else if (*szego) {
      std::string body;
      if (sz_curve == "szego") {
        body = szego_curve(sz_samples, prec).csv();
      } else if (sz_curve == "log") {
        body = log_szego_curve(sz_sign, sz_samples, prec).csv();
      } else if (sz_curve == "sdelta") {
        std::optional<Construction> c;
        if (!sz_construction.empty()) c = parse_construction(sz_construction);
        body = s_delta_curve(sz_delta, sz_samples, c, prec).csv();
      } else if (sz_curve == "hull") {
        body = c_delta_hull(sz_delta, sz_samples, prec).csv();
      } else {
        std::ostringstream o;
        o << "# rescaled zeros 1/(D x) of E_" << sz_degree << "\nx,y\n";
        char buf[96];
        for (auto z : szego_rescaled_roots(sz_degree, ropt)) {
          std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
          o << buf;
        }
        body = o.str();
      }
      emit(sz_out, body);
    } else if (*cm) {
      if (*cm_classify) {
        std::cout << d1_json(d1_classification(cm_weak));
      } else if (*cm_hcp) {
        auto H = hilbert_class_poly(cm_d);
        std::cout << "h = " << H.h << "\n" << H.poly.to_string() << "\n";
      } else if (*cm_check) {
        auto r = check_cm_zero(cm_k, cm_m, cm_d);
        std::cout << "divisible " << (r.divisible ? "true" : "false") << "\nremainder " << r.remainder.to_string()
                  << "\nresidue_norm " << r.residue_norm << "\n";
      } else if (*cm_screen) {
        std::cout << screen_json(modp_screen(cm_kprime, cm_D, cm_ell_eval, cm_budget));
      }
    } else if (*report) {
      rp.precision = prec;
      rp.jobs = g.jobs;
      rp.tolerance = g.tolerance;
      std::string summary;
      auto files = emit_report(parse_report_kind(r_kind), rp, r_dir, &summary);
      std::cout << summary;
      for (const auto& f : files) std::cerr << "wrote " << f << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
