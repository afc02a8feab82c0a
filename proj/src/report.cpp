#include "mfz/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mfz/cm.hpp"
#include "mfz/miller.hpp"
#include "mfz/roots.hpp"
#include "mfz/szego.hpp"

namespace mfz {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string write_file(const std::filesystem::path& dir, const std::string& name, const std::string& body,
                       std::vector<std::string>& written) {
  auto p = (dir / name).string();
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + p);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + p);
  written.push_back(p);
  return p;
}

std::string delta_tag(double d) { return fmt("%.4f", d); }

}  // namespace

ReportKind parse_report_kind(const std::string& s) {
  if (s == "thresholds") return ReportKind::Thresholds;
  if (s == "curves") return ReportKind::Curves;
  if (s == "zeros") return ReportKind::Zeros;
  if (s == "cm") return ReportKind::CM;
  if (s == "szego-convergence") return ReportKind::SzegoConvergence;
  throw std::invalid_argument("unknown report kind: " + s);
}

std::string report_kind_name(ReportKind k) {
  switch (k) {
    case ReportKind::Thresholds: return "thresholds";
    case ReportKind::Curves: return "curves";
    case ReportKind::Zeros: return "zeros";
    case ReportKind::CM: return "cm";
    case ReportKind::SzegoConvergence: return "szego-convergence";
  }
  return "?";
}

std::string format_comparison(const ComparisonLine& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-34s %12.6f  ref %10.4f  tol %-8g %s", c.name.c_str(), c.value, c.reference,
                c.tolerance, c.pass ? "PASS" : "FAIL");
  std::string s = buf;
  if (!c.note.empty()) s += "  (" + c.note + ")";
  return s;
}

std::string proportion_convention() {
  return "P(delta) convention: implemented as max(0, ...) clamped to [0, 1]. The min(0, ...) variant "
         "is never positive and is not used.";
}

bool matches_prefix(double value, const std::string& prefix) { return fmt("%.12f", value).rfind(prefix, 0) == 0; }

std::string thresholds_summary(const ArcBoundTable& h, const ArcBoundTable& w) {
  std::ostringstream o;
  o << "Arc-bound thresholds\n";
  o << "grid: " << h.options.N << " intervals, B step " << h.options.bstep << ", " << h.options.prec
    << "-bit enclosures; weak pairing: "
    << (w.options.weak_pairing == WeakPairing::SameEndpoint ? "same endpoint" : "printed") << "\n";
  o << proportion_convention() << "\n\n";
  auto line = [&](const std::string& name, double v, double ref, double tol) {
    ComparisonLine c{name, v, ref, tol, std::fabs(v - ref) <= tol, ""};
    o << format_comparison(c) << "\n";
  };
  line("holomorphic delta_cutoff_all", h.delta_cutoff_all, 0.6194, 0.0005);
  line("holomorphic P(delta) = 0 from", h.delta_cutoff_none, 0.9546, 0.001);
  line("weak delta_cutoff_all", w.delta_cutoff_all, 1.1598, 0.002);
  line("weak delta_cutoff_none", w.delta_cutoff_none, 1.1026, 0.002);
  o << "\nCutoff constants (closed forms, first 4 decimals)\n";
  auto cs = cutoffs(128);
  struct Row {
    const char* name;
    const Real* v;
    const char* prefix;
  } rows[] = {{"delta_A+", &cs.A_plus, "0.6265"},
              {"delta_S+", &cs.S_plus, "0.9551"},
              {"delta_S-", &cs.S_minus, "1.1040"},
              {"delta_A-", &cs.A_minus, "1.1609"}};
  for (const auto& r : rows) {
    double v = r.v->to_double();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-34s %.10f  ref %s  %s\n", r.name, v, r.prefix,
                  matches_prefix(v, r.prefix) ? "PASS" : "FAIL");
    o << buf;
  }
  return o.str();
}

std::vector<std::string> emit_report(ReportKind kind, const ReportParams& p, const std::string& dir_s,
                                     std::string* summary) {
  std::filesystem::path dir(dir_s);
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  std::ostringstream sum;
  RootOptions ropt;
  ropt.tol = p.tolerance;

  switch (kind) {
    case ReportKind::Thresholds: {
      GridOptions g;
      g.N = p.intervals;
      g.bstep = p.bstep;
      g.prec = p.precision;
      g.jobs = p.jobs;
      auto h = grid_search(ArcMode::Holomorphic, g);
      auto w = grid_search(ArcMode::Weak, g);
      write_file(dir, "arcbound_holomorphic.csv", h.csv(), written);
      write_file(dir, "arcbound_holomorphic.json", h.json(), written);
      write_file(dir, "arcbound_weak.csv", w.csv(), written);
      write_file(dir, "arcbound_weak.json", w.json(), written);
      sum << thresholds_summary(h, w);
      break;
    }
    case ReportKind::Curves: {
      write_file(dir, "szego.csv", szego_curve(p.samples, p.precision).csv(), written);
      write_file(dir, "log_szego_plus.csv", log_szego_curve(+1, p.samples, p.precision).csv(), written);
      write_file(dir, "log_szego_minus.csv", log_szego_curve(-1, p.samples, p.precision).csv(), written);
      sum << "Curves (" << p.samples << " base samples)\n";
      for (double d : p.deltas) {
        auto a = s_delta_curve(d, p.samples, Construction::Asymptotic, p.precision);
        write_file(dir, "s_delta_" + delta_tag(d) + "_asymptotic.csv", a.csv(), written);
        if (std::fabs(std::log(std::fabs(1 - d))) <= kExactConstructionLimit) {
          auto e = s_delta_curve(d, p.samples, Construction::Exact, p.precision);
          write_file(dir, "s_delta_" + delta_tag(d) + "_exact.csv", e.csv(), written);
          sum << "delta " << delta_tag(d) << ": exact vs asymptotic curve distance "
              << fmt("%.6f", curve_distance(e, a)) << "\n";
        }
        write_file(dir, "hull_" + delta_tag(d) + ".csv", c_delta_hull(d, p.samples, p.precision).csv(), written);
        if (auto x = hull_transition_x(d, p.precision)) sum << "delta " << delta_tag(d) << ": hull transition at x = " << fmt("%.6f", *x) << "\n";
      }
      break;
    }
    case ReportKind::Zeros: {
      auto zs = zeros_of_miller(p.k, p.m, ropt);
      std::string tag = std::to_string(p.k) + "_" + std::to_string(p.m);
      write_file(dir, "zeros_" + tag + ".csv", zeroset_csv(zs), written);
      write_file(dir, "zeros_" + tag + ".json", zeroset_json(zs), written);
      sum << "Zeros of g_{" << p.k << "," << p.m << "}: D = " << zs.D << ", on arc " << zs.on_arc << ", off arc "
          << zs.off_arc << ", elliptic " << zs.elliptic << " (exact arc count " << zs.exact_arc_count << ")\n";
      break;
    }
    case ReportKind::CM: {
      auto rows = d1_classification(false);
      write_file(dir, "d1_classification.json", d1_json(rows), written);
      write_file(dir, "d1_classification_weak.json", d1_json(d1_classification(true)), written);
      sum << "D = 1 classification: " << rows.size() << " holomorphic rows\n";
      nlohmann::ordered_json hcp = nlohmann::ordered_json::array();
      for (long d : class_number_one()) {
        auto H = hilbert_class_poly(d);
        nlohmann::ordered_json o;
        o["disc"] = -d;
        o["h"] = H.h;
        o["poly"] = H.poly.to_string();
        o["precision"] = H.precision;
        hcp.push_back(o);
      }
      write_file(dir, "hilbert_class_polys.json", hcp.dump(2) + "\n", written);
      nlohmann::ordered_json screens = nlohmann::ordered_json::array();
      for (long D : p.screen_degrees) {
        for (int kp : {0, 4, 6, 8, 10, 14}) {
          auto r = modp_screen(kp, D);
          screens.push_back(nlohmann::ordered_json::parse(screen_json(r)));
          sum << "screen k'=" << kp << " D=" << D << ": " << screen_status_name(r.status);
          if (r.status == ScreenStatus::Witnesses) sum << " (p=" << r.p << ", q=" << r.q << ")";
          sum << "\n";
        }
      }
      write_file(dir, "modp_screens.json", screens.dump(2) + "\n", written);
      break;
    }
    case ReportKind::SzegoConvergence: {
      auto S = szego_curve(p.samples, p.precision);
      std::ostringstream csv;
      csv << "D,hausdorff,resolution\n";
      sum << "Truncated exponential zeros 1/(D x) against S\n";
      for (long D : p.szego_degrees) {
        auto dist = hausdorff(szego_rescaled_roots(D, ropt), S);
        csv << D << ',' << fmt("%.17g", dist.distance) << ',' << fmt("%.17g", dist.resolution) << '\n';
        sum << "D=" << D << ": " << fmt("%.6f", dist.distance) << "\n";
      }
      write_file(dir, "szego_convergence.csv", csv.str(), written);
      std::ostringstream mcsv;
      mcsv << "k,m,D,construction,distance,resolution\n";
      sum << "Miller zeros against S_delta, delta = " << p.delta_miller << "\n";
      for (auto k : p.miller_ks) {
        const auto ell = decompose_weight(k).ell;
        const auto m = static_cast<std::int64_t>(std::llround(p.delta_miller * static_cast<double>(ell)));
        auto zs = zeros_of_miller(k, m, ropt);
        for (auto c : {Construction::Exact, Construction::Asymptotic}) {
          auto dist = miller_szego_distance(zs, p.samples, c);
          mcsv << k << ',' << m << ',' << zs.D << ',' << construction_name(c) << ',' << fmt("%.17g", dist.distance)
               << ',' << fmt("%.17g", dist.resolution) << '\n';
          sum << "k=" << k << " m=" << m << " D=" << zs.D << " " << construction_name(c) << ": "
              << fmt("%.6f", dist.distance) << "\n";
        }
      }
      write_file(dir, "miller_szego.csv", mcsv.str(), written);
      break;
    }
  }
  write_file(dir, report_kind_name(kind) + "_summary.txt", sum.str(), written);
  if (summary) *summary = sum.str();
  return written;
}

}  // namespace mfz
