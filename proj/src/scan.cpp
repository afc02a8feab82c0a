#include "mfz/scan.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mfz/miller.hpp"
#include "mfz/roots.hpp"

namespace mfz {

MSelector parse_m_selector(const std::string& s) {
  MSelector sel;
  if (s == "all") return sel;
  auto parts = [&](const std::string& body) {
    auto c = body.find(':');
    if (c == std::string::npos) throw std::invalid_argument("m selector needs LO:HI: " + s);
    return std::pair<std::string, std::string>(body.substr(0, c), body.substr(c + 1));
  };
  if (s.rfind("range:", 0) == 0) {
    auto [a, b] = parts(s.substr(6));
    sel.kind = MSelector::Range;
    sel.lo = std::stoll(a);
    sel.hi = std::stoll(b);
    if (sel.lo > sel.hi) throw std::invalid_argument("empty m range: " + s);
    return sel;
  }
  if (s.rfind("delta:", 0) == 0) {
    auto [a, b] = parts(s.substr(6));
    sel.kind = MSelector::DeltaWindow;
    sel.delta_lo = std::stod(a);
    sel.delta_hi = std::stod(b);
    if (!(sel.delta_lo <= sel.delta_hi)) throw std::invalid_argument("empty delta window: " + s);
    return sel;
  }
  throw std::invalid_argument("unknown m selector: " + s);
}

std::pair<std::int64_t, std::int64_t> m_search_range(std::int64_t k, const MSelector& sel) {
  const std::int64_t ell = decompose_weight(k).ell;
  std::int64_t lo = 0, hi = ell - 1;
  switch (sel.kind) {
    case MSelector::All:
      lo = ell >= 0 ? 0 : static_cast<std::int64_t>(std::floor(1.3 * static_cast<double>(ell)));
      break;
    case MSelector::Range:
      lo = sel.lo;
      hi = std::min(hi, sel.hi);
      break;
    case MSelector::DeltaWindow: {
      // m = delta l; for l < 0 the window flips.
      double a = sel.delta_lo * static_cast<double>(ell), b = sel.delta_hi * static_cast<double>(ell);
      lo = static_cast<std::int64_t>(std::ceil(std::min(a, b)));
      hi = std::min(hi, static_cast<std::int64_t>(std::floor(std::max(a, b))));
      break;
    }
  }
  return {lo, hi};
}

CountCache::CountCache(std::string dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<long> CountCache::load(std::int64_t k, std::int64_t m) const {
  std::ifstream in(std::filesystem::path(dir_) / ("count_" + std::to_string(k) + "_" + std::to_string(m) + ".txt"));
  long kk, mm, c;
  if (!(in >> kk >> mm >> c) || kk != k || mm != m) return std::nullopt;
  return c;
}

void CountCache::store(std::int64_t k, std::int64_t m, long count) const {
  auto path = std::filesystem::path(dir_) / ("count_" + std::to_string(k) + "_" + std::to_string(m) + ".txt");
  std::ostringstream tag;
  tag << path.string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  {
    std::ofstream out(tag.str());
    out << k << ' ' << m << ' ' << count << '\n';
    if (!out) throw std::runtime_error("write failed: " + tag.str());
  }
  std::filesystem::rename(tag.str(), path);
}

long arc_count(std::int64_t k, std::int64_t m, const CountCache* cache) {
  if (cache) {
    if (auto c = cache->load(k, m)) return *c;
  }
  long c = count_arc_roots(faber_poly(k, m));
  if (cache) cache->store(k, m, c);
  return c;
}

ScanRow scan_weight(std::int64_t k, const MSelector& sel, const CountCache* cache, int jobs) {
  ScanRow row;
  row.k = k;
  row.ell = decompose_weight(k).ell;
  auto [lo, hi] = m_search_range(k, sel);
  // Walk down from m = hi in batches; the first failure of each predicate
  // fixes its threshold, so every m above a threshold is evaluated exactly.
  std::optional<std::int64_t> last_all, last_some;  // largest m with all / some zeros on the arc
  const std::int64_t batch = std::max(1, jobs);
  for (std::int64_t top = hi; top >= lo && !(last_all && last_some); top -= batch) {
    const std::int64_t n = std::min(batch, top - lo + 1);
    std::vector<long> counts(static_cast<size_t>(n), -1);
    std::vector<std::string> errors(static_cast<size_t>(n));
    auto eval = [&](std::int64_t i) {
      try {
        counts[i] = arc_count(k, top - i, cache);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    };
    std::vector<std::thread> pool;
    for (std::int64_t i = 1; i < n; ++i) pool.emplace_back(eval, i);
    eval(0);
    for (auto& t : pool) t.join();
    row.evaluations += n;
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int64_t m = top - i;
      if (!errors[i].empty()) {
        row.error = "m=" + std::to_string(m) + ": " + errors[i];
        return row;
      }
      if (!last_all && counts[i] == row.ell - m) last_all = m;
      if (!last_some && counts[i] > 0) last_some = m;
    }
  }
  // Threshold t: the predicate holds on [t, hi] and fails at t - 1. It is
  // absent when it already fails at hi (D = 1), and lo when it never fails.
  auto threshold = [&](const std::optional<std::int64_t>& last_fail) -> std::optional<std::int64_t> {
    std::int64_t t = last_fail ? *last_fail + 1 : lo;
    if (t > hi) return std::nullopt;
    return t;
  };
  row.min_m_not_all = threshold(last_all);
  row.min_m_none = threshold(last_some);
  if (row.min_m_not_all && row.min_m_none && *row.min_m_none < *row.min_m_not_all) row.error = "row monotonicity violated";
  return row;
}

std::vector<ScanRow> run_scan(const ScanRequest& req) {
  if (req.ks.empty()) throw std::invalid_argument("scan: empty k selection");
  if (!(req.tolerance > 0)) throw std::invalid_argument("scan: tolerance must be positive");
  std::optional<CountCache> cache;
  if (!req.cache_dir.empty()) cache.emplace((std::filesystem::path(req.cache_dir) / "counts").string());
  std::vector<ScanRow> rows(req.ks.size());
  for (size_t i = 0; i < req.ks.size(); ++i) {
    try {
      rows[i] = scan_weight(req.ks[i], req.m, cache ? &*cache : nullptr, req.jobs);
    } catch (const std::exception& e) {
      rows[i].k = req.ks[i];
      rows[i].error = e.what();
    }
  }
  if (!req.out.empty()) {
    std::ofstream out(req.out);
    if (!out) throw std::runtime_error("cannot open " + req.out);
    out << scan_csv(rows);
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream o;
  o << "k,ell,min_m_not_all_on_arc,min_m_no_roots_on_arc,error\n";
  auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& r : rows) {
    std::string err = r.error;
    for (auto& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    o << r.k << ',' << r.ell << ',' << opt(r.min_m_not_all) << ',' << opt(r.min_m_none) << ',' << err << '\n';
  }
  return o.str();
}

}  // namespace mfz
