#include "mfz/arcbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "mfz/miller.hpp"
#include "mfz/modular.hpp"

namespace mfz {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWeakMinB = 0.287;

Interval point(double x, mpfr_prec_t prec) { return Interval::from_double(x, prec); }

Interval infinite(mpfr_prec_t prec) {
  Real inf(std::numeric_limits<double>::infinity(), prec);
  return Interval(inf, inf);
}

// pi * num / den as an enclosure.
Interval pi_times(long num, long den, mpfr_prec_t prec) {
  return Interval::pi(prec) * Interval::from_rational(mpq_class(num, den), prec);
}

Interval two_pi(mpfr_prec_t prec) { return Interval::pi(prec) * 2L; }

double down(const Real& x) { return mpfr_get_d(x.get(), MPFR_RNDD); }
double up(const Real& x) { return mpfr_get_d(x.get(), MPFR_RNDU); }

Interval coset_norm(long c, long d, const Interval& cos_theta) {
  mpfr_prec_t p = cos_theta.precision();
  return Interval(c * c + d * d, p) + cos_theta * (2 * c * d);
}

// Candidate cosets with their B-independent data on [alpha, beta].
struct Candidate {
  ResidueSetEntry e;
  Interval im_low, im_high;  // enclosures of the two ends of e.im_range
  bool edge = false;      // the (1,1) coset
  Interval holo_term;     // R-term of I (infinite when vacuous)
  Interval weak_term;     // R-term of I^w (infinite when unsatisfiable)
};

std::vector<Candidate> candidates(const Interval& alpha, const Interval& beta, double Bmin) {
  const mpfr_prec_t p = std::max(alpha.precision(), beta.precision());
  const Interval ca = cos(alpha), cb = cos(beta), sa = sin(alpha), sb = sin(beta);
  // On the arc |c e^{i theta} + d|^2 >= (c^2 + d^2) / 2 and sin(theta) <= 1.
  const long cmax = static_cast<long>(std::floor(std::sqrt(2.0 / Bmin))) + 1;
  const Interval tp = two_pi(p), one(1L, p);
  std::vector<Candidate> out;
  for (long c = 1; c <= cmax; ++c) {
    for (long d = -cmax; d <= cmax; ++d) {
      if (std::gcd(c, std::labs(d)) != 1 || (c == 1 && d == 0)) continue;
      if (c * c + d * d > 2.0 / Bmin + 1) continue;
      Candidate cand;
      cand.e.c = c;
      cand.e.d = d;
      cand.e.norm_alpha = coset_norm(c, d, ca);
      cand.e.norm_beta = coset_norm(c, d, cb);
      // Im(theta) = sin / norm has derivative of the sign of
      // (c^2 + d^2) cos(theta) + 2cd: a single peak at cos = -2cd / (c^2 + d^2).
      Interval ia = sa / cand.e.norm_alpha, ib = sb / cand.e.norm_beta;
      cand.im_low = min(ia, ib);
      cand.im_high = max(ia, ib);
      const long s2 = c * c + d * d;
      Interval cpeak = Interval::from_rational(mpq_class(-2 * c * d, s2), p);
      if (!(cpeak.hi() < cb.lo()) && !(cpeak.lo() > ca.hi())) {
        Interval speak = sqrt(max(one - sqr(cpeak), Interval(0L, p)));
        Interval dd(std::labs(c * c - d * d), p);
        cand.im_high = max(cand.im_high, speak * Interval(s2, p) / sqr(dd));
      }
      cand.e.im_range = Interval(cand.im_low.lo(), cand.im_high.hi());
      cand.edge = (c == 1 && d == 1);
      // The norm grows in theta iff cd < 0: pick the endpoint that makes each
      // inequality hold on the whole interval.
      const bool pos = c * d >= 0;
      const Interval& n_log_h = pos ? cand.e.norm_beta : cand.e.norm_alpha;
      const Interval& n_den_h = pos ? cand.e.norm_alpha : cand.e.norm_beta;
      Interval den_h = tp * sa * (one - one / n_den_h);
      cand.holo_term = den_h.certainly_positive() ? log(n_log_h) * 6L / den_h : infinite(p);
      const Interval& n_log_w = pos ? cand.e.norm_alpha : cand.e.norm_beta;
      const Interval& n_den_w = pos ? cand.e.norm_beta : cand.e.norm_alpha;
      Interval den_w = tp * sb * (one - one / n_den_w);
      cand.weak_term = den_w.certainly_positive() ? log(n_log_w) * 6L / den_w : infinite(p);
      out.push_back(std::move(cand));
    }
  }
  return out;
}

bool in_R(const Candidate& c, const Interval& B) { return !(c.e.im_range.hi() < B.lo()); }

// Where B sits relative to the Im range of a coset over the interval.
enum class Side { Above, Below, Straddle };
Side side(const Candidate& c, const Interval& B) {
  if (c.e.im_range.hi() < B.lo()) return Side::Above;
  if (B.hi() < c.e.im_range.lo()) return Side::Below;
  return Side::Straddle;
}

Interval min_iv(const Interval& a, const Interval& b) { return min(a, b); }
Interval max_iv(const Interval& a, const Interval& b) { return max(a, b); }

Interval holo_first(const Interval& sa, const Interval& B, const Interval& ld_iB, const Interval& ld_beta) {
  Interval den = two_pi(B.precision()) * (sa - B);
  if (!den.certainly_positive()) throw std::invalid_argument("I_bound needs B < sin(alpha)");
  return (ld_iB - ld_beta) / den;
}

Interval weak_first(const Interval& sb, const Interval& B, const Interval& ld_half, const Interval& ld_end) {
  Interval den = two_pi(B.precision()) * (sb - B);
  if (!den.certainly_positive()) throw std::invalid_argument("Iw_bound needs B < sin(beta)");
  return (ld_half - ld_end) / den;
}

Interval combine_holo(Interval acc, const std::vector<Candidate>& cands, const Interval& B, RPolicy policy) {
  for (const auto& c : cands) {
    if (policy == RPolicy::ExcludeEdge && c.edge) continue;
    if (in_R(c, B)) acc = min_iv(acc, c.holo_term);
  }
  return acc;
}

Interval combine_weak(Interval acc, const std::vector<Candidate>& cands, const Interval& B, RPolicy policy) {
  for (const auto& c : cands) {
    if (policy == RPolicy::ExcludeEdge && c.edge) continue;
    if (in_R(c, B)) acc = max_iv(acc, c.weak_term);
  }
  return acc;
}

// Slack admits the double roundings of pi/2 and 2 pi / 3.
void check_arc_range(const Interval& alpha, const Interval& beta) {
  if (alpha.lo() < kPi / 2 - 1e-12 || beta.hi() > 2 * kPi / 3 + 1e-12)
    throw std::invalid_argument("need pi/2 <= alpha < beta <= 2 pi / 3");
  if (!(alpha.lo() < beta.hi())) throw std::invalid_argument("need alpha < beta");
}

}  // namespace

Interval log_abs_delta(const Interval& x, const Interval& y) {
  const mpfr_prec_t p = std::max(x.precision(), y.precision());
  if (!y.certainly_positive()) throw std::invalid_argument("log_abs_delta needs Im tau > 0");
  const Interval tp = two_pi(p);
  const Interval r = exp(-(tp * y));  // |q|
  const double ylo = down(y.lo());
  // Tail bound: sum_{n>M} |ln|1 - q^n|| <= r^{M+1} / ((1 - r)(1 - r^{M+1})).
  const long M = static_cast<long>(std::ceil((p + 16) * std::log(2.0) / (2 * kPi * ylo))) + 1;
  Interval sum(0L, p);
  Interval rn(1L, p);
  const Interval one(1L, p);
  for (long n = 1; n <= M; ++n) {
    rn *= r;
    Interval c = cos(tp * x * n);
    // |1 - q^n|^2 = 1 - 2 r^n cos(2 pi n x) + r^{2n}.
    sum += log1p(sqr(rn) - rn * c * 2L);
  }
  Interval rM1 = rn * r;
  Interval tail = rM1 / ((one - r) * (one - rM1));
  Interval t(-tail.hi(), tail.hi());
  return -(tp * y) + sum * 12L + t * 24L;
}

Interval abs_delta(const DeltaPoint& pt, mpfr_prec_t prec) {
  switch (pt.kind) {
    case DeltaPoint::Arc: {
      Interval th = point(pt.theta, prec);
      return exp(log_abs_delta(cos(th), sin(th)));
    }
    case DeltaPoint::Vertical:
      return exp(log_abs_delta(point(pt.x, prec), point(pt.B, prec)));
    case DeltaPoint::Imaginary:
      return exp(log_abs_delta(Interval(0L, prec), point(pt.B, prec)));
  }
  throw std::logic_error("abs_delta: bad point kind");
}

std::vector<ResidueSetEntry> enumerate_R(const Interval& alpha, const Interval& beta, const Interval& B) {
  check_arc_range(alpha, beta);
  if (!B.certainly_positive()) throw std::invalid_argument("enumerate_R needs B > 0");
  std::vector<ResidueSetEntry> out;
  for (auto& c : candidates(alpha, beta, down(B.lo())))
    if (in_R(c, B)) out.push_back(std::move(c.e));
  return out;
}

std::vector<ResidueSetEntry> enumerate_R(double alpha, double beta, double B, mpfr_prec_t prec) {
  return enumerate_R(point(alpha, prec), point(beta, prec), point(B, prec));
}

Interval I_bound(const Interval& alpha, const Interval& beta, const Interval& B, RPolicy policy) {
  check_arc_range(alpha, beta);
  const mpfr_prec_t p = std::max({alpha.precision(), beta.precision(), B.precision()});
  if (!B.certainly_positive()) throw std::invalid_argument("I_bound needs B > 0");
  Interval first = holo_first(sin(alpha), B, log_abs_delta(Interval(0L, p), B),
                              log_abs_delta(cos(beta), sin(beta)));
  return combine_holo(first, candidates(alpha, beta, down(B.lo())), B, policy);
}

Interval I_bound(double alpha, double beta, double B, mpfr_prec_t prec, RPolicy policy) {
  return I_bound(point(alpha, prec), point(beta, prec), point(B, prec), policy);
}

Interval Iw_bound(const Interval& alpha, const Interval& beta, const Interval& B, WeakPairing pairing,
                  RPolicy policy) {
  check_arc_range(alpha, beta);
  const mpfr_prec_t p = std::max({alpha.precision(), beta.precision(), B.precision()});
  if (!(B.lo() > kWeakMinB)) throw std::invalid_argument("Iw_bound needs B > 0.287");
  if (!(B.hi() < sin(alpha).lo())) throw std::invalid_argument("Iw_bound needs B < sin(alpha)");
  const Interval& end = pairing == WeakPairing::Printed ? alpha : beta;
  Interval first = weak_first(sin(beta), B, log_abs_delta(Interval::from_rational(mpq_class(1, 2), p), B),
                              log_abs_delta(cos(end), sin(end)));
  return combine_weak(first, candidates(alpha, beta, down(B.lo())), B, policy);
}

Interval Iw_bound(double alpha, double beta, double B, mpfr_prec_t prec, WeakPairing pairing, RPolicy policy) {
  return Iw_bound(point(alpha, prec), point(beta, prec), point(B, prec), pairing, policy);
}

// ---------------------------------------------------------------------------
// Grid search

namespace {

struct IntervalContext {
  Interval alpha, beta, sa, sb;
  Interval ld_alpha, ld_beta;
  std::vector<Candidate> cands;
};

// The B lattice n * bstep (doubles), with ln|Delta| on the matching line.
struct Lattice {
  long n0 = 0;
  std::vector<double> B;
  std::vector<Interval> ld;
};

template <class F>
void parallel_for(long n, int jobs, F&& f) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<long>(n, 1))));
  if (jobs == 1) {
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (long i = t; i < n; i += jobs) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Interval line_log_delta(ArcMode mode, const Interval& B) {
  const mpfr_prec_t p = B.precision();
  Interval x = mode == ArcMode::Weak ? Interval::from_rational(mpq_class(1, 2), p) : Interval(0L, p);
  return log_abs_delta(x, B);
}

// Admissibility of B on an interval: no coset image crosses the line Im = B.
// Returns false when B lies inside some Im range; sets nudged when B only
// touched a range endpoint and was moved up by one ulp.
bool admissible(const IntervalContext& ctx, RPolicy policy, double& B, bool& nudged, mpfr_prec_t p) {
  nudged = false;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Interval Bi = point(B, p);
    bool straddle = false, touch = false;
    for (const auto& c : ctx.cands) {
      if (policy == RPolicy::ExcludeEdge && c.edge) continue;
      if (side(c, Bi) != Side::Straddle) continue;
      straddle = true;
      if (c.im_low.contains(Bi.lo()) || c.im_high.contains(Bi.lo())) touch = true;
    }
    if (!straddle) return true;
    if (!touch || attempt == 1) return false;
    B = std::nextafter(B, 2.0);
    nudged = true;
  }
  return false;
}

ArcIntervalRecord search_interval(ArcMode mode, const GridOptions& opt, const IntervalContext& ctx,
                                  const Lattice& lat, long r) {
  const mpfr_prec_t p = opt.prec;
  const RPolicy policy = RPolicy::ExcludeEdge;
  ArcIntervalRecord rec;
  rec.r = r;
  rec.alpha = ctx.alpha.mid().to_double();
  rec.beta = ctx.beta.mid().to_double();
  // Open B range: holomorphic above the (1,-1) image height cot(alpha/2)/2,
  // weak above the Delta-maximum threshold; both below sin(alpha).
  double lower;
  if (mode == ArcMode::Holomorphic) {
    Interval half_alpha = ctx.alpha / Interval(2L, p);
    lower = up((cos(half_alpha) / sin(half_alpha) / Interval(2L, p)).hi());
  } else {
    lower = kWeakMinB;
  }
  // The weak first term divides by sin(beta) - B.
  const double upper = down(mode == ArcMode::Holomorphic ? ctx.sa.lo() : ctx.sb.lo());
  bool found = false;
  Real best(p);
  for (size_t i = 0; i < lat.B.size(); ++i) {
    double B = lat.B[i];
    if (!(B > lower) || !(B < upper)) continue;
    bool nudged = false;
    if (!admissible(ctx, policy, B, nudged, p)) continue;
    Interval Bi = point(B, p);
    Interval ld = nudged ? line_log_delta(mode, Bi) : lat.ld[i];
    Interval v(p);
    if (mode == ArcMode::Holomorphic) {
      v = combine_holo(holo_first(ctx.sa, Bi, ld, ctx.ld_beta), ctx.cands, Bi, policy);
      // Certified lower bound; keep the largest.
      if (!found || v.lo() > best) {
        best = v.lo();
        rec.B = B;
        rec.perturbed = nudged;
        found = true;
      }
    } else {
      const Interval& ld_end = opt.weak_pairing == WeakPairing::Printed ? ctx.ld_alpha : ctx.ld_beta;
      v = combine_weak(weak_first(ctx.sb, Bi, ld, ld_end), ctx.cands, Bi, policy);
      // Certified upper bound; keep the smallest.
      if (!found || v.hi() < best) {
        best = v.hi();
        rec.B = B;
        rec.perturbed = nudged;
        found = true;
      }
    }
  }
  if (!found) throw std::runtime_error("grid_search: no admissible B on interval " + std::to_string(r));
  rec.delta = mode == ArcMode::Holomorphic ? down(best) : up(best);
  return rec;
}

}  // namespace

ArcBoundTable grid_search(ArcMode mode, const GridOptions& opt) {
  if (opt.N < 1) throw std::invalid_argument("grid_search needs N >= 1");
  if (!(opt.bstep > 0)) throw std::invalid_argument("grid_search needs bstep > 0");
  const mpfr_prec_t p = opt.prec;
  const long N = opt.N;

  // Arc endpoints pi/2 + pi r / (6N) and ln|Delta| there.
  std::vector<Interval> ends(N + 1), ld_ends(N + 1);
  parallel_for(N + 1, opt.jobs, [&](long r) {
    ends[r] = pi_times(3 * N + r, 6 * N, p);
    ld_ends[r] = log_abs_delta(cos(ends[r]), sin(ends[r]));
  });

  // Global lattice covering (0.28, 1).
  Lattice lat;
  lat.n0 = static_cast<long>(std::floor(0.28 / opt.bstep));
  const long n1 = static_cast<long>(std::ceil(1.0 / opt.bstep));
  for (long n = lat.n0; n <= n1; ++n) lat.B.push_back(static_cast<double>(n) * opt.bstep);
  lat.ld.resize(lat.B.size());
  parallel_for(static_cast<long>(lat.B.size()), opt.jobs,
               [&](long i) { lat.ld[i] = line_log_delta(mode, point(lat.B[i], p)); });

  ArcBoundTable t;
  t.mode = mode;
  t.options = opt;
  t.rows.resize(N);
  parallel_for(N, opt.jobs, [&](long r) {
    IntervalContext ctx;
    ctx.alpha = ends[r];
    ctx.beta = ends[r + 1];
    ctx.sa = sin(ctx.alpha);
    ctx.sb = sin(ctx.beta);
    ctx.ld_alpha = ld_ends[r];
    ctx.ld_beta = ld_ends[r + 1];
    ctx.cands = candidates(ctx.alpha, ctx.beta, 0.28);
    t.rows[r] = search_interval(mode, opt, ctx, lat, r);
  });

  if (mode == ArcMode::Holomorphic) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows) mn = std::min(mn, row.delta);
    t.delta_cutoff_all = mn;
    t.delta_cutoff_none = std::min(t.rows.front().delta, 3.0 / kPi);
  } else {
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows) mx = std::max(mx, row.delta);
    t.delta_cutoff_all = mx;
    t.delta_cutoff_none = std::max(2.0 * std::sqrt(3.0) / kPi, t.rows.back().delta);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Piecewise functions

namespace {

// Holomorphic: largest r with delta < delta_{r'} for all r' <= r, or -1.
long prefix_index(const ArcBoundTable& t, double delta) {
  long r0 = -1;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    if (!(delta < t.rows[r].delta)) break;
    r0 = static_cast<long>(r);
  }
  return r0;
}

// Weak: smallest r with delta > delta_{r'} for all r' >= r, or N.
long suffix_index(const ArcBoundTable& t, double delta) {
  long r0 = static_cast<long>(t.rows.size());
  for (long r = static_cast<long>(t.rows.size()) - 1; r >= 0; --r) {
    if (!(delta > t.rows[r].delta)) break;
    r0 = r;
  }
  return r0;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double ArcBoundTable::T(double delta) const {
  if (mode == ArcMode::Holomorphic) {
    if (delta < delta_cutoff_all) return 2 * kPi / 3;
    if (delta >= delta_cutoff_none) return kPi / 2;
    long r0 = prefix_index(*this, delta);
    return r0 < 0 ? kPi / 2 : rows[r0].beta;
  }
  if (delta > delta_cutoff_all) return kPi / 2;
  if (delta <= delta_cutoff_none) return 2 * kPi / 3;
  long r0 = suffix_index(*this, delta);
  return r0 >= static_cast<long>(rows.size()) ? 2 * kPi / 3 : rows[r0].alpha;
}

double ArcBoundTable::P(double delta) const {
  const double eps = options.epsilon;
  if (mode == ArcMode::Holomorphic) {
    if (delta < delta_cutoff_all) return 1;
    if (delta >= delta_cutoff_none) return 0;
    long r0 = prefix_index(*this, delta);
    if (r0 < 0) return 0;
    double b = rows[r0].beta;
    return clamp01((6 * b / kPi + 2 * delta * std::cos(b) - 3) / (1 - delta) - eps);
  }
  if (delta > delta_cutoff_all) return 1;
  if (delta <= delta_cutoff_none) return 0;
  long r0 = suffix_index(*this, delta);
  if (r0 >= static_cast<long>(rows.size())) return 0;
  double a = rows[r0].alpha;
  return clamp01((6 * a / kPi + 2 * delta * std::cos(a) + delta - 4) / (delta - 1) - eps);
}

double ArcBoundTable::Theta(double delta) const {
  const double hi = 2 * kPi / 3, lo = kPi / 2;
  if (mode == ArcMode::Holomorphic) {
    if (delta < delta_cutoff_all) return hi;
    if (delta >= delta_cutoff_none) return lo;
    double s = (delta - delta_cutoff_all) / (delta_cutoff_none - delta_cutoff_all);
    return hi - s * (hi - lo);
  }
  if (delta <= delta_cutoff_none) return hi;
  if (delta >= delta_cutoff_all) return lo;
  double s = (delta - delta_cutoff_none) / (delta_cutoff_all - delta_cutoff_none);
  return hi - s * (hi - lo);
}

std::string ArcBoundTable::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "r,alpha,beta,B,delta,perturbed\n";
  for (const auto& row : rows)
    os << row.r << ',' << row.alpha << ',' << row.beta << ',' << row.B << ',' << row.delta << ','
       << (row.perturbed ? 1 : 0) << '\n';
  return os.str();
}

std::string ArcBoundTable::json() const {
  using nlohmann::json;
  const bool holo = mode == ArcMode::Holomorphic;
  std::vector<double> bps;
  for (const auto& row : rows) bps.push_back(row.delta);
  bps.push_back(delta_cutoff_all);
  bps.push_back(delta_cutoff_none);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  auto sample = [&](auto f) {
    json j;
    j["breakpoints"] = bps;
    std::vector<double> v;
    for (double d : bps) v.push_back(f(d));
    j["values"] = v;
    return j;
  };
  json out;
  out["mode"] = holo ? "holomorphic" : "weak";
  out["intervals"] = options.N;
  out["bstep"] = options.bstep;
  out["epsilon"] = options.epsilon;
  out["delta_cutoff_all"] = delta_cutoff_all;
  out["delta_cutoff_none"] = delta_cutoff_none;
  out["P_convention"] =
      holo ? "P(delta) = max(0, (6 beta/pi + 2 delta cos beta - 3)/(1 - delta) - epsilon), clamped to [0, 1]"
           : "P(delta) = max(0, (6 alpha/pi + 2 delta cos alpha + delta - 4)/(delta - 1) - epsilon), clamped to [0, 1]";
  out[holo ? "P" : "P_minus"] = sample([&](double d) { return P(d); });
  out[holo ? "T" : "T_minus"] = sample([&](double d) { return T(d); });
  json theta;
  theta["breakpoints"] = std::vector<double>{std::min(delta_cutoff_all, delta_cutoff_none),
                                             std::max(delta_cutoff_all, delta_cutoff_none)};
  theta["values"] = std::vector<double>{2 * kPi / 3, kPi / 2};
  out["Theta"] = theta;
  return out.dump(1);
}

// ---------------------------------------------------------------------------
// Arc counts

namespace {

// Exact cos(a pi) when it is rational (a in Z/2 or Z/3).
bool rational_cos(const mpq_class& a, mpq_class& out) {
  mpq_class six = a * 6;
  if (six.get_den() != 1) return false;
  mpz_class s = six.get_num() % 12;
  if (s < 0) s += 12;
  long v = s.get_si();
  if (v % 2 == 1 && v % 3 != 0) return false;  // multiples of pi/6 other than pi/2
  static const int num[12] = {2, 0, 1, 0, -1, 0, -2, 0, -1, 0, 1, 0};
  if (v == 3 || v == 9) {
    out = 0;
    return true;
  }
  if (v % 2 == 1) return false;
  out = mpq_class(num[v], 2);
  out.canonicalize();
  return true;
}

// floor(k a / 2 + 2 m cos(a pi)), decided exactly.
mpz_class phase_floor(std::int64_t k, std::int64_t m, const mpq_class& a) {
  mpq_class base = mpq_class(mpz_class(std::to_string(k))) * a / 2;
  mpq_class c;
  if (m == 0 || rational_cos(a, c)) {
    mpq_class v = base + (m == 0 ? mpq_class(0) : mpq_class(2 * mpz_class(std::to_string(m)) * c));
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return f;
  }
  // Irrational value: refine the enclosure until the floor is unambiguous.
  for (mpfr_prec_t p = 128; p <= (1 << 16); p *= 2) {
    Interval v = Interval::from_rational(base, p) +
                 Interval::from_rational(mpq_class(2 * mpz_class(std::to_string(m))), p) *
                     cos(Interval::pi(p) * Interval::from_rational(a, p));
    Real flo = floor(v.lo()), fhi = floor(v.hi());
    if (flo == fhi) {
      mpz_class f;
      mpfr_get_z(f.get_mpz_t(), flo.get(), MPFR_RNDN);
      return f;
    }
  }
  throw PrecisionExhausted("predicted_arc_count: enclosure did not separate from an integer");
}

}  // namespace

long predicted_arc_count(std::int64_t k, std::int64_t m, const mpq_class& a, const mpq_class& b,
                         bool require_monotone) {
  if (!(a < b) || a < mpq_class(1, 2) || b > mpq_class(2, 3))
    throw std::invalid_argument("predicted_arc_count needs 1/2 <= a < b <= 2/3");
  if (require_monotone) {
    // The phase k theta / 2 + 2 pi m cos theta is monotone on [a pi, b pi]
    // iff k/2 - 2 pi m sin(theta) keeps one sign; sin decreases there.
    const mpfr_prec_t p = 128;
    Interval half_k(k, p);
    half_k = half_k / Interval(2L, p);
    Interval tpm = two_pi(p) * Interval(m, p);
    Interval da = half_k - tpm * sin(Interval::pi(p) * Interval::from_rational(a, p));
    Interval db = half_k - tpm * sin(Interval::pi(p) * Interval::from_rational(b, p));
    bool pos = da.certainly_positive() && db.certainly_positive();
    bool neg = da.certainly_negative() && db.certainly_negative();
    if (!pos && !neg) throw std::domain_error("predicted_arc_count: phase not monotone on the interval");
  }
  // ceil(x) = -floor(-x); -x corresponds to (-k, -m).
  mpz_class hi = phase_floor(k, m, b);
  mpz_class lo = -phase_floor(-k, -m, a);
  // A negative difference guarantees nothing: the count is zero.
  mpz_class diff = hi - lo;
  return diff > 0 ? diff.get_si() : 0;
}

// ---------------------------------------------------------------------------
// Cosine approximation

std::vector<double> arc_grid(int n) {
  if (n < 1) throw std::invalid_argument("arc_grid needs n >= 1");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = kPi / 2 + (kPi / 6) * (i + 0.5) / n;
  return t;
}

CosApproxResult cos_approx_error(std::int64_t k, std::int64_t m, const std::vector<double>& thetas,
                                 mpfr_prec_t prec) {
  const auto w = decompose_weight(k);
  const FaberPolynomial f = faber_poly(k, m);
  for (double th : thetas)
    if (th < kPi / 2 - 1e-12 || th > 2 * kPi / 3 + 1e-12) throw std::invalid_argument("theta outside the arc");
  // Horner on P(j) with |j| <= 1728 cancels up to the largest term
  // |y_d| 1728^{D-d}; carry that many extra bits.
  double max_term = 0;
  for (long d = 0; d <= f.D; ++d) {
    if (f.y[d] == 0) continue;
    long e;
    mpz_get_d_2exp(&e, f.y[d].get_mpz_t());
    max_term = std::max(max_term, static_cast<double>(e) + (f.D - d) * std::log2(1728.0));
  }
  const double ell_bits = std::fabs(static_cast<double>(w.ell)) * 10;  // |Delta|^{+-l} on the arc
  const mpfr_prec_t wp = prec + static_cast<mpfr_prec_t>(max_term + ell_bits) + 64;
  std::vector<Real> y;
  for (const auto& c : f.y) y.emplace_back(c, wp);

  CosApproxResult res;
  for (double th : thetas) {
    Real t(th, wp);
    Complex tau(cos(t), sin(t));
    ModularValues mv = modular_values(tau, wp);
    Complex j = pow(mv.E4, 3) / mv.Delta;
    Complex pj(y[0], Real(0L, wp));
    for (long d = 1; d <= f.D; ++d) {
      pj = pj * j;
      pj.re += y[d];
    }
    Complex e(Real(1L, wp), Real(0L, wp));
    switch (w.kprime) {
      case 4: e = mv.E4; break;
      case 6: e = mv.E6; break;
      case 8: e = pow(mv.E4, 2); break;
      case 10: e = mv.E4 * mv.E6; break;
      case 14: e = pow(mv.E4, 2) * mv.E6; break;
      default: break;
    }
    Complex g = pow(mv.Delta, w.ell) * e * pj;
    // gbar = e^{i k theta / 2 + 2 pi m sin theta} g.
    Real phase = t * Real(static_cast<double>(k), wp) / 2L;
    Real mag = exp(Real(2L, wp) * pi(wp) * Real(static_cast<double>(m), wp) * sin(t));
    Complex gbar = polar(mag, phase) * g;
    Real arg = Real(2L, wp) * pi(wp) * Real(static_cast<double>(m), wp) * cos(t) + phase;
    double want = (Real(2L, wp) * cos(arg)).to_double();
    double err = std::fabs(gbar.re.to_double() - want);
    double scale = std::max(1.0, std::fabs(gbar.re.to_double()));
    res.max_imag = std::max(res.max_imag, std::fabs(gbar.im.to_double()) / scale);
    if (err >= res.max_error) {
      res.max_error = err;
      res.worst_theta = th;
    }
  }
  return res;
}

}  // namespace mfz
