#include "mfz/szego.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "mfz/miller.hpp"
#include "mfz/modular.hpp"

namespace mfz {

namespace {

Real e_inv(mpfr_prec_t p) { return exp(Real(-1L, p)); }

// Starting point for Halley: branch-point series near -1/e, log1p for
// moderate x, and the two-term asymptotic for large x.
double w_guess(double x) {
  const double t = std::exp(1.0) * x + 1;
  if (t < 0.3) {
    double p = std::sqrt(2 * std::max(t, 0.0));
    return -1 + p - p * p / 3 + 11.0 / 72 * p * p * p;
  }
  if (x < 3) return std::log1p(x) * (1 - std::log1p(std::log1p(x)) / (2 + std::log1p(x)));
  double l1 = std::log(x), l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

Real w_e_inv(mpfr_prec_t p) { return lambert_w(e_inv(p + 16), p); }

double g_value(double x, int sign, mpfr_prec_t prec) {
  return log_szego_point(Real(x, prec), sign, prec).im.to_double();
}

// Distance from p to the segment [a, b].
double seg_dist(std::complex<double> p, std::complex<double> a, std::complex<double> b) {
  std::complex<double> d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

using CurveFn = std::function<std::complex<double>(double)>;

// Uniform parameter grid on [-1/2, 1/2], segments bisected while their chord
// exceeds 1 / nsamples (depth capped), then the chord deviation measured at
// every segment midpoint.
void sample(PlaneCurve& c, const CurveFn& f, int nsamples, bool refine) {
  if (nsamples < 2) throw std::invalid_argument("curve sampling needs nsamples >= 2");
  const double cap = 1.0 / nsamples;
  const int max_depth = 10;
  std::vector<double> xs;
  std::vector<std::complex<double>> zs;
  std::function<void(double, std::complex<double>, double, std::complex<double>, int)> emit =
      [&](double xa, std::complex<double> za, double xb, std::complex<double> zb, int depth) {
        if (refine && depth < max_depth && std::abs(zb - za) > cap) {
          double xm = (xa + xb) / 2;
          auto zm = f(xm);
          emit(xa, za, xm, zm, depth + 1);
          emit(xm, zm, xb, zb, depth + 1);
          return;
        }
        xs.push_back(xb);
        zs.push_back(zb);
      };
  double x0 = -0.5;
  auto z0 = f(x0);
  xs.push_back(x0);
  zs.push_back(z0);
  for (int i = 1; i <= nsamples; ++i) {
    double x1 = -0.5 + static_cast<double>(i) / nsamples;
    auto z1 = f(x1);
    emit(x0, z0, x1, z1, 0);
    x0 = x1;
    z0 = z1;
  }
  c.params = std::move(xs);
  c.samples = std::move(zs);
  c.max_spacing = 0;
  c.resolution = 0;
  for (size_t i = 0; i + 1 < c.samples.size(); ++i) {
    c.max_spacing = std::max(c.max_spacing, std::abs(c.samples[i + 1] - c.samples[i]));
    auto zm = f((c.params[i] + c.params[i + 1]) / 2);
    c.resolution = std::max(c.resolution, seg_dist(zm, c.samples[i], c.samples[i + 1]));
  }
}

double arc_height(double x) { return std::sqrt(1 - x * x); }

double asymptotic_height(double x, double delta, mpfr_prec_t prec) {
  const int sign = delta < 1 ? 1 : -1;
  return g_value(x, sign, prec) - std::log(std::fabs(1 - delta)) / (2 * M_PI);
}

void check_delta(double delta) {
  if (!(delta > 0)) throw std::domain_error("S_delta needs delta > 0");
  if (delta == 1) throw std::domain_error("S_delta is singular at delta = 1");
}

// Kuhn augmenting paths on the bipartite graph of pairs within r.
bool perfect_within(const std::vector<std::vector<double>>& d, double r) {
  const size_t n = d.size();
  std::vector<int> match(n, -1);
  for (size_t i = 0; i < n; ++i) {
    std::vector<char> seen(n, 0);
    std::function<bool(size_t)> augment = [&](size_t u) {
      for (size_t v = 0; v < n; ++v) {
        if (d[u][v] > r || seen[v]) continue;
        seen[v] = 1;
        if (match[v] < 0 || augment(static_cast<size_t>(match[v]))) {
          match[v] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

Real lambert_w(const Real& x0, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  Real x = x0;
  x.set_precision(wp);
  Real t = exp(Real(1L, wp)) * x + 1L;
  // t carries the rounding of x itself; anything within a few of its ulps of
  // zero is the branch point.
  Real slack = ldexp(Real(1L, wp), -static_cast<long>(std::min(prec, x0.precision())) + 4);
  if (t < -slack) throw std::domain_error("lambert_w: x < -1/e");
  if (abs(t) <= slack) return Real(-1L, prec);
  if (x.is_zero()) return Real(0L, prec);
  Real w(w_guess(x.to_double()), wp);
  const Real tol = ldexp(Real(1L, wp), -static_cast<long>(wp) + 6);
  for (int it = 0; it < 200; ++it) {
    Real ew = exp(w);
    Real f = w * ew - x;
    Real w1 = w + 1L;
    Real step = f / (ew * w1 - (w + 2L) * f / (w1 * 2L));
    w -= step;
    if (abs(step) <= tol * max(Real(1L, wp), abs(w))) break;
  }
  Real res = abs(w * exp(w) - x);
  Real allowed = ldexp(max(Real(1L, wp), abs(x)), -static_cast<long>(prec));
  // Near the branch point the residual is flat in w; accept what rounding allows there.
  if (t < 1e-6) allowed = max(allowed, ldexp(Real(1L, wp), -static_cast<long>(prec) / 2));
  if (res > allowed) throw PrecisionExhausted("lambert_w: residual check failed");
  w.set_precision(prec);
  return w;
}

Real u_inverse(const Real& y0, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 16;
  Real y = y0;
  y.set_precision(wp);
  if (y < -1.0 || y > 1.0) throw std::domain_error("u_inverse: y outside [-1, 1]");
  if (y == Real(1L, wp)) return Real(1L, prec);
  Real lo = w_e_inv(wp), hi(1L, wp);
  if (y == Real(-1L, wp)) {
    lo.set_precision(prec);
    return lo;
  }
  auto u = [](const Real& x) { return (log(x) + 1L) / x; };
  const Real stop = ldexp(Real(1L, wp), -static_cast<long>(prec) - 2);
  // Fast path: Newton (u' = -ln x / x^2) from a double bisection, accepted
  // only if u brackets y at x -+ stop. Near y = 1 u' vanishes and the
  // bracket test fails, so plain bisection takes over.
  {
    const double yd = y.to_double();
    double a = lo.to_double(), b = 1;
    for (int i = 0; i < 60; ++i) {
      double mid = (a + b) / 2;
      ((1 + std::log(mid)) / mid < yd ? a : b) = mid;
    }
    Real x((a + b) / 2, wp);
    for (int it = 0; it < 8; ++it) {
      Real d = -log(x) / (x * x);
      if (d.is_zero()) break;
      x -= (u(x) - y) / d;
    }
    Real xl = x - stop, xh = x + stop;
    if (xl >= lo && xh <= hi && u(xl) <= y && u(xh) >= y) {
      x.set_precision(prec);
      return x;
    }
  }
  // Invariant: u(lo) <= y <= u(hi), u increasing on [W(1/e), 1].
  while (hi - lo > stop) {
    Real mid = (lo + hi) / 2L;
    if (u(mid) < y) lo = mid;
    else hi = mid;
  }
  Real r = (lo + hi) / 2L;
  r.set_precision(prec);
  return r;
}

Complex log_szego_point(const Real& x0, int sign, mpfr_prec_t prec) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("log_szego_point: sign must be +1 or -1");
  const mpfr_prec_t wp = prec + 16;
  Real x = x0;
  x.set_precision(wp);
  if (x < -0.5 || x > 0.5) throw std::domain_error("log_szego_point: x outside [-1/2, 1/2]");
  Real c = cos(pi(wp) * x * 2L);
  if (sign < 0) c = -c;
  // Rounding can push cos a hair past +-1.
  if (c > 1.0) c = Real(1L, wp);
  if (c < -1.0) c = Real(-1L, wp);
  Real g = (log(Real(24L, wp)) - log(u_inverse(c, wp))) / (pi(wp) * 2L);
  Complex z(x, g);
  z.set_precision(prec);
  return z;
}

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::Exact: return "exact";
    case Construction::Asymptotic: return "asymptotic";
    case Construction::PointwiseMax: return "pointwise-max";
  }
  return "?";
}

std::string PlaneCurve::csv() const {
  static const char* kinds[] = {"szego", "log-szego", "s-delta", "arc", "hull"};
  std::ostringstream o;
  char buf[96];
  o << "# kind: " << kinds[static_cast<int>(kind)] << "\n";
  o << "# construction: " << construction_name(construction) << "\n";
  if (kind == CurveKind::SDelta || kind == CurveKind::Hull) {
    std::snprintf(buf, sizeof buf, "%.17g", delta);
    o << "# delta: " << buf << "\n";
  }
  if (sign != 0) o << "# sign: " << sign << "\n";
  o << "# param: angle-x\n";
  if (kind == CurveKind::Hull) o << "# hull: pointwise max of Im over a shared x-grid, asymptotic S_delta\n";
  o << "# samples: " << samples.size() << "\n";
  std::snprintf(buf, sizeof buf, "%.6g", max_spacing);
  o << "# max_spacing: " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.6g", resolution);
  o << "# resolution: " << buf << "\n";
  o << "x,y\n";
  for (const auto& z : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
    o << buf;
  }
  return o.str();
}

PlaneCurve szego_curve(int nsamples, mpfr_prec_t prec) {
  PlaneCurve c;
  c.kind = CurveKind::Szego;
  c.construction = Construction::Exact;
  sample(
      c,
      [prec](double x) {
        Real phi = pi(prec) * Real(x, prec) * 2L;
        Real c0 = cos(phi);
        if (c0 > 1.0) c0 = Real(1L, prec);
        if (c0 < -1.0) c0 = Real(-1L, prec);
        return polar(u_inverse(c0, prec), phi).to_complex();
      },
      nsamples, true);
  return c;
}

PlaneCurve log_szego_curve(int sign, int nsamples, mpfr_prec_t prec) {
  PlaneCurve c;
  c.kind = CurveKind::LogSzego;
  c.construction = Construction::Exact;
  c.sign = sign;
  sample(c, [=](double x) { return std::complex<double>(x, g_value(x, sign, prec)); }, nsamples, true);
  return c;
}

PlaneCurve s_delta_curve(double delta, int nsamples, std::optional<Construction> construction, mpfr_prec_t prec) {
  check_delta(delta);
  const bool exact_allowed = std::fabs(std::log(std::fabs(1 - delta))) <= kExactConstructionLimit;
  Construction how = construction.value_or(exact_allowed ? Construction::Exact : Construction::Asymptotic);
  if (how == Construction::PointwiseMax) throw std::invalid_argument("s_delta_curve: use c_delta_hull for the hull");
  if (how == Construction::Exact && !exact_allowed)
    throw std::domain_error("s_delta_curve: exact construction needs |ln|1 - delta|| <= 8");
  PlaneCurve c;
  c.kind = CurveKind::SDelta;
  c.construction = how;
  c.delta = delta;
  c.sign = delta < 1 ? 1 : -1;
  if (how == Construction::Asymptotic) {
    sample(c, [=](double x) { return std::complex<double>(x, asymptotic_height(x, delta, prec)); }, nsamples, true);
    return c;
  }
  const mpfr_prec_t wp = prec + 16;
  sample(
      c,
      [=](double x) {
        // The point of S at angle 2 pi x (shifted by pi when 1 - delta < 0,
        // so that j keeps the phase e^{-2 pi i x} of q^{-1}).
        Real phi = pi(wp) * Real(x, wp) * 2L;
        if (delta > 1) phi += pi(wp);
        Real c0 = cos(phi);
        if (c0 > 1.0) c0 = Real(1L, wp);
        if (c0 < -1.0) c0 = Real(-1L, wp);
        Complex s = polar(u_inverse(c0, wp), phi);
        Complex target = Complex(Real(24L, wp), Real(0L, wp)) / (s * Real(1 - delta, wp));
        Complex tau = invert_j(target, prec);
        double re = tau.re.to_double();
        return std::complex<double>(re + std::round(x - re), tau.im.to_double());
      },
      nsamples, true);
  return c;
}

PlaneCurve c_delta_hull(double delta, int nsamples, mpfr_prec_t prec) {
  check_delta(delta);
  PlaneCurve c;
  c.kind = CurveKind::Hull;
  c.construction = Construction::PointwiseMax;
  c.delta = delta;
  c.sign = delta < 1 ? 1 : -1;
  sample(
      c,
      [=](double x) { return std::complex<double>(x, std::max(arc_height(x), asymptotic_height(x, delta, prec))); },
      nsamples, false);
  return c;
}

std::optional<double> hull_transition_x(double delta, mpfr_prec_t prec) {
  check_delta(delta);
  auto h = [=](double x) { return asymptotic_height(x, delta, prec) - arc_height(x); };
  double lo = 0, hi = 0.5;
  double hlo = h(lo), hhi = h(hi);
  if (hlo == 0) return lo;
  if (hhi == 0) return hi;
  if ((hlo < 0) == (hhi < 0)) return std::nullopt;
  for (int i = 0; i < 60; ++i) {
    double mid = (lo + hi) / 2;
    double hm = h(mid);
    if ((hm < 0) == (hlo < 0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

CutoffSet cutoffs(mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  Real W = w_e_inv(wp);
  Real e2pi = exp(pi(wp) * 2L);
  Real esq3 = exp(pi(wp) * sqrt(Real(3L, wp)));
  Real t24(24L, wp);
  CutoffSet s;
  s.A_plus = 1L - t24 / (W * esq3);
  s.A_minus = 1L + t24 / (W * e2pi);
  s.S_plus = 1L - t24 / e2pi;
  s.S_minus = 1L + t24 / esq3;
  for (Real* r : {&s.A_plus, &s.A_minus, &s.S_plus, &s.S_minus}) r->set_precision(prec);
  return s;
}

IntPoly trunc_exp_poly(long D) {
  if (D < 1) throw std::invalid_argument("trunc_exp_poly: D >= 1");
  // Coefficient of x^{D-i} is D! / i! = (i+1)(i+2)...D.
  std::vector<mpz_class> asc(D + 1);
  mpz_class f = 1;
  for (long i = D; i >= 0; --i) {
    asc[D - i] = f;
    f *= i;
  }
  return IntPoly(std::move(asc));
}

std::vector<CertifiedRoot> trunc_exp_roots(long D, const RootOptions& opt) {
  return complex_roots(trunc_exp_poly(D), opt);
}

std::vector<std::complex<double>> szego_rescaled_roots(long D, const RootOptions& opt) {
  std::vector<std::complex<double>> out;
  for (const auto& r : trunc_exp_roots(D, opt)) {
    Complex w = Complex(Real(1L, r.z.precision()), Real(0L, r.z.precision())) / (r.z * Real(D, r.z.precision()));
    for (int i = 0; i < r.multiplicity; ++i) out.push_back(w.to_complex());
  }
  return out;
}

Distance hausdorff(const std::vector<std::complex<double>>& points, const PlaneCurve& curve) {
  if (points.empty() || curve.samples.empty()) throw std::invalid_argument("hausdorff: empty input");
  Distance d;
  d.resolution = curve.resolution;
  for (const auto& p : points) {
    double best = std::abs(p - curve.samples[0]);
    for (size_t i = 0; i + 1 < curve.samples.size(); ++i)
      best = std::min(best, seg_dist(p, curve.samples[i], curve.samples[i + 1]));
    d.distance = std::max(d.distance, best);
  }
  return d;
}

double curve_distance(const PlaneCurve& a, const PlaneCurve& b) {
  return std::max(hausdorff(a.samples, b).distance, hausdorff(b.samples, a).distance);
}

double matched_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matched_distance: sizes differ");
  if (a.empty()) return 0;
  const size_t n = a.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<double> all;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) all.push_back(d[i][j] = std::abs(a[i] - b[j]));
  std::sort(all.begin(), all.end());
  size_t lo = 0, hi = all.size() - 1;  // perfect_within(all[hi]) always holds
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (perfect_within(d, all[mid])) hi = mid;
    else lo = mid + 1;
  }
  return all[lo];
}

OstrowskiReport ostrowski_comparison(std::int64_t k, long D, const RootOptions& opt) {
  if (k <= 0) throw std::invalid_argument("ostrowski_comparison: k > 0");
  auto w = decompose_weight(k);
  if (D < 1 || D > w.ell) throw std::invalid_argument("ostrowski_comparison: need 1 <= D <= l");
  OstrowskiReport r;
  r.k = k;
  r.m = w.ell - D;
  r.D = D;
  auto F = faber_poly(k, r.m);
  const mpz_class two_k = 2 * mpz_class(static_cast<long>(k));
  std::vector<std::complex<double>> fr, er;
  for (const auto& x : complex_roots(F.poly(), opt)) {
    Complex z = x.z / Real(two_k, x.z.precision());
    for (int i = 0; i < x.multiplicity; ++i) fr.push_back(z.to_complex());
  }
  for (const auto& x : trunc_exp_roots(D, opt))
    for (int i = 0; i < x.multiplicity; ++i) er.push_back(x.z.to_complex());
  r.matched_distance = matched_distance(fr, er);

  std::vector<double> a(D + 1), b(D + 1);
  mpz_class fact = 1, pw = 1;
  for (long i = 0; i <= D; ++i) {
    if (i > 0) {
      fact *= i;
      pw *= two_k;
    }
    a[i] = 1.0 / fact.get_d();
    b[i] = mpq_class(F.y[i], pw).get_d();
  }
  double G = 0;
  for (long i = 1; i <= D; ++i)
    G = std::max({G, std::pow(a[i], 1.0 / i), std::pow(std::fabs(b[i]), 1.0 / i)});
  double s = 0;
  for (long i = 0; i <= D; ++i) s += std::fabs(a[i] - b[i]) * std::pow(G, -static_cast<double>(i));
  r.ostrowski_bound = 2.0 * D * G * std::pow(s, 1.0 / D);
  return r;
}

Distance miller_szego_distance(const ZeroSet& zs, int nsamples, std::optional<Construction> construction) {
  if (zs.m == 0 || zs.D == 0) throw std::invalid_argument("miller_szego_distance: needs m != 0 and D > 0");
  const double delta = static_cast<double>(zs.m) / static_cast<double>(zs.m + zs.D);
  std::vector<std::complex<double>> pts;
  for (const auto& z : zs.zeros)
    if (z.kind == ZeroKind::Arc || z.kind == ZeroKind::OffArc) pts.push_back(z.tau.to_complex());
  return hausdorff(pts, s_delta_curve(delta, nsamples, construction));
}

Distance miller_szego_distance(std::int64_t k, std::int64_t m, int nsamples, std::optional<Construction> construction) {
  return miller_szego_distance(zeros_of_miller(k, m), nsamples, construction);
}

}  // namespace mfz
