#include "mfz/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace mfz {

namespace {

constexpr double kPi = 3.14159265358979323846;

long max_coeff_bits(const IntPoly& f) {
  size_t b = 1;
  for (const auto& c : f.c) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return static_cast<long>(b);
}

double log_abs(const mpz_class& a) {
  long e;
  double m = mpz_get_d_2exp(&e, a.get_mpz_t());
  return std::log(std::fabs(m)) + e * std::log(2.0);
}

// Starting points on circles read off the upper convex hull of (i, log|a_i|).
std::vector<std::complex<double>> newton_polygon_guesses(const IntPoly& f) {
  const long n = f.degree();
  std::vector<long> idx;
  std::vector<double> lv;
  for (long i = 0; i <= n; ++i) {
    if (f.c[i] == 0) continue;
    double v = log_abs(f.c[i]);
    while (idx.size() >= 2) {
      long i1 = idx[idx.size() - 2], i2 = idx.back();
      double v1 = lv[lv.size() - 2], v2 = lv.back();
      // Drop i2 when it lies on or below the chord from i1 to i.
      if ((v2 - v1) * (i - i1) <= (v - v1) * (i2 - i1)) {
        idx.pop_back();
        lv.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(i);
    lv.push_back(v);
  }
  std::vector<std::complex<double>> z;
  const double sigma = 0.7;
  for (size_t h = 0; h + 1 < idx.size(); ++h) {
    long m = idx[h + 1] - idx[h];
    double logr = (lv[h] - lv[h + 1]) / m;
    double r = std::exp(std::clamp(logr, -700.0, 700.0));
    for (long j = 0; j < m; ++j) {
      double ang = 2 * kPi * j / m + 2 * kPi * h / n + sigma;
      z.push_back(std::polar(r, ang));
    }
  }
  return z;
}

struct Eval {
  Complex p, dp;
};

Eval horner(const std::vector<Real>& a, const Complex& z) {
  const mpfr_prec_t prec = z.precision();
  Complex b(a.back(), Real(0L, prec)), d(prec);
  for (long k = static_cast<long>(a.size()) - 2; k >= 0; --k) {
    d = d * z + b;
    b = b * z;
    b.re += a[k];
  }
  return {b, d};
}

// Sum |a_k| |z|^k at 64 bits, for the Horner rounding error bound.
Real abs_horner(const std::vector<Real>& a, const Real& r) {
  Real acc(64);
  for (long k = static_cast<long>(a.size()) - 1; k >= 0; --k) {
    acc = acc * r;
    Real t = abs(a[k]);
    t.set_precision(64);
    acc += t;
  }
  return acc;
}

struct AberthState {
  std::vector<Complex> z;
  std::vector<bool> done;
};

void aberth(const std::vector<Real>& a, AberthState& st, mpfr_prec_t prec, int maxit) {
  const size_t n = st.z.size();
  for (auto& z : st.z) z.set_precision(prec);
  st.done.assign(n, false);
  const Real one(1L, prec);
  std::vector<Real> last(n, Real(1L, 64));
  std::vector<int> stall(n, 0);
  for (int it = 0; it < maxit; ++it) {
    bool all = true;
    for (size_t i = 0; i < n; ++i) {
      if (st.done[i]) continue;
      all = false;
      Eval e = horner(a, st.z[i]);
      if (e.p.re.is_zero() && e.p.im.is_zero()) {
        st.done[i] = true;
        continue;
      }
      if (e.dp.re.is_zero() && e.dp.im.is_zero()) {
        st.z[i].re += ldexp(one, -20);
        continue;
      }
      Complex N = e.p / e.dp;
      Complex S(prec);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = st.z[i] - st.z[j];
        Real nn = norm(diff);
        if (nn.is_zero()) continue;
        S += Complex(diff.re / nn, -(diff.im / nn));
      }
      Complex w = N / (Complex(one, Real(0L, prec)) - N * S);
      st.z[i] -= w;
      Real scale = max(abs(st.z[i]), ldexp(one, -static_cast<long>(prec) / 2));
      Real rel = abs(w) / scale;
      if (rel <= ldexp(one, -static_cast<long>(prec) + 12)) {
        st.done[i] = true;
      } else if (rel < 1e-6 && !(rel < last[i] / 2L)) {
        // Corrections stopped shrinking: the rounding floor has been reached.
        if (++stall[i] >= 3) st.done[i] = true;
      }
      last[i] = std::move(rel);
    }
    if (all) break;
  }
}

struct Certificate {
  std::vector<Real> radius;
  std::vector<int> real_status;  // 1 real, -1 nonreal, 0 undecided
  bool isolated = false;
  bool small = false;
};

Certificate certify(const std::vector<Real>& a, const std::vector<Complex>& z, mpfr_prec_t prec, double tol) {
  const size_t n = z.size();
  Certificate c;
  c.radius.assign(n, Real(64));
  c.real_status.assign(n, 0);
  const double nd = static_cast<double>(n);
  const Real u = ldexp(Real(1L, 64), -static_cast<long>(prec));
  Real lc = abs(a.back());
  lc.set_precision(64);
  c.small = true;
  for (size_t i = 0; i < n; ++i) {
    Eval e = horner(a, z[i]);
    Real pz = abs(e.p);
    pz.set_precision(64);
    Real az = abs(z[i]);
    az.set_precision(64);
    Real err = abs_horner(a, az) * u * Real(8.0 * (nd + 2), 64);
    Real den = lc;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Real d = abs(z[i] - z[j]);
      d.set_precision(64);
      den *= d;
    }
    // Relative slack for the 64-bit products and the working-precision differences.
    Real slack(1.0 + 8 * (nd + 2) * std::ldexp(1.0, -58), 64);
    c.radius[i] = (pz + err) * Real(nd, 64) / den * slack;
    if (!c.radius[i].is_finite() || !(c.radius[i] <= tol)) c.small = false;
  }
  c.isolated = true;
  for (size_t i = 0; i < n && c.isolated; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      Real d = abs(z[i] - z[j]);
      d.set_precision(64);
      if (!(d > c.radius[i] + c.radius[j])) {
        c.isolated = false;
        break;
      }
    }
  if (!c.isolated) return c;
  for (size_t i = 0; i < n; ++i) {
    Real im = abs(z[i].im);
    im.set_precision(64);
    if (im > c.radius[i]) {
      c.real_status[i] = -1;
      continue;
    }
    // The conjugate of the root in disk i lies in some disk; if only disk i can
    // hold it, the root is its own conjugate.
    bool alone = true;
    for (size_t j = 0; j < n && alone; ++j) {
      if (j == i) continue;
      Real d = abs(z[i] - conj(z[j]));
      d.set_precision(64);
      if (!(d > c.radius[i] + c.radius[j])) alone = false;
    }
    c.real_status[i] = alone ? 1 : 0;
  }
  return c;
}

// Roots of a squarefree f with f(0) != 0 and degree >= 2.
std::vector<CertifiedRoot> roots_squarefree(const IntPoly& f, const RootOptions& opt) {
  const long n = f.degree();
  // Cheap low-precision sweeps first; each doubling restarts from the previous
  // approximations, so the final precision needs only a few iterations.
  mpfr_prec_t prec = 128;
  AberthState st;
  for (auto& g : newton_polygon_guesses(f)) st.z.emplace_back(g, prec);
  if (static_cast<long>(st.z.size()) != n) throw std::logic_error("initial guess count mismatch");
  for (;;) {
    std::vector<Real> a;
    a.reserve(f.c.size());
    for (const auto& c : f.c) a.emplace_back(c, prec);
    aberth(a, st, prec, 50 + static_cast<int>(n));
    Certificate cert = certify(a, st.z, prec, opt.tol);
    bool decided = std::all_of(cert.real_status.begin(), cert.real_status.end(), [](int s) { return s != 0; });
    if (cert.isolated && cert.small && decided) {
      std::vector<CertifiedRoot> out;
      for (long i = 0; i < n; ++i) {
        CertifiedRoot r;
        r.z = st.z[i];
        r.radius = cert.radius[i];
        r.real = cert.real_status[i] == 1;
        if (r.real) r.z.im = Real(0L, prec);
        out.push_back(std::move(r));
      }
      return out;
    }
    if (prec * 2 > opt.max_precision) throw PrecisionExhausted("complex_roots: precision ceiling reached");
    prec *= 2;
  }
}

CertifiedRoot exact_linear(const IntPoly& f, mpfr_prec_t prec) {
  mpq_class r(-f.c[0], f.c[1]);
  r.canonicalize();
  CertifiedRoot out;
  out.z = Complex(Real(r, prec), Real(0L, prec));
  mpq_class diff = out.z.re.to_rational() - r;
  out.radius = Real(mpq_class(abs(diff)), 64, MPFR_RNDU);
  out.real = true;
  return out;
}

bool root_less(const CertifiedRoot& a, const CertifiedRoot& b) {
  if (a.z.re != b.z.re) return a.z.re < b.z.re;
  return a.z.im < b.z.im;
}

}  // namespace

std::vector<CertifiedRoot> complex_roots(const IntPoly& p, const RootOptions& opt) {
  if (p.degree() < 1) throw std::invalid_argument("complex_roots needs degree >= 1");
  const mpfr_prec_t lin_prec = std::max<long>(128, static_cast<long>(-std::log2(opt.tol)) + 64);
  std::vector<CertifiedRoot> out;
  for (auto [f, mult] : squarefree_decomposition(p)) {
    // Exact zero roots first.
    if (f.c[0] == 0) {
      CertifiedRoot z;
      z.z = Complex(lin_prec);
      z.radius = Real(64);
      z.real = true;
      z.multiplicity = mult;
      out.push_back(z);
      f.c.erase(f.c.begin());
    }
    if (f.degree() < 1) continue;
    std::vector<CertifiedRoot> rs;
    if (f.degree() == 1) rs.push_back(exact_linear(f, lin_prec));
    else rs = roots_squarefree(f, opt);
    for (auto& r : rs) {
      r.multiplicity = mult;
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

namespace {

// Dyadic rational of smallest denominator in (x - w, x + w).
mpq_class coarse_dyadic(double x, double w) {
  if (!(w > 0) || !std::isfinite(w)) return dyadic_near(x, 52);
  int e = static_cast<int>(std::ceil(-std::log2(w))) + 1;
  e = std::clamp(e, -10, 1000);
  double scaled = std::nearbyint(std::ldexp(x, e));
  mpq_class q{mpz_class(scaled)};
  if (e >= 0) mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

}  // namespace

std::vector<mpq_class> arc_hints(std::int64_t k, std::int64_t m, long D) {
  if (D <= 0) return {};
  const double a = kPi / 2, b = 2 * kPi / 3;
  const long M = 16 * (D + 4) + 64;
  auto phase = [&](double t) { return 0.5 * static_cast<double>(k) * t + 2 * kPi * static_cast<double>(m) * std::cos(t); };
  std::vector<double> xs;
  double t0 = a, p0 = phase(a);
  for (long i = 1; i <= M; ++i) {
    double t1 = a + (b - a) * i / M, p1 = phase(t1);
    double n0 = std::floor(p0 / kPi), n1 = std::floor(p1 / kPi);
    if (n0 != n1) {
      // One crossing of a multiple of pi (the grid is fine enough for at most one).
      double target = kPi * std::max(n0, n1);
      double s = (target - p0) / (p1 - p0);
      double t = t0 + s * (t1 - t0);
      double x = j_on_arc(t);
      if (x > 0 && x < 1728) xs.push_back(x);
    }
    t0 = t1;
    p0 = p1;
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<mpq_class> out;
  for (size_t i = 0; i < xs.size(); ++i) {
    double lo = (i == 0) ? 0.0 : xs[i - 1];
    double hi = (i + 1 == xs.size()) ? 1728.0 : xs[i + 1];
    double w = 0.25 * std::min(xs[i] - lo, hi - xs[i]);
    mpq_class q = coarse_dyadic(xs[i], w);
    if (q > 0 && q < 1728) out.push_back(q);
  }
  return out;
}

long count_arc_roots(const FaberPolynomial& f) {
  if (f.D == 0) return 0;
  return count_real_roots_in(f.poly(), mpq_class(0), mpq_class(1728), arc_hints(f.k, f.m, f.D));
}

std::string zero_kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::Arc: return "arc";
    case ZeroKind::EllipticRho: return "elliptic_rho";
    case ZeroKind::EllipticI: return "elliptic_i";
    case ZeroKind::OffArc: return "off_arc";
  }
  return "?";
}

ZeroSet zeros_of_faber(const FaberPolynomial& f, const RootOptions& opt) {
  ZeroSet zs;
  zs.k = f.k;
  zs.m = f.m;
  zs.D = f.D;
  IntPoly P = f.poly();
  const mpfr_prec_t tprec = std::max<long>(128, static_cast<long>(-std::log2(opt.tol)) + 64);
  // Elliptic roots are removed exactly.
  int e0 = 0, e1728 = 0;
  while (P.degree() >= 1 && P.c[0] == 0) {
    P.c.erase(P.c.begin());
    ++e0;
  }
  const IntPoly lin = IntPoly({mpz_class(-1728), mpz_class(1)});
  while (P.degree() >= 1 && eval(P, 1728) == 0) {
    P = divide_exact(P, lin);
    ++e1728;
  }
  if (e0) {
    ZeroRecord r;
    r.jroot = Complex(tprec);
    r.jradius = Real(64);
    r.tau = invert_j(r.jroot, tprec);
    r.kind = ZeroKind::EllipticRho;
    r.multiplicity = e0;
    zs.zeros.push_back(r);
  }
  if (e1728) {
    ZeroRecord r;
    r.jroot = Complex(Real(1728L, tprec), Real(0L, tprec));
    r.jradius = Real(64);
    r.tau = invert_j(r.jroot, tprec);
    r.kind = ZeroKind::EllipticI;
    r.multiplicity = e1728;
    zs.zeros.push_back(r);
  }
  zs.elliptic = e0 + e1728;
  if (P.degree() < 1) return zs;

  zs.exact_arc_count = count_real_roots_in(P, 0, 1728, arc_hints(f.k, f.m, f.D));
  RootOptions o = opt;
  std::vector<CertifiedRoot> roots;
  std::vector<ZeroKind> kinds;
  for (int attempt = 0;; ++attempt) {
    roots = complex_roots(P, o);
    kinds.assign(roots.size(), ZeroKind::OffArc);
    long arc = 0;
    bool ambiguous = false;
    for (size_t i = 0; i < roots.size(); ++i) {
      const auto& r = roots[i];
      if (!r.real) continue;
      Real lo = r.z.re - r.radius, hi = r.z.re + r.radius;
      if (lo > 0.0 && hi < 1728.0) {
        kinds[i] = ZeroKind::Arc;
        arc += r.multiplicity;
      } else if (!(hi < 0.0 || lo > 1728.0)) {
        ambiguous = true;
      }
    }
    if (!ambiguous && arc == zs.exact_arc_count) break;
    if (attempt >= 3) throw std::runtime_error("zeros_of_miller: numeric and exact arc counts disagree");
    o.tol *= 1e-30;
  }
  for (size_t i = 0; i < roots.size(); ++i) {
    ZeroRecord rec;
    rec.jroot = roots[i].z;
    rec.jradius = roots[i].radius;
    rec.kind = kinds[i];
    rec.multiplicity = roots[i].multiplicity;
    Complex x = rec.jroot;
    x.set_precision(tprec);
    rec.tau = invert_j(x, tprec);
    auto jv = j_with_derivative(rec.tau, tprec);
    double djabs = abs(jv.dj).to_double();
    double resid = abs(jv.j - x).to_double() + rec.jradius.to_double();
    rec.tau_radius = djabs > 0 ? 2 * resid / djabs : std::numeric_limits<double>::infinity();
    if (kinds[i] == ZeroKind::Arc) zs.on_arc += rec.multiplicity;
    else zs.off_arc += rec.multiplicity;
    zs.zeros.push_back(std::move(rec));
  }
  if (zs.on_arc + zs.off_arc + zs.elliptic != zs.D) throw std::logic_error("zero count does not match the degree");
  return zs;
}

ZeroSet zeros_of_miller(std::int64_t k, std::int64_t m, const RootOptions& opt) {
  return zeros_of_faber(faber_poly(k, m), opt);
}

double star_discrepancy(std::vector<double> u) {
  if (u.empty()) throw std::domain_error("star discrepancy of an empty sample");
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, (i + 1) / n - u[i]);
    d = std::max(d, u[i] - i / n);
  }
  return d;
}

double equidistribution_discrepancy(const ZeroSet& zs, double alpha, double beta) {
  if (!(alpha < beta)) throw std::invalid_argument("equidistribution_discrepancy needs alpha < beta");
  std::vector<double> u;
  for (const auto& z : zs.zeros) {
    if (z.kind != ZeroKind::Arc) continue;
    double th = arg(z.tau).to_double();
    if (th < alpha || th > beta) continue;
    for (int i = 0; i < z.multiplicity; ++i) u.push_back((th - alpha) / (beta - alpha));
  }
  if (u.empty()) throw std::domain_error("no arc zeros in the requested range");
  return star_discrepancy(std::move(u));
}

std::string zeroset_csv(const ZeroSet& zs, bool header) {
  std::ostringstream os;
  if (header) os << "k,m,re_j,im_j,radius,re_tau,im_tau,kind\n";
  for (const auto& z : zs.zeros) {
    for (int i = 0; i < z.multiplicity; ++i) {
      os << zs.k << ',' << zs.m << ',' << z.jroot.re.to_string() << ',' << z.jroot.im.to_string() << ','
         << z.jradius.to_string() << ',' << z.tau.re.to_string() << ',' << z.tau.im.to_string() << ','
         << zero_kind_name(z.kind) << '\n';
    }
  }
  return os.str();
}

std::string zeroset_json(const ZeroSet& zs) {
  nlohmann::json j;
  j["k"] = zs.k;
  j["m"] = zs.m;
  j["D"] = zs.D;
  j["counts"] = {{"on_arc", zs.on_arc},
                 {"off_arc", zs.off_arc},
                 {"elliptic", zs.elliptic},
                 {"exact_arc_count", zs.exact_arc_count}};
  auto arr = nlohmann::json::array();
  for (const auto& z : zs.zeros) {
    arr.push_back({{"re_j", z.jroot.re.to_string()},
                   {"im_j", z.jroot.im.to_string()},
                   {"radius", z.jradius.to_string()},
                   {"re_tau", z.tau.re.to_string()},
                   {"im_tau", z.tau.im.to_string()},
                   {"tau_radius", z.tau_radius},
                   {"kind", zero_kind_name(z.kind)},
                   {"multiplicity", z.multiplicity}});
  }
  j["zeros"] = arr;
  return j.dump(2);
}

}  // namespace mfz
