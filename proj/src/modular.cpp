#include "mfz/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mfz {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Multiplies by i: (a + bi) i = -b + ai.
Complex times_i(const Complex& z) { return {-z.im, z.re}; }

Complex from_long(long v, mpfr_prec_t p) { return {Real(v, p), Real(0L, p)}; }

}  // namespace

ModularValues modular_values(const Complex& tau, mpfr_prec_t prec) {
  if (tau.im.sign() <= 0) throw std::invalid_argument("modular_values needs Im tau > 0");
  const mpfr_prec_t p = prec + 24;
  Real two_pi = pi(p) * 2L;
  Real re = tau.re, im = tau.im;
  re.set_precision(p);
  im.set_precision(p);
  Real r = exp(-(two_pi * im));
  Complex q = polar(r, two_pi * re);
  // log2 |q|; the loops stop once the next term is below 2^-(p+8).
  const double lr = -2 * kPi * im.to_double() / std::log(2.0);
  if (!(lr < 0)) throw std::invalid_argument("modular_values: Im tau too small");

  Complex s3(p), s5(p), qn = q;
  Complex one = from_long(1, p);
  for (long n = 1;; ++n) {
    Complex term = qn / (one - qn);
    Real n3(n * n * n, p);
    s3 += term * n3;
    s5 += term * (n3 * Real(n * n, p));
    double next = (n + 1) * lr + 5 * std::log2(static_cast<double>(n + 1));
    if (next < -static_cast<double>(p) - 8) break;
    qn *= q;
  }
  ModularValues v;
  v.q = q;
  v.E4 = one + s3 * Real(240L, p);
  v.E6 = one - s5 * Real(504L, p);

  // Euler's pentagonal series for prod (1 - q^n).
  Complex eta = one;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    if (e1 * lr < -static_cast<double>(p) - 8) break;
    Complex t = pow(q, e1) + pow(q, e1 + k);
    if (k % 2) eta -= t;
    else eta += t;
  }
  Complex e2 = eta * eta, e4 = e2 * e2, e8 = e4 * e4;
  v.Delta = q * (e8 * e8 * e8);
  return v;
}

JValue j_with_derivative(const Complex& tau, mpfr_prec_t prec) {
  auto v = modular_values(tau, prec);
  Complex e42 = v.E4 * v.E4;
  JValue out;
  out.j = e42 * v.E4 / v.Delta;
  Real two_pi = pi(prec + 24) * 2L;
  Complex w = e42 * v.E6 / v.Delta;
  out.dj = -(times_i(w) * two_pi);
  return out;
}

Complex j_value(const Complex& tau, mpfr_prec_t prec) {
  auto v = modular_values(tau, prec);
  return v.E4 * v.E4 * v.E4 / v.Delta;
}

std::complex<double> j_double(std::complex<double> tau) {
  if (!(tau.imag() > 0)) throw std::invalid_argument("j_double needs Im tau > 0");
  for (int it = 0; it < 1000; ++it) {
    tau -= std::floor(tau.real() + 0.5);
    if (std::norm(tau) < 1.0) tau = -1.0 / tau;
    else break;
  }
  const std::complex<double> q = std::exp(std::complex<double>(0, 2 * kPi) * tau);
  std::complex<double> s3 = 0, qn = q;
  for (int n = 1; n < 60 && std::abs(qn) * n * n * n > 1e-20; ++n) {
    s3 += static_cast<double>(n) * n * n * qn / (1.0 - qn);
    qn *= q;
  }
  std::complex<double> eta = 1;
  for (int k = 1; k < 30; ++k) {
    int e1 = k * (3 * k - 1) / 2;
    std::complex<double> t = std::pow(q, e1) + std::pow(q, e1 + k);
    if (std::abs(t) < 1e-22) break;
    eta += (k % 2) ? -t : t;
  }
  std::complex<double> e4 = 1.0 + 240.0 * s3;
  std::complex<double> e24 = std::pow(eta, 24);
  return e4 * e4 * e4 / (q * e24);
}

double j_on_arc(double theta) { return j_double(std::polar(1.0, theta)).real(); }

Reduction reduce_to_fundamental_domain(const Complex& tau0, double tol) {
  if (tau0.im.sign() <= 0) throw std::invalid_argument("reduce_to_fundamental_domain needs Im tau > 0");
  Reduction R;
  Complex tau = tau0;
  const mpfr_prec_t p = tau.precision();
  Real half(0.5, p);
  auto translate = [&](long n) {
    if (n == 0) return;
    tau.re -= Real(n, p);
    R.a -= n * R.c;
    R.b -= n * R.d;
  };
  auto invert = [&] {
    Real nrm = norm(tau);
    tau = Complex(-tau.re / nrm, tau.im / nrm);
    std::int64_t a = R.a, b = R.b;
    R.a = -R.c;
    R.b = -R.d;
    R.c = a;
    R.d = b;
  };
  for (int it = 0;; ++it) {
    if (it > 100000) throw std::runtime_error("reduce_to_fundamental_domain did not terminate");
    Real f = floor(tau.re + half);
    translate(mpfr_get_si(f.get(), MPFR_RNDN));
    if ((norm(tau) - 1L).to_double() < -tol) invert();
    else break;
  }
  // Boundary conventions: the right vertical edge and right half of the arc
  // are identified with their left partners.
  if (tau.re > 0.5 - tol) translate(1);
  Real nrm = norm(tau);
  if (std::fabs(nrm.to_double() - 1.0) <= tol && tau.re.sign() > 0) {
    invert();
    if (tau.re < -0.5 - tol) translate(-1);
  }
  R.tau = tau;
  return R;
}

bool in_fundamental_domain(const Complex& tau, double tol) {
  if (tau.im.sign() <= 0) return false;
  double re = tau.re.to_double();
  if (re < -0.5 - tol || re > 0.5 + tol) return false;
  return (norm(tau) - 1L).to_double() >= -tol;
}

namespace {

// Leading coefficients of j near the elliptic points:
// j(rho + h) ~ c3 h^3 and j(i + h) ~ 1728 + c2 h^2.
struct EllipticCoefficients {
  std::complex<double> c3, c2;
};

const EllipticCoefficients& elliptic_coefficients() {
  static const EllipticCoefficients c = [] {
    const std::complex<double> rho(-0.5, std::sqrt(3.0) / 2), I(0, 1);
    const double h = 1e-4;
    EllipticCoefficients e;
    e.c3 = j_double(rho + std::complex<double>(0, h)) / std::pow(std::complex<double>(0, h), 3);
    e.c2 = (j_double(I + std::complex<double>(0, h)) - 1728.0) / std::pow(std::complex<double>(0, h), 2);
    return e;
  }();
  return c;
}

struct GridPoint {
  std::complex<double> tau, j;
};

// Coarse sample of the fundamental domain up to Im tau = 2.2.
const std::vector<GridPoint>& coarse_grid() {
  static const std::vector<GridPoint> grid = [] {
    std::vector<GridPoint> g;
    for (int a = 0; a <= 40; ++a) {
      double x = -0.5 + a / 40.0;
      double y0 = std::sqrt(std::max(0.0, 1 - x * x));
      for (double y = y0; y <= 2.2; y += 0.02) g.push_back({{x, y}, j_double({x, y})});
    }
    return g;
  }();
  return grid;
}

Complex initial_guess(const Complex& x, mpfr_prec_t p) {
  const auto& ec = elliptic_coefficients();
  Real ax = abs(x);
  Complex rho(Real(-0.5, p), sqrt(Real(3L, p)) / 2L);
  Complex I(Real(0L, p), Real(1L, p));
  if (ax < 1.0) {
    Complex z = x / Complex(ec.c3, p);
    Complex h = exp(log(z) / Real(3L, p));
    return rho + h;
  }
  Complex d = x - Real(1728L, p);
  if (abs(d) < 1.0) {
    Complex h = sqrt(d / Complex(ec.c2, p));
    if (h.im.sign() < 0) h = -h;
    return I + h;
  }
  Real two_pi = pi(p) * 2L;
  if (ax > 1e5) {
    // j = 1/q + 744 + O(q).
    Complex q = Complex(Real(1L, p), Real(0L, p)) / (x - Real(744L, p));
    Complex t = log(q);
    return Complex(t.im / two_pi, -(t.re / two_pi));
  }
  std::complex<double> xd = x.to_complex();
  const auto& grid = coarse_grid();
  double best = std::numeric_limits<double>::infinity();
  std::complex<double> tau = {0, 1};
  for (const auto& gp : grid) {
    double e = std::abs(gp.j - xd);
    if (e < best) {
      best = e;
      tau = gp.tau;
    }
  }
  return Complex(tau, p);
}

// Newton in tau with step capping; reduces after every step.
bool newton_tau(const Complex& x, Complex& tau, mpfr_prec_t p, int maxit) {
  const Real scale = max(Real(1L, p), abs(x));
  for (int it = 0; it < maxit; ++it) {
    tau = reduce_to_fundamental_domain(tau, 0).tau;
    auto jv = j_with_derivative(tau, p);
    Complex res = jv.j - x;
    if (abs(res) <= ldexp(scale, -static_cast<long>(p) + 12)) return true;
    if (jv.dj.re.is_zero() && jv.dj.im.is_zero()) tau.im += Real(1e-6, p);
    else {
      Complex step = res / jv.dj;
      Real s = abs(step);
      if (s > 0.2) step = step * (Real(0.2, p) / s);
      tau -= step;
      if (tau.im <= 0.05) tau.im = Real(0.05, p);
      if (s < ldexp(Real(1L, p), -static_cast<long>(p) + 16)) return true;
    }
  }
  return false;
}

Complex invert_on_arc(const Real& x, mpfr_prec_t p) {
  const double xd = x.to_double();
  double lo_d = kPi / 2, hi_d = 2 * kPi / 3;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo_d + hi_d);
    if (j_on_arc(mid) > xd) lo_d = mid;
    else hi_d = mid;
  }
  const double theta_d = 0.5 * (lo_d + hi_d);
  Real pmin = pi(p) / 2L, pmax = pi(p) * 2L / 3L;
  auto f_at = [&](const Real& th) {
    Complex tau = polar(Real(1L, p), th);
    auto jv = j_with_derivative(tau, p);
    Real f = jv.j.re - x;
    // d/dtheta j(e^{i theta}) = j'(tau) i tau, real on the arc.
    Complex dj = jv.dj * times_i(tau);
    return std::make_pair(f, dj.re);
  };
  Real lo = pmin, hi = pmax;
  for (double w = 1e-9; w < 1.0; w *= 1e3) {
    Real a = max(pmin, Real(theta_d - w, p)), b = min(pmax, Real(theta_d + w, p));
    if (f_at(a).first.sign() > 0 && f_at(b).first.sign() < 0) {
      lo = a;
      hi = b;
      break;
    }
  }
  Real th = (lo + hi) / 2L;
  const Real eps = ldexp(Real(1L, p), -static_cast<long>(p) + 6);
  for (long it = 0; it < 4 * static_cast<long>(p); ++it) {
    auto [f, fp] = f_at(th);
    if (f.is_zero()) break;
    if (f.sign() > 0) lo = th;
    else hi = th;
    Real next = (lo + hi) / 2L;
    if (!fp.is_zero()) {
      Real nt = th - f / fp;
      if (nt > lo && nt < hi) next = nt;
    }
    Real step = abs(next - th);
    th = next;
    if (step < eps || hi - lo < eps) break;
  }
  return polar(Real(1L, p), th);
}

}  // namespace

Complex invert_j(const Complex& x0, mpfr_prec_t prec) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(prec, x0.precision()) + 32;
  Complex x = x0;
  x.set_precision(p);
  Complex rho(Real(-0.5, p), sqrt(Real(3L, p)) / 2L);
  Complex I(Real(0L, p), Real(1L, p));
  if (x.im.is_zero()) {
    if (x.re.is_zero()) return rho;
    if (x.re == Real(1728L, p)) return I;
    if (x.re > 0.0 && x.re < 1728.0) return invert_on_arc(x.re, p);
  }
  Complex tau = initial_guess(x, p);
  const int maxit = 200 + 4 * static_cast<int>(std::log2(static_cast<double>(p)));
  if (newton_tau(x, tau, p, maxit)) return reduce_to_fundamental_domain(tau, std::ldexp(1.0, -static_cast<int>(p) / 2)).tau;
  // Fallback: Newton from every coarse grid point nearest in j, best first.
  const auto& grid = coarse_grid();
  std::vector<std::pair<double, std::complex<double>>> order;
  std::complex<double> xd = x.to_complex();
  for (const auto& gp : grid) order.push_back({std::abs(gp.j - xd), gp.tau});
  std::sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < std::min<size_t>(order.size(), 16); ++i) {
    Complex t(order[i].second, p);
    if (newton_tau(x, t, p, 2 * maxit)) return reduce_to_fundamental_domain(t, std::ldexp(1.0, -static_cast<int>(p) / 2)).tau;
  }
  throw PrecisionExhausted("invert_j: Newton iteration did not converge");
}

}  // namespace mfz
