#include "mfz/mp.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace mfz {

mpq_class Real::to_rational() const {
  if (!is_finite()) throw std::domain_error("to_rational: non-finite value");
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

std::string Real::to_string() const {
  return to_string(static_cast<int>(mpfr_get_str_ndigits(10, precision())));
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

#define MFZ_UNARY(name, fn)             \
  Real name(const Real& x) {            \
    Real r(x.precision());              \
    fn(r.get(), x.get(), MPFR_RNDN);    \
    return r;                           \
  }
MFZ_UNARY(abs, mpfr_abs)
MFZ_UNARY(sqrt, mpfr_sqrt)
MFZ_UNARY(exp, mpfr_exp)
MFZ_UNARY(log, mpfr_log)
MFZ_UNARY(log1p, mpfr_log1p)
MFZ_UNARY(sin, mpfr_sin)
MFZ_UNARY(cos, mpfr_cos)
MFZ_UNARY(acos, mpfr_acos)
#undef MFZ_UNARY

Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_const_pi(r.get(), rnd);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

// ---------------------------------------------------------------------------

Complex& Complex::operator*=(const Complex& o) {
  Real a = re * o.re - im * o.im;
  Real b = re * o.im + im * o.re;
  re = std::move(a);
  im = std::move(b);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Scaled division keeps intermediate magnitudes bounded.
  if (abs(o.re) >= abs(o.im)) {
    Real r = o.im / o.re;
    Real den = o.re + o.im * r;
    Real a = (re + im * r) / den;
    Real b = (im - re * r) / den;
    re = std::move(a);
    im = std::move(b);
  } else {
    Real r = o.re / o.im;
    Real den = o.re * r + o.im;
    Real a = (re * r + im) / den;
    Real b = (im * r - re) / den;
    re = std::move(a);
    im = std::move(b);
  }
  return *this;
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  Real r = abs(z);
  Real a = sqrt((r + z.re) / 2);
  Real b = sqrt((r - z.re) / 2);
  if (z.im.sign() < 0) b = -b;
  return {a, b};
}

Complex pow(const Complex& z, long n) {
  mpfr_prec_t p = z.precision();
  Complex result(Real(1L, p), Real(0L, p));
  Complex base = z;
  bool invert = n < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  if (invert) result = Complex(Real(1L, p), Real(0L, p)) / result;
  return result;
}

Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

// ---------------------------------------------------------------------------

namespace {

Real rounded(mpfr_prec_t p) { return Real(p); }

template <class F>
Real op2(F f, const Real& a, const Real& b, mpfr_rnd_t rnd, mpfr_prec_t p) {
  Real r = rounded(p);
  f(r.get(), a.get(), b.get(), rnd);
  return r;
}

template <class F>
Real op1(F f, const Real& a, mpfr_rnd_t rnd, mpfr_prec_t p) {
  Real r = rounded(p);
  f(r.get(), a.get(), rnd);
  return r;
}

}  // namespace

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("Interval: lo > hi");
}

Interval Interval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
  return Interval(Real(q, prec, MPFR_RNDD), Real(q, prec, MPFR_RNDU));
}

Interval Interval::from_double(double x, mpfr_prec_t prec) {
  Real r(x, prec);
  return Interval(r);
}

Interval Interval::pi(mpfr_prec_t prec) { return Interval(mfz::pi(prec, MPFR_RNDD), mfz::pi(prec, MPFR_RNDU)); }

Real Interval::mid() const {
  Real m = lo_ + hi_;
  return ldexp(m, -1);
}

Real Interval::width() const { return op2(mpfr_sub, hi_, lo_, MPFR_RNDU, precision()); }

Interval Interval::operator-() const { return Interval(-hi_, -lo_); }

Interval& Interval::operator+=(const Interval& o) {
  mpfr_prec_t p = std::max(precision(), o.precision());
  Real l = op2(mpfr_add, lo_, o.lo_, MPFR_RNDD, p);
  Real h = op2(mpfr_add, hi_, o.hi_, MPFR_RNDU, p);
  lo_ = std::move(l);
  hi_ = std::move(h);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  mpfr_prec_t p = std::max(precision(), o.precision());
  Real l = op2(mpfr_sub, lo_, o.hi_, MPFR_RNDD, p);
  Real h = op2(mpfr_sub, hi_, o.lo_, MPFR_RNDU, p);
  lo_ = std::move(l);
  hi_ = std::move(h);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  mpfr_prec_t p = std::max(precision(), o.precision());
  const Real* a[2] = {&lo_, &hi_};
  const Real* b[2] = {&o.lo_, &o.hi_};
  Real l = op2(mpfr_mul, *a[0], *b[0], MPFR_RNDD, p);
  Real h = op2(mpfr_mul, *a[0], *b[0], MPFR_RNDU, p);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      Real dl = op2(mpfr_mul, *a[i], *b[j], MPFR_RNDD, p);
      Real dh = op2(mpfr_mul, *a[i], *b[j], MPFR_RNDU, p);
      if (dl < l) l = std::move(dl);
      if (dh > h) h = std::move(dh);
    }
  }
  lo_ = std::move(l);
  hi_ = std::move(h);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) throw std::domain_error("Interval: division by an interval containing zero");
  mpfr_prec_t p = std::max(precision(), o.precision());
  Interval inv(op2(mpfr_div, Real(1L, p), o.hi_, MPFR_RNDD, p), op2(mpfr_div, Real(1L, p), o.lo_, MPFR_RNDU, p));
  return *this *= inv;
}

Interval operator*(const Interval& a, long s) { return a * Interval(s, a.precision()); }
Interval operator+(const Interval& a, long s) { return a + Interval(s, a.precision()); }

Interval hull(const Interval& a, const Interval& b) { return Interval(min(a.lo(), b.lo()), max(a.hi(), b.hi())); }

Interval sqrt(const Interval& x) {
  if (x.lo().sign() < 0) throw std::domain_error("Interval sqrt: negative argument");
  mpfr_prec_t p = x.precision();
  return Interval(op1(mpfr_sqrt, x.lo(), MPFR_RNDD, p), op1(mpfr_sqrt, x.hi(), MPFR_RNDU, p));
}

Interval exp(const Interval& x) {
  mpfr_prec_t p = x.precision();
  return Interval(op1(mpfr_exp, x.lo(), MPFR_RNDD, p), op1(mpfr_exp, x.hi(), MPFR_RNDU, p));
}

Interval log(const Interval& x) {
  if (x.lo().sign() <= 0) throw std::domain_error("Interval log: nonpositive argument");
  mpfr_prec_t p = x.precision();
  return Interval(op1(mpfr_log, x.lo(), MPFR_RNDD, p), op1(mpfr_log, x.hi(), MPFR_RNDU, p));
}

Interval log1p(const Interval& x) {
  if (x.lo() <= -1.0) throw std::domain_error("Interval log1p: argument <= -1");
  mpfr_prec_t p = x.precision();
  return Interval(op1(mpfr_log1p, x.lo(), MPFR_RNDD, p), op1(mpfr_log1p, x.hi(), MPFR_RNDU, p));
}

Interval cos(const Interval& x) {
  mpfr_prec_t p = x.precision();
  Real one(1L, p);
  Interval full(-one, one);
  // Width at least 2*pi (6.28 < 2*pi) covers a full period.
  if (mpfr_cmp_d(x.width().get(), 6.28) >= 0) return full;
  Real l = min(op1(mpfr_cos, x.lo(), MPFR_RNDD, p), op1(mpfr_cos, x.hi(), MPFR_RNDD, p));
  Real h = max(op1(mpfr_cos, x.lo(), MPFR_RNDU, p), op1(mpfr_cos, x.hi(), MPFR_RNDU, p));
  // Extrema sit at n*pi; include every n that may lie in x.
  Interval t = x / Interval::pi(p);
  Real nlo = op1(mpfr_rint_floor, t.lo(), MPFR_RNDD, p);
  Real nhi = op1(mpfr_rint_ceil, t.hi(), MPFR_RNDU, p);
  for (Real n = nlo; n <= nhi; n += one) {
    if (n < t.lo() || n > t.hi()) continue;
    mpz_class nz;
    mpfr_get_z(nz.get_mpz_t(), n.get(), MPFR_RNDN);
    if (mpz_even_p(nz.get_mpz_t())) {
      h = one;
    } else {
      l = -one;
    }
  }
  return Interval(l, h);
}

Interval sin(const Interval& x) {
  mpfr_prec_t p = x.precision();
  Interval half_pi = Interval::pi(p) / Interval(2L, p);
  return cos(x - half_pi);
}

Interval sqr(const Interval& x) {
  mpfr_prec_t p = x.precision();
  if (x.lo().sign() >= 0) {
    return Interval(op2(mpfr_mul, x.lo(), x.lo(), MPFR_RNDD, p), op2(mpfr_mul, x.hi(), x.hi(), MPFR_RNDU, p));
  }
  if (x.hi().sign() <= 0) {
    return Interval(op2(mpfr_mul, x.hi(), x.hi(), MPFR_RNDD, p), op2(mpfr_mul, x.lo(), x.lo(), MPFR_RNDU, p));
  }
  Real m = max(abs(x.lo()), abs(x.hi()));
  return Interval(Real(0L, p), op2(mpfr_mul, m, m, MPFR_RNDU, p));
}

Interval pow(const Interval& x, long n) {
  if (n < 0) return Interval(1L, x.precision()) / pow(x, -n);
  Interval result(1L, x.precision());
  Interval base = x;
  bool even = (n % 2 == 0);
  if (even) {
    base = abs(x);
  }
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base = sqr(base);
  }
  return result;
}

Interval abs(const Interval& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  return Interval(Real(0L, x.precision()), max(abs(x.lo()), abs(x.hi())));
}

Interval max(const Interval& a, const Interval& b) { return Interval(max(a.lo(), b.lo()), max(a.hi(), b.hi())); }
Interval min(const Interval& a, const Interval& b) { return Interval(min(a.lo(), b.lo()), min(a.hi(), b.hi())); }

IComplex operator*(const IComplex& a, const IComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
IComplex operator+(const IComplex& a, const IComplex& b) { return {a.re + b.re, a.im + b.im}; }
IComplex operator-(const IComplex& a, const IComplex& b) { return {a.re - b.re, a.im - b.im}; }
Interval norm(const IComplex& z) { return sqr(z.re) + sqr(z.im); }

}  // namespace mfz
