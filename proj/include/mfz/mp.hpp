#pragma once

// Thin RAII layer over MPFR: a real type, a complex pair, and an outward
// rounded interval. Binary operations produce the larger operand precision.

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>

namespace mfz {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

class Real {
 public:
  Real() : Real(kDefaultPrecision) {}
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(int x, mpfr_prec_t prec) : Real(static_cast<long>(x), prec) {}
  Real(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), rnd);
  }
  Real(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), rnd);
  }
  Real(const std::string& s, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  // Changes precision keeping the (rounded) value.
  void set_precision(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  long exponent2() const { return mpfr_zero_p(v_) ? LONG_MIN / 2 : mpfr_get_exp(v_); }

  // Exact value as a rational (the binary number itself).
  mpq_class to_rational() const;
  // Shortest decimal string that round-trips at this precision.
  std::string to_string() const;
  std::string to_string(int digits) const;

  Real& operator+=(const Real& o) { return apply(mpfr_add, o); }
  Real& operator-=(const Real& o) { return apply(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return apply(mpfr_mul, o); }
  Real& operator/=(const Real& o) { return apply(mpfr_div, o); }
  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  template <class F>
  Real& apply(F f, const Real& o) {
    if (o.precision() > precision()) set_precision(o.precision());
    f(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  mpfr_t v_;
};

inline mpfr_prec_t max_prec(const Real& a, const Real& b) {
  return a.precision() > b.precision() ? a.precision() : b.precision();
}

#define MFZ_REAL_BINOP(op, fn)                                 \
  inline Real operator op(const Real& a, const Real& b) {      \
    Real r(max_prec(a, b));                                    \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);                  \
    return r;                                                  \
  }                                                            \
  inline Real operator op(const Real& a, long b) {             \
    Real bb(b, a.precision());                                 \
    return a op bb;                                            \
  }                                                            \
  inline Real operator op(long a, const Real& b) {             \
    Real aa(a, b.precision());                                 \
    return aa op b;                                            \
  }
MFZ_REAL_BINOP(+, mpfr_add)
MFZ_REAL_BINOP(-, mpfr_sub)
MFZ_REAL_BINOP(*, mpfr_mul)
MFZ_REAL_BINOP(/, mpfr_div)
#undef MFZ_REAL_BINOP

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()); }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()); }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }
inline bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) <= 0; }
inline bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) >= 0; }

Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real acos(const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

// ---------------------------------------------------------------------------

struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
  Complex(std::complex<double> z, mpfr_prec_t prec) : re(z.real(), prec), im(z.imag(), prec) {}

  mpfr_prec_t precision() const { return max_prec(re, im); }
  void set_precision(mpfr_prec_t p) {
    re.set_precision(p);
    im.set_precision(p);
  }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return {-re, -im}; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
inline Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
inline Complex operator+(const Complex& a, const Real& s) { return {a.re + s, a.im}; }
inline Complex operator-(const Complex& a, const Real& s) { return {a.re - s, a.im}; }

Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
Complex polar(const Real& r, const Real& theta);

// ---------------------------------------------------------------------------

// Closed interval [lo, hi] of MPFR numbers; every operation rounds outward, so
// the true value of any expression evaluated on contained points stays inside.
class Interval {
 public:
  Interval() : Interval(kDefaultPrecision) {}
  explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}
  // Exact point (the binary value of x).
  explicit Interval(const Real& x) : lo_(x), hi_(x) {}
  Interval(Real lo, Real hi);
  Interval(long x, mpfr_prec_t prec) : lo_(x, prec), hi_(x, prec) {}
  static Interval from_rational(const mpq_class& q, mpfr_prec_t prec);
  static Interval from_double(double x, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return max_prec(lo_, hi_); }
  Real mid() const;
  Real width() const;  // rounded up
  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool certainly_positive() const { return lo_.sign() > 0; }
  bool certainly_negative() const { return hi_.sign() < 0; }
  bool overlaps(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

  Interval operator-() const;
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

 private:
  Real lo_, hi_;
};

inline Interval operator+(Interval a, const Interval& b) { return a += b; }
inline Interval operator-(Interval a, const Interval& b) { return a -= b; }
inline Interval operator*(Interval a, const Interval& b) { return a *= b; }
inline Interval operator/(Interval a, const Interval& b) { return a /= b; }
Interval operator*(const Interval& a, long s);
Interval operator+(const Interval& a, long s);

Interval hull(const Interval& a, const Interval& b);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval sqr(const Interval& x);
Interval pow(const Interval& x, long n);
Interval abs(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

// Interval-valued complex number with componentwise enclosures.
struct IComplex {
  Interval re, im;
};
IComplex operator*(const IComplex& a, const IComplex& b);
IComplex operator+(const IComplex& a, const IComplex& b);
IComplex operator-(const IComplex& a, const IComplex& b);
Interval norm(const IComplex& z);

}  // namespace mfz
