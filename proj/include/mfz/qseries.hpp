#pragma once

// Exact truncated Laurent series in q with integer coefficients.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfz {

// Raised when an operation would need a non-integral coefficient.
struct ExactnessViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficients of q^lead .. q^(order-1); everything from q^order on is unknown.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(long lead, std::vector<mpz_class> coeffs) : lead_(lead), coeffs_(std::move(coeffs)) {}
  // The constant c known up to (excluding) q^order.
  static LaurentSeries constant(const mpz_class& c, long order);
  // The monomial q^e known up to (excluding) q^order.
  static LaurentSeries monomial(long e, long order);

  long lead() const { return lead_; }
  long order() const { return lead_ + static_cast<long>(coeffs_.size()); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  std::vector<mpz_class>& coeffs() { return coeffs_; }
  // Coefficient of q^n; zero below lead, throws at or beyond order.
  const mpz_class& at(long n) const;
  mpz_class& at(long n);

  // Drops terms from q^order on.
  LaurentSeries truncated(long order) const;
  // Multiplies by q^s.
  LaurentSeries shifted(long s) const { return LaurentSeries(lead_ + s, coeffs_); }
  // Strips leading zero coefficients so coeffs()[0] != 0 (if any nonzero).
  LaurentSeries normalized() const;

  bool operator==(const LaurentSeries& o) const { return lead_ == o.lead_ && coeffs_ == o.coeffs_; }
  std::string to_string(int max_terms = 8) const;

 private:
  long lead_ = 0;
  std::vector<mpz_class> coeffs_;
};

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator*(const LaurentSeries& a, const mpz_class& s);

// Multiplicative inverse; the leading coefficient must be +-1.
LaurentSeries inverse(const LaurentSeries& a);
// a / b. Uses the inverse when b leads with +-1, else exact long division.
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b);
// a / s for an integer s dividing every coefficient.
LaurentSeries divide_exact(const LaurentSeries& a, const mpz_class& s);

// a^e by binary exponentiation; e < 0 needs a unit leading coefficient.
LaurentSeries pow(const LaurentSeries& a, std::int64_t e);
// a^e by the J.C.P. Miller recurrence; independent of pow().
LaurentSeries pow_recurrence(const LaurentSeries& a, const mpz_class& e);

enum class SeriesName { E4, E6, E8, E10, E14, Delta, J, InvDelta, InvE };

// Named series to the given truncation order. kprime selects InvE(k').
LaurentSeries series_basic(SeriesName name, long order, int kprime = 0);
SeriesName parse_series_name(const std::string& s);
std::string series_name_string(SeriesName name, int kprime = 0);

// E_k from divisor sums with the integer prefactor -2k/B_k; k in {4,6,8,10,14}.
LaurentSeries eisenstein(int k, long order);
// E_{k'} with E_0 = 1; k' in {0,4,6,8,10,14}.
LaurentSeries eisenstein_kprime(int kprime, long order);
// Delta by q * prod (1 - q^n)^24.
LaurentSeries delta_product(long order);
// Delta by (E4^3 - E6^2) / 1728.
LaurentSeries delta_eisenstein(long order);
// j = E4^3 / Delta.
LaurentSeries j_series(long order);
// J = q j, a power series with constant term 1.
LaurentSeries J_series(long order);

// Bernoulli number B_n.
mpq_class bernoulli(int n);
// sigma_s(n) for n = 0..nmax (index 0 holds 0).
std::vector<mpz_class> divisor_sums(int s, long nmax);

// c_{r,n}: coefficient of q^n in j^r.
mpz_class c_coeff(long r, long n);
// D_{l,d}: coefficient of q^d in (q^{-1} Delta)^{-l} / E_{k'}, for d = 0..dmax.
std::vector<mpz_class> d_coeffs(const mpz_class& ell, int kprime, long dmax);
mpz_class d_coeff(const mpz_class& ell, int kprime, long d);

// Coefficients q^0..q^s of J^s from the coefficients of J (at least s+1 of them).
std::vector<mpz_class> j_power_row(long s, const std::vector<mpz_class>& J);

// Powers J^s, s = 0..smax, each holding q^0..q^s. Entry (s, t) is c_{s,t-s}.
class JPowerTable {
 public:
  explicit JPowerTable(long smax);
  long smax() const { return static_cast<long>(rows_.size()) - 1; }
  // c_{s,-t} for 0 <= t <= s.
  const mpz_class& c_neg(long s, long t) const { return rows_[s][s - t]; }

 private:
  std::vector<std::vector<mpz_class>> rows_;
};

// Constant (25/24)^25 appearing in the Faber coefficient bound; not used in exact code.
inline constexpr double kFaberBoundAlpha = 2.7747200604881237;

// Cache file: header "name order lead", then one decimal integer per line.
void write_series_file(const std::string& path, const std::string& name, const LaurentSeries& s);
LaurentSeries read_series_file(const std::string& path, std::string* name = nullptr);

}  // namespace mfz
