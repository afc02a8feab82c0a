#pragma once

// Dense univariate polynomials over Z and over prime fields.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mfz {

// Coefficient of x^i at index i; the zero polynomial has no coefficients.
struct IntPoly {
  std::vector<mpz_class> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }
  static IntPoly from_descending(const std::vector<mpz_class>& y);

  long degree() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const mpz_class& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const IntPoly& o) const { return c == o.c; }
  std::string to_string() const;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);

mpz_class eval(const IntPoly& p, const mpz_class& x);
// Sign of p(x) for rational x, exactly.
int sign_at(const IntPoly& p, const mpq_class& x);
IntPoly derivative(const IntPoly& p);
mpz_class content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
// Exact quotient a / b; throws if b does not divide a over Z.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);
// Remainder of a modulo a monic b.
IntPoly rem_monic(const IntPoly& a, const IntPoly& b);
// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Squarefree factors f_i with multiplicity i (only nonconstant ones listed).
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);
// True when some prime certifies gcd(p, p') = 1; falls back to the exact gcd.
bool is_squarefree(const IntPoly& p);

// p(x + s).
IntPoly taylor_shift(const IntPoly& p, const mpz_class& s);
// x^n p(1/x).
IntPoly reverse(const IntPoly& p);
// p(s x).
IntPoly scale(const IntPoly& p, const mpz_class& s);
int sign_variations(const IntPoly& p);
// Upper bound (Descartes) on roots in the open interval (a, b); same parity as the count.
int descartes_bound(const IntPoly& p, const mpq_class& a, const mpq_class& b);

// Exact number of real roots in the open interval (a, b), with multiplicity.
// Hints are points inside (a, b) where sign changes are likely; they only
// affect speed.
long count_real_roots_in(const IntPoly& p, const mpq_class& a, const mpq_class& b,
                         const std::vector<mpq_class>& hints = {});

// Dyadic rational close to x with about `bits` significant bits.
mpq_class dyadic_near(double x, int bits = 30);

namespace modp {

using Poly = std::vector<std::uint64_t>;

// Ascending coefficients modulo p (p < 2^32).
Poly reduce(const IntPoly& f, std::uint64_t p);
void trim(Poly& a);
long degree(const Poly& a);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
// Remainder of a modulo b (b nonzero).
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
Poly quo(const Poly& a, const Poly& b, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly derivative(const Poly& a, std::uint64_t p);
Poly make_monic(const Poly& a, std::uint64_t p);
// base^e mod f.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& f, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
bool is_squarefree(const Poly& f, std::uint64_t p);
// Distinct-degree factorization of a squarefree monic f: (degree, product of
// all irreducible factors of that degree).
std::vector<std::pair<long, Poly>> distinct_degree(const Poly& f, std::uint64_t p);
bool is_irreducible(const Poly& f, std::uint64_t p);

}  // namespace modp

// First n primes.
std::vector<std::uint64_t> first_primes(int n);
// Primes near 2^31 used for modular certificates.
const std::vector<std::uint64_t>& large_primes();

}  // namespace mfz
