#pragma once

// Algebraic zeros: Hilbert class polynomials from CM values of j, the D = 1
// classification of Miller forms vanishing at a CM point, exact divisibility
// of Faber polynomials by class polynomials, and a mod-p Galois screen.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfz/mp.hpp"
#include "mfz/poly.hpp"

namespace mfz {

struct UnsupportedRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr long kMaxClassNumber = 32;
inline constexpr long kMaxCheckDegree = 10;
inline constexpr long kMaxScreenDegree = 100;

// Primitive reduced forms (a, b, c) of discriminant b^2 - 4ac = -d:
// |b| <= a <= c, and b >= 0 when |b| = a or a = c.
struct QuadForm {
  long a = 0, b = 0, c = 0;
};
std::vector<QuadForm> reduced_forms(long d);

// The point (-b + sqrt(-d)) / 2a of a reduced form, in the fundamental domain.
Complex cm_point(const QuadForm& f, long d, mpfr_prec_t prec);

// The CM point of the maximal-index order: (1 + sqrt(-d)) / 2 for d = 3 mod 4,
// sqrt(-d) / 2 for d = 0 mod 4.
Complex principal_cm_point(long d, mpfr_prec_t prec);

struct HilbertClassPoly {
  long d = 0;
  long h = 0;
  IntPoly poly;  // monic, degree h
  mpfr_prec_t precision = 0;   // precision that passed the rounding check
  double rounding_margin = 0;  // max distance of a coefficient to its integer
};

// d > 0 with d = 0 or 3 mod 4 and h(-d) <= 32. Starts at pi sqrt(d) h / ln 2
// + 64 bits and doubles until every coefficient is within 0.01 of an integer
// (PrecisionExhausted past 2^16 bits).
HilbertClassPoly hilbert_class_poly(long d);

// Faber polynomial of g_{k, l-1}: x + 24 l - 744 + 2 k' / B_{k'} (the last
// term absent for k' = 0). Valid for every integer l.
IntPoly d1_faber_closed_form(int kprime, const mpz_class& ell);

// Class-number-one discriminants -d.
const std::vector<long>& class_number_one();

struct D1Row {
  long d = 0;
  int kprime = 0;
  mpz_class ell;
  mpz_class k;   // 12 l + k'
  std::string zero;  // "(1+sqrt(-19))/2" style
};

// Solutions of j(CM point of -d) = 744 - 24 l - 2k'/B_{k'} with integral l,
// over the class-number-one list and all six k', rows ordered by d then k'
// in the order 0, 4, 6, 8, 10, 14. Elliptic points (d = 3, 4) are dropped.
// Holomorphic rows need l >= 1; include_weak adds the l <= 0 solutions.
std::vector<D1Row> d1_classification(bool include_weak = false);
std::string d1_json(const std::vector<D1Row>& rows);

struct CMZeroReport {
  std::int64_t k = 0, m = 0;
  long d = 0;
  bool divisible = false;
  double residue_norm = 0;  // max |coefficient| of the remainder
  IntPoly remainder;
};

// Exact remainder of Faber(k, m) modulo H_{-d}. Needs D = l - m <= 10 and
// h(-d) <= D (UnsupportedRange otherwise).
CMZeroReport check_cm_zero(std::int64_t k, std::int64_t m, long d);

enum class ScreenStatus { Witnesses, Inconclusive, Degenerate };
std::string screen_status_name(ScreenStatus s);

struct ScreenReport {
  int kprime = 0;
  long D = 0;
  std::int64_t ell_eval = 0;
  std::uint64_t p = 0;  // F irreducible mod p (0: none found)
  std::uint64_t q = 0;  // F = linear * irreducible mod q (0: none found)
  long primes_tried = 0;
  ScreenStatus status = ScreenStatus::Inconclusive;
};

// Factor patterns of F_{k',D}(x, l_eval), the Faber polynomial of
// g_{12 l_eval + k', l_eval - D}, modulo the first prime_budget primes.
// Primes <= D are skipped: the coefficients of F_{k',D}(x, l) are integer
// valued polynomials in l of degree <= D, so their denominators divide D!.
ScreenReport modp_screen(int kprime, long D, std::int64_t ell_eval = 0, int prime_budget = 1000);
std::string screen_json(const ScreenReport& r);

namespace modp {
// f = (linear) * (irreducible of degree deg f - 1) modulo p, f squarefree.
bool is_linear_times_irreducible(const Poly& f, std::uint64_t p);
}  // namespace modp

}  // namespace mfz
