#include "mfz/cm.hpp"

#include <cmath>
#include <numeric>

#include "json.hpp"
#include "mfz/miller.hpp"
#include "mfz/modular.hpp"
#include "mfz/qseries.hpp"

namespace mfz {

namespace {

constexpr int kKprimes[] = {0, 4, 6, 8, 10, 14};

void check_disc(long d) {
  if (d <= 0 || (d % 4 != 0 && d % 4 != 3)) throw std::invalid_argument("discriminant -d needs d > 0, d = 0 or 3 mod 4");
}

// 744 - 2k'/B_{k'}: the root of the D = 1 Faber polynomial is this minus 24 l.
mpz_class d1_root_offset(int kprime) {
  if (kprime == 0) return 744;
  mpq_class t = mpq_class(2 * kprime) / bernoulli(kprime);
  if (t.get_den() != 1) throw std::logic_error("2k'/B_k' is not an integer");
  return mpz_class(744) - t.get_num();
}

std::string zero_name(long d) {
  if (d % 4 == 3) return "(1+sqrt(-" + std::to_string(d) + "))/2";
  return "sqrt(-" + std::to_string(d) + ")/2";
}

}  // namespace

std::vector<QuadForm> reduced_forms(long d) {
  check_disc(d);
  std::vector<QuadForm> out;
  // a <= c and |b| <= a give 3 a^2 <= 4ac - b^2 = d.
  for (long a = 1; 3 * a * a <= d; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b + d) % (4 * a) != 0) continue;
      long c = (b * b + d) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

Complex cm_point(const QuadForm& f, long d, mpfr_prec_t prec) {
  Real two_a(2 * f.a, prec);
  return {Real(-f.b, prec) / two_a, sqrt(Real(d, prec)) / two_a};
}

Complex principal_cm_point(long d, mpfr_prec_t prec) {
  check_disc(d);
  QuadForm f{1, d % 4 == 3 ? 1 : 0, 0};
  Complex z = cm_point(f, d, prec);
  // (-1 + sqrt(-d)) / 2 is the fundamental-domain representative; the
  // classical name of the point is its translate by 1.
  if (d % 4 == 3) z.re = Real(1L, prec) / 2L;
  return z;
}

HilbertClassPoly hilbert_class_poly(long d) {
  auto forms = reduced_forms(d);
  const long h = static_cast<long>(forms.size());
  if (h > kMaxClassNumber) throw UnsupportedRange("hilbert_class_poly: class number above 32");
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::ceil(M_PI * std::sqrt(static_cast<double>(d)) * h / std::log(2.0))) + 64;
  for (; prec <= (1 << 16); prec *= 2) {
    // Descending coefficients of prod (x - j_i).
    std::vector<Complex> P{Complex(Real(1L, prec), Real(0L, prec))};
    for (const auto& f : forms) {
      Complex j = j_value(cm_point(f, d, prec), prec);
      P.push_back(Complex(Real(0L, prec), Real(0L, prec)));
      for (size_t i = P.size() - 1; i >= 1; --i) P[i] -= j * P[i - 1];
    }
    std::vector<mpz_class> y;
    double margin = 0;
    for (const auto& c : P) {
      mpz_class r;
      mpfr_get_z(r.get_mpz_t(), c.re.get(), MPFR_RNDN);
      margin = std::max({margin, abs(c.re - Real(r, prec)).to_double(), abs(c.im).to_double()});
      y.push_back(r);
    }
    if (margin < 0.01) {
      HilbertClassPoly H;
      H.d = d;
      H.h = h;
      H.poly = IntPoly::from_descending(y);
      H.precision = prec;
      H.rounding_margin = margin;
      return H;
    }
  }
  throw PrecisionExhausted("hilbert_class_poly: rounding margin not reached");
}

IntPoly d1_faber_closed_form(int kprime, const mpz_class& ell) {
  return IntPoly({mpz_class(24 * ell) - d1_root_offset(kprime), mpz_class(1)});
}

const std::vector<long>& class_number_one() {
  static const std::vector<long> ds{3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163};
  return ds;
}

std::vector<D1Row> d1_classification(bool include_weak) {
  std::vector<D1Row> rows;
  for (long d : class_number_one()) {
    auto H = hilbert_class_poly(d);
    if (H.h != 1) throw std::logic_error("class number one list is wrong");
    const mpz_class j = -H.poly.c[0];
    // j = 0 and j = 1728 are rho and i.
    if (j == 0 || j == 1728) continue;
    for (int kp : kKprimes) {
      mpz_class num = d1_root_offset(kp) - j;
      if (num % 24 != 0) continue;
      mpz_class ell = num / 24;
      if (ell < 1 && !include_weak) continue;
      rows.push_back({d, kp, ell, 12 * ell + kp, zero_name(d)});
    }
  }
  return rows;
}

std::string d1_json(const std::vector<D1Row>& rows) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["disc"] = -r.d;
    o["zero"] = r.zero;
    o["kprime"] = r.kprime;
    o["k"] = std::stoll(r.k.get_str());
    o["ell"] = std::stoll(r.ell.get_str());
    a.push_back(o);
  }
  return a.dump(2) + "\n";
}

CMZeroReport check_cm_zero(std::int64_t k, std::int64_t m, long d) {
  auto w = decompose_weight(k);
  const std::int64_t D = w.ell - m;
  if (D < 1 || D > kMaxCheckDegree) throw UnsupportedRange("check_cm_zero: needs 1 <= l - m <= 10");
  auto H = hilbert_class_poly(d);
  if (H.h > D) throw UnsupportedRange("check_cm_zero: class number exceeds the Faber degree");
  CMZeroReport r;
  r.k = k;
  r.m = m;
  r.d = d;
  r.remainder = rem_monic(faber_poly(k, m).poly(), H.poly);
  r.divisible = r.remainder.is_zero();
  for (const auto& c : r.remainder.c) r.residue_norm = std::max(r.residue_norm, std::fabs(c.get_d()));
  return r;
}

namespace modp {

bool is_linear_times_irreducible(const Poly& f0, std::uint64_t p) {
  Poly f = make_monic(f0, p);
  const long n = degree(f);
  if (n < 2 || !is_squarefree(f, p)) return false;
  Poly x = {0, 1};
  Poly roots = gcd(f, sub(powmod(x, p, f, p), x, p), p);  // product of the linear factors
  if (n == 2) return degree(roots) == 2;
  return degree(roots) == 1 && is_irreducible(quo(f, roots, p), p);
}

}  // namespace modp

std::string screen_status_name(ScreenStatus s) {
  switch (s) {
    case ScreenStatus::Witnesses: return "witnesses";
    case ScreenStatus::Inconclusive: return "inconclusive";
    case ScreenStatus::Degenerate: return "degenerate";
  }
  return "?";
}

ScreenReport modp_screen(int kprime, long D, std::int64_t ell_eval, int prime_budget) {
  if (D < 1 || D > kMaxScreenDegree) throw UnsupportedRange("modp_screen: needs 1 <= D <= 100");
  ScreenReport r;
  r.kprime = kprime;
  r.D = D;
  r.ell_eval = ell_eval;
  const std::int64_t k = 12 * ell_eval + kprime;
  if (decompose_weight(k).kprime != kprime) throw std::invalid_argument("modp_screen: k' not in {0,4,6,8,10,14}");
  if (D == 1) {
    r.status = ScreenStatus::Degenerate;
    return r;
  }
  const IntPoly F = faber_poly(k, ell_eval - D).poly();
  for (std::uint64_t p : first_primes(prime_budget)) {
    if (r.p && r.q) break;
    if (p <= static_cast<std::uint64_t>(D)) continue;
    ++r.primes_tried;
    auto f = modp::reduce(F, p);
    if (!r.p && modp::is_irreducible(f, p)) r.p = p;
    else if (!r.q && modp::is_linear_times_irreducible(f, p)) r.q = p;
  }
  r.status = (r.p && r.q) ? ScreenStatus::Witnesses : ScreenStatus::Inconclusive;
  return r;
}

std::string screen_json(const ScreenReport& r) {
  nlohmann::ordered_json o;
  o["kprime"] = r.kprime;
  o["D"] = r.D;
  o["ell_eval"] = r.ell_eval;
  o["p"] = r.p;
  o["q"] = r.q;
  o["primes_tried"] = r.primes_tried;
  o["status"] = screen_status_name(r.status);
  return o.dump(2) + "\n";
}

}  // namespace mfz
