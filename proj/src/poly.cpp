#include "mfz/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mfz {

IntPoly IntPoly::from_descending(const std::vector<mpz_class>& y) {
  std::vector<mpz_class> c(y.rbegin(), y.rend());
  return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const mpz_class& a = c[static_cast<size_t>(i)];
    if (a == 0) continue;
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    mpz_class m = abs(a);
    if (m != 1 || i == 0) os << m;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> r(a.c.size() + b.c.size() - 1);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
  return IntPoly(std::move(r));
}

mpz_class eval(const IntPoly& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (long i = p.degree(); i >= 0; --i) {
    acc *= x;
    acc += p.c[static_cast<size_t>(i)];
  }
  return acc;
}

int sign_at(const IntPoly& p, const mpq_class& x) {
  if (p.is_zero()) return 0;
  const mpz_class& a = x.get_num();
  const mpz_class& b = x.get_den();
  // b^n p(a/b) by homogeneous Horner.
  mpz_class acc = p.lead(), bp = 1;
  for (long i = p.degree() - 1; i >= 0; --i) {
    bp *= b;
    acc *= a;
    mpz_addmul(acc.get_mpz_t(), p.c[static_cast<size_t>(i)].get_mpz_t(), bp.get_mpz_t());
  }
  return sgn(acc);
}

IntPoly derivative(const IntPoly& p) {
  if (p.degree() < 1) return IntPoly();
  std::vector<mpz_class> r(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i) r[i - 1] = p.c[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(r));
}

mpz_class content(const IntPoly& p) {
  mpz_class g = 0;
  for (const auto& a : p.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  mpz_class g = content(p);
  if (p.lead() < 0) g = -g;
  if (g == 1) return p;
  IntPoly r = p;
  for (auto& a : r.c) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
  return r;
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return IntPoly();
    throw std::domain_error("divide_exact: inexact polynomial division");
  }
  std::vector<mpz_class> r = a.c;
  long n = a.degree(), m = b.degree();
  std::vector<mpz_class> q(static_cast<size_t>(n - m + 1));
  for (long i = n - m; i >= 0; --i) {
    mpz_class& top = r[static_cast<size_t>(i + m)];
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t()))
      throw std::domain_error("divide_exact: inexact polynomial division");
    mpz_divexact(q[static_cast<size_t>(i)].get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    for (long j = 0; j <= m; ++j)
      mpz_submul(r[static_cast<size_t>(i + j)].get_mpz_t(), q[static_cast<size_t>(i)].get_mpz_t(),
                 b.c[static_cast<size_t>(j)].get_mpz_t());
  }
  for (long i = 0; i < m; ++i)
    if (r[static_cast<size_t>(i)] != 0) throw std::domain_error("divide_exact: inexact polynomial division");
  return IntPoly(std::move(q));
}

IntPoly rem_monic(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero() || b.lead() != 1) throw std::invalid_argument("rem_monic needs a monic divisor");
  std::vector<mpz_class> r = a.c;
  long m = b.degree();
  for (long i = a.degree(); i >= m; --i) {
    mpz_class t = r[static_cast<size_t>(i)];
    if (t == 0) continue;
    for (long j = 0; j <= m; ++j)
      mpz_submul(r[static_cast<size_t>(i - m + j)].get_mpz_t(), t.get_mpz_t(), b.c[static_cast<size_t>(j)].get_mpz_t());
  }
  if (static_cast<long>(r.size()) > m) r.resize(static_cast<size_t>(std::max(0L, m)));
  return IntPoly(std::move(r));
}

namespace {

// lc(b)^(deg a - deg b + 1) a mod b.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> r = a.c;
  long m = b.degree();
  const mpz_class& lb = b.lead();
  for (long i = a.degree(); i >= m; --i) {
    mpz_class t = r[static_cast<size_t>(i)];
    for (auto& x : r) x *= lb;
    for (long j = 0; j <= m; ++j)
      mpz_submul(r[static_cast<size_t>(i - m + j)].get_mpz_t(), t.get_mpz_t(), b.c[static_cast<size_t>(j)].get_mpz_t());
    r.resize(static_cast<size_t>(i));
  }
  return IntPoly(std::move(r));
}

}  // namespace

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 1) return true;
  IntPoly dp = derivative(p);
  for (std::uint64_t q : large_primes()) {
    auto f = modp::reduce(p, q);
    if (modp::degree(f) != p.degree()) continue;
    auto g = modp::gcd(f, modp::reduce(dp, q), q);
    if (modp::degree(g) == 0) return true;
  }
  return gcd(p, dp).degree() == 0;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p0) {
  std::vector<std::pair<IntPoly, int>> out;
  IntPoly p = primitive_part(p0);
  if (p.degree() < 1) return out;
  if (is_squarefree(p)) {
    out.emplace_back(p, 1);
    return out;
  }
  // Yun's algorithm over Z; every quotient is exact by Gauss's lemma.
  IntPoly dp = derivative(p);
  IntPoly a = gcd(p, dp);
  IntPoly b = divide_exact(p, a);
  IntPoly c = divide_exact(dp, a);
  IntPoly d = c - derivative(b);
  int i = 1;
  while (b.degree() >= 1) {
    IntPoly ai = gcd(b, d);
    b = divide_exact(b, ai);
    c = divide_exact(d, ai);
    d = c - derivative(b);
    if (ai.degree() >= 1) out.emplace_back(ai, i);
    ++i;
  }
  return out;
}

IntPoly taylor_shift(const IntPoly& p, const mpz_class& s) {
  IntPoly r = p;
  long n = r.degree();
  if (n < 1 || s == 0) return r;
  auto& a = r.c;
  bool one = (s == 1);
  for (long i = 0; i < n; ++i) {
    for (long j = n - 1; j >= i; --j) {
      if (one) a[static_cast<size_t>(j)] += a[static_cast<size_t>(j + 1)];
      else mpz_addmul(a[static_cast<size_t>(j)].get_mpz_t(), s.get_mpz_t(), a[static_cast<size_t>(j + 1)].get_mpz_t());
    }
  }
  return r;
}

IntPoly reverse(const IntPoly& p) {
  std::vector<mpz_class> r(p.c.rbegin(), p.c.rend());
  return IntPoly(std::move(r));
}

IntPoly scale(const IntPoly& p, const mpz_class& s) {
  IntPoly r = p;
  mpz_class f = 1;
  for (auto& a : r.c) {
    a *= f;
    f *= s;
  }
  r.trim();
  return r;
}

int sign_variations(const IntPoly& p) {
  int v = 0, last = 0;
  for (const auto& a : p.c) {
    int s = sgn(a);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

namespace {

// W^n p((C + E t)/W) for a = C/W, b = (C+E)/W: roots in (a,b) become roots in (0,1).
IntPoly to_unit_interval(const IntPoly& p, const mpq_class& a, const mpq_class& b) {
  mpz_class W;
  mpz_lcm(W.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  mpz_class C = a.get_num() * (W / a.get_den());
  mpz_class D = b.get_num() * (W / b.get_den());
  mpz_class E = D - C;
  long n = p.degree();
  std::vector<mpz_class> c(p.c.size());
  mpz_class w = 1;
  for (long i = n; i >= 0; --i) {
    c[static_cast<size_t>(i)] = p.c[static_cast<size_t>(i)] * w;
    w *= W;
  }
  IntPoly g(std::move(c));
  g = taylor_shift(g, C);
  g = scale(g, E);
  return primitive_part(g);
}

int unit_descartes(const IntPoly& g) { return sign_variations(taylor_shift(reverse(g), 1)); }

// Roots of a squarefree g in (0,1), by bisection with Descartes' rule.
long vca(const IntPoly& g) {
  long n = g.degree();
  if (n < 1) return 0;
  int v = unit_descartes(g);
  if (v <= 1) return v;
  std::vector<mpz_class> c(g.c.size());
  for (long i = 0; i <= n; ++i) mpz_mul_2exp(c[i].get_mpz_t(), g.c[i].get_mpz_t(), static_cast<mp_bitcnt_t>(n - i));
  IntPoly left = primitive_part(IntPoly(std::move(c)));
  IntPoly right = taylor_shift(left, 1);
  long mid = 0;
  if (right.c[0] == 0) {
    mid = 1;
    right.c.erase(right.c.begin());
  }
  return vca(left) + mid + vca(primitive_part(right));
}

struct Counter {
  const IntPoly& f;
  std::vector<mpq_class> pts;
  std::vector<int> sg;

  long count_open(size_t lo, size_t hi) const {
    int changes = 0, last = 0;
    for (size_t i = lo; i <= hi; ++i) {
      if (sg[i] == 0) continue;
      if (last != 0 && sg[i] != last) ++changes;
      last = sg[i];
    }
    IntPoly g = to_unit_interval(f, pts[lo], pts[hi]);
    int v = unit_descartes(g);
    if (v == changes) return changes;
    if (hi - lo == 1) return vca(g);
    size_t mid = (lo + hi) / 2;
    return count_open(lo, mid) + count_open(mid, hi);
  }
};

long count_squarefree(const IntPoly& f, const mpq_class& a, const mpq_class& b, const std::vector<mpq_class>& hints) {
  std::vector<mpq_class> inner;
  for (const auto& h : hints)
    if (h > a && h < b) inner.push_back(h);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  long total = 0;
  // Hints that are roots become interval boundaries counted once each.
  std::vector<mpq_class> bounds = {a};
  for (const auto& h : inner) {
    if (sign_at(f, h) == 0) ++total;
    bounds.push_back(h);
  }
  bounds.push_back(b);
  std::vector<int> sg(bounds.size());
  for (size_t i = 0; i < bounds.size(); ++i) sg[i] = sign_at(f, bounds[i]);
  size_t start = 0;
  for (size_t i = 1; i < bounds.size(); ++i) {
    if (sg[i] == 0 || i + 1 == bounds.size()) {
      Counter cnt{f, std::vector<mpq_class>(bounds.begin() + start, bounds.begin() + i + 1),
                  std::vector<int>(sg.begin() + start, sg.begin() + i + 1)};
      total += cnt.count_open(0, i - start);
      start = i;
    }
  }
  return total;
}

}  // namespace

int descartes_bound(const IntPoly& p, const mpq_class& a, const mpq_class& b) {
  return unit_descartes(to_unit_interval(p, a, b));
}

long count_real_roots_in(const IntPoly& p, const mpq_class& a, const mpq_class& b, const std::vector<mpq_class>& hints) {
  if (!(a < b)) throw std::invalid_argument("count_real_roots_in needs a < b");
  long total = 0;
  for (const auto& [f, mult] : squarefree_decomposition(p)) total += mult * count_squarefree(f, a, b, hints);
  return total;
}

mpq_class dyadic_near(double x, int bits) {
  if (x == 0.0 || !std::isfinite(x)) return mpq_class(0);
  int e;
  double m = std::frexp(x, &e);
  double M = std::nearbyint(std::ldexp(m, bits));
  mpq_class q{mpz_class(M)};
  int shift = e - bits;
  if (shift >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

namespace modp {

Poly reduce(const IntPoly& f, std::uint64_t p) {
  Poly r(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) r[i] = mpz_fdiv_ui(f.c[i].get_mpz_t(), p);
  trim(r);
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

namespace {
void divmod(const Poly& a, const Poly& b, std::uint64_t p, Poly* q, Poly* r) {
  if (b.empty()) throw std::domain_error("modp division by zero polynomial");
  Poly rr = a;
  long n = degree(a), m = degree(b);
  Poly qq(static_cast<size_t>(std::max(0L, n - m + 1)), 0);
  std::uint64_t il = inv(b.back(), p);
  for (long i = n - m; i >= 0; --i) {
    std::uint64_t t = rr[static_cast<size_t>(i + m)] * il % p;
    qq[static_cast<size_t>(i)] = t;
    if (!t) continue;
    for (long j = 0; j <= m; ++j) {
      auto& x = rr[static_cast<size_t>(i + j)];
      x = (x + p - t * b[static_cast<size_t>(j)] % p) % p;
    }
  }
  if (m >= 0 && static_cast<long>(rr.size()) > m) rr.resize(static_cast<size_t>(m));
  trim(rr);
  trim(qq);
  if (q) *q = std::move(qq);
  if (r) *r = std::move(rr);
}
}  // namespace

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

Poly quo(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly q;
  divmod(a, b, p, &q, nullptr);
  return q;
}

Poly make_monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t il = inv(a.back(), p);
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * il % p;
  return r;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

Poly derivative(const Poly& a, std::uint64_t p) {
  if (a.size() < 2) return {};
  Poly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (i % p) % p;
  trim(r);
  return r;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result = {1};
  Poly b = rem(base, f, p);
  while (e) {
    if (e & 1) result = rem(mul(result, b, p), f, p);
    e >>= 1;
    if (e) b = rem(mul(b, b, p), f, p);
  }
  return rem(result, f, p);
}

bool is_squarefree(const Poly& f, std::uint64_t p) {
  Poly d = derivative(f, p);
  if (d.empty()) return degree(f) <= 0;
  return degree(gcd(f, d, p)) == 0;
}

std::vector<std::pair<long, Poly>> distinct_degree(const Poly& f0, std::uint64_t p) {
  std::vector<std::pair<long, Poly>> out;
  Poly f = make_monic(f0, p);
  Poly x = {0, 1};
  Poly h = rem(x, f, p);
  for (long i = 1; degree(f) >= 2 * i; ++i) {
    h = powmod(h, p, f, p);
    Poly g = gcd(f, sub(h, x, p), p);
    if (degree(g) > 0) {
      out.emplace_back(i, g);
      f = quo(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.emplace_back(degree(f), f);
  return out;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
  long n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  if (!is_squarefree(f, p)) return false;
  auto dd = distinct_degree(f, p);
  return dd.size() == 1 && dd[0].first == n;
}

}  // namespace modp

std::vector<std::uint64_t> first_primes(int n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 2; static_cast<int>(out.size()) < n; ++c) {
    bool prime = true;
    for (std::uint64_t q : out) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

const std::vector<std::uint64_t>& large_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> v;
    mpz_class c = (mpz_class(1) << 31) - 1;
    while (v.size() < 6) {
      if (mpz_probab_prime_p(c.get_mpz_t(), 30)) v.push_back(c.get_ui());
      c -= 2;
    }
    return v;
  }();
  return primes;
}

}  // namespace mfz
