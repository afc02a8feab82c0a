#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mfz/poly.hpp"

using namespace mfz;

namespace {

IntPoly P(std::initializer_list<long> ascending) {
  std::vector<mpz_class> c;
  for (long x : ascending) c.emplace_back(x);
  return IntPoly(std::move(c));
}

IntPoly from_roots(const std::vector<long>& roots) {
  IntPoly r = P({1});
  for (long a : roots) r = r * P({-a, 1});
  return r;
}

// Roots counted by scanning every integer and half-integer sign; valid only
// when all roots are integers or well separated from the scan points.
long brute_integer_roots(const std::vector<long>& roots, long a, long b) {
  long n = 0;
  for (long r : roots)
    if (r > a && r < b) ++n;
  return n;
}

// Brute force irreducibility mod p: no monic factor of degree <= n/2.
bool brute_irreducible(const modp::Poly& f, std::uint64_t p) {
  long n = modp::degree(f);
  for (long d = 1; d <= n / 2; ++d) {
    std::uint64_t total = 1;
    for (long i = 0; i < d; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      modp::Poly g(static_cast<size_t>(d + 1));
      std::uint64_t t = idx;
      for (long i = 0; i < d; ++i) {
        g[static_cast<size_t>(i)] = t % p;
        t /= p;
      }
      g[static_cast<size_t>(d)] = 1;
      if (modp::rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("arithmetic and printing") {
  auto f = P({-720, 1});
  CHECK(f.to_string() == "x - 720");
  CHECK(IntPoly::from_descending({1, 0, -2}) == P({-2, 0, 1}));
  CHECK((f * f).to_string() == "x^2 - 1440x + 518400");
  CHECK((f - f).is_zero());
  CHECK(eval(f * P({1, 1}), 720) == 0);
  CHECK(sign_at(P({-1, 0, 2}), mpq_class(1, 2)) < 0);
  CHECK(sign_at(P({-1, 0, 2}), mpq_class(3, 4)) > 0);
  CHECK(divide_exact(f * P({3, 5}), P({3, 5})) == f);
  CHECK_THROWS(divide_exact(P({1, 0, 1}), P({1, 1})));
  CHECK(rem_monic(P({1, 0, 1}), P({1, 1})) == P({2}));
}

TEST_CASE("gcd and squarefree decomposition") {
  auto a = from_roots({1, 2, 2, 3, 3, 3});
  auto g = gcd(a, derivative(a));
  CHECK(g == from_roots({2, 3, 3}));
  auto sq = squarefree_decomposition(a * P({7}));
  REQUIRE(sq.size() == 3);
  CHECK(sq[0] == std::make_pair(from_roots({1}), 1));
  CHECK(sq[1] == std::make_pair(from_roots({2}), 2));
  CHECK(sq[2] == std::make_pair(from_roots({3}), 3));
  CHECK(is_squarefree(from_roots({1, 2, 5})));
  CHECK_FALSE(is_squarefree(from_roots({1, 2, 2})));
  // Non-monic factors with multiplicity.
  auto b = P({1, 2}) * P({1, 2}) * P({-3, 0, 5});
  auto sb = squarefree_decomposition(b);
  REQUIRE(sb.size() == 2);
  CHECK(sb[0].first == P({-3, 0, 5}));
  CHECK(sb[1].first == P({1, 2}));
  CHECK(sb[1].second == 2);
}

TEST_CASE("shifts and transforms") {
  auto f = P({1, 2, 3});
  CHECK(taylor_shift(f, 1) == P({6, 8, 3}));
  CHECK(taylor_shift(f, -2) == P({9, -10, 3}));
  CHECK(reverse(f) == P({3, 2, 1}));
  CHECK(scale(f, 2) == P({1, 4, 12}));
  CHECK(sign_variations(P({1, 0, -1, 0, 2})) == 2);
}

TEST_CASE("exact root counts on examples") {
  auto f = P({-720, 1});
  CHECK(count_real_roots_in(f, 0, 1728) == 1);
  CHECK(count_real_roots_in(f, 1000, 1728) == 0);
  CHECK(count_real_roots_in(f, 720, 1728) == 0);
  CHECK(descartes_bound(f, 0, 1728) == 1);
  // Two close roots, double roots and a root at a hint.
  auto g = P({-1, 0, 2});  // roots +-1/sqrt2
  CHECK(count_real_roots_in(g, 0, 1) == 1);
  CHECK(count_real_roots_in(g, -1, 1) == 2);
  auto h = from_roots({3, 3, 5, 7});
  CHECK(count_real_roots_in(h, 0, 10) == 4);
  CHECK(count_real_roots_in(h, 0, 10, {mpq_class(5), mpq_class(4)}) == 4);
  CHECK(count_real_roots_in(h, 3, 7) == 1);
  auto close = P({1000001, -2000000, 1000000});  // (1000x-1000)^2 + 1: no real roots
  CHECK(count_real_roots_in(close, 0, 2) == 0);
  auto sep = P({-999999, 0, 1000000});  // roots +-0.9999995
  CHECK(count_real_roots_in(sep, mpq_class(9, 10), 1) == 1);
  CHECK_THROWS(count_real_roots_in(f, 1, 1));
}

TEST_CASE("root counts agree with an integer-root oracle") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> dist(-40, 40);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<long> roots;
    int n = 1 + trial % 9;
    for (int i = 0; i < n; ++i) roots.push_back(dist(rng));
    auto f = from_roots(roots) * P({3, 0, 1});  // extra pair of complex roots
    long a = dist(rng), b = a + 1 + (trial % 50);
    std::vector<mpq_class> hints;
    for (long x = a + 1; x < b; x += 3) hints.push_back(mpq_class(2 * x + 1, 2));
    long want = brute_integer_roots(roots, a, b);
    CHECK(count_real_roots_in(f, a, b) == want);
    CHECK(count_real_roots_in(f, a, b, hints) == want);
  }
}

TEST_CASE("dyadic approximations") {
  CHECK(dyadic_near(0.5) == mpq_class(1, 2));
  CHECK(dyadic_near(0.0) == 0);
  mpq_class q = dyadic_near(1.0 / 3.0);
  CHECK(abs(q - mpq_class(1, 3)) < mpq_class(1, 1 << 30));
  CHECK(mpz_popcount(q.get_den().get_mpz_t()) == 1);
  CHECK(dyadic_near(-1234.5678, 40).get_d() == doctest::Approx(-1234.5678));
}

TEST_CASE("prime field kernels") {
  CHECK(modp::is_irreducible({1, 0, 1}, 3));
  CHECK_FALSE(modp::is_irreducible({1, 0, 1}, 5));
  CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  for (auto q : large_primes()) {
    CHECK(q < (1ULL << 31));
    CHECK(q > (1ULL << 30));
  }
  auto f = modp::reduce(P({-1, 0, 0, 0, 1}), 7);  // x^4 - 1 = (x-1)(x+1)(x^2+1) mod 7
  auto dd = modp::distinct_degree(f, 7);
  REQUIRE(dd.size() == 2);
  CHECK(dd[0].first == 1);
  CHECK(modp::degree(dd[0].second) == 2);
  CHECK(dd[1].first == 2);
  CHECK(modp::inv(3, 7) == 5);
  CHECK(modp::powmod({0, 1}, 7, {1, 0, 1}, 7) == modp::Poly{0, 6});
}

TEST_CASE("irreducibility agrees with brute-force factor search") {
  std::mt19937 rng(5);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (int trial = 0; trial < 40; ++trial) {
      long n = 2 + trial % 4;
      modp::Poly f(static_cast<size_t>(n + 1));
      for (long i = 0; i < n; ++i) f[static_cast<size_t>(i)] = dist(rng);
      f[static_cast<size_t>(n)] = 1;
      CHECK(modp::is_irreducible(f, p) == brute_irreducible(f, p));
    }
  }
}
