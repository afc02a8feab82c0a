#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "mfz/roots.hpp"

using namespace mfz;

namespace {

IntPoly P(std::initializer_list<long> ascending) {
  std::vector<mpz_class> c;
  for (long x : ascending) c.emplace_back(x);
  return IntPoly(std::move(c));
}

// Exact bisection on a sign change of p over rationals.
mpq_class bisect_root(const IntPoly& p, mpq_class lo, mpq_class hi, int steps) {
  int slo = sign_at(p, lo);
  for (int i = 0; i < steps; ++i) {
    mpq_class mid = (lo + hi) / 2;
    int s = sign_at(p, mid);
    if (s == 0) return mid;
    if (s == slo) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

// Winding number of p around the boundary of [x0,x1] x [y0,y1], in double.
int winding(const IntPoly& p, double x0, double x1, double y0, double y1) {
  std::vector<double> c;
  for (const auto& a : p.c) c.push_back(a.get_d());
  auto ev = [&](std::complex<double> z) {
    std::complex<double> acc = 0;
    for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) acc = acc * z + c[i];
    return acc;
  };
  std::vector<std::complex<double>> path;
  const int n = 4000;
  for (int i = 0; i < n; ++i) path.push_back({x0 + (x1 - x0) * i / n, y0});
  for (int i = 0; i < n; ++i) path.push_back({x1, y0 + (y1 - y0) * i / n});
  for (int i = 0; i < n; ++i) path.push_back({x1 - (x1 - x0) * i / n, y1});
  for (int i = 0; i < n; ++i) path.push_back({x0, y1 - (y1 - y0) * i / n});
  double total = 0;
  for (size_t i = 0; i < path.size(); ++i) {
    auto a = ev(path[i]), b = ev(path[(i + 1) % path.size()]);
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

}  // namespace

TEST_CASE("complex_roots examples") {
  auto r = complex_roots(P({-720, 1}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].real);
  CHECK(r[0].z.re == Real(720L, 64));
  r = complex_roots(P({2, -3, 1}));
  REQUIRE(r.size() == 2);
  CHECK(std::fabs(r[0].z.re.to_double() - 1) < 1e-30);
  CHECK(std::fabs(r[1].z.re.to_double() - 2) < 1e-30);
  r = complex_roots(P({1, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK_FALSE(r[0].real);
  CHECK(r[0].z.im < 0.0);
  CHECK(std::fabs(r[1].z.im.to_double() - 1) < 1e-30);
  // Multiplicities come from the squarefree structure.
  r = complex_roots(P({-2, 1}) * P({-2, 1}) * P({0, 1}) * P({1, 0, 1}));
  REQUIRE(r.size() == 4);
  int total = 0;
  for (const auto& x : r) total += x.multiplicity;
  CHECK(total == 5);
  CHECK_THROWS(complex_roots(P({3})));
}

TEST_CASE("Faber(24, 0) roots against bisection and the argument principle") {
  auto f = faber_poly(24, 0).poly();
  auto r = complex_roots(f, {1e-40});
  REQUIRE(r.size() == 2);
  for (const auto& x : r) {
    REQUIRE(x.real);
    CHECK(x.radius <= 1e-40);
    double xd = x.z.re.to_double();
    mpq_class lo = dyadic_near(xd - 1e-6), hi = dyadic_near(xd + 1e-6);
    REQUIRE(sign_at(f, lo) * sign_at(f, hi) < 0);
    mpq_class oracle = bisect_root(f, lo, hi, 120);
    CHECK(std::fabs(mpq_class(x.z.re.to_rational() - oracle).get_d()) < 1e-20);
  }
  CHECK(winding(f, 1, 1727, -1, 1) == 2);
  CHECK(count_real_roots_in(f, 0, 1728) == 2);
}

TEST_CASE("Vieta relations for a polynomial with complex roots") {
  auto F = faber_poly(240, 5);  // l = 20, D = 15
  auto r = complex_roots(F.poly(), {1e-35});
  Complex sum(256), prod(Real(1L, 256), Real(0L, 256));
  double rad_sum = 0;
  for (const auto& x : r) {
    for (int i = 0; i < x.multiplicity; ++i) {
      sum += x.z;
      prod = prod * x.z;
    }
    rad_sum += x.radius.to_double();
  }
  CHECK(std::fabs(sum.re.to_double() + F.y[1].get_d()) <= rad_sum + 1e-25 * std::fabs(F.y[1].get_d()));
  CHECK(std::fabs(sum.im.to_double()) <= rad_sum + 1e-25);
  Real want(F.y.back(), 256);
  if (F.D % 2) want = -want;
  CHECK(abs((prod.re - want) / want).to_double() <= 1e-20);
}

TEST_CASE("exact arc count for k = 1200, m = 0 agrees with certified roots") {
  auto F = faber_poly(1200, 0);
  CHECK(count_arc_roots(F) == 100);
  auto zs = zeros_of_faber(F);
  CHECK(zs.on_arc == 100);
  CHECK(zs.off_arc == 0);
  for (const auto& z : zs.zeros) {
    CHECK(z.kind == ZeroKind::Arc);
    CHECK(std::fabs(norm(z.tau).to_double() - 1) < 1e-25);
  }
  double disc = equidistribution_discrepancy(zs, M_PI / 2, 2 * M_PI / 3);
  CHECK(disc <= 0.05);
  CHECK(disc == doctest::Approx(0.0050996794466).epsilon(1e-9));
}

TEST_CASE("zeros_of_miller small cases") {
  auto e = zeros_of_miller(12, 1);
  CHECK(e.zeros.empty());
  CHECK(e.D == 0);
  auto z = zeros_of_miller(12, 0);
  REQUIRE(z.zeros.size() == 1);
  CHECK(z.zeros[0].kind == ZeroKind::Arc);
  CHECK(std::fabs(norm(z.zeros[0].tau).to_double() - 1) < 1e-30);
  CHECK(abs(j_value(z.zeros[0].tau, 192) - Complex(720, 0, 192)).to_double() < 1e-25);
  auto csv = zeroset_csv(z);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find(",arc\n") != std::string::npos);
}

TEST_CASE("off-arc zeros appear at delta = 0.74 for k = 1200") {
  auto zs = zeros_of_miller(1200, 74);
  CHECK(zs.D == 26);
  CHECK(zs.off_arc >= 1);
  CHECK(zs.on_arc == zs.exact_arc_count);
  CHECK(zs.on_arc + zs.off_arc + zs.elliptic == zs.D);
  for (const auto& z : zs.zeros) {
    CHECK(in_fundamental_domain(z.tau, 1e-20));
    CHECK(z.jradius <= 1e-30);
  }
}

TEST_CASE("elliptic Faber roots are deflated exactly") {
  // (x)(x - 1728)(x - 100): one arc zero and two elliptic ones.
  FaberPolynomial f{0, 0, 3, {}};
  f.y = {1, -1828, 172800, 0};
  auto zs = zeros_of_faber(f);
  CHECK(zs.elliptic == 2);
  CHECK(zs.on_arc == 1);
  CHECK(zs.zeros[0].kind == ZeroKind::EllipticRho);
  CHECK(zs.zeros[1].kind == ZeroKind::EllipticI);
}

TEST_CASE("weakly holomorphic zeros") {
  auto zs = zeros_of_miller(-120, -16);  // l = -10, D = 6
  CHECK(zs.on_arc + zs.off_arc + zs.elliptic == 6);
  CHECK(zs.on_arc == count_arc_roots(faber_poly(-120, -16)));
}

TEST_CASE("hints never change exact counts") {
  std::mt19937 rng(9);
  for (int t = 0; t < 25; ++t) {
    std::int64_t ell = 5 + rng() % 60;
    int kp = std::array<int, 6>{0, 4, 6, 8, 10, 14}[rng() % 6];
    std::int64_t m = rng() % ell;
    auto F = faber_poly(12 * ell + kp, m);
    auto p = F.poly();
    CHECK(count_arc_roots(F) == count_real_roots_in(p, 0, 1728));
  }
}

TEST_CASE("discrepancy diagnostics") {
  CHECK(star_discrepancy({0.5}) == doctest::Approx(0.5));
  std::vector<double> u;
  const int n = 37;
  for (int i = 0; i < n; ++i) u.push_back((i + 0.5) / n);
  CHECK(star_discrepancy(u) <= 1.0 / n + 1e-12);
  ZeroSet empty;
  CHECK_THROWS_AS(equidistribution_discrepancy(empty, 1.6, 2.0), std::domain_error);
}

TEST_CASE("output is deterministic") {
  auto a = zeroset_csv(zeros_of_miller(300, 12));
  auto b = zeroset_csv(zeros_of_miller(300, 12));
  CHECK(a == b);
  auto j = zeroset_json(zeros_of_miller(300, 12));
  CHECK(j.find("\"on_arc\"") != std::string::npos);
}

TEST_CASE("imaginary parts stay in the logarithmic region") {
  const double c = std::exp(2 * M_PI) / 1728.0;
  double worst = 0;
  for (std::int64_t k : {120L, 600L, 1200L}) {
    std::int64_t ell = k / 12;
    for (std::int64_t m : {ell / 2, (3 * ell) / 4, ell - 3}) {
      auto zs = zeros_of_miller(k, m);
      double bound = 2 * std::log(static_cast<double>(k)) / (1 - c) + 10;
      for (const auto& z : zs.zeros) {
        CHECK(z.tau.im.to_double() <= bound);
        worst = std::max(worst, z.tau.im.to_double());
      }
    }
  }
  MESSAGE("largest Im tau: " << worst);
}
