#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "mfz/szego.hpp"

using namespace mfz;

namespace {

const double kW = 0.278464542761073795109358739023;  // W(1/e), mpmath

std::complex<double> at_param(const PlaneCurve& c, double x) {
  size_t best = 0;
  for (size_t i = 0; i < c.params.size(); ++i)
    if (std::fabs(c.params[i] - x) < std::fabs(c.params[best] - x)) best = i;
  REQUIRE(std::fabs(c.params[best] - x) < 1e-12);
  return c.samples[best];
}

}  // namespace

TEST_CASE("lambert_w examples and a double-precision oracle") {
  CHECK(lambert_w(Real(0L, 128), 128).is_zero());
  CHECK(std::fabs(lambert_w(exp(Real(1L, 256)), 256).to_double() - 1) < 1e-70);
  Real w = lambert_w(exp(Real(-1L, 256)), 256);
  CHECK(std::fabs(w.to_double() - kW) < 1e-16);
  CHECK(w.to_string(20).substr(0, 7) == "2.78464");
  CHECK(lambert_w(-exp(Real(-1L, 128)), 128).to_double() == -1);
  CHECK_THROWS_AS(lambert_w(Real(-0.37, 128), 128), std::domain_error);
  CHECK(std::fabs(lambert_w(Real(2L, 128), 128).to_double() - 0.852605502013725491) < 1e-16);
  CHECK(std::fabs(lambert_w(Real(-0.3, 128), 128).to_double() + 0.489402227180214934) < 1e-16);
  CHECK(std::fabs(lambert_w(Real(1e6, 128), 128).to_double() - 11.3833580861400526) < 1e-14);
  for (double x = -0.36; x < 50; x += 0.173) {
    double want = boost::math::lambert_w0(x);
    CHECK(lambert_w(Real(x, 128), 128).to_double() == doctest::Approx(want).epsilon(1e-13));
  }
  // Residual at high precision.
  for (long n : {-3L, 1L, 7L, 1000L}) {
    Real x = Real(n, 400) / 10L;
    Real v = lambert_w(x, 400);
    CHECK(abs(v * exp(v) - x).to_double() < 1e-110);
  }
}

TEST_CASE("u_inverse") {
  CHECK(u_inverse(Real(1L, 128), 128).to_double() == 1);
  CHECK(std::fabs(u_inverse(Real(-1L, 128), 128).to_double() - kW) < 1e-16);
  CHECK(std::fabs(u_inverse(Real(0L, 128), 128).to_double() - std::exp(-1.0)) < 1e-16);
  CHECK_THROWS_AS(u_inverse(Real(1.01, 128), 128), std::domain_error);
  CHECK_THROWS_AS(u_inverse(Real(-1.5, 128), 128), std::domain_error);
  // The defining equation holds at full precision, including next to y = 1
  // where u' vanishes.
  for (double y : {-0.999, -0.5, 0.1, 0.7, 0.999, 1 - 1e-12}) {
    Real x = u_inverse(Real(y, 200), 200);
    CHECK(x >= Real(kW - 1e-15, 200));
    CHECK(x <= 1.0);
    Real back = (log(x) + 1L) / x;
    CHECK(abs(back - Real(y, 200)).to_double() < 1e-55);
  }
}

TEST_CASE("log_szego_point examples") {
  const double tp = 2 * M_PI;
  auto z = log_szego_point(Real(0L, 128), 1, 128);
  CHECK(z.re.is_zero());
  CHECK(std::fabs(z.im.to_double() - std::log(24.0) / tp) < 3e-16);
  z = log_szego_point(Real(0.5, 128), 1, 128);
  CHECK(std::fabs(z.im.to_double() - (std::log(24.0) - std::log(kW)) / tp) < 1e-15);
  z = log_szego_point(Real(-0.5, 128), 1, 128);
  CHECK(std::fabs(z.im.to_double() - (std::log(24.0) - std::log(kW)) / tp) < 1e-15);
  z = log_szego_point(Real(0.25, 128), -1, 128);
  CHECK(std::fabs(z.im.to_double() - (std::log(24.0) + 1) / tp) < 1e-15);
  CHECK_THROWS(log_szego_point(Real(0.6, 128), 1, 128));
  CHECK_THROWS(log_szego_point(Real(0.1, 128), 0, 128));
}

TEST_CASE("Szego curve samples, intercepts and symmetry") {
  auto S = szego_curve(200);
  CHECK(S.samples.size() > 200);
  CHECK(S.max_spacing <= 1.0 / 200 + 1e-15);
  CHECK(S.resolution < 1e-5);
  for (const auto& z : S.samples) {
    double r = std::abs(z * std::exp(1.0 - z));
    CHECK(std::fabs(r - 1) < 10 * S.resolution + 1e-13);
  }
  CHECK(std::fabs(at_param(S, 0).real() - 1) < 1e-15);
  CHECK(std::fabs(at_param(S, 0.5).real() + kW) < 1e-15);
  CHECK(std::fabs(at_param(S, -0.5).real() + kW) < 1e-15);
  CHECK(std::fabs(at_param(S, 0.25).imag() - std::exp(-1.0)) < 1e-15);
  CHECK(std::fabs(at_param(S, -0.25).imag() + std::exp(-1.0)) < 1e-15);
  // Closed under conjugation: x and -x give conjugate points.
  for (size_t i = 0; i < S.params.size(); ++i) {
    auto w = at_param(S, -S.params[i]);
    CHECK(std::abs(w - std::conj(S.samples[i])) < 1e-14);
  }
}

TEST_CASE("log Szego curves are even graphs over [-1/2, 1/2]") {
  for (int sign : {1, -1}) {
    auto L = log_szego_curve(sign, 100);
    CHECK(L.sign == sign);
    for (size_t i = 0; i + 1 < L.samples.size(); ++i) CHECK(L.samples[i].real() < L.samples[i + 1].real());
    for (size_t i = 0; i < L.samples.size(); ++i) {
      auto w = at_param(L, -L.params[i]);
      CHECK(std::fabs(w.imag() - L.samples[i].imag()) < 1e-14);
      // The defining relation: sign * 24 e^{2 pi i tau} lies on S.
      std::complex<double> s = double(sign) * 24.0 * std::exp(std::complex<double>(0, 2 * M_PI) * L.samples[i]);
      CHECK(std::fabs(std::abs(s * std::exp(1.0 - s)) - 1) < 1e-12);
    }
  }
}

TEST_CASE("cutoff constants") {
  auto c = cutoffs(128);
  CHECK(c.A_plus.to_string(10).substr(0, 6) == "6.2651");
  CHECK(c.S_plus.to_string(10).substr(0, 6) == "9.5518");
  CHECK(c.S_minus.to_string(10).substr(0, 6) == "1.1040");
  CHECK(c.A_minus.to_string(10).substr(0, 6) == "1.1609");
  // Double-precision oracle from boost's W.
  const double W = boost::math::lambert_w0(std::exp(-1.0));
  const double s3 = std::exp(std::sqrt(3.0) * M_PI), e2 = std::exp(2 * M_PI);
  CHECK(c.A_plus.to_double() == doctest::Approx(1 - 24 / (W * s3)).epsilon(1e-14));
  CHECK(c.A_minus.to_double() == doctest::Approx(1 + 24 / (W * e2)).epsilon(1e-14));
  CHECK(c.S_plus.to_double() == doctest::Approx(1 - 24 / e2).epsilon(1e-14));
  CHECK(c.S_minus.to_double() == doctest::Approx(1 + 24 / s3).epsilon(1e-14));
}

TEST_CASE("S_delta constructions") {
  CHECK_THROWS_AS(s_delta_curve(1.0, 10), std::domain_error);
  CHECK_THROWS_AS(s_delta_curve(0.0, 10), std::domain_error);
  CHECK_THROWS_AS(s_delta_curve(1 + 1e-4, 10, Construction::Exact), std::domain_error);
  CHECK(s_delta_curve(1 + 1e-4, 10).construction == Construction::Asymptotic);
  CHECK(s_delta_curve(0.98, 10).construction == Construction::Exact);

  // Asymptotic: L_+ shifted by -ln(0.02) / 2 pi at delta = 0.98, L_- at 1.02.
  auto a = s_delta_curve(0.98, 40, Construction::Asymptotic);
  auto lp = log_szego_curve(1, 40);
  CHECK(a.sign == 1);
  for (size_t i = 0; i < a.samples.size(); ++i)
    CHECK(std::fabs(a.samples[i].imag() - lp.samples[i].imag() + std::log(0.02) / (2 * M_PI)) < 1e-14);
  auto b = s_delta_curve(1.02, 40, Construction::Asymptotic);
  auto lm = log_szego_curve(-1, 40);
  CHECK(b.sign == -1);
  for (size_t i = 0; i < b.samples.size(); ++i)
    CHECK(std::fabs(b.samples[i].imag() - lm.samples[i].imag() + std::log(0.02) / (2 * M_PI)) < 1e-14);

  // Exact points against an mpmath findroot on 1728 kleinj.
  auto e = s_delta_curve(0.99, 40, Construction::Exact);
  CHECK(std::abs(at_param(e, 0) - std::complex<double>(0, 1.16568497793062)) < 1e-12);
  CHECK(std::abs(at_param(e, 0.25) - std::complex<double>(0.267899705828827, 1.39962151422163)) < 1e-12);
  CHECK(std::abs(at_param(e, 0.5) - std::complex<double>(0.5, 1.45503599671855)) < 1e-12);
  auto f = s_delta_curve(1.02, 40, Construction::Exact);
  CHECK(std::abs(at_param(f, 0) - std::complex<double>(0, 1.29912501627233)) < 1e-12);
  CHECK(std::abs(at_param(f, 0.3) - std::complex<double>(0.333099038103809, 1.28473107733626)) < 1e-12);
  auto g = s_delta_curve(0.9, 40, Construction::Exact);
  CHECK(std::abs(at_param(g, 0.1) - std::complex<double>(0.318008486828159, 1.00585386103609)) < 1e-12);
  for (const auto& z : g.samples) CHECK(in_fundamental_domain(Complex(z, 64), 1e-9));
}

TEST_CASE("exact and asymptotic S_delta converge as delta -> 1") {
  // Frozen from this implementation; the gap comes from the constant 744 of
  // j = q^{-1} + 744 + ..., largest at x = 0 where |j| is smallest.
  double prev = 1;
  const double want[] = {0.073054, 0.028799, 0.005070};
  int i = 0;
  for (double delta : {0.99, 0.995, 0.999}) {
    double d = curve_distance(s_delta_curve(delta, 200, Construction::Asymptotic),
                              s_delta_curve(delta, 200, Construction::Exact));
    CHECK(d == doctest::Approx(want[i++]).epsilon(2e-3));
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("hull C_delta") {
  auto c = cutoffs(128);
  const double Ap = c.A_plus.to_double(), Sp = c.S_plus.to_double();
  auto below = c_delta_hull(0.6, 100);
  CHECK(below.construction == Construction::PointwiseMax);
  for (const auto& z : below.samples) CHECK(z.imag() == std::sqrt(1 - z.real() * z.real()));
  auto above = c_delta_hull(0.96, 100);
  auto s = s_delta_curve(0.96, 100, Construction::Asymptotic);
  for (size_t i = 0; i < above.samples.size(); ++i) CHECK(above.samples[i].imag() == at_param(s, above.params[i]).imag());
  CHECK_FALSE(hull_transition_x(0.6).has_value());
  CHECK_FALSE(hull_transition_x(0.96).has_value());
  // The transition moves from x = 1/2 at delta_A^+ to x = 0 at delta_S^+.
  CHECK(*hull_transition_x(Ap + 1e-9) > 0.4999);
  CHECK(*hull_transition_x(Sp - 1e-9) < 1e-3);
  double prev = 0.5;
  for (double delta = 0.65; delta < 0.95; delta += 0.05) {
    auto x = hull_transition_x(delta);
    REQUIRE(x.has_value());
    CHECK(*x < prev);
    prev = *x;
    double g = log_szego_point(Real(*x, 128), 1, 128).im.to_double();
    CHECK(std::fabs(g - std::sqrt(1 - *x * *x) - std::log(1 - delta) / (2 * M_PI)) < 1e-12);
    // The hull keeps the arc around i and follows S_delta toward the corners.
    auto h = c_delta_hull(delta, 100);
    for (const auto& z : h.samples) {
      double arc = std::sqrt(1 - z.real() * z.real());
      if (std::fabs(z.real()) < *x - 1e-9) CHECK(z.imag() == arc);
      if (std::fabs(z.real()) > *x + 1e-9) CHECK(z.imag() > arc);
    }
  }
  // Above 1 the roles swap: S_delta near x = 0, the arc near the corners.
  auto x = hull_transition_x(1.13);
  REQUIRE(x.has_value());
  CHECK(*x > 0);
  CHECK(*x < 0.5);
  auto h = c_delta_hull(1.13, 100);
  CHECK(at_param(h, 0).imag() > 1);
  CHECK(at_param(h, 0.5).imag() == std::sqrt(0.75));
  CHECK_FALSE(hull_transition_x(c.S_minus.to_double() - 1e-3).has_value());
  CHECK_FALSE(hull_transition_x(c.A_minus.to_double() + 1e-3).has_value());
}

TEST_CASE("truncated exponential roots") {
  auto r = trunc_exp_roots(1);
  REQUIRE(r.size() == 1);
  CHECK(r[0].z.re.to_double() == -1);
  r = trunc_exp_roots(2);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].z.to_complex() - std::complex<double>(-0.5, -0.5)) < 1e-25);
  CHECK(std::abs(r[1].z.to_complex() - std::complex<double>(-0.5, 0.5)) < 1e-25);
  CHECK(trunc_exp_poly(3).to_string() == trunc_exp_poly(3).to_string());
  CHECK(trunc_exp_poly(3).c == std::vector<mpz_class>{1, 3, 6, 6});
  // Vieta: the roots of E_D sum to -1 (coefficient 1/1! of x^{D-1}).
  std::complex<double> sum = 0;
  for (const auto& x : trunc_exp_roots(25)) sum += x.z.to_complex() * double(x.multiplicity);
  CHECK(std::abs(sum + 1.0) < 1e-12);
}

TEST_CASE("rescaled truncated exponential roots approach S") {
  auto S = szego_curve(400);
  // Values agree with an mpmath polyroots run (0.091120, 0.066177 against a
  // 4000-point unrefined polyline).
  auto d40 = hausdorff(szego_rescaled_roots(40), S);
  auto d80 = hausdorff(szego_rescaled_roots(80), S);
  CHECK(d40.bound() < 0.15);
  CHECK(d40.distance == doctest::Approx(0.091118).epsilon(1e-4));
  CHECK(d80.distance == doctest::Approx(0.066177).epsilon(1e-4));
  CHECK(d80.distance < d40.distance);
  // The literal x / D scaling stays about 0.28 away and does not converge.
  std::vector<std::complex<double>> lit;
  for (const auto& x : trunc_exp_roots(40)) lit.push_back(x.z.to_complex() / 40.0);
  CHECK(hausdorff(lit, S).distance > 0.25);
}

TEST_CASE("hausdorff") {
  auto L = log_szego_curve(1, 50);
  CHECK(hausdorff({L.samples[7]}, L).distance == 0);
  for (double t : {0.01, 0.1, 0.5}) {
    auto d = hausdorff({L.samples[20] + std::complex<double>(0, t)}, L);
    CHECK(d.distance <= t + d.resolution);
    CHECK(d.distance > 0);
  }
  CHECK_THROWS_AS(hausdorff({}, L), std::invalid_argument);
  CHECK_THROWS_AS(hausdorff({{0, 1}}, PlaneCurve{}), std::invalid_argument);
}

TEST_CASE("bottleneck matching against brute force") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 6;
    std::vector<std::complex<double>> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back({U(rng), U(rng)});
      b.push_back({U(rng), U(rng)});
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e9;
    do {
      double worst = 0;
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(matched_distance(a, b) == best);
  }
  CHECK_THROWS(matched_distance({{0, 0}}, {}));
}

TEST_CASE("Ostrowski comparison: rescaled Faber roots approach E_D roots") {
  double prev = 1e9;
  for (std::int64_t k : {1200, 2400, 4800}) {
    auto r = ostrowski_comparison(k, 8);
    CHECK(r.m == k / 12 - 8);
    CHECK(r.matched_distance < prev);
    CHECK(r.matched_distance <= r.ostrowski_bound);
    prev = r.matched_distance;
  }
  CHECK_THROWS(ostrowski_comparison(-1200, 8));
  CHECK_THROWS(ostrowski_comparison(120, 11));
}

TEST_CASE("Miller zeros near S_delta at delta = 0.98") {
  // D = 4 and 8; the k = 9600 step runs in the acceptance binary.
  auto z1 = zeros_of_miller(2400, 196);
  auto z2 = zeros_of_miller(4800, 392);
  auto e1 = miller_szego_distance(z1), e2 = miller_szego_distance(z2);
  CHECK(e1.distance == doctest::Approx(0.10947).epsilon(2e-3));
  CHECK(e2.distance < e1.distance);
  auto a1 = miller_szego_distance(z1, 800, Construction::Asymptotic);
  auto a2 = miller_szego_distance(z2, 800, Construction::Asymptotic);
  CHECK(a2.distance < a1.distance);
  CHECK_THROWS(miller_szego_distance(zeros_of_miller(12, 0)));
}

TEST_CASE("curve CSV") {
  auto h = c_delta_hull(0.8, 4);
  auto csv = h.csv();
  CHECK(csv.rfind("# kind: hull\n", 0) == 0);
  CHECK(csv.find("# hull: pointwise max") != std::string::npos);
  CHECK(csv.find("# delta: 0.80000000000000004\n") != std::string::npos);
  CHECK(csv.find("\nx,y\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10 + 5);
  CHECK(csv == c_delta_hull(0.8, 4).csv());
}
