#pragma once

// The Szego curve S = {|z e^{1-z}| = 1}, its logarithmic images L_+ and L_-
// in the tau plane, the shifted curves S_delta, the hull C_delta with the arc,
// the four cutoff constants, and truncated-exponential root diagnostics.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfz/mp.hpp"
#include "mfz/roots.hpp"

namespace mfz {

// Principal branch, x >= -1/e (std::domain_error below). Halley iteration at
// prec + 32 bits; the residual |w e^w - x| is checked before returning.
Real lambert_w(const Real& x, mpfr_prec_t prec);

// The x in [W(1/e), 1] with (1 + ln x) / x = y, by bisection; u is increasing
// there. y outside [-1, 1] is a domain error.
Real u_inverse(const Real& y, mpfr_prec_t prec);

// x + i g_sign(x), g_sign(x) = (ln 24 - ln u^{-1}(sign cos 2 pi x)) / 2 pi.
Complex log_szego_point(const Real& x, int sign, mpfr_prec_t prec);

enum class CurveKind { Szego, LogSzego, SDelta, Arc, Hull };
enum class Construction { Exact, Asymptotic, PointwiseMax };

// Samples ordered by the angle-x parameter in [-1/2, 1/2]. For S the angle
// of z is 2 pi x. Consecutive samples are at most max_spacing apart.
struct PlaneCurve {
  std::vector<std::complex<double>> samples;
  std::vector<double> params;
  CurveKind kind = CurveKind::Szego;
  Construction construction = Construction::Asymptotic;
  double delta = 0;  // S_delta and hull only
  int sign = 0;      // +1 for delta < 1, -1 above
  double max_spacing = 0;
  // Largest distance from the true curve at a segment's parameter midpoint
  // to that segment's chord.
  double resolution = 0;

  // Metadata lines prefixed '#', then "x,y" rows.
  std::string csv() const;
};

std::string construction_name(Construction c);

// S sampled by angle; the polar radius is u^{-1}(cos phi).
PlaneCurve szego_curve(int nsamples, mpfr_prec_t prec = 128);

// L_sign as the graph of g_sign over [-1/2, 1/2].
PlaneCurve log_szego_curve(int sign, int nsamples, mpfr_prec_t prec = 128);

// Beyond this |ln|1 - delta|| only the asymptotic construction is offered:
// the exact one would invert j at astronomically large values.
inline constexpr double kExactConstructionLimit = 8.0;

// S_delta. Exact: tau in the fundamental domain with 24 / ((1 - delta) j(tau))
// on S, following the angle of the point of S. Asymptotic: L_sign shifted by
// -ln|1 - delta| / 2 pi, sign = +1 below delta = 1 and -1 above. Without an
// explicit construction the exact one is used whenever it is allowed.
PlaneCurve s_delta_curve(double delta, int nsamples, std::optional<Construction> construction = std::nullopt,
                         mpfr_prec_t prec = 128);

// Upper hull of the arc and S_delta: pointwise max of Im on a uniform shared
// x-grid of nsamples + 1 points, with the asymptotic S_delta (a graph in x).
PlaneCurve c_delta_hull(double delta, int nsamples, mpfr_prec_t prec = 128);

// The x in [0, 1/2] where the asymptotic S_delta meets the arc, if the two
// cross there. For delta_A^+ < delta < delta_S^+, -x is cos of the angle
// where C_delta leaves the arc.
std::optional<double> hull_transition_x(double delta, mpfr_prec_t prec = 128);

struct CutoffSet {
  Real A_plus;   // 1 - 24 / (W(1/e) e^{sqrt 3 pi})
  Real A_minus;  // 1 + 24 / (W(1/e) e^{2 pi})
  Real S_plus;   // 1 - 24 / e^{2 pi}
  Real S_minus;  // 1 + 24 / e^{sqrt 3 pi}
};
CutoffSet cutoffs(mpfr_prec_t prec = 128);

// D! E_D(x) = sum_{i<=D} (D! / i!) x^{D-i}, an integer polynomial with the
// roots of E_D(x) = sum 1/i! x^{D-i}.
IntPoly trunc_exp_poly(long D);
std::vector<CertifiedRoot> trunc_exp_roots(long D, const RootOptions& opt = {});

// The points 1 / (D x) for roots x of E_D; these approach S as D grows.
std::vector<std::complex<double>> szego_rescaled_roots(long D, const RootOptions& opt = {});

struct Distance {
  double distance = 0;    // sup over points of the distance to the polyline
  double resolution = 0;  // curve resolution; the true distance is within this
  double bound() const { return distance + resolution; }
};

// One-sided sup-inf distance from points to the sampled curve.
// Empty inputs are std::invalid_argument.
Distance hausdorff(const std::vector<std::complex<double>>& points, const PlaneCurve& curve);
// Symmetric version between two sampled curves.
double curve_distance(const PlaneCurve& a, const PlaneCurve& b);

// Minimal over bijections of the largest |a_i - b_pi(i)| (bottleneck matching).
double matched_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);

// Roots of F(2kx) / (2k)^D for the Faber polynomial of (k, l - D) against
// the roots of E_D, with the Ostrowski bound 2 D G (sum |a_i - b_i| G^{-i})^{1/D},
// G = max_i max(a_i^{1/i}, b_i^{1/i}).
struct OstrowskiReport {
  std::int64_t k = 0, m = 0;
  long D = 0;
  double matched_distance = 0;
  double ostrowski_bound = 0;
};
OstrowskiReport ostrowski_comparison(std::int64_t k, long D, const RootOptions& opt = {});

// Distance from the non-elliptic zeros of g_{k,m} to S_{m/l}.
Distance miller_szego_distance(std::int64_t k, std::int64_t m, int nsamples = 800,
                               std::optional<Construction> construction = std::nullopt);
Distance miller_szego_distance(const ZeroSet& zs, int nsamples = 800,
                               std::optional<Construction> construction = std::nullopt);

}  // namespace mfz
