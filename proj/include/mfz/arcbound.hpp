#pragma once

// Quantitative arc bounds: enclosures of ln|Delta| on the arc and on
// horizontal lines, the coset set R, the bound functions I and I^w, the
// interval grid search with its derived P / T / Theta functions, and the
// empirical check of the cosine approximation on the arc.

#include <cstdint>
#include <string>
#include <vector>

#include "mfz/mp.hpp"

namespace mfz {

// ln|Delta(x + iy)| with a rigorous enclosure of the truncated product tail.
Interval log_abs_delta(const Interval& x, const Interval& y);

struct DeltaPoint {
  enum Kind { Arc, Vertical, Imaginary } kind = Imaginary;
  double theta = 0;  // Arc: e^{i theta}
  double x = 0;      // Vertical: x + iB
  double B = 1;      // Vertical, Imaginary
};

// |Delta| at the point, as an enclosure at working precision prec.
Interval abs_delta(const DeltaPoint& p, mpfr_prec_t prec);

// Bottom row (c, d) of a coset gamma with Im(gamma e^{i theta}) =
// sin(theta) / |c e^{i theta} + d|^2; c > 0 normalizes the sign.
struct ResidueSetEntry {
  long c = 0, d = 0;
  Interval norm_alpha, norm_beta;  // |c e^{i theta} + d|^2 at the endpoints
  Interval im_range;               // Im(gamma e^{i theta}) over [alpha, beta]
};

// Cosets with Im(gamma e^{i theta}) >= B for some theta in [alpha, beta],
// identity and S excluded. Endpoints are closed intervals so that callers can
// pass exact enclosures of rational multiples of pi.
std::vector<ResidueSetEntry> enumerate_R(const Interval& alpha, const Interval& beta, const Interval& B);
std::vector<ResidueSetEntry> enumerate_R(double alpha, double beta, double B, mpfr_prec_t prec = 128);

// Which cosets feed the R-terms of the bound functions. The (1,1) coset is
// the image of the Re tau = -1/2 edge; ExcludeEdge drops it (grid search).
enum class RPolicy { All, ExcludeEdge };

// Pairing of the Delta values in the first I^w term: Printed uses
// ln|Delta(e^{i alpha})| over sin(beta) - B, SameEndpoint evaluates both at beta.
enum class WeakPairing { Printed, SameEndpoint };

// Minimum of the Delta-ratio term and the R-terms; certified enclosure.
// Requires pi/2 <= alpha < beta <= 2 pi / 3 and 0 < B < sin(alpha).
Interval I_bound(const Interval& alpha, const Interval& beta, const Interval& B, RPolicy policy = RPolicy::All);
Interval I_bound(double alpha, double beta, double B, mpfr_prec_t prec = 128, RPolicy policy = RPolicy::All);

// Maximum of the weak terms; B must exceed 0.287 (std::invalid_argument).
Interval Iw_bound(const Interval& alpha, const Interval& beta, const Interval& B,
                  WeakPairing pairing = WeakPairing::Printed, RPolicy policy = RPolicy::All);
Interval Iw_bound(double alpha, double beta, double B, mpfr_prec_t prec = 128,
                  WeakPairing pairing = WeakPairing::Printed, RPolicy policy = RPolicy::All);

enum class ArcMode { Holomorphic, Weak };

struct ArcIntervalRecord {
  long r = 0;
  double alpha = 0, beta = 0;
  double B = 0;       // maximizer (holomorphic) or minimizer (weak) on the lattice
  double delta = 0;   // rounded toward the safe side: down (holomorphic), up (weak)
  bool perturbed = false;  // B was nudged off a coset boundary
};

struct GridOptions {
  long N = 1000;
  double bstep = 0.0005;
  mpfr_prec_t prec = 128;
  int jobs = 1;
  WeakPairing weak_pairing = WeakPairing::SameEndpoint;
  double epsilon = 1e-10;  // slack subtracted from the proportion formula
};

// Holomorphic: delta_cutoff_all = delta_{N-1}, every zero on the arc below it;
// delta_cutoff_none = min(delta_0, 3/pi), P vanishes from there on.
// Weak: delta_cutoff_all = max_r delta_r, delta_cutoff_none =
// max(2 sqrt(3) / pi, delta_{N-1}); proportions grow with delta.
struct ArcBoundTable {
  ArcMode mode = ArcMode::Holomorphic;
  GridOptions options;
  std::vector<ArcIntervalRecord> rows;
  double delta_cutoff_all = 0, delta_cutoff_none = 0;

  // Lower bound for the proportion of non-elliptic zeros on the arc, using
  // max(0, ...); a min(0, ...) variant would never be positive.
  double P(double delta) const;
  // Endpoint of the arc where the cosine approximation is guaranteed:
  // [pi/2, T] in holomorphic mode, [T, 2 pi / 3] in weak mode.
  double T(double delta) const;
  // Three-piece linear profile through the two cutoffs.
  double Theta(double delta) const;

  std::string csv() const;
  std::string json() const;
};

ArcBoundTable grid_search(ArcMode mode, const GridOptions& opt = {});

// floor(k beta / 2 pi + 2 m cos beta) - ceil(k alpha / 2 pi + 2 m cos alpha)
// with alpha = a pi, beta = b pi for rationals a < b in [1/2, 2/3]. Exact: the
// enclosures are refined until the floor and ceiling are decided, and cosines
// at multiples of pi/3 and pi/2 are rational. With require_monotone the phase
// k theta / 2 + 2 pi m cos theta must be monotone on the interval, which for
// l > 0 is the condition m / l <= 3 / pi (std::domain_error otherwise).
// Negative differences (intervals too short to hold a sign change) give 0.
long predicted_arc_count(std::int64_t k, std::int64_t m, const mpq_class& a, const mpq_class& b,
                         bool require_monotone = false);

struct CosApproxResult {
  double max_error = 0;
  double worst_theta = 0;
  double max_imag = 0;  // largest |Im gbar| relative to max(1, |gbar|)
};

// max over the grid of |gbar(e^{i theta}) - 2 cos(2 pi m cos theta + k theta / 2)|
// where gbar = e^{i k theta / 2 + 2 pi m sin theta} g_{k,m}(e^{i theta}),
// evaluated as Delta^l E_{k'} P(j) from the exact Faber polynomial.
CosApproxResult cos_approx_error(std::int64_t k, std::int64_t m, const std::vector<double>& thetas,
                                 mpfr_prec_t prec = 128);

// Midpoints of n equal pieces of [pi/2, 2 pi / 3]. The endpoint rho is left
// out: there |c rho + d| = 1 for the (1,1) coset and its term never decays.
std::vector<double> arc_grid(int n);

}  // namespace mfz
