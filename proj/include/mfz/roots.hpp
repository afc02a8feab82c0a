#pragma once

// Certified roots of integer polynomials and the zero pipeline for Miller
// forms: Faber roots, inversion into the fundamental domain, classification.

#include <cstdint>
#include <string>
#include <vector>

#include "mfz/miller.hpp"
#include "mfz/modular.hpp"
#include "mfz/mp.hpp"
#include "mfz/poly.hpp"

namespace mfz {

// The unique root of p in the closed disk |z - center| <= radius.
struct CertifiedRoot {
  Complex z;
  Real radius;
  bool real = false;  // certified real (then z.im == 0)
  int multiplicity = 1;
};

struct RootOptions {
  double tol = 1e-30;             // every radius must end up below this
  mpfr_prec_t max_precision = 1 << 17;
};

// All roots of p with multiplicity, sorted by real then imaginary part.
// Aberth-Ehrlich iteration on each squarefree factor, certified by
// Weierstrass-type inclusion disks; precision doubles until every disk is
// isolated and below tol.
std::vector<CertifiedRoot> complex_roots(const IntPoly& p, const RootOptions& opt = {});

// Dyadic points on (0, 1728) between consecutive arc zeros predicted by the
// phase k theta / 2 + 2 pi m cos theta; they only speed up exact counting.
std::vector<mpq_class> arc_hints(std::int64_t k, std::int64_t m, long D);

// Exact number of roots of the Faber polynomial in (0, 1728), with multiplicity.
long count_arc_roots(const FaberPolynomial& f);

enum class ZeroKind { Arc, EllipticRho, EllipticI, OffArc };
std::string zero_kind_name(ZeroKind k);

struct ZeroRecord {
  Complex jroot;
  Real jradius;
  Complex tau;
  double tau_radius = 0;
  ZeroKind kind = ZeroKind::OffArc;
  int multiplicity = 1;
};

// Invariant: on_arc + off_arc + elliptic == D (with multiplicity); elliptic
// zeros are roots of the Faber polynomial at j = 0 or j = 1728.
struct ZeroSet {
  std::int64_t k = 0, m = 0;
  long D = 0;
  std::vector<ZeroRecord> zeros;
  long on_arc = 0, off_arc = 0, elliptic = 0;
  long exact_arc_count = 0;  // from exact counting, equals on_arc
};

ZeroSet zeros_of_miller(std::int64_t k, std::int64_t m, const RootOptions& opt = {});
ZeroSet zeros_of_faber(const FaberPolynomial& f, const RootOptions& opt = {});

// Star discrepancy of the arc-zero angles in [alpha, beta] against the
// uniform law on that interval. Throws std::domain_error without arc zeros.
double equidistribution_discrepancy(const ZeroSet& zs, double alpha, double beta);
double star_discrepancy(std::vector<double> u);

std::string zeroset_csv(const ZeroSet& zs, bool header = true);
std::string zeroset_json(const ZeroSet& zs);

}  // namespace mfz
