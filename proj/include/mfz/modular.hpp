#pragma once

// Numerical modular functions on the upper half plane: E4, E6, Delta, j and
// its derivative, SL2(Z) reduction, and inversion of j.

#include <complex>
#include <cstdint>
#include <stdexcept>

#include "mfz/mp.hpp"

namespace mfz {

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// E4, E6 and Delta at tau with absolute error below 2^-(prec-8) for Im tau >= 1/2.
struct ModularValues {
  Complex q, E4, E6, Delta;
};
ModularValues modular_values(const Complex& tau, mpfr_prec_t prec);

// j(tau) and dj/dtau = -2 pi i E4^2 E6 / Delta; tau is not reduced first.
struct JValue {
  Complex j, dj;
};
JValue j_with_derivative(const Complex& tau, mpfr_prec_t prec);
Complex j_value(const Complex& tau, mpfr_prec_t prec);

// Double precision j(tau); reduces tau first.
std::complex<double> j_double(std::complex<double> tau);
// j(e^{i theta}) for theta in [pi/2, 2pi/3]: real, decreasing from 1728 to 0.
double j_on_arc(double theta);

// tau' = (a tau + b) / (c tau + d) in the closed fundamental domain with
// -1/2 <= Re tau' < 1/2, and Re tau' <= 0 when |tau'| = 1 (within tol).
struct Reduction {
  Complex tau;
  std::int64_t a = 1, b = 0, c = 0, d = 1;
};
Reduction reduce_to_fundamental_domain(const Complex& tau, double tol = 1e-30);

// tau in the fundamental domain with j(tau) = x. Real x in (0, 1728) lands on
// the unit arc; x = 0 and x = 1728 give rho and i exactly (up to rounding).
Complex invert_j(const Complex& x, mpfr_prec_t prec);

// Fundamental-domain membership with slack tol.
bool in_fundamental_domain(const Complex& tau, double tol);

}  // namespace mfz
