#pragma once

// Wigner and Husimi functions of dyad operators, and the negativity volume.
//
// Phase points are complex amplitudes z = (q + ip)/sqrt(2). Every function
// here is normalized so that its integral over dRe(z) dIm(z) is one per mode;
// absolute integrals are therefore identical in (q, p) and in z coordinates.

#include <span>
#include <vector>

#include "phasecorr/coherent.hpp"

namespace phasecorr {

/// (2/pi) <beta|alpha> exp(-2 (z - alpha)(conj z - conj beta)).
Complex wigner_dyad_kernel(Complex ket, Complex bra, Complex z);

/// Real Wigner function; one phase point per mode. Throws NumericalError when
/// the imaginary residue exceeds 1e-10 of the absolute term sum.
double wigner(const DyadOperator& rho, std::span<const Complex> z);
double wigner(const DyadOperator& rho, Complex z);
double wigner(const DyadOperator& rho, Complex z1, Complex z2);

/// Q(z) = <z|rho|z> / pi^modes.
double husimi(const DyadOperator& rho, std::span<const Complex> z);
double husimi(const DyadOperator& rho, Complex z);
double husimi(const DyadOperator& rho, Complex z1, Complex z2);

/// Minimum over a uniform tensor probe grid, `points` per real axis on
/// [-half_width, half_width] for every mode.
double wigner_grid_minimum(const DyadOperator& rho, double half_width, int points);
double husimi_grid_minimum(const DyadOperator& rho, double half_width, int points);

struct QuadratureSpec {
  int nodes = 96;          // Gauss-Legendre nodes per outer axis
  double margin = 4.0;     // box extends this far beyond the label bounding box, per axis
  int max_nodes = 256;     // doubling stops once the next level would exceed this
  double rel_tol = 1e-3;   // relative change accepted as converged
  int threads = 1;
};

struct VolumeEstimate {
  double absolute = 0.0;  // integral of |W|
  double signed_ = 0.0;   // integral of W
};

/// Integrals of |W| and W at a fixed resolution.
VolumeEstimate wigner_integrals(const DyadOperator& rho, int nodes, double margin, int threads = 1);

struct NegativityResult {
  double volume = 0.0;    // integral of |W| minus one, at the finest level computed
  double integral = 0.0;  // integral of W at the same level
  double change = 0.0;    // |difference| between the last two levels
  int nodes = 0;
  bool converged = false;
};

NegativityResult negativity_volume(const DyadOperator& rho, const QuadratureSpec& spec = {});

}  // namespace phasecorr
