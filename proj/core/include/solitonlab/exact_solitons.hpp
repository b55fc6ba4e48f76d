#pragma once

// Closed-form steady solitons used as ground truth: the 2-D cigar
//
//   g = (dx^2 + dy^2) / (1 + x^2 + y^2),   f = 2 log cosh(s),
//
// its flat products cigar x R^k, and the flat solitons (constant or linear
// potential). Every field is an explicit function of the conformal radius
// rho, so these frames carry no integration error; the identity and probe
// modules use them as 1e-12-grade oracles.
//
// Sign convention: the normalization Ric = +Hess f forces f increasing
// outward (fp = 2 rho / sqrt(1 + rho^2) >= 0), the mirror image of the
// textbook potential -log(1 + rho^2).

#include <string>
#include <vector>

#include "solitonlab/radial_geometry.hpp"

namespace solitonlab {

// Cigar data at one point, parametrized by geodesic distance s = asinh(rho)
// from the tip. w = tanh s is the circumference warp of the cross circle.
struct CigarPoint {
  double rho = 0.0;
  double s = 0.0;
  double w = 0.0;   // tanh s
  double wp = 0.0;  // d(tanh s)/ds = sech^2 s
  GeometryFrame frame;
};

// Frame of the cigar (k_extra = 0) or of the product cigar x R^{k_extra}
// in dimension n = 2 + k_extra. Closed forms with u = 1 + rho^2:
//   R = 4/u, fp = 2 rho/sqrt(u), Rp = -R fp, lapR = 16 (rho^2 - 1)/u^2,
// all derivatives with respect to s. Rp is written literally as -R * fp so
// the cigar's defining identity |grad R| = R |grad f| is exact in floating
// point, not merely to rounding.
//
// For k_extra > 0 the cross-section mixes one circle direction with flat
// ones; ric_tan is the average over the n-1 normal directions (keeps the
// trace identity R = ric_rad + (n-1) ric_tan) while ric_norm_sq and rm_norm
// are the exact product values R^2/2 and R. The quadratic frame invariants
// tied to round cross-sections do not apply to products.
CigarPoint cigar_frame(double rho, int k_extra = 0);

// Least-squares slope of log(value) against geodesic distance; the decay
// rate of an exponentially decaying scalar (cigar R gives -2, any constant
// gives 0). Requires >= 8 samples, s strictly increasing and spanning >= 1
// (two e-foldings at the cigar rate), values > 0; violations throw
// std::invalid_argument (shape) or numerical_error (degenerate range /
// nonpositive values).
double cigar_decay_exponent(const std::vector<double>& s,
                            const std::vector<double>& values);

// Flat steady solitons on R^n, n >= 2: zero curvature with either constant
// potential (grad_f_norm = 0, first integral c0 = 0) or linear potential
// (grad_f_norm = 1, the normalized c0 = 1 case). Every curvature field is
// exactly 0.0.
GeometryFrame flat_soliton_frame(int n, bool linear_f = false);

// CSV rows over an increasing s-grid, same schema as the solver export
// (r = s). The w column is left empty for k_extra > 0 because the product
// cross-section is not a round sphere.
std::string cigar_to_csv(const std::vector<double>& s_grid, int k_extra = 0);

}  // namespace solitonlab
