#pragma once

// Pointwise geometry of rotationally symmetric metrics
//
//     g = dr^2 + w(r)^2 g_{S^{n-1}}
//
// with a radial potential f(r). Every operation is a closed-form function of
// the jet supplied by the caller; this module never differentiates
// numerically, so error budgets stay attributable to the producer of the jet.

namespace solitonlab {

// Raw warped-product data at one radius. Curvature operations require n >= 3
// (enforced there); flux/divergence/Laplacian formulas are valid for n >= 2,
// which serves the two-dimensional exact solitons.
struct RadialPoint {
  double r = 0.0;   // geodesic distance from the tip, r >= 0
  double w = 0.0;   // warping function value, w > 0 away from the tip
  double wp = 0.0;  // dw/dr
  double fp = 0.0;  // df/dr, sign convention fp >= 0 (f increasing outward)
  int n = 3;        // ambient dimension
};

// Pointwise geometric scalars at one radius. ric_tan carries multiplicity
// n-1; k_rad belongs to the n-1 planes containing the radial direction and
// k_tan to the (n-1)(n-2)/2 purely tangential planes.
//
// Invariants (exact for warped-product frames):
//   R            = ric_rad + (n-1) * ric_tan
//   ric_norm_sq  = ric_rad^2 + (n-1) * ric_tan^2
//   rm_norm^2    = 4(n-1) * k_rad^2 + 2(n-1)(n-2) * k_tan^2
//   grad_f_norm  = |fp|
struct GeometryFrame {
  int n = 3;
  double r = 0.0;
  double R = 0.0;            // scalar curvature
  double Rp = 0.0;           // dR/dr; filled by callers that know it
  double lapR = 0.0;         // Laplace-Beltrami of R; filled by callers
  double ric_rad = 0.0;      // Ricci on the unit radial direction
  double ric_tan = 0.0;      // Ricci on a unit tangential direction
  double ric_norm_sq = 0.0;  // |Ric|^2
  double rm_norm = 0.0;      // |Rm|
  double grad_f_norm = 0.0;  // |grad f|
  double k_rad = 0.0;        // sectional curvature, radial planes
  double k_tan = 0.0;        // sectional curvature, tangential planes
};

// First and second derivative of a radial scalar, supplied by the caller.
struct RadialDerivatives {
  double qp = 0.0;
  double qpp = 0.0;
};

// Curvature of g = dr^2 + w^2 g_{S^{n-1}} from the 2-jet of w and f.
// Fills every pointwise field; Rp and lapR are set to NaN because they are
// not determined by a 2-jet (callers such as frame_at fill them).
// Throws std::domain_error for w <= 0 and std::invalid_argument for n < 3.
GeometryFrame curvature_from_point(const RadialPoint& p, double wpp, double fpp);

// Same, but with 1 - wp^2 supplied by the caller. Near the tip wp is within
// rounding of 1 and the difference computed naively loses all significant
// digits; producers with series data pass the cancellation-free value.
GeometryFrame curvature_from_point(const RadialPoint& p, double wpp, double fpp,
                                   double one_minus_wp_sq);

// Laplace-Beltrami of a radial scalar: q'' + (n-1)(w'/w) q'.
// Throws std::domain_error at w <= 0; at the tip use laplacian_origin_limit.
double laplacian_radial(const RadialDerivatives& q, const RadialPoint& p);

// Removable-singularity limit of the radial Laplacian at the tip: n * q''(0).
double laplacian_origin_limit(double qpp0, int n);

// Divergence of the radial field v(r) d/dr: v' + (n-1)(w'/w) v.
// Same formula and error contract as laplacian_radial applied to (v, v').
double divergence_radial(double v, double vp, const RadialPoint& p);

// Integral of the radial scalar q over the distance sphere at p:
// omega_{n-1} * w^{n-1} * q. Requires q >= 0.
double sphere_flux(double q, const RadialPoint& p);

// Volume of the unit (n-1)-sphere, omega_{n-1} = 2 pi^{n/2} / Gamma(n/2),
// with Gamma evaluated by the exact integer/half-integer recursion so the
// constant is bit-stable across runs.
double unit_sphere_area(int n);

// Frame of the metric lambda * g at the same point. Unit-direction values
// transform as R -> R/lambda, Ricci eigenvalues -> /lambda, sectional
// curvatures -> /lambda, |grad f| -> /sqrt(lambda), and the radius as
// r -> sqrt(lambda) r, so R + |grad f|^2 scales by 1/lambda and all frame
// invariants are preserved. Throws std::domain_error for lambda <= 0.
GeometryFrame rescale_metric(const GeometryFrame& frame, double lambda);

}  // namespace solitonlab
