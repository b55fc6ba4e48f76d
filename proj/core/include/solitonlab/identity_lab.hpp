#pragma once

// Pointwise residuals of the structural identities every steady gradient
// soliton satisfies, evaluated on frames from any producer (ODE profile,
// closed-form soliton, or parsed CSV). Each residual comes with the largest
// absolute term entering it, so relative tolerances stay meaningful from
// R ~ 1 at the tip down to R ~ 1e-40 tails.
//
// Conventions baked in: normalized first integral R + fp^2 = c0, radial
// reduction <grad R, grad f> = Rp * fp with fp >= 0, and the substitutions
// 1 - R -> fp^2, sqrt(1 - R) -> fp (exact on normalized solitons, and they
// remove the R -> 1 cancellation at the tip).

#include <map>
#include <string>
#include <vector>

#include "solitonlab/bryant_solver.hpp"
#include "solitonlab/radial_geometry.hpp"

namespace solitonlab {

// Scale floor for relative residuals; keeps 0/0 at exact zeros well-defined
// without disturbing any representable scale.
inline constexpr double kResidualScaleFloor = 1e-300;

inline constexpr const char* kIdentityNames[6] = {
    "first_integral", "gradR_ric",      "bianchi_traced",
    "d_tensor_norm",  "lemma23",        "lemma24"};

struct Residual {
  double abs = 0.0;
  double rel = 0.0;    // abs / max(scale, kResidualScaleFloor)
  double scale = 0.0;  // largest absolute term on either side
};

struct IdentityReport {
  double r = 0.0;
  std::map<std::string, Residual> residuals;  // all six names always present
};

// ===========================================================================
// Individual residuals
// ===========================================================================

// |R + fp^2 - c0|, the drift of the first integral.
double first_integral_residual(const GeometryFrame& frame, double fp,
                               double c0 = 1.0);

// Rp + 2 ric_rad fp: the radial component of grad R = -2 Ric(grad f).
double gradR_ric_residual(const GeometryFrame& frame, double fp);

// 2 |Ric|^2 + Rp fp + lapR: the traced second Bianchi consequence.
// Defined for n >= 2 (no (n-2) division); the cigar exercises n = 2.
double bianchi_traced_residual(const GeometryFrame& frame, double fp);

// |D|^2 = 2(n-1) D_rtt^2 with
//   D_rtt = -ric_tan fp/(n-2) + (Rp + 2 R fp)/(2(n-1)(n-2)),
// the only independent component of the obstruction 3-tensor in rotational
// symmetry. Vanishes on every soliton frame with Rp = -2 ric_rad fp.
// Requires n >= 3 (std::invalid_argument).
double d_tensor_norm_sq(const GeometryFrame& frame, double fp);

// LHS - RHS of the first divergence identity:
//   LHS = |D|^2 + (Rp + 2 R fp)^2 / (2(n-1)(n-2)^2)
//   RHS = -fp^2/(n-2)^2 lapR - fp^2/(n-2)^2 (Rp fp) - Rp^2/(2(n-2)^2).
// Requires n >= 3.
double lemma23_residual(const GeometryFrame& frame, double fp);

// (fp^2)^{3/2} divY + (n-2)^2 |D|^2 + (Rp + 2 R fp)^2/(2(n-1)) + 2 R (fp^2)^2
// with Y = (Rp/fp - 2 fp^2) d/dr; the caller supplies div Y (analytic chain
// rule on a profile, or 0 on the flat linear-f product where Y is a constant
// field). Requires n >= 3 and fp != 0; at the tip use the documented limit 0.
double lemma24_residual(const GeometryFrame& frame, double fp, double divY);

// ===========================================================================
// Report assembly
// ===========================================================================

// Everything evaluate_identities needs at one radius.
struct IdentityInput {
  GeometryFrame frame;  // Rp and lapR must be filled
  double fp = 0.0;      // signed df/dr
  double divY = 0.0;    // ignored when fp == 0 (tip limit)
  double c0 = 1.0;
};

// All six residuals with scales; n >= 3 (the cigar is served by the
// individual n >= 2 residuals above).
IdentityReport evaluate_identities(const IdentityInput& in);

// Inputs at radius r of a profile: frame from frame_at, divY from the
// analytic derivative of Y along the dense output.
IdentityInput identity_input_at(const RadialProfile& profile, double r);

// Inputs from one CSV row: fpp is recovered as ric_rad (the radial soliton
// equation) and Rpp from lapR, so no numerical differencing enters.
IdentityInput identity_input_from_row(const ProfileRow& row, int n,
                                      double c0 = 1.0);

// Reports at each radius (r = 0 uses the smooth tip limits).
std::vector<IdentityReport> verify_profile(const RadialProfile& profile,
                                           const std::vector<double>& radii);

// Default radii: the tip plus 127 log-spaced points in [r0, r_max].
std::vector<IdentityReport> verify_profile(const RadialProfile& profile);

struct IdentitySummary {
  std::string identity;
  double max_abs = 0.0;
  double max_rel = 0.0;
  double worst_r = 0.0;  // radius of the largest relative residual
};

// One summary per identity, in kIdentityNames order.
std::vector<IdentitySummary> summarize_reports(
    const std::vector<IdentityReport>& reports);

// JSON array of {"identity", "max_abs", "max_rel", "worst_r"} objects in
// kIdentityNames order, 17 significant digits.
std::string summaries_to_json(const std::vector<IdentitySummary>& summaries);

}  // namespace solitonlab
