#pragma once

// Quantitative probes of the pinching, flux-decay, and reconstruction
// hypotheses on concrete solitons. Nothing here asserts that a hypothesis
// "holds"; each probe reports margins, crossover radii, fitted exponents,
// or residuals and leaves the interpretation to the caller. Margins are
// signed: positive means the inequality holds at that radius.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "solitonlab/bryant_solver.hpp"
#include "solitonlab/numerics.hpp"
#include "solitonlab/radial_geometry.hpp"

namespace solitonlab {

// ===========================================================================
// Pinching
// ===========================================================================

// sigma(n) = ((n+1) + sqrt((n-1)(7n-13))) / (3n-2), the curvature-pinching
// coefficient; equals 1 at n = 2 and increases to (1 + sqrt(7))/3.
// Requires n >= 2 (std::invalid_argument).
double sigma_constant(int n);

// Upper bound of sigma_constant over all n: (1 + sqrt(7)) / 3.
double sigma_limit();

// Signed margins of the pointwise curvature inequalities at one frame.
// Entries that divide by |grad f| or R are NaN where the divisor vanishes.
struct PinchMargins {
  double delta = 0.0;            // min(ric_rad, ric_tan) / R
  double sigma_margin = 0.0;     // |Rp| - sigma(n) R fp
  double kato_margin = 0.0;      // |Ric|^2 - Rp^2 / (4 fp^2)
  double munteanu_margin = 0.0;  // (1/4)[(3/2) Rp^2/fp^2 - 2 R^2] - |Ric|
  double pinch33_margin = 0.0;   // |Rp|/fp - sqrt((3n-4)/(2(n-1))) R
};

PinchMargins margins_at(const GeometryFrame& frame);

struct PinchingProfile {
  std::vector<double> radii;
  std::vector<double> delta, sigma_margin, kato_margin, munteanu_margin,
      pinch33_margin;
  // Bisected sign-change radii per margin (width 1e-6), keyed by field name.
  std::map<std::string, std::vector<double>> crossings;
};

// Margins along the profile. Radii where fp = 0 (the tip) are excluded
// because three of the margins are ratios over fp.
PinchingProfile pinching_profile(const RadialProfile& profile,
                                 const std::vector<double>& radii);

// ===========================================================================
// Boundary flux over geodesic spheres
// ===========================================================================

enum class FluxIntegrand {
  gradR_plus_RgradF,   // |grad R + R grad f|
  gradR_plus_2RgradF,  // |grad R| + 2R |grad f|  (majorant boundary term)
  one_minus_R_weighted  // fp^2 |grad R + R grad f|   (1 - R as fp^2)
};

const char* flux_integrand_name(FluxIntegrand integrand);

struct FluxSeries {
  std::string integrand_name;
  std::vector<double> radii;  // strictly increasing
  std::vector<double> flux;   // sphere_flux of the integrand, >= 0
  double fitted_exponent = 0.0;  // slope of log flux vs log radius,
                                 // last decade
  bool exponent_defined = false; // false when the flux vanishes identically
  std::size_t usable_points = 0; // positive fluxes inside the last decade
};

// Flux of the named integrand over the distance spheres of a profile.
// Throws numerical_error when a fit is possible in principle (some positive
// flux) but fewer than 8 usable points fall in the last decade.
FluxSeries flux_series(const RadialProfile& profile, FluxIntegrand integrand,
                       const std::vector<double>& radii);

// Same for caller-supplied frames over caller-supplied sphere data (exact
// solitons; for the cigar the "sphere" is the circle of circumference
// 2 pi w). frames[i] pairs with points[i]; points carry r, w, n.
FluxSeries flux_series_frames(const std::vector<GeometryFrame>& frames,
                              const std::vector<RadialPoint>& points,
                              FluxIntegrand integrand);

// ===========================================================================
// psi / u reconstruction
// ===========================================================================

// Table of the profile functions psi(s) and u(s) on the computed
// scalar-curvature range, truncated by epsilon = 1e-4 at both ends.
struct PsiTable {
  std::vector<double> s;    // strictly increasing, inside (0, 1)
  std::vector<double> psi;  // -Rp/fp at r(s); > 0 on the table
  std::vector<double> u;    // log psi(s) + integral term from 1/2
  double x_residual = 0.0;  // max |Rp + psi(R) fp| / |Rp|, off-grid checks
  std::size_t x_checks = 0;
};

// Reusable reconstruction: r(s) is the monotone cubic inverse of R sampled
// at the profile grid. The referenced profile must outlive this object.
class PsiReconstruction {
 public:
  explicit PsiReconstruction(const RadialProfile& profile);

  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

  // psi(s) = -Rp/fp at r(s). Throws std::out_of_range outside the table
  // range and std::domain_error if the value is not positive.
  double psi(double s) const;

  // u(s) = log psi(s) + 1/(n-1) * integral from 1/2 to s of
  //   (n psi(t) - (n-1) + (n-3) t) / ((1-t) psi(t)) dt,
  // the two printed terms combined over the common denominator so the
  // integrand stays regular as t -> 1 (the numerator vanishes with 1-t
  // because psi -> 2/n there). Adaptive quadrature to tol_rel.
  double u(double s, double tol_rel = 1e-10) const;

  // max over `checks` off-grid radii of |Rp + psi(R) fp| / |Rp|.
  double x_residual(std::size_t checks = 100) const;

  PsiTable table(std::size_t rows = 201) const;

 private:
  double radius_of(double s) const;
  double u_integrand(double r) const;
  void require_base_in_range() const;

  const RadialProfile* profile_;
  MonotoneCubic r_of_s_;
  double s_min_ = 0.0, s_max_ = 0.0;
};

// One-call form: 201-row table with the 100-point x_residual.
PsiTable reconstruct_psi(const RadialProfile& profile);

// ===========================================================================
// Decay classification
// ===========================================================================

enum class DecayClass { linear, exponential, neither };

const char* decay_class_name(DecayClass c);

struct DecayClassification {
  DecayClass verdict = DecayClass::neither;
  double power_exponent = 0.0;  // a in log v = a log r + b
  double power_rms = 0.0;
  double exp_rate = 0.0;        // a in log v = a r + b
  double exp_rms = 0.0;
  bool ill_conditioned = false; // too few positive values to fit
  // Envelope v (1+r)^{-3(n+1)} e^{r}, reported for the exponential class
  // only (NaN otherwise): its sup over the samples and whether that sup is
  // representable (no overflow).
  double envelope_sup = 0.0;
  bool envelope_bounded = false;
};

// Classify samples as a power law or an exponential by fitting both models
// to log v and comparing rms residuals; a model wins only when its rms is
// at least 10x smaller (ties and near-ties are "neither"). Requires >= 16
// samples, r strictly increasing and positive, spanning at least one decade
// (std::invalid_argument otherwise). Nonpositive values are skipped; if
// fewer than 16 remain the result is flagged ill_conditioned with verdict
// neither.
DecayClassification decay_classifier(const std::vector<double>& r,
                                     const std::vector<double>& v, int n);

}  // namespace solitonlab
