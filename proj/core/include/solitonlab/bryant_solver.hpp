#pragma once

// Construction of the normalized rotationally symmetric steady soliton on
// R^n (n >= 3): a degree-5 series seed regularizes the coordinate
// singularity at the tip, and an adaptive embedded Runge-Kutta integrator
// carries the reduced system
//
//     w'' = (n-2)(1 - w'^2)/w - f' w'        (tangential soliton equation)
//     f'' = -(n-1) w''/w                     (radial soliton equation)
//
// outward to r_max. The first integral R + f'^2 = c0 is never imposed during
// integration; its drift is the solver's accuracy monitor.

#include <iosfwd>
#include <string>
#include <vector>

#include "solitonlab/radial_geometry.hpp"

namespace solitonlab {

inline constexpr double kDefaultSwitchRadius = 1e-3;

struct SolitonState {
  double w = 0.0, wp = 0.0, fp = 0.0;
};

// Right-hand side of the first-order system for (w, wp, fp).
struct SolitonDeriv {
  double wp = 0.0, wpp = 0.0, fpp = 0.0;
};

// Solution data at one radius as produced by the seed or the dense output.
struct SeriesData {
  double w = 0.0, wp = 0.0, fp = 0.0, wpp = 0.0, fpp = 0.0;
};

// 3-jet of the solution, closed under the system: wpp/fpp from soliton_rhs,
// wppp/fppp from its derivative along the trajectory.
struct SolitonJet {
  double w = 0.0, wp = 0.0, fp = 0.0;
  double wpp = 0.0, fpp = 0.0;
  double wppp = 0.0, fppp = 0.0;
};

// Taylor coefficients of the smooth solution at the tip:
//   w  = r + a3 r^3 + a5 r^5 + O(r^7)
//   f' = b1 r + b3 r^3 + b5 r^5 + O(r^7)
// For the normalization R(0) + f'(0)^2 = c0 the normalized (c0 = 1)
// coefficients scale as a3 c0, a5 c0^2, b1 c0, b3 c0^2, b5 c0^3.
struct SeriesCoefficients {
  double a3 = 0.0, a5 = 0.0, b1 = 0.0, b3 = 0.0, b5 = 0.0;
};

SeriesCoefficients series_coefficients(int n, double c0 = 1.0);

// Throws std::domain_error at w <= 0 (origin chart; use series_seed).
SolitonDeriv soliton_rhs(const SolitonState& y, int n);

// Degree-5 Taylor data of the normalized solution at 0 <= r <= r0.
// Throws std::out_of_range beyond the switch radius.
SeriesData series_seed(int n, double r, double r0 = kDefaultSwitchRadius);

class RadialProfile {
 public:
  int n() const { return n_; }
  double c0() const { return c0_; }
  double r0() const { return r0_; }
  double r_max() const { return r_max_; }
  double tol() const { return tol_; }
  // max over the grid of |R + fp^2 - c0|
  double c0_drift() const { return c0_drift_; }

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& w() const { return w_; }
  const std::vector<double>& wp() const { return wp_; }
  const std::vector<double>& fp() const { return fp_; }
  const std::vector<double>& wpp() const { return wpp_; }
  const std::vector<double>& fpp() const { return fpp_; }

  // Continuous evaluation on [0, r_max]: series below r0, piecewise cubic
  // Hermite interpolation of (w, wp, fp) between accepted steps above it,
  // with wpp/fpp recomputed from soliton_rhs at the interpolated state so
  // the returned data is always an exact point of the system's graph.
  SeriesData dense_eval(double r) const;

  // dense_eval extended by the trajectory derivatives wppp, fppp (r > 0).
  SolitonJet jet_at(double r) const;

 private:
  friend RadialProfile solve_bryant(int, double, double,
                                    const struct SolverOptions&);
  int n_ = 3;
  double c0_ = 1.0, r0_ = kDefaultSwitchRadius;
  double r_max_ = 0.0, tol_ = 0.0, c0_drift_ = 0.0;
  std::vector<double> grid_, w_, wp_, fp_;
  std::vector<double> wpp_, fpp_;  // rhs at the nodes (origin: smooth limits)
};

struct SolverOptions {
  // Series/ODE handoff radius. The lower bound protects the conservation
  // monitor: beyond r0 the tangential curvature is a rounded 1 - wp^2 over
  // w^2, whose floor grows like eps / r0^2.
  double r0 = kDefaultSwitchRadius;  // in [5e-4, 1e-2]
  double c0 = 1.0;                   // normalization target, R(0) = c0
  double max_step = 0.05;            // keeps the dense output interpolable
};

// Integrate the profile out to r_max with per-step relative tolerance tol.
// Preconditions: n >= 3, r_max > r0, 1e-14 <= tol <= 1e-4 (std::invalid_argument).
// Throws numerical_error on step-size underflow or when wp leaves (0, 1] /
// fp leaves [0, sqrt(c0)) beyond tolerance, which signals a solver bug.
RadialProfile solve_bryant(int n, double r_max, double tol,
                           const SolverOptions& opts = {});

// Extend a state to its 3-jet using the system and its trajectory derivative.
SolitonJet extend_jet(const SolitonState& y, int n);

// Full frame at r in [0, r_max]: curvature from the dense jet, with
// Rp = -2 fpp fp (the soliton relation grad R = -2 Ric(grad f) specialized
// radially) and lapR from laplacian_radial; exact smooth limits at r = 0.
GeometryFrame frame_at(const RadialProfile& profile, double r);

// Frame plus the jet and second radial derivative of R, for consumers that
// need derivative chains (divergences of curvature fields). Requires r > 0.
struct FrameJet {
  GeometryFrame frame;
  SolitonJet jet;
  double Rpp = 0.0;
};
FrameJet frame_jet_at(const RadialProfile& profile, double r);

// Least-squares slope of log R vs log r over the last decade of the grid.
double fitted_R_exponent(const RadialProfile& profile);
// Least-squares slope of log V vs log r over the last decade, with V the
// cumulative trapezoid of the sphere area omega_{n-1} w^{n-1}.
double fitted_volume_exponent(const RadialProfile& profile);
// Median of R * r over the last decade (the coefficient of the leading
// R ~ c/r behavior; reported, not asserted).
double fitted_R_decay_constant(const RadialProfile& profile);

// ===========================================================================
// CSV export/import, header: r,w,wp,fp,R,Rp,lapR,ric_rad,ric_tan,rm_norm
// ===========================================================================

struct ProfileRow {
  double r = 0.0, w = 0.0, wp = 0.0, fp = 0.0;
  double R = 0.0, Rp = 0.0, lapR = 0.0;
  double ric_rad = 0.0, ric_tan = 0.0, rm_norm = 0.0;
};

inline constexpr const char* kProfileCsvHeader =
    "r,w,wp,fp,R,Rp,lapR,ric_rad,ric_tan,rm_norm";

// One row per grid point, 17 significant digits, LF line endings.
std::string profile_to_csv(const RadialProfile& profile);

// Strict parse of the schema above; throws std::invalid_argument on a
// missing/odd header, short rows, or non-finite fields.
std::vector<ProfileRow> parse_profile_csv(std::istream& in);

}  // namespace solitonlab
