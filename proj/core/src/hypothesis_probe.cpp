#include "solitonlab/hypothesis_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "solitonlab/numerics.hpp"

namespace solitonlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Endpoint exclusion for the psi table: the inverse r(s) is built from
// sampled data only, so a guard band keeps every query strictly inside the
// computed range (the underlying functions have no printed endpoint theory).
constexpr double kPsiEdgeEpsilon = 1e-4;

double integrand_value(const GeometryFrame& fr, FluxIntegrand integrand) {
  const double fp = fr.grad_f_norm;
  switch (integrand) {
    case FluxIntegrand::gradR_plus_RgradF:
      return std::fabs(fr.Rp + fr.R * fp);
    case FluxIntegrand::gradR_plus_2RgradF:
      // Majorant form |grad R| + 2R|grad f|, not the norm of the sum; the
      // boundary estimate it feeds is stated with the two norms separately.
      return std::fabs(fr.Rp) + 2.0 * std::fabs(fr.R) * fp;
    case FluxIntegrand::one_minus_R_weighted:
      return fp * fp * std::fabs(fr.Rp + fr.R * fp);
  }
  throw std::invalid_argument("unknown flux integrand");
}

void fit_flux_tail(FluxSeries& series) {
  series.usable_points = 0;
  series.fitted_exponent = kNaN;
  series.exponent_defined = false;
  if (series.radii.empty()) {
    return;
  }
  double max_flux = 0.0;
  for (const double f : series.flux) {
    max_flux = std::max(max_flux, f);
  }
  if (max_flux == 0.0) {
    return;  // identically zero flux: exponent undefined, flagged not thrown
  }
  std::vector<double> lr, lf;
  const double lo = series.radii.back() / 10.0;
  for (std::size_t i = 0; i < series.radii.size(); ++i) {
    if (series.radii[i] >= lo && series.flux[i] > 0.0) {
      lr.push_back(std::log(series.radii[i]));
      lf.push_back(std::log(series.flux[i]));
    }
  }
  series.usable_points = lr.size();
  if (lr.size() < 8) {
    throw numerical_error(
        "flux_series: fit needs at least 8 positive points in the last "
        "decade");
  }
  series.fitted_exponent = fit_line(lr, lf).slope;
  series.exponent_defined = true;
}

}  // namespace

double sigma_constant(int n) {
  if (n < 2) {
    throw std::invalid_argument("sigma_constant: n >= 2 required");
  }
  const double nd = static_cast<double>(n);
  return (nd + 1.0 + std::sqrt((nd - 1.0) * (7.0 * nd - 13.0))) /
         (3.0 * nd - 2.0);
}

double sigma_limit() { return (1.0 + std::sqrt(7.0)) / 3.0; }

PinchMargins margins_at(const GeometryFrame& frame) {
  const double nd = static_cast<double>(frame.n);
  const double fp = frame.grad_f_norm;
  const double abs_rp = std::fabs(frame.Rp);
  const double ric_norm = std::sqrt(frame.ric_norm_sq);

  PinchMargins m;
  m.delta = frame.R > 0.0
                ? std::min(frame.ric_rad, frame.ric_tan) / frame.R
                : kNaN;
  m.sigma_margin = abs_rp - sigma_constant(frame.n) * frame.R * fp;
  if (fp > 0.0) {
    const double rp_over_fp = frame.Rp / fp;
    m.kato_margin = frame.ric_norm_sq - rp_over_fp * rp_over_fp / 4.0;
    m.munteanu_margin =
        0.25 * (1.5 * rp_over_fp * rp_over_fp - 2.0 * frame.R * frame.R) -
        ric_norm;
    m.pinch33_margin =
        abs_rp / fp -
        std::sqrt((3.0 * nd - 4.0) / (2.0 * (nd - 1.0))) * frame.R;
  } else {
    m.kato_margin = kNaN;
    m.munteanu_margin = kNaN;
    m.pinch33_margin = kNaN;
  }
  return m;
}

PinchingProfile pinching_profile(const RadialProfile& profile,
                                 const std::vector<double>& radii) {
  PinchingProfile out;
  for (const double r : radii) {
    const GeometryFrame fr = frame_at(profile, r);
    if (!(fr.grad_f_norm > 0.0)) {
      continue;  // tip: three margins are ratios over fp
    }
    const PinchMargins m = margins_at(fr);
    out.radii.push_back(r);
    out.delta.push_back(m.delta);
    out.sigma_margin.push_back(m.sigma_margin);
    out.kato_margin.push_back(m.kato_margin);
    out.munteanu_margin.push_back(m.munteanu_margin);
    out.pinch33_margin.push_back(m.pinch33_margin);
  }

  struct Field {
    const char* name;
    double PinchMargins::* member;
    const std::vector<double>* values;
  };
  const Field fields[] = {
      {"delta", &PinchMargins::delta, &out.delta},
      {"sigma_margin", &PinchMargins::sigma_margin, &out.sigma_margin},
      {"kato_margin", &PinchMargins::kato_margin, &out.kato_margin},
      {"munteanu_margin", &PinchMargins::munteanu_margin,
       &out.munteanu_margin},
      {"pinch33_margin", &PinchMargins::pinch33_margin,
       &out.pinch33_margin},
  };
  for (const Field& field : fields) {
    std::vector<double> found;
    const std::vector<double>& vals = *field.values;
    for (std::size_t i = 0; i + 1 < out.radii.size(); ++i) {
      const double a = vals[i], b = vals[i + 1];
      if (!std::isfinite(a) || !std::isfinite(b) || !(a * b < 0.0)) {
        continue;
      }
      double lo = out.radii[i], hi = out.radii[i + 1];
      double f_lo = a;
      while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid =
            margins_at(frame_at(profile, mid)).*(field.member);
        if (f_lo * f_mid <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          f_lo = f_mid;
        }
      }
      found.push_back(0.5 * (lo + hi));
    }
    out.crossings[field.name] = std::move(found);
  }
  return out;
}

const char* flux_integrand_name(FluxIntegrand integrand) {
  switch (integrand) {
    case FluxIntegrand::gradR_plus_RgradF:
      return "gradR_plus_RgradF";
    case FluxIntegrand::gradR_plus_2RgradF:
      return "gradR_plus_2RgradF";
    case FluxIntegrand::one_minus_R_weighted:
      return "one_minus_R_weighted";
  }
  throw std::invalid_argument("unknown flux integrand");
}

FluxSeries flux_series(const RadialProfile& profile, FluxIntegrand integrand,
                       const std::vector<double>& radii) {
  FluxSeries out;
  out.integrand_name = flux_integrand_name(integrand);
  double prev = -1.0;
  for (const double r : radii) {
    if (!(r > prev)) {
      throw std::invalid_argument(
          "flux_series: radii must be strictly increasing");
    }
    prev = r;
    const FrameJet fj = frame_jet_at(profile, r);
    const RadialPoint point{r, fj.jet.w, fj.jet.wp, fj.jet.fp, profile.n()};
    out.radii.push_back(r);
    out.flux.push_back(
        sphere_flux(integrand_value(fj.frame, integrand), point));
  }
  fit_flux_tail(out);
  return out;
}

FluxSeries flux_series_frames(const std::vector<GeometryFrame>& frames,
                              const std::vector<RadialPoint>& points,
                              FluxIntegrand integrand) {
  if (frames.size() != points.size()) {
    throw std::invalid_argument(
        "flux_series_frames: frames and points must pair up");
  }
  FluxSeries out;
  out.integrand_name = flux_integrand_name(integrand);
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!(points[i].r > prev)) {
      throw std::invalid_argument(
          "flux_series_frames: radii must be strictly increasing");
    }
    prev = points[i].r;
    out.radii.push_back(points[i].r);
    out.flux.push_back(
        sphere_flux(integrand_value(frames[i], integrand), points[i]));
  }
  fit_flux_tail(out);
  return out;
}

PsiReconstruction::PsiReconstruction(const RadialProfile& profile)
    : profile_(&profile) {
  // R at the grid nodes, tip excluded; R decreasing in r makes s = R(r)
  // increasing when traversed from r_max down to r0.
  const std::vector<double>& grid = profile.grid();
  std::vector<double> s_nodes, r_nodes;
  s_nodes.reserve(grid.size());
  r_nodes.reserve(grid.size());
  for (std::size_t i = grid.size(); i-- > 1;) {
    const double s = frame_at(profile, grid[i]).R;
    if (!s_nodes.empty() && !(s > s_nodes.back())) {
      throw numerical_error(
          "reconstruct_psi: scalar curvature is not strictly monotone on "
          "the grid; cannot invert R");
    }
    s_nodes.push_back(s);
    r_nodes.push_back(grid[i]);
  }
  r_of_s_ = MonotoneCubic(std::move(s_nodes), std::move(r_nodes));
  s_min_ = r_of_s_.x_front() + kPsiEdgeEpsilon;
  s_max_ = r_of_s_.x_back() - kPsiEdgeEpsilon;
  if (!(s_min_ < s_max_)) {
    throw numerical_error(
        "reconstruct_psi: computed curvature range too narrow after "
        "endpoint exclusion");
  }
}

double PsiReconstruction::radius_of(double s) const {
  if (!(s >= s_min_ && s <= s_max_)) {
    throw std::out_of_range("psi(s): s outside the computed range [" +
                            std::to_string(s_min_) + ", " +
                            std::to_string(s_max_) + "]");
  }
  return std::clamp(r_of_s_(s), profile_->r0(), profile_->r_max());
}

double PsiReconstruction::psi(double s) const {
  const double r = radius_of(s);
  const FrameJet fj = frame_jet_at(*profile_, r);
  const double value = -fj.frame.Rp / fj.jet.fp;
  if (!(value > 0.0)) {
    throw std::domain_error("psi(s): nonpositive value at s = " +
                            std::to_string(s));
  }
  return value;
}

double PsiReconstruction::u_integrand(double r) const {
  // The curvature-variable integrand is
  //   (n/(1-t)) - (n-1-(n-3)t)/((1-t) psi(t)),
  // combined over (1-t) psi so the zero of the numerator at t -> 1
  // (psi -> 2/n) cancels the pole. Substituting t = R(r), dt = Rp dr and
  // psi = -Rp/fp collapses it further: the (1-t) psi denominator becomes
  // -fp Rp exactly (first integral), leaving a smooth radial integrand with
  // no inverse-interpolation noise and no explicit pole:
  //   n Rp / fp^2 + (n-1-(n-3) R) / fp.
  const double n = static_cast<double>(profile_->n());
  const FrameJet fj = frame_jet_at(*profile_, r);
  const double fp = fj.jet.fp;
  return n * fj.frame.Rp / (fp * fp) +
         (n - 1.0 - (n - 3.0) * fj.frame.R) / fp;
}

void PsiReconstruction::require_base_in_range() const {
  if (!(0.5 >= s_min_ && 0.5 <= s_max_)) {
    throw numerical_error(
        "u(s): base point 1/2 outside the computed curvature range; "
        "increase r_max");
  }
}

double PsiReconstruction::u(double s, double tol_rel) const {
  require_base_in_range();
  const double log_psi = std::log(psi(s));
  const double n = static_cast<double>(profile_->n());
  const double r_base = radius_of(0.5);
  const double r_end = radius_of(s);
  const QuadratureResult q = adaptive_simpson(
      [this](double r) { return u_integrand(r); }, r_base, r_end, tol_rel);
  return log_psi + q.value / (n - 1.0);
}

double PsiReconstruction::x_residual(std::size_t checks) const {
  if (checks == 0) {
    throw std::invalid_argument("x_residual: checks must be positive");
  }
  // Off-grid radii strictly inside the invertible band: r(s_max) is the
  // smallest usable radius, r(s_min) the largest.
  const double r_lo = std::clamp(r_of_s_(s_max_), profile_->r0(),
                                 profile_->r_max());
  const double r_hi = std::clamp(r_of_s_(s_min_), profile_->r0(),
                                 profile_->r_max());
  const std::vector<double> radii =
      log_grid(r_lo * 1.01, r_hi * 0.99, static_cast<int>(checks));
  double worst = 0.0;
  for (const double r : radii) {
    const FrameJet fj = frame_jet_at(*profile_, r);
    const double s = fj.frame.R;
    if (!(s >= s_min_ && s <= s_max_)) {
      continue;
    }
    const double x = fj.frame.Rp + psi(s) * fj.jet.fp;
    worst = std::max(worst, std::fabs(x) / std::fabs(fj.frame.Rp));
  }
  return worst;
}

PsiTable PsiReconstruction::table(std::size_t rows) const {
  if (rows < 2) {
    throw std::invalid_argument("psi table needs at least 2 rows");
  }
  require_base_in_range();
  PsiTable t;
  t.s.reserve(rows);
  t.psi.reserve(rows);
  t.u.resize(rows);
  const double step = (s_max_ - s_min_) / static_cast<double>(rows - 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const double s = i + 1 == rows ? s_max_ : s_min_ + step * i;
    t.s.push_back(s);
    t.psi.push_back(psi(s));
  }
  // Integral term accumulated segment by segment instead of re-integrating
  // each row from the 1/2 base point; anchored quadrature would redo the
  // steep large-radius part of the integrand for every row.
  const auto f = [this](double r) { return u_integrand(r); };
  const double n = static_cast<double>(profile_->n());
  std::size_t k = 0;
  while (k < rows && t.s[k] < 0.5) ++k;
  const double r_base = radius_of(0.5);
  double acc = 0.0;
  double prev = r_base;
  for (std::size_t i = k; i < rows; ++i) {
    const double r_i = radius_of(t.s[i]);
    acc += adaptive_simpson(f, prev, r_i, 1e-10).value;
    prev = r_i;
    t.u[i] = std::log(t.psi[i]) + acc / (n - 1.0);
  }
  acc = 0.0;
  prev = r_base;
  for (std::size_t i = k; i-- > 0;) {
    const double r_i = radius_of(t.s[i]);
    acc += adaptive_simpson(f, prev, r_i, 1e-10).value;
    prev = r_i;
    t.u[i] = std::log(t.psi[i]) + acc / (n - 1.0);
  }
  t.x_checks = 100;
  t.x_residual = x_residual(t.x_checks);
  return t;
}

PsiTable reconstruct_psi(const RadialProfile& profile) {
  return PsiReconstruction(profile).table();
}

const char* decay_class_name(DecayClass c) {
  switch (c) {
    case DecayClass::linear:
      return "linear";
    case DecayClass::exponential:
      return "exponential";
    case DecayClass::neither:
      return "neither";
  }
  throw std::invalid_argument("unknown decay class");
}

DecayClassification decay_classifier(const std::vector<double>& r,
                                     const std::vector<double>& v, int n) {
  if (r.size() != v.size()) {
    throw std::invalid_argument(
        "decay_classifier: sample vectors must have equal length");
  }
  if (r.size() < 16) {
    throw std::invalid_argument(
        "decay_classifier: at least 16 samples required");
  }
  if (!(r.front() > 0.0)) {
    throw std::invalid_argument("decay_classifier: radii must be positive");
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) {
      throw std::invalid_argument(
          "decay_classifier: radii must be strictly increasing");
    }
  }
  if (!(r.back() >= 10.0 * r.front())) {
    throw std::invalid_argument(
        "decay_classifier: samples must span at least one decade");
  }

  DecayClassification out;
  out.envelope_sup = kNaN;
  std::vector<double> xs, log_xs, log_vs;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (v[i] > 0.0) {
      xs.push_back(r[i]);
      log_xs.push_back(std::log(r[i]));
      log_vs.push_back(std::log(v[i]));
    }
  }
  if (xs.size() < 16) {
    out.ill_conditioned = true;
    out.power_exponent = kNaN;
    out.power_rms = kNaN;
    out.exp_rate = kNaN;
    out.exp_rms = kNaN;
    return out;
  }

  const LineFit power = fit_line(log_xs, log_vs);
  const LineFit expo = fit_line(xs, log_vs);
  out.power_exponent = power.slope;
  out.power_rms = power.rms_residual;
  out.exp_rate = expo.slope;
  out.exp_rms = expo.rms_residual;

  const bool linear_wins = 10.0 * power.rms_residual <= expo.rms_residual;
  const bool exp_wins = 10.0 * expo.rms_residual <= power.rms_residual;
  if (linear_wins && !exp_wins) {
    out.verdict = DecayClass::linear;
  } else if (exp_wins && !linear_wins) {
    out.verdict = DecayClass::exponential;
  } else {
    out.verdict = DecayClass::neither;
  }

  if (out.verdict == DecayClass::exponential) {
    // log of v (1+r)^{-3(n+1)} e^{r}; kept in log space until the end so an
    // unbounded envelope is reported rather than overflowed.
    const double power_weight = -3.0 * static_cast<double>(n + 1);
    double sup_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sup_log = std::max(sup_log, log_vs[i] +
                                      power_weight * std::log1p(xs[i]) +
                                      xs[i]);
    }
    out.envelope_bounded = sup_log <= 700.0;
    out.envelope_sup = std::exp(std::min(sup_log, 700.0));
  }
  return out;
}

}  // namespace solitonlab
