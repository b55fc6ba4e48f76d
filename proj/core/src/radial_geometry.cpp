#include "solitonlab/radial_geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace solitonlab {

namespace {

void require_outside_tip(const RadialPoint& p, const char* op) {
  if (!(p.w > 0.0)) {
    throw std::domain_error(std::string(op) +
                            ": inside origin chart (w <= 0); use the series "
                            "limits provided by the profile instead");
  }
}

}  // namespace

GeometryFrame curvature_from_point(const RadialPoint& p, double wpp, double fpp) {
  return curvature_from_point(p, wpp, fpp, 1.0 - p.wp * p.wp);
}

GeometryFrame curvature_from_point(const RadialPoint& p, double wpp, double fpp,
                                   double one_minus_wp_sq) {
  if (p.n < 3) {
    throw std::invalid_argument(
        "curvature_from_point: n >= 3 required (n = 2 is served by the exact "
        "soliton evaluators)");
  }
  require_outside_tip(p, "curvature_from_point");
  if (!std::isfinite(wpp) || !std::isfinite(fpp) || !std::isfinite(p.wp) ||
      !std::isfinite(p.fp)) {
    throw std::invalid_argument("curvature_from_point: non-finite jet");
  }

  const double n1 = static_cast<double>(p.n - 1);
  const double n2 = static_cast<double>(p.n - 2);

  GeometryFrame fr;
  fr.n = p.n;
  fr.r = p.r;
  fr.k_rad = -wpp / p.w;
  fr.k_tan = one_minus_wp_sq / (p.w * p.w);
  fr.ric_rad = n1 * fr.k_rad;
  fr.ric_tan = fr.k_rad + n2 * fr.k_tan;
  fr.R = 2.0 * n1 * fr.k_rad + n1 * n2 * fr.k_tan;
  fr.ric_norm_sq = fr.ric_rad * fr.ric_rad + n1 * fr.ric_tan * fr.ric_tan;
  fr.rm_norm = std::sqrt(4.0 * n1 * fr.k_rad * fr.k_rad +
                         2.0 * n1 * n2 * fr.k_tan * fr.k_tan);
  fr.grad_f_norm = std::fabs(p.fp);
  // Not determined by a 2-jet; producers of frames fill these.
  fr.Rp = std::numeric_limits<double>::quiet_NaN();
  fr.lapR = std::numeric_limits<double>::quiet_NaN();
  return fr;
}

double laplacian_radial(const RadialDerivatives& q, const RadialPoint& p) {
  require_outside_tip(p, "laplacian_radial");
  return q.qpp + static_cast<double>(p.n - 1) * (p.wp / p.w) * q.qp;
}

double laplacian_origin_limit(double qpp0, int n) {
  return static_cast<double>(n) * qpp0;
}

double divergence_radial(double v, double vp, const RadialPoint& p) {
  require_outside_tip(p, "divergence_radial");
  return vp + static_cast<double>(p.n - 1) * (p.wp / p.w) * v;
}

double unit_sphere_area(int n) {
  if (n < 2) {
    throw std::invalid_argument("unit_sphere_area: n >= 2 required");
  }
  // Gamma(n/2) by upward recursion from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
  const double pi = 3.14159265358979323846264338327950288;
  double g;
  double x;
  if (n % 2 == 0) {
    g = 1.0;
    x = 1.0;
  } else {
    g = std::sqrt(pi);
    x = 0.5;
  }
  while (x + 0.5 < 0.5 * static_cast<double>(n)) {
    g *= x;
    x += 1.0;
  }
  return 2.0 * std::pow(pi, 0.5 * static_cast<double>(n)) / g;
}

double sphere_flux(double q, const RadialPoint& p) {
  if (q < 0.0) {
    throw std::domain_error("sphere_flux: integrand must be nonnegative");
  }
  if (!(p.w >= 0.0)) {
    throw std::domain_error("sphere_flux: w must be nonnegative");
  }
  return unit_sphere_area(p.n) *
         std::pow(p.w, static_cast<double>(p.n - 1)) * q;
}

GeometryFrame rescale_metric(const GeometryFrame& frame, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("rescale_metric: lambda must be positive");
  }
  const double root = std::sqrt(lambda);
  GeometryFrame out = frame;
  out.r = frame.r * root;
  out.R = frame.R / lambda;
  out.Rp = frame.Rp / (lambda * root);
  out.lapR = frame.lapR / (lambda * lambda);
  out.ric_rad = frame.ric_rad / lambda;
  out.ric_tan = frame.ric_tan / lambda;
  out.ric_norm_sq = frame.ric_norm_sq / (lambda * lambda);
  out.rm_norm = frame.rm_norm / lambda;
  out.grad_f_norm = frame.grad_f_norm / root;
  out.k_rad = frame.k_rad / lambda;
  out.k_tan = frame.k_tan / lambda;
  return out;
}

}  // namespace solitonlab
