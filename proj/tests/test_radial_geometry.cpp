#include "solitonlab/radial_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"

using namespace solitonlab;

namespace {

// Frame of a pure warped product (f = 0) from a closed-form warp.
GeometryFrame warp_frame(int n, double r, double w, double wp, double wpp) {
  return curvature_from_point(RadialPoint{r, w, wp, 0.0, n}, wpp, 0.0);
}

}  // namespace

TEST(CurvatureFromPoint, FlatSpaceIsFlat) {
  for (int n = 3; n <= 8; ++n) {
    const GeometryFrame f = warp_frame(n, 1.7, 1.7, 1.0, 0.0);
    EXPECT_EQ(f.R, 0.0);
    EXPECT_EQ(f.ric_rad, 0.0);
    EXPECT_EQ(f.ric_tan, 0.0);
    EXPECT_EQ(f.k_rad, 0.0);
    EXPECT_EQ(f.k_tan, 0.0);
    EXPECT_EQ(f.rm_norm, 0.0);
  }
}

TEST(CurvatureFromPoint, RoundSphereHasConstantCurvatureOne) {
  // w = sin r on S^n: every sectional curvature is 1, R = n(n-1).
  for (int n = 3; n <= 6; ++n) {
    const double r = 0.9;
    const GeometryFrame f =
        warp_frame(n, r, std::sin(r), std::cos(r), -std::sin(r));
    EXPECT_NEAR(f.k_rad, 1.0, 1e-14);
    EXPECT_NEAR(f.k_tan, 1.0, 1e-14);
    EXPECT_NEAR(f.R, n * (n - 1.0), 1e-12);
    EXPECT_NEAR(f.ric_rad, n - 1.0, 1e-13);
    EXPECT_NEAR(f.ric_tan, n - 1.0, 1e-13);
  }
}

TEST(CurvatureFromPoint, HyperbolicSpaceHasCurvatureMinusOne) {
  const int n = 4;
  const double r = 1.3;
  const GeometryFrame f =
      warp_frame(n, r, std::sinh(r), std::cosh(r), std::sinh(r));
  EXPECT_NEAR(f.k_rad, -1.0, 1e-14);
  EXPECT_NEAR(f.k_tan, -1.0, 1e-14);
  EXPECT_NEAR(f.R, -n * (n - 1.0), 1e-12);
}

TEST(CurvatureFromPoint, TraceAndNormIdentitiesHold) {
  // Generic anisotropic warp: invariants must close algebraically.
  const int n = 5;
  const double r = 2.0, w = 1.4, wp = 0.6, wpp = -0.11, fpp = 0.07;
  const GeometryFrame f =
      curvature_from_point(RadialPoint{r, w, wp, 0.3, n}, wpp, fpp);
  EXPECT_NEAR(f.R, f.ric_rad + (n - 1.0) * f.ric_tan, 1e-14);
  EXPECT_NEAR(f.ric_norm_sq,
              f.ric_rad * f.ric_rad + (n - 1.0) * f.ric_tan * f.ric_tan,
              1e-14);
  const double rm_sq = 4.0 * (n - 1.0) * f.k_rad * f.k_rad +
                       2.0 * (n - 1.0) * (n - 2.0) * f.k_tan * f.k_tan;
  EXPECT_NEAR(f.rm_norm * f.rm_norm, rm_sq, 1e-14);
}

TEST(CurvatureFromPoint, CancellationFreeOverloadAgreesAwayFromTip) {
  const int n = 4;
  const double wp = 0.7;
  const GeometryFrame a =
      curvature_from_point(RadialPoint{1.0, 0.9, wp, 0.2, n}, -0.3, 0.1);
  const GeometryFrame b = curvature_from_point(
      RadialPoint{1.0, 0.9, wp, 0.2, n}, -0.3, 0.1, 1.0 - wp * wp);
  EXPECT_NEAR(a.k_tan, b.k_tan, 1e-15);
  EXPECT_NEAR(a.R, b.R, 1e-14);
}

TEST(CurvatureFromPoint, RejectsBadInputs) {
  EXPECT_THROW(warp_frame(2, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(warp_frame(4, 1.0, 0.0, 1.0, 0.0), std::domain_error);
  EXPECT_THROW(warp_frame(4, 1.0, -1.0, 1.0, 0.0), std::domain_error);
}

TEST(LaplacianRadial, MatchesEuclideanClosedForm) {
  // q = r^2 on R^n: laplacian is 2n.
  for (int n = 3; n <= 7; ++n) {
    const double r = 1.9;
    const double lap = laplacian_radial(RadialDerivatives{2.0 * r, 2.0},
                                        RadialPoint{r, r, 1.0, 0.0, n});
    EXPECT_NEAR(lap, 2.0 * n, 1e-13);
  }
  EXPECT_NEAR(laplacian_origin_limit(2.0, 5), 10.0, 1e-15);
}

TEST(LaplacianRadial, MatchesSphericalOracle) {
  // q = cos r on S^4 (w = sin r): the first spherical harmonic,
  // lap q = q'' + 3 (cos r / sin r) q' = -4 cos r.
  const double r = 0.8;
  const double lap =
      laplacian_radial(RadialDerivatives{-std::sin(r), -std::cos(r)},
                       RadialPoint{r, std::sin(r), std::cos(r), 0.0, 4});
  EXPECT_NEAR(lap, -4.0 * std::cos(r), 1e-13);
}

TEST(DivergenceRadial, ConstantFieldOnFlatSpace) {
  // div(v d/dr) = v' + (n-1) v / r for w = r.
  const double v = 0.4, r = 2.5;
  const int n = 6;
  EXPECT_NEAR(divergence_radial(v, 0.0, RadialPoint{r, r, 1.0, 0.0, n}),
              (n - 1.0) * v / r, 1e-14);
}

TEST(UnitSphereArea, MatchesClosedForms) {
  EXPECT_NEAR(unit_sphere_area(2), 2.0 * M_PI, 1e-15);
  EXPECT_NEAR(unit_sphere_area(3), 4.0 * M_PI, 1e-14);
  EXPECT_NEAR(unit_sphere_area(4), 2.0 * M_PI * M_PI, 1e-13);
  EXPECT_NEAR(unit_sphere_area(5), 8.0 * M_PI * M_PI / 3.0, 1e-13);
  EXPECT_NEAR(unit_sphere_area(6), M_PI * M_PI * M_PI, 1e-13);
  EXPECT_THROW(unit_sphere_area(1), std::invalid_argument);
}

TEST(UnitSphereArea, BitStableAcrossCalls) {
  for (int n = 2; n <= 12; ++n) {
    EXPECT_EQ(unit_sphere_area(n), unit_sphere_area(n));
  }
}

TEST(SphereFlux, EuclideanSphereArea) {
  // Unit integrand over the r-sphere in R^3: 4 pi r^2.
  const double r = 3.2;
  EXPECT_NEAR(sphere_flux(1.0, RadialPoint{r, r, 1.0, 0.0, 3}),
              4.0 * M_PI * r * r, 1e-12);
  EXPECT_THROW(sphere_flux(-1.0, RadialPoint{r, r, 1.0, 0.0, 3}),
               std::domain_error);
}

TEST(RescaleMetric, ScalesCurvatureAndPreservesInvariants) {
  const int n = 4;
  const GeometryFrame f =
      curvature_from_point(RadialPoint{0.9, 0.8, 0.7, 0.5, n}, -0.2, 0.15);
  GeometryFrame g = f;
  g.Rp = -0.33;
  g.lapR = 0.21;
  const double lam = 4.0;
  const GeometryFrame s = rescale_metric(g, lam);
  EXPECT_NEAR(s.R, g.R / lam, 1e-15);
  EXPECT_NEAR(s.ric_rad, g.ric_rad / lam, 1e-15);
  EXPECT_NEAR(s.k_tan, g.k_tan / lam, 1e-15);
  EXPECT_NEAR(s.grad_f_norm, g.grad_f_norm / std::sqrt(lam), 1e-15);
  EXPECT_NEAR(s.r, g.r * std::sqrt(lam), 1e-15);
  // d/dr picks up 1/sqrt(lam) per derivative on top of the value scaling.
  EXPECT_NEAR(s.Rp, g.Rp / (lam * std::sqrt(lam)), 1e-15);
  EXPECT_NEAR(s.lapR, g.lapR / (lam * lam), 1e-15);
  // First integral scales homogeneously.
  const double before = g.R + g.grad_f_norm * g.grad_f_norm;
  const double after = s.R + s.grad_f_norm * s.grad_f_norm;
  EXPECT_NEAR(after, before / lam, 1e-15);
  EXPECT_THROW(rescale_metric(g, 0.0), std::domain_error);
}
