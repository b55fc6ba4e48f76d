#pragma once

// Small numerical kernels shared by the solver and the probes: an embedded
// adaptive Runge-Kutta step, shape-preserving cubic interpolation, adaptive
// quadrature, and least-squares line fits. Everything is deterministic.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace solitonlab {

// Raised when an algorithm fails for numerical (not usage) reasons:
// integration stall, envelope violation, inversion or fit breakdown.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ===========================================================================
// Embedded Dormand-Prince 5(4) step
// ===========================================================================

template <std::size_t N>
using StateVec = std::array<double, N>;

template <std::size_t N>
using OdeRhs = std::function<StateVec<N>(double, const StateVec<N>&)>;

template <std::size_t N>
struct StepResult {
  StateVec<N> y;        // 5th-order solution at t + h
  StateVec<N> k_end;    // rhs at (t + h, y); FSAL reuse and Hermite slopes
  double error_ratio;   // max_i |err_i| / (atol + rtol * scale_i)
};

// One embedded 5(4) step from (t, y) with rhs value k0 = rhs(t, y).
template <std::size_t N>
StepResult<N> dopri5_step(const OdeRhs<N>& rhs, double t, const StateVec<N>& y,
                          const StateVec<N>& k0, double h, double atol,
                          double rtol) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // 4th-order embedded weights
  static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695,
                          e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                          e6 = 187.0 / 2100, e7 = 1.0 / 40;

  StateVec<N> tmp;
  auto axpy = [&](auto&&... terms) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = y[i];
      ((acc += h * terms.first * terms.second[i]), ...);
      tmp[i] = acc;
    }
  };

  axpy(std::pair{a21, k0});
  const StateVec<N> k2 = rhs(t + c2 * h, tmp);
  axpy(std::pair{a31, k0}, std::pair{a32, k2});
  const StateVec<N> k3 = rhs(t + c3 * h, tmp);
  axpy(std::pair{a41, k0}, std::pair{a42, k2}, std::pair{a43, k3});
  const StateVec<N> k4 = rhs(t + c4 * h, tmp);
  axpy(std::pair{a51, k0}, std::pair{a52, k2}, std::pair{a53, k3},
       std::pair{a54, k4});
  const StateVec<N> k5 = rhs(t + c5 * h, tmp);
  axpy(std::pair{a61, k0}, std::pair{a62, k2}, std::pair{a63, k3},
       std::pair{a64, k4}, std::pair{a65, k5});
  const StateVec<N> k6 = rhs(t + h, tmp);

  StepResult<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out.y[i] = y[i] + h * (b1 * k0[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                           b6 * k6[i]);
  }
  out.k_end = rhs(t + h, out.y);

  double ratio = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double y4 = y[i] + h * (e1 * k0[i] + e3 * k3[i] + e4 * k4[i] +
                                  e5 * k5[i] + e6 * k6[i] + e7 * out.k_end[i]);
    const double err = out.y[i] - y4;
    const double scale =
        atol + rtol * std::max(std::fabs(y[i]), std::fabs(out.y[i]));
    ratio = std::max(ratio, std::fabs(err) / scale);
  }
  out.error_ratio = ratio;
  return out;
}

// ===========================================================================
// Cubic Hermite evaluation on one interval
// ===========================================================================

struct HermiteValue {
  double value;
  double derivative;
};

// Evaluate the cubic with values y0,y1 and slopes m0,m1 at the ends of
// [x0, x1], at x in that interval.
HermiteValue hermite_cubic(double x0, double x1, double y0, double y1,
                           double m0, double m1, double x);

// ===========================================================================
// Shape-preserving (Fritsch-Carlson) monotone cubic interpolant
// ===========================================================================

class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  // x strictly increasing, sizes equal and >= 2; y need not be monotone,
  // but where it is, the interpolant is too.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;
};

// ===========================================================================
// Adaptive Simpson quadrature
// ===========================================================================

struct QuadratureResult {
  double value;
  int max_depth_used;
};

// Integrate f over [a, b] (a may exceed b; the sign convention is honored),
// subdividing until each panel's two-level difference fits within a budget
// proportional to tol_rel * |whole estimate| * panel width, or falls under
// the rounding noise of the partial sums. Throws numerical_error if the
// recursion limit is hit while the error is still far above budget.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double tol_rel,
                                  int max_depth = 48);

// ===========================================================================
// Least-squares line fit
// ===========================================================================

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

// Ordinary least squares of y against x. Requires >= 2 distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// ===========================================================================
// Grids
// ===========================================================================

// count points, geometrically spaced, endpoints included. Requires
// 0 < lo < hi and count >= 2.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace solitonlab
