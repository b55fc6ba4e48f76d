#pragma once

// Independent reference computations for cross-checking analytic results:
// textbook central-difference stencils and composite trapezoid quadrature.
// Nothing here shares code with the library paths under test.

#include <functional>

namespace oracles {

// 4th-order central first derivative, truncation O(h^4 f^(5)).
inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h) {
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
         (12.0 * h);
}

// 4th-order central second derivative.
inline double fd_second(const std::function<double(double)>& f, double x,
                        double h) {
  return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
          f(x - 2.0 * h)) /
         (12.0 * h * h);
}

// Composite trapezoid with `panels` equal panels.
inline double trapezoid(const std::function<double(double)>& f, double a,
                        double b, int panels) {
  const double h = (b - a) / panels;
  double acc = 0.5 * (f(a) + f(b));
  for (int i = 1; i < panels; ++i) acc += f(a + i * h);
  return acc * h;
}

}  // namespace oracles
