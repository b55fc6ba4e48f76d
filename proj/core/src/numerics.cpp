#include "solitonlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace solitonlab {

HermiteValue hermite_cubic(double x0, double x1, double y0, double y1,
                           double m0, double m1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  HermiteValue out;
  out.value = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
  const double d00 = (6.0 * t2 - 6.0 * t) / h;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / h;
  const double d11 = 3.0 * t2 - 2.0 * t;
  out.derivative = d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1;
  return out;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("MonotoneCubic: need >= 2 aligned nodes");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i] < x_[i + 1])) {
      throw std::invalid_argument("MonotoneCubic: x must be strictly increasing");
    }
  }
  // Fritsch-Carlson slopes: harmonic-mean average of adjacent secants where
  // they agree in sign, zero at local extrema; one-sided at the ends.
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  }
  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] > 0.0) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      const double wl = 2.0 * h1 + h0;
      const double wr = h1 + 2.0 * h0;
      m_[i] = (wl + wr) / (wl / d[i - 1] + wr / d[i]);
    }
  }
  // Clamp end slopes so the interpolant cannot overshoot the end panels.
  auto clamp_end = [](double& m, double secant) {
    if (secant == 0.0) {
      m = 0.0;
    } else if (m * secant < 0.0) {
      m = 0.0;
    } else if (std::fabs(m) > 3.0 * std::fabs(secant)) {
      m = 3.0 * secant;
    }
  };
  clamp_end(m_[0], d[0]);
  clamp_end(m_[n - 1], d[n - 2]);
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return hermite_cubic(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], x)
      .value;
}

namespace {

struct SimpsonPanel {
  double a, b, fa, fm, fb, whole;
  int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double tol_rel,
                                  int max_depth) {
  if (a == b) return {0.0, 0};
  const double sign = (a < b) ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(mid), fhi = f(hi);
  const double whole = simpson(lo, hi, flo, fmid, fhi);
  // Panel budget is proportional to the global estimate so panels that
  // contribute nothing are not refined forever.
  const double global_scale = std::max(std::fabs(whole), 1e-300);

  double total = 0.0;
  int depth_used = 0;
  std::vector<SimpsonPanel> stack;
  stack.push_back(SimpsonPanel{lo, hi, flo, fmid, fhi, whole, 0});

  while (!stack.empty()) {
    const SimpsonPanel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double err = left + right - p.whole;
    depth_used = std::max(depth_used, p.depth);
    // Accept on the raw two-level difference, not the extrapolated error;
    // the 15x Richardson credit is kept as headroom instead of spent. The
    // noise floor stops subdivision once err is below the rounding level of
    // the panel sums, where refinement can no longer make progress.
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                         (std::fabs(left) + std::fabs(right) + std::fabs(total));
    if (std::fabs(err) <= std::max(noise, tol_rel * global_scale *
                                              std::max(1e-12, (p.b - p.a) /
                                                                  (hi - lo))) ||
        p.depth >= max_depth) {
      if (p.depth >= max_depth &&
          std::fabs(err) > 1e6 * tol_rel * global_scale) {
        throw numerical_error(
            "adaptive_simpson: recursion limit hit before convergence");
      }
      total += left + right + err / 15.0;  // Richardson extrapolation
    } else {
      stack.push_back({p.a, m, p.fa, flm, p.fm, left, p.depth + 1});
      stack.push_back({m, p.b, p.fm, frm, p.fb, right, p.depth + 1});
    }
  }
  return {sign * total, depth_used};
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) {
    throw std::invalid_argument("fit_line: need >= 2 aligned samples");
  }
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw numerical_error("fit_line: degenerate abscissa range");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += resid * resid;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    out[static_cast<std::size_t>(i)] = std::exp(llo + t * (lhi - llo));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace solitonlab
