#include "solitonlab/bryant_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "solitonlab/io_util.hpp"
#include "solitonlab/numerics.hpp"

namespace solitonlab {

namespace {

void require_dimension(int n, const char* op) {
  if (n < 3) {
    throw std::invalid_argument(std::string(op) + ": n >= 3 required");
  }
}

// 3-jet closed under the system, with K standing in for 1 - wp^2 in every
// place it occurs (including dK/dr = -2 wp wpp inside wppp). The pointwise
// curvature identities cancel algebraically on such jets for any K, so a
// caller with a cancellation-free K (the series region) loses nothing.
struct JetParts {
  SolitonJet jet;
  double one_minus_wp_sq = 0.0;
};

JetParts jet_from_state(double w, double wp, double fp, double K, int n) {
  const double n1 = static_cast<double>(n - 1);
  const double n2 = static_cast<double>(n - 2);
  JetParts out;
  SolitonJet& j = out.jet;
  j.w = w;
  j.wp = wp;
  j.fp = fp;
  j.wpp = n2 * K / w - fp * wp;
  j.fpp = -n1 * j.wpp / w;
  const double dK = -2.0 * wp * j.wpp;
  j.wppp = n2 * (dK / w - K * wp / (w * w)) - (j.fpp * wp + fp * j.wpp);
  j.fppp = -n1 * (j.wppp / w - j.wpp * wp / (w * w));
  out.one_minus_wp_sq = K;
  return out;
}

struct SeriesPoint {
  double w = 0.0, wp = 0.0, fp = 0.0;
  double one_minus_wp_sq = 0.0;  // exact polynomial, no cancellation
};

SeriesPoint eval_series(const SeriesCoefficients& c, double r) {
  const double r2 = r * r;
  SeriesPoint s;
  s.w = r * (1.0 + r2 * (c.a3 + r2 * c.a5));
  const double u = r2 * (3.0 * c.a3 + r2 * (5.0 * c.a5));
  s.wp = 1.0 + u;
  s.fp = r * (c.b1 + r2 * (c.b3 + r2 * c.b5));
  s.one_minus_wp_sq = -u * (2.0 + u);  // 1 - (1+u)^2 without the subtraction
  return s;
}

double scalar_curvature(int n, double w, double wpp, double K) {
  const double n1 = static_cast<double>(n - 1);
  const double n2 = static_cast<double>(n - 2);
  return n1 * (-2.0 * wpp / w + n2 * K / (w * w));
}

// Dense 3-jet at r in (0, r_max]: exact series polynomials below and at the
// handoff radius, cubic Hermite interpolation of (w, wp, fp) between
// accepted nodes above it. wpp/fpp always come from the system at the
// interpolated state, never from interpolating second derivatives.
JetParts parts_at(const RadialProfile& p, double r) {
  if (!(r >= 0.0) || r > p.r_max() * (1.0 + 1e-9)) {
    throw std::out_of_range("profile evaluation at r = " + format_g17(r) +
                            " outside [0, " + format_g17(p.r_max()) + "]");
  }
  r = std::min(r, p.r_max());
  if (r <= p.r0()) {
    const SeriesPoint s = eval_series(series_coefficients(p.n(), p.c0()), r);
    return jet_from_state(s.w, s.wp, s.fp, s.one_minus_wp_sq, p.n());
  }
  const std::vector<double>& grid = p.grid();
  const auto it = std::upper_bound(grid.begin(), grid.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  double w, wp, fp;
  if (grid[i] == r) {
    w = p.w()[i];
    wp = p.wp()[i];
    fp = p.fp()[i];
  } else {
    const double x0 = grid[i], x1 = grid[i + 1];
    w = hermite_cubic(x0, x1, p.w()[i], p.w()[i + 1], p.wp()[i],
                      p.wp()[i + 1], r)
            .value;
    wp = hermite_cubic(x0, x1, p.wp()[i], p.wp()[i + 1], p.wpp()[i],
                       p.wpp()[i + 1], r)
             .value;
    fp = hermite_cubic(x0, x1, p.fp()[i], p.fp()[i + 1], p.fpp()[i],
                       p.fpp()[i + 1], r)
             .value;
  }
  return jet_from_state(w, wp, fp, 1.0 - wp * wp, p.n());
}

GeometryFrame origin_frame(int n, double c0) {
  const double nd = static_cast<double>(n);
  GeometryFrame fr;
  fr.n = n;
  fr.r = 0.0;
  fr.R = c0;
  fr.Rp = 0.0;
  fr.lapR = -2.0 * c0 * c0 / nd;  // n * R''(0) with R''(0) = -2 (c0/n)^2
  fr.ric_rad = c0 / nd;
  fr.ric_tan = c0 / nd;
  fr.ric_norm_sq = c0 * c0 / nd;
  fr.k_rad = c0 / (nd * (nd - 1.0));
  fr.k_tan = fr.k_rad;
  fr.rm_norm = std::sqrt(2.0 * nd * (nd - 1.0)) * fr.k_rad;
  fr.grad_f_norm = 0.0;
  return fr;
}

}  // namespace

SeriesCoefficients series_coefficients(int n, double c0) {
  require_dimension(n, "series_coefficients");
  if (!(c0 > 0.0)) {
    throw std::invalid_argument("series_coefficients: c0 must be positive");
  }
  const double nd = static_cast<double>(n);
  SeriesCoefficients c;
  c.a3 = -c0 / (6.0 * nd * (nd - 1.0));
  c.a5 = c0 * c0 * (13.0 * nd - 10.0) /
         (120.0 * nd * nd * (nd - 1.0) * (nd - 1.0) * (nd + 2.0));
  c.b1 = c0 / nd;
  c.b3 = -2.0 * c0 * c0 / (3.0 * nd * nd * (nd + 2.0));
  c.b5 = c0 * c0 * c0 * (11.0 * nd - 10.0) /
         (15.0 * nd * nd * nd * (nd - 1.0) * (nd + 2.0) * (nd + 4.0));
  return c;
}

SolitonDeriv soliton_rhs(const SolitonState& y, int n) {
  require_dimension(n, "soliton_rhs");
  if (!(y.w > 0.0)) {
    throw std::domain_error(
        "soliton_rhs: inside origin chart (w <= 0); use series_seed");
  }
  SolitonDeriv d;
  d.wp = y.wp;
  d.wpp = static_cast<double>(n - 2) * (1.0 - y.wp * y.wp) / y.w -
          y.fp * y.wp;
  d.fpp = -static_cast<double>(n - 1) * d.wpp / y.w;
  return d;
}

SeriesData series_seed(int n, double r, double r0) {
  require_dimension(n, "series_seed");
  if (!(r >= 0.0) || r > r0 * (1.0 + 1e-12)) {
    throw std::out_of_range("series_seed: r outside [0, r0]");
  }
  const SeriesCoefficients c = series_coefficients(n, 1.0);
  const SeriesPoint s = eval_series(c, r);
  SeriesData out;
  out.w = s.w;
  out.wp = s.wp;
  out.fp = s.fp;
  // Taylor derivatives of the truncated series itself.
  out.wpp = r * (6.0 * c.a3 + r * r * (20.0 * c.a5));
  out.fpp = c.b1 + r * r * (3.0 * c.b3 + r * r * (5.0 * c.b5));
  return out;
}

SolitonJet extend_jet(const SolitonState& y, int n) {
  require_dimension(n, "extend_jet");
  if (!(y.w > 0.0)) {
    throw std::domain_error("extend_jet: inside origin chart (w <= 0)");
  }
  return jet_from_state(y.w, y.wp, y.fp, 1.0 - y.wp * y.wp, n).jet;
}

RadialProfile solve_bryant(int n, double r_max, double tol,
                           const SolverOptions& opts) {
  require_dimension(n, "solve_bryant");
  if (!(tol >= 1e-14 && tol <= 1e-4)) {
    throw std::invalid_argument(
        "solve_bryant: tol must lie in [1e-14, 1e-4]");
  }
  if (!(opts.r0 >= 5e-4 && opts.r0 <= 1e-2)) {
    throw std::invalid_argument(
        "solve_bryant: switch radius must lie in [5e-4, 1e-2]");
  }
  if (!(opts.c0 > 0.0)) {
    throw std::invalid_argument("solve_bryant: c0 must be positive");
  }
  if (!(opts.max_step > 0.0)) {
    throw std::invalid_argument("solve_bryant: max_step must be positive");
  }
  if (!(r_max > opts.r0)) {
    throw std::invalid_argument(
        "solve_bryant: r_max must exceed the switch radius");
  }

  RadialProfile p;
  p.n_ = n;
  p.c0_ = opts.c0;
  p.r0_ = opts.r0;
  p.r_max_ = r_max;
  p.tol_ = tol;

  const SeriesCoefficients coef = series_coefficients(n, opts.c0);
  const SeriesPoint seed = eval_series(coef, opts.r0);
  const JetParts seed_jet =
      jet_from_state(seed.w, seed.wp, seed.fp, seed.one_minus_wp_sq, n);

  // Node 0 carries the smooth limits at the tip.
  p.grid_ = {0.0, opts.r0};
  p.w_ = {0.0, seed.w};
  p.wp_ = {1.0, seed.wp};
  p.fp_ = {0.0, seed.fp};
  p.wpp_ = {0.0, seed_jet.jet.wpp};
  p.fpp_ = {opts.c0 / static_cast<double>(n), seed_jet.jet.fpp};

  const OdeRhs<3> rhs = [n](double, const StateVec<3>& y) -> StateVec<3> {
    const SolitonDeriv d = soliton_rhs(SolitonState{y[0], y[1], y[2]}, n);
    return {d.wp, d.wpp, d.fpp};
  };

  const double sqrt_c0 = std::sqrt(opts.c0);
  const double wp_max = 1.0 + 1e-9;
  const double fp_min = -1e-12 * std::max(1.0, sqrt_c0);
  const double fp_max = sqrt_c0 * (1.0 + 1e-9);

  double t = opts.r0;
  StateVec<3> y = {seed.w, seed.wp, seed.fp};
  StateVec<3> k1 = rhs(t, y);
  double h = std::min({opts.max_step, 1e-2, r_max - t});
  long steps = 0;

  while (t < r_max) {
    const bool last = t + h >= r_max;
    if (last) {
      h = r_max - t;
    }
    const StepResult<3> res = dopri5_step<3>(rhs, t, y, k1, h, 0.0, tol);
    if (res.error_ratio <= 1.0) {
      t = last ? r_max : t + h;
      y = res.y;
      k1 = res.k_end;
      if (!(y[0] > 0.0)) {
        throw numerical_error("solve_bryant: w became nonpositive at r = " +
                              format_g17(t));
      }
      if (!(y[1] > 0.0 && y[1] <= wp_max)) {
        throw numerical_error("solve_bryant: wp left (0, 1] at r = " +
                              format_g17(t));
      }
      if (!(y[2] >= fp_min && y[2] <= fp_max)) {
        throw numerical_error(
            "solve_bryant: fp left [0, sqrt(c0)) at r = " + format_g17(t));
      }
      p.grid_.push_back(t);
      p.w_.push_back(y[0]);
      p.wp_.push_back(y[1]);
      p.fp_.push_back(y[2]);
      p.wpp_.push_back(k1[1]);
      p.fpp_.push_back(k1[2]);
      if (last) {
        break;
      }
      double fac = res.error_ratio <= 1e-12
                       ? 5.0
                       : 0.9 * std::pow(res.error_ratio, -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      h = std::min(h * fac, opts.max_step);
    } else {
      double fac = 0.9 * std::pow(res.error_ratio, -0.2);
      fac = std::clamp(fac, 0.1, 0.9);
      h *= fac;
    }
    if (!(h >= 1e-13 * std::max(1.0, t))) {
      throw numerical_error("solve_bryant: step size underflow at r = " +
                            format_g17(t));
    }
    if (++steps > 5'000'000) {
      throw numerical_error("solve_bryant: step budget exhausted at r = " +
                            format_g17(t));
    }
  }

  // Conservation monitor: the drift of R + fp^2 is the accumulated
  // integration error, since the first integral is never imposed. The
  // handoff node reuses the series' cancellation-free 1 - wp^2.
  double drift = 0.0;
  for (std::size_t i = 1; i < p.grid_.size(); ++i) {
    const double K = i == 1 ? seed.one_minus_wp_sq : 1.0 - p.wp_[i] * p.wp_[i];
    const double R = scalar_curvature(n, p.w_[i], p.wpp_[i], K);
    drift = std::max(drift,
                     std::fabs(R + p.fp_[i] * p.fp_[i] - opts.c0));
  }
  p.c0_drift_ = drift;
  return p;
}

SeriesData RadialProfile::dense_eval(double r) const {
  if (r == 0.0) {
    return SeriesData{0.0, 1.0, 0.0, 0.0, c0_ / static_cast<double>(n_)};
  }
  const JetParts parts = parts_at(*this, r);
  return SeriesData{parts.jet.w, parts.jet.wp, parts.jet.fp, parts.jet.wpp,
                    parts.jet.fpp};
}

SolitonJet RadialProfile::jet_at(double r) const {
  if (!(r > 0.0)) {
    throw std::domain_error(
        "jet_at: the tip jet is determined by the series limits; r > 0 "
        "required");
  }
  return parts_at(*this, r).jet;
}

GeometryFrame frame_at(const RadialProfile& profile, double r) {
  if (r == 0.0) {
    return origin_frame(profile.n(), profile.c0());
  }
  return frame_jet_at(profile, r).frame;
}

FrameJet frame_jet_at(const RadialProfile& profile, double r) {
  if (!(r > 0.0)) {
    throw std::domain_error("frame_jet_at: r > 0 required");
  }
  const JetParts parts = parts_at(profile, r);
  const SolitonJet& j = parts.jet;
  const RadialPoint point{r, j.w, j.wp, j.fp, profile.n()};
  FrameJet out;
  out.frame =
      curvature_from_point(point, j.wpp, j.fpp, parts.one_minus_wp_sq);
  out.frame.Rp = -2.0 * j.fpp * j.fp;
  out.Rpp = -2.0 * (j.fppp * j.fp + j.fpp * j.fpp);
  out.frame.lapR =
      laplacian_radial(RadialDerivatives{out.frame.Rp, out.Rpp}, point);
  out.jet = j;
  return out;
}

namespace {

// Grid radii and values of q over the last decade [r_max/10, r_max].
struct DecadeSamples {
  std::vector<double> r, q;
};

template <typename ValueAt>
DecadeSamples last_decade(const RadialProfile& p, ValueAt&& value_at) {
  DecadeSamples out;
  const double lo = p.r_max() / 10.0;
  for (std::size_t i = 0; i < p.grid().size(); ++i) {
    if (p.grid()[i] >= lo) {
      const double q = value_at(i);
      if (q > 0.0) {
        out.r.push_back(p.grid()[i]);
        out.q.push_back(q);
      }
    }
  }
  if (out.r.size() < 8) {
    throw numerical_error(
        "asymptotic fit needs at least 8 positive samples in the last "
        "decade of the grid");
  }
  return out;
}

std::vector<double> log_of(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::log(v[i]);
  }
  return out;
}

double node_R(const RadialProfile& p, std::size_t i) {
  return scalar_curvature(p.n(), p.w()[i], p.wpp()[i],
                          1.0 - p.wp()[i] * p.wp()[i]);
}

}  // namespace

double fitted_R_exponent(const RadialProfile& profile) {
  const DecadeSamples s =
      last_decade(profile, [&](std::size_t i) { return node_R(profile, i); });
  return fit_line(log_of(s.r), log_of(s.q)).slope;
}

double fitted_volume_exponent(const RadialProfile& profile) {
  const double omega = unit_sphere_area(profile.n());
  const double power = static_cast<double>(profile.n() - 1);
  std::vector<double> vol(profile.grid().size(), 0.0);
  double prev_area = 0.0;  // w(0) = 0
  for (std::size_t i = 1; i < vol.size(); ++i) {
    const double area = omega * std::pow(profile.w()[i], power);
    vol[i] = vol[i - 1] + 0.5 * (area + prev_area) *
                              (profile.grid()[i] - profile.grid()[i - 1]);
    prev_area = area;
  }
  const DecadeSamples s =
      last_decade(profile, [&](std::size_t i) { return vol[i]; });
  return fit_line(log_of(s.r), log_of(s.q)).slope;
}

double fitted_R_decay_constant(const RadialProfile& profile) {
  const DecadeSamples s = last_decade(profile, [&](std::size_t i) {
    return node_R(profile, i) * profile.grid()[i];
  });
  std::vector<double> v = s.q;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string profile_to_csv(const RadialProfile& profile) {
  std::string out = kProfileCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < profile.grid().size(); ++i) {
    const double r = profile.grid()[i];
    const GeometryFrame fr = frame_at(profile, r);
    const double cols[10] = {r,
                             profile.w()[i],
                             profile.wp()[i],
                             profile.fp()[i],
                             fr.R,
                             fr.Rp,
                             fr.lapR,
                             fr.ric_rad,
                             fr.ric_tan,
                             fr.rm_norm};
    for (int c = 0; c < 10; ++c) {
      if (c > 0) {
        out += ',';
      }
      out += format_g17(cols[c]);
    }
    out += '\n';
  }
  return out;
}

std::vector<ProfileRow> parse_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("profile CSV: empty input");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kProfileCsvHeader) {
    throw std::invalid_argument(
        std::string("profile CSV: header must be exactly \"") +
        kProfileCsvHeader + "\"");
  }
  std::vector<ProfileRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;  // tolerate a blank trailing line only
    }
    double v[10];
    std::size_t pos = 0;
    for (int c = 0; c < 10; ++c) {
      const std::size_t next = line.find(',', pos);
      const bool is_last_field = c == 9;
      if (is_last_field != (next == std::string::npos)) {
        throw std::invalid_argument("profile CSV: line " +
                                    std::to_string(lineno) +
                                    " must have exactly 10 fields");
      }
      const std::string field =
          line.substr(pos, is_last_field ? std::string::npos : next - pos);
      const char* begin = field.c_str();
      char* end = nullptr;
      v[c] = std::strtod(begin, &end);
      if (field.empty() || end != begin + field.size() ||
          !std::isfinite(v[c])) {
        throw std::invalid_argument("profile CSV: line " +
                                    std::to_string(lineno) + " field " +
                                    std::to_string(c + 1) +
                                    " is not a finite number");
      }
      pos = is_last_field ? pos : next + 1;
    }
    ProfileRow row{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]};
    if (!rows.empty() && !(row.r > rows.back().r)) {
      throw std::invalid_argument(
          "profile CSV: radii must be strictly increasing (line " +
          std::to_string(lineno) + ")");
    }
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw std::invalid_argument("profile CSV: no data rows");
  }
  return rows;
}

}  // namespace solitonlab
