#include "solitonlab/exact_solitons.hpp"

#include <cmath>
#include <stdexcept>

#include "solitonlab/bryant_solver.hpp"
#include "solitonlab/io_util.hpp"
#include "solitonlab/numerics.hpp"

namespace solitonlab {

CigarPoint cigar_frame(double rho, int k_extra) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw std::domain_error("cigar_frame: rho must be finite and >= 0");
  }
  if (k_extra < 0) {
    throw std::invalid_argument("cigar_frame: k_extra must be >= 0");
  }
  const int n = 2 + k_extra;
  const double u = 1.0 + rho * rho;
  const double root = std::sqrt(u);

  CigarPoint p;
  p.rho = rho;
  p.s = std::asinh(rho);
  p.w = rho / root;
  p.wp = 1.0 / u;

  GeometryFrame& fr = p.frame;
  fr.n = n;
  fr.r = p.s;
  fr.R = 4.0 / u;
  fr.grad_f_norm = 2.0 * rho / root;
  fr.Rp = -fr.R * fr.grad_f_norm;  // == -8 rho / u^{3/2}
  fr.lapR = 16.0 * (rho * rho - 1.0) / (u * u);
  fr.ric_rad = 0.5 * fr.R;
  fr.ric_tan =
      k_extra == 0 ? fr.ric_rad
                   : fr.ric_rad / static_cast<double>(n - 1);  // averaged
  fr.ric_norm_sq = 0.5 * fr.R * fr.R;
  fr.rm_norm = fr.R;
  fr.k_rad = 0.5 * fr.R;  // the Gauss curvature of the cigar factor
  fr.k_tan = k_extra == 0 ? fr.k_rad : 0.0;
  return p;
}

double cigar_decay_exponent(const std::vector<double>& s,
                            const std::vector<double>& values) {
  if (s.size() != values.size()) {
    throw std::invalid_argument(
        "cigar_decay_exponent: sample vectors must have equal length");
  }
  if (s.size() < 8) {
    throw std::invalid_argument(
        "cigar_decay_exponent: at least 8 samples required");
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) {
      throw std::invalid_argument(
          "cigar_decay_exponent: distances must be strictly increasing");
    }
  }
  if (!(s.back() - s.front() >= 1.0)) {
    throw numerical_error(
        "cigar_decay_exponent: degenerate sample range (span < 1)");
  }
  std::vector<double> log_v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw numerical_error(
          "cigar_decay_exponent: values must be positive for a log fit");
    }
    log_v[i] = std::log(values[i]);
  }
  return fit_line(s, log_v).slope;
}

GeometryFrame flat_soliton_frame(int n, bool linear_f) {
  if (n < 2) {
    throw std::invalid_argument("flat_soliton_frame: n >= 2 required");
  }
  GeometryFrame fr;
  fr.n = n;
  fr.grad_f_norm = linear_f ? 1.0 : 0.0;
  return fr;  // every curvature field is exactly 0.0
}

std::string cigar_to_csv(const std::vector<double>& s_grid, int k_extra) {
  std::string out = kProfileCsvHeader;
  out += '\n';
  double prev = -1.0;
  for (const double s : s_grid) {
    if (!(s >= 0.0) || !(s > prev)) {
      throw std::invalid_argument(
          "cigar_to_csv: s grid must be nonnegative and strictly increasing");
    }
    prev = s;
    const CigarPoint p = cigar_frame(std::sinh(s), k_extra);
    const GeometryFrame& fr = p.frame;
    out += format_g17(s);
    out += ',';
    if (k_extra == 0) {
      out += format_g17(p.w);
    }
    out += ',';
    out += format_g17(p.wp);
    out += ',';
    out += format_g17(fr.grad_f_norm);
    out += ',';
    out += format_g17(fr.R);
    out += ',';
    out += format_g17(fr.Rp);
    out += ',';
    out += format_g17(fr.lapR);
    out += ',';
    out += format_g17(fr.ric_rad);
    out += ',';
    out += format_g17(fr.ric_tan);
    out += ',';
    out += format_g17(fr.rm_norm);
    out += '\n';
  }
  return out;
}

}  // namespace solitonlab
