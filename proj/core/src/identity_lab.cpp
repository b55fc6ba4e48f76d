#include "solitonlab/identity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "solitonlab/io_util.hpp"
#include "solitonlab/numerics.hpp"

namespace solitonlab {

namespace {

void require_lemma_dimension(int n, const char* op) {
  if (n < 3) {
    throw std::invalid_argument(std::string(op) +
                                ": n >= 3 required ((n-2) division)");
  }
}

double rel_of(double abs, double scale) {
  return abs / std::max(scale, kResidualScaleFloor);
}

Residual make_residual(double signed_value, double scale) {
  Residual res;
  res.abs = std::fabs(signed_value);
  res.scale = scale;
  res.rel = rel_of(res.abs, scale);
  return res;
}

double d_rtt(const GeometryFrame& fr, double fp) {
  const double n1 = static_cast<double>(fr.n - 1);
  const double n2 = static_cast<double>(fr.n - 2);
  return -fr.ric_tan * fp / n2 +
         (fr.Rp + 2.0 * fr.R * fp) / (2.0 * n1 * n2);
}

}  // namespace

double first_integral_residual(const GeometryFrame& frame, double fp,
                               double c0) {
  return frame.R + fp * fp - c0;
}

double gradR_ric_residual(const GeometryFrame& frame, double fp) {
  return frame.Rp + 2.0 * frame.ric_rad * fp;
}

double bianchi_traced_residual(const GeometryFrame& frame, double fp) {
  return 2.0 * frame.ric_norm_sq + frame.Rp * fp + frame.lapR;
}

double d_tensor_norm_sq(const GeometryFrame& frame, double fp) {
  require_lemma_dimension(frame.n, "d_tensor_norm_sq");
  const double n1 = static_cast<double>(frame.n - 1);
  const double d = d_rtt(frame, fp);
  return 2.0 * n1 * d * d;
}

double lemma23_residual(const GeometryFrame& frame, double fp) {
  require_lemma_dimension(frame.n, "lemma23_residual");
  const double n1 = static_cast<double>(frame.n - 1);
  const double n2 = static_cast<double>(frame.n - 2);
  const double fp2 = fp * fp;  // 1 - R on normalized solitons
  const double comb = frame.Rp + 2.0 * frame.R * fp;
  const double lhs = d_tensor_norm_sq(frame, fp) +
                     comb * comb / (2.0 * n1 * n2 * n2);
  const double rhs = -fp2 / (n2 * n2) * frame.lapR -
                     fp2 / (n2 * n2) * (frame.Rp * fp) -
                     frame.Rp * frame.Rp / (2.0 * n2 * n2);
  return lhs - rhs;
}

double lemma24_residual(const GeometryFrame& frame, double fp, double divY) {
  require_lemma_dimension(frame.n, "lemma24_residual");
  if (fp == 0.0) {
    throw std::domain_error(
        "lemma24_residual: fp = 0 (tip); the documented limit there is 0");
  }
  const double n1 = static_cast<double>(frame.n - 1);
  const double n2 = static_cast<double>(frame.n - 2);
  const double fp2 = fp * fp;
  const double comb = frame.Rp + 2.0 * frame.R * fp;
  return std::pow(fp2, 1.5) * divY + n2 * n2 * d_tensor_norm_sq(frame, fp) +
         comb * comb / (2.0 * n1) + 2.0 * frame.R * fp2 * fp2;
}

IdentityReport evaluate_identities(const IdentityInput& in) {
  require_lemma_dimension(in.frame.n, "evaluate_identities");
  const GeometryFrame& fr = in.frame;
  const double fp = in.fp;
  const double n1 = static_cast<double>(fr.n - 1);
  const double n2 = static_cast<double>(fr.n - 2);
  const double fp2 = fp * fp;

  IdentityReport report;
  report.r = fr.r;

  report.residuals["first_integral"] = make_residual(
      first_integral_residual(fr, fp, in.c0),
      std::max({std::fabs(fr.R), fp2, std::fabs(in.c0)}));

  report.residuals["gradR_ric"] = make_residual(
      gradR_ric_residual(fr, fp),
      std::max(std::fabs(fr.Rp), std::fabs(2.0 * fr.ric_rad * fp)));

  report.residuals["bianchi_traced"] = make_residual(
      bianchi_traced_residual(fr, fp),
      std::max({std::fabs(2.0 * fr.ric_norm_sq), std::fabs(fr.Rp * fp),
                std::fabs(fr.lapR)}));

  // Reported as |D| against the natural tensor scale |Ric| |grad f|.
  report.residuals["d_tensor_norm"] =
      make_residual(std::sqrt(d_tensor_norm_sq(fr, fp)),
                    std::sqrt(fr.ric_norm_sq) * std::fabs(fp));

  {
    const double comb = fr.Rp + 2.0 * fr.R * fp;
    const double t_d = d_tensor_norm_sq(fr, fp);
    const double t_comb = comb * comb / (2.0 * n1 * n2 * n2);
    const double t_lap = fp2 / (n2 * n2) * fr.lapR;
    const double t_rf = fp2 / (n2 * n2) * (fr.Rp * fp);
    const double t_r2 = fr.Rp * fr.Rp / (2.0 * n2 * n2);
    report.residuals["lemma23"] = make_residual(
        lemma23_residual(fr, fp),
        std::max({std::fabs(t_d), std::fabs(t_comb), std::fabs(t_lap),
                  std::fabs(t_rf), std::fabs(t_r2)}));
  }

  if (fp == 0.0) {
    // Tip limit: every term carries a power of fp (Rp = -2 fpp fp vanishes
    // with it), so the identity degenerates to 0 = 0.
    report.residuals["lemma24"] = make_residual(0.0, 0.0);
  } else {
    const double comb = fr.Rp + 2.0 * fr.R * fp;
    const double t_div = std::pow(fp2, 1.5) * in.divY;
    const double t_d = n2 * n2 * d_tensor_norm_sq(fr, fp);
    const double t_comb = comb * comb / (2.0 * n1);
    const double t_r = 2.0 * fr.R * fp2 * fp2;
    report.residuals["lemma24"] = make_residual(
        lemma24_residual(fr, fp, in.divY),
        std::max({std::fabs(t_div), std::fabs(t_d), std::fabs(t_comb),
                  std::fabs(t_r)}));
  }
  return report;
}

IdentityInput identity_input_at(const RadialProfile& profile, double r) {
  IdentityInput in;
  in.c0 = profile.c0();
  if (r == 0.0) {
    in.frame = frame_at(profile, 0.0);
    in.fp = 0.0;
    in.divY = 0.0;  // unused at the tip
    return in;
  }
  const FrameJet fj = frame_jet_at(profile, r);
  in.frame = fj.frame;
  in.fp = fj.jet.fp;
  const double fp = fj.jet.fp;
  const double fpp = fj.jet.fpp;
  const double y = fj.frame.Rp / fp - 2.0 * fp * fp;
  const double yp =
      (fj.Rpp * fp - fj.frame.Rp * fpp) / (fp * fp) - 4.0 * fp * fpp;
  const RadialPoint point{r, fj.jet.w, fj.jet.wp, fp, profile.n()};
  in.divY = divergence_radial(y, yp, point);
  return in;
}

IdentityInput identity_input_from_row(const ProfileRow& row, int n,
                                      double c0) {
  require_lemma_dimension(n, "identity_input_from_row");
  const double n1 = static_cast<double>(n - 1);
  const double n2 = static_cast<double>(n - 2);

  IdentityInput in;
  in.c0 = c0;
  in.fp = row.fp;
  GeometryFrame& fr = in.frame;
  fr.n = n;
  fr.r = row.r;
  fr.R = row.R;
  fr.Rp = row.Rp;
  fr.lapR = row.lapR;
  fr.ric_rad = row.ric_rad;
  fr.ric_tan = row.ric_tan;
  fr.ric_norm_sq =
      row.ric_rad * row.ric_rad + n1 * row.ric_tan * row.ric_tan;
  fr.rm_norm = row.rm_norm;
  fr.grad_f_norm = std::fabs(row.fp);
  fr.k_rad = row.ric_rad / n1;
  fr.k_tan = (row.ric_tan - fr.k_rad) / n2;

  if (row.r == 0.0 || row.fp == 0.0) {
    in.divY = 0.0;  // tip limit
    return in;
  }
  // fpp is the radial soliton equation Ric_rr = f''; Rpp inverts the
  // Laplacian chain lapR = Rpp + (n-1)(wp/w) Rp.
  const double fp = row.fp;
  const double fpp = row.ric_rad;
  const RadialPoint point{row.r, row.w, row.wp, fp, n};
  if (!(row.w > 0.0)) {
    throw std::domain_error(
        "identity_input_from_row: w <= 0 at positive radius");
  }
  const double rpp = row.lapR - n1 * (row.wp / row.w) * row.Rp;
  const double y = row.Rp / fp - 2.0 * fp * fp;
  const double yp = (rpp * fp - row.Rp * fpp) / (fp * fp) - 4.0 * fp * fpp;
  in.divY = divergence_radial(y, yp, point);
  return in;
}

std::vector<IdentityReport> verify_profile(const RadialProfile& profile,
                                           const std::vector<double>& radii) {
  std::vector<IdentityReport> reports;
  reports.reserve(radii.size());
  for (const double r : radii) {
    reports.push_back(evaluate_identities(identity_input_at(profile, r)));
  }
  return reports;
}

std::vector<IdentityReport> verify_profile(const RadialProfile& profile) {
  std::vector<double> radii{0.0};
  const std::vector<double> tail =
      log_grid(profile.r0(), profile.r_max(), 127);
  radii.insert(radii.end(), tail.begin(), tail.end());
  return verify_profile(profile, radii);
}

std::vector<IdentitySummary> summarize_reports(
    const std::vector<IdentityReport>& reports) {
  std::vector<IdentitySummary> out;
  for (const char* name : kIdentityNames) {
    IdentitySummary s;
    s.identity = name;
    for (const IdentityReport& rep : reports) {
      const Residual& res = rep.residuals.at(name);
      s.max_abs = std::max(s.max_abs, res.abs);
      if (res.rel > s.max_rel) {
        s.max_rel = res.rel;
        s.worst_r = rep.r;
      }
    }
    out.push_back(s);
  }
  return out;
}

std::string summaries_to_json(const std::vector<IdentitySummary>& summaries) {
  JsonWriter json;
  json.begin_array();
  for (const IdentitySummary& s : summaries) {
    json.begin_object();
    json.kv("identity", s.identity);
    json.kv("max_abs", s.max_abs);
    json.kv("max_rel", s.max_rel);
    json.kv("worst_r", s.worst_r);
    json.end_object();
  }
  json.end_array();
  return json.str();
}

}  // namespace solitonlab
