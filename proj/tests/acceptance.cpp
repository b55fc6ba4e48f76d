// Acceptance suite: nine go/no-go checks covering the cigar ground truth,
// the pinching constant, the Bryant construction and its identities, the
// psi/u reconstruction, curvature bounds, decay classification, the
// degenerate solitons, and CLI determinism. Prints one PASS/FAIL line per
// criterion and returns the number of failures.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "solitonlab/bryant_solver.hpp"
#include "solitonlab/exact_solitons.hpp"
#include "solitonlab/hypothesis_probe.hpp"
#include "solitonlab/identity_lab.hpp"
#include "solitonlab/io_util.hpp"
#include "solitonlab/numerics.hpp"
#include "solitonlab/radial_geometry.hpp"

using namespace solitonlab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// Fourth-order central difference, matching the unit-test oracle.
double fd_derivative(const std::function<double(double)>& f, double x,
                     double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12 * h);
}

// --- C1: cigar closed-form identities, natural scale c0 = 4 ----------------
void criterion1() {
  std::vector<double> rho = log_grid(1e-4, 1e4, 400);
  rho.insert(rho.begin(), 0.0);
  double worst_first = 0.0, worst_grad = 0.0, worst_kato = 0.0,
         worst_rescaled = 0.0;
  for (double p : rho) {
    const GeometryFrame f = cigar_frame(p).frame;
    worst_first = std::max(
        worst_first,
        std::fabs(f.R + f.grad_f_norm * f.grad_f_norm - 4.0));
    const double scale =
        std::max({std::fabs(f.Rp), f.R * f.grad_f_norm, 1e-300});
    worst_grad = std::max(
        worst_grad, std::fabs(f.R * f.grad_f_norm - std::fabs(f.Rp)) / scale);
    worst_kato = std::max(
        worst_kato, std::fabs(f.ric_norm_sq - 0.5 * f.R * f.R) /
                        std::max(0.5 * f.R * f.R, 1e-300));
    const GeometryFrame g = rescale_metric(f, 4.0);
    const double gscale =
        std::max({std::fabs(g.Rp), g.R * g.grad_f_norm, 1e-300});
    worst_rescaled = std::max(
        worst_rescaled,
        std::fabs(sigma_constant(2) * g.R * g.grad_f_norm -
                  std::fabs(g.Rp)) /
            gscale);
  }
  const bool ok = worst_first <= 1e-12 && worst_grad <= 1e-12 &&
                  worst_kato <= 1e-12 && worst_rescaled <= 1e-12;
  report("C1", ok,
         "cigar: first integral " + fmt(worst_first) + ", R|grad f|=|R'| " +
             fmt(worst_grad) + ", |Ric|^2=R^2/2 " + fmt(worst_kato) +
             ", rescaled " + fmt(worst_rescaled) + " (tol 1e-12)");
}

// --- C2: pinching constant values, monotonicity, limit ----------------------
void criterion2() {
  const double err2 = std::fabs(sigma_constant(2) - 1.0);
  const double err3 = std::fabs(sigma_constant(3) - 8.0 / 7.0);
  bool monotone = true, bounded = true;
  for (int n = 2; n <= 100; ++n) {
    if (n > 2 && sigma_constant(n) < sigma_constant(n - 1)) monotone = false;
    if (sigma_constant(n) > sigma_limit()) bounded = false;
  }
  const bool ok = err2 <= 1e-15 && err3 <= 1e-15 && monotone && bounded;
  report("C2", ok,
         "sigma: |sigma(2)-1| " + fmt(err2) + ", |sigma(3)-8/7| " + fmt(err3) +
             " (tol 1e-15), monotone " + (monotone ? "yes" : "NO") +
             ", bounded by (1+sqrt 7)/3 " + (bounded ? "yes" : "NO"));
}

// --- C3: Bryant identities for n in {3,4,5,6} -------------------------------
std::map<int, RadialProfile> g_profiles;

void criterion3() {
  const std::vector<double> radii = log_grid(0.1, 95.0, 160);
  double worst_drift = 0.0, worst_fd = 0.0;
  std::map<std::string, double> worst_rel;
  for (int n : {3, 4, 5, 6}) {
    g_profiles.emplace(n, solve_bryant(n, 100.0, 1e-10));
    const RadialProfile& profile = g_profiles.at(n);
    worst_drift = std::max(worst_drift, profile.c0_drift());
    for (double r : radii) {
      const double fd = fd_derivative(
          [&](double x) { return frame_at(profile, x).R; }, r, 0.01 * r);
      worst_fd = std::max(worst_fd, rel_err(frame_at(profile, r).Rp, fd));
    }
    for (const IdentityReport& rep : verify_profile(profile, radii)) {
      for (const auto& [name, res] : rep.residuals) {
        worst_rel[name] = std::max(worst_rel[name], res.rel);
      }
    }
  }
  const bool ok = worst_drift <= 1e-8 && worst_fd <= 1e-6 &&
                  worst_rel["d_tensor_norm"] <= 1e-8 &&
                  worst_rel["lemma23"] <= 1e-6 &&
                  worst_rel["lemma24"] <= 1e-5 &&
                  worst_rel["bianchi_traced"] <= 1e-6;
  report("C3", ok,
         "bryant n=3..6: drift " + fmt(worst_drift) + " (1e-8), FD R' " +
             fmt(worst_fd) + " (1e-6), |D| " + fmt(worst_rel["d_tensor_norm"]) +
             " (1e-8), lemma23 " + fmt(worst_rel["lemma23"]) +
             " (1e-6), lemma24 " + fmt(worst_rel["lemma24"]) +
             " (1e-5), bianchi " + fmt(worst_rel["bianchi_traced"]) +
             " (1e-6)");
}

// --- C4: Bryant asymptotics, n = 3 ------------------------------------------
void criterion4() {
  const RadialProfile& profile = g_profiles.at(3);
  const double r_exp = fitted_R_exponent(profile);
  const double v_exp = fitted_volume_exponent(profile);
  const double grad_gap = 1.0 - frame_at(profile, profile.r_max()).grad_f_norm;
  const bool ok = std::fabs(r_exp + 1.0) <= 0.05 &&
                  std::fabs(v_exp - 2.0) <= 0.05 && grad_gap >= 0.0 &&
                  grad_gap <= 0.05;
  report("C4", ok,
         "bryant n=3: R exponent " + fmt(r_exp) +
             " (-1 +/- 0.05), volume exponent " + fmt(v_exp) +
             " (2 +/- 0.05), 1-|grad f|(r_max) " + fmt(grad_gap) +
             " (<= 0.05)");
}

// --- C5: psi/u reconstruction, n = 3 ----------------------------------------
void criterion5() {
  const PsiReconstruction rec(g_profiles.at(3));
  const double xres = rec.x_residual(100);
  const bool anchored = rec.u(0.5) == std::log(rec.psi(0.5));
  double worst_conv = 0.0;
  for (double s : rec.table(25).s) {
    const double coarse = rec.u(s, 1e-12);
    const double fine = rec.u(s, 1e-13);
    worst_conv = std::max(worst_conv, rel_err(coarse, fine));
  }
  const bool ok = xres <= 1e-6 && anchored && worst_conv <= 1e-10;
  report("C5", ok,
         "psi/u n=3: x_residual " + fmt(xres) +
             " (1e-6), u(1/2)=log psi(1/2) " + (anchored ? "exact" : "NO") +
             ", self-convergence " + fmt(worst_conv) + " (1e-10)");
}

// --- C6: Kato and curvature bounds on Bryant --------------------------------
void criterion6() {
  const std::vector<double> radii = log_grid(0.1, 95.0, 160);
  double worst_kato = 0.0, worst_bound = 0.0;
  for (const auto& [n, profile] : g_profiles) {
    for (double r : radii) {
      const GeometryFrame f = frame_at(profile, r);
      const PinchMargins m = margins_at(f);
      // Normalize both checks by |Ric|^2 so the tolerances are scale-free.
      worst_kato = std::max(worst_kato, -m.kato_margin / f.ric_norm_sq);
      worst_bound =
          std::max(worst_bound,
                   (f.ric_norm_sq - 0.5 * f.R * f.R) / f.ric_norm_sq);
    }
  }
  const bool ok = worst_kato <= 1e-10 && worst_bound <= 1e-10;
  report("C6", ok,
         "bryant n=3..6: kato deficit " + fmt(worst_kato) +
             ", |Ric|^2 - R^2/2 excess " + fmt(worst_bound) + " (tol 1e-10)");
}

// --- C7: decay classifier on both model geometries --------------------------
void criterion7() {
  const RadialProfile far = solve_bryant(3, 1000.0, 1e-10);
  const std::vector<double> radii = log_grid(100.0, 1000.0, 64);
  std::vector<double> rm;
  rm.reserve(radii.size());
  for (double r : radii) rm.push_back(frame_at(far, r).rm_norm);
  const DecayClassification bryant = decay_classifier(radii, rm, 3);

  std::vector<double> s, curv;
  for (double rho : log_grid(5.0, 1e10, 120)) {
    const CigarPoint cp = cigar_frame(rho);
    s.push_back(cp.s);
    curv.push_back(cp.frame.R);
  }
  const DecayClassification cigar = decay_classifier(s, curv, 2);

  const bool ok = bryant.verdict == DecayClass::linear &&
                  std::fabs(bryant.power_exponent + 1.0) <= 0.1 &&
                  cigar.verdict == DecayClass::exponential &&
                  std::fabs(cigar.exp_rate + 2.0) <= 0.05;
  report("C7", ok,
         std::string("decay: bryant |Rm| ") + decay_class_name(bryant.verdict) +
             " exponent " + fmt(bryant.power_exponent) +
             " (-1 +/- 0.1), cigar R " + decay_class_name(cigar.verdict) +
             " rate " + fmt(cigar.exp_rate) + " (-2 +/- 0.05)");
}

// --- C8: degenerate solitons produce exact zeros ----------------------------
void criterion8() {
  bool residuals_zero = true, flux_zero = true;
  for (int n : {3, 4, 5}) {
    for (bool linear : {false, true}) {
      const GeometryFrame f = flat_soliton_frame(n, linear);
      IdentityInput in;
      in.frame = f;
      in.fp = f.grad_f_norm;
      in.divY = 0.0;
      in.c0 = linear ? 1.0 : 0.0;
      for (const auto& [name, res] : evaluate_identities(in).residuals) {
        (void)name;
        if (res.abs != 0.0) residuals_zero = false;
      }

      std::vector<GeometryFrame> frames;
      std::vector<RadialPoint> points;
      for (double r : log_grid(0.1, 10.0, 24)) {
        frames.push_back(f);
        points.push_back({r, r, 1.0, f.grad_f_norm, n});
      }
      const FluxSeries series =
          flux_series_frames(frames, points, FluxIntegrand::gradR_plus_RgradF);
      for (double v : series.flux) {
        if (v != 0.0) flux_zero = false;
      }
      if (series.exponent_defined) flux_zero = false;
    }
  }
  report("C8", residuals_zero && flux_zero,
         std::string("flat/linear-f: residuals ") +
             (residuals_zero ? "all exactly zero" : "NONZERO") +
             ", grad R + R grad f flux " +
             (flux_zero ? "exactly zero" : "NONZERO"));
}

// --- C9: byte-identical reruns of the CLI -----------------------------------
int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SOLITON_LAB_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion9() {
  const fs::path dir = fs::temp_directory_path() /
                       ("soliton_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"bryant --dim 3 --rmax 30 --tol 1e-9",
       {"bryant_n3.csv", "bryant_n3.json"}},
      {"probe flux --source cigar --integrand gradR_plus_2RgradF",
       {"flux_cigar_gradR_plus_2RgradF.csv",
        "flux_cigar_gradR_plus_2RgradF.json"}},
  };
  for (const auto& [args, files] : cases) {
    const fs::path a = dir / "a", b = dir / "b";
    if (run_cli(args + " --out " + a.string()) != 0 ||
        run_cli(args + " --out " + b.string()) != 0) {
      ok = false;
      detail = "command failed: " + args;
      break;
    }
    for (const std::string& f : files) {
      if (read_file(a / f) != read_file(b / f)) {
        ok = false;
        detail = "differs: " + f;
      }
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
  fs::remove_all(dir);
  if (ok) detail = "reruns byte-identical (bryant, probe flux)";
  report("C9", ok, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("all 9 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
