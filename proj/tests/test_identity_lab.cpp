#include "solitonlab/identity_lab.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "solitonlab/exact_solitons.hpp"
#include "solitonlab/numerics.hpp"

using namespace solitonlab;

namespace {

const RadialProfile& profile_n4() {
  static const RadialProfile p = solve_bryant(4, 40.0, 1e-10);
  return p;
}

}  // namespace

TEST(Residuals, FlatSolitonsAreExactZeros) {
  // Constant potential: c0 = 0. Linear potential: c0 = 1, Y constant so
  // divY = 0. Every residual must vanish bitwise, not just within rounding.
  for (const int n : {3, 4, 7}) {
    for (const bool linear : {false, true}) {
      IdentityInput in;
      in.frame = flat_soliton_frame(n, linear);
      in.fp = in.frame.grad_f_norm;
      in.divY = 0.0;
      in.c0 = linear ? 1.0 : 0.0;
      const IdentityReport rep = evaluate_identities(in);
      for (const char* name : kIdentityNames) {
        EXPECT_EQ(rep.residuals.at(name).abs, 0.0) << name;
        EXPECT_EQ(rep.residuals.at(name).rel, 0.0) << name;
      }
    }
  }
}

TEST(Residuals, CigarSatisfiesTheDimensionFreeIdentities) {
  for (const double rho : log_grid(1e-2, 1e4, 60)) {
    const GeometryFrame f = cigar_frame(rho).frame;
    const double fp = f.grad_f_norm;
    EXPECT_LE(first_integral_residual(f, fp, 4.0), 4e-15);
    EXPECT_LE(gradR_ric_residual(f, fp), 1e-14);
    EXPECT_LE(bianchi_traced_residual(f, fp), 1e-12);
  }
}

TEST(Residuals, DimensionRestrictedOnesRejectN2) {
  const GeometryFrame f = cigar_frame(1.0).frame;
  EXPECT_THROW(d_tensor_norm_sq(f, 0.5), std::invalid_argument);
  EXPECT_THROW(lemma23_residual(f, 0.5), std::invalid_argument);
  EXPECT_THROW(lemma24_residual(f, 0.5, 0.0), std::invalid_argument);
  IdentityInput in;
  in.frame = f;
  in.fp = f.grad_f_norm;
  EXPECT_THROW(evaluate_identities(in), std::invalid_argument);
}

TEST(Residuals, BryantProfileStaysAtRoundingLevel) {
  const std::vector<IdentityReport> reports = verify_profile(profile_n4());
  const std::vector<IdentitySummary> sums = summarize_reports(reports);
  ASSERT_EQ(sums.size(), 6u);
  for (const IdentitySummary& s : sums) {
    if (s.identity == "first_integral") {
      EXPECT_LE(s.max_rel, 1e-8) << s.identity;
    } else {
      // On exact graph points of the system the chains cancel to rounding.
      EXPECT_LE(s.max_rel, 1e-10) << s.identity;
    }
  }
}

TEST(Residuals, TipRowUsesTheSmoothLimits) {
  const IdentityInput in = identity_input_at(profile_n4(), 0.0);
  EXPECT_EQ(in.fp, 0.0);
  const IdentityReport rep = evaluate_identities(in);
  for (const char* name : kIdentityNames) {
    EXPECT_LE(rep.residuals.at(name).rel, 1e-11) << name;
  }
}

TEST(Residuals, DetectSingleFieldCorruption) {
  const IdentityInput clean = identity_input_at(profile_n4(), 5.0);
  const IdentityReport base = evaluate_identities(clean);
  EXPECT_LE(base.residuals.at("lemma23").rel, 1e-12);

  // d_tensor_norm responds linearly to the bump; lemma23 only through
  // |D|^2, so quadratically. Size the bump for both to clear the floor.
  IdentityInput bumped = clean;
  bumped.frame.ric_tan *= 1.0 + 1e-3;
  const IdentityReport rep = evaluate_identities(bumped);
  EXPECT_GT(rep.residuals.at("d_tensor_norm").rel, 1e-6);
  EXPECT_GT(rep.residuals.at("lemma23").rel, 1e-8);

  IdentityInput flipped = clean;
  flipped.fp = -flipped.fp;  // sign-convention violation
  const IdentityReport rep2 = evaluate_identities(flipped);
  EXPECT_GT(rep2.residuals.at("gradR_ric").rel, 0.1);
}

TEST(Residuals, RowInputsAgreeWithProfileInputs) {
  const RadialProfile& p = profile_n4();
  std::istringstream csv(profile_to_csv(p));
  const std::vector<ProfileRow> rows = parse_profile_csv(csv);
  // Compare a handful of interior rows against the analytic path.
  for (const std::size_t i : {std::size_t{5}, rows.size() / 2}) {
    const IdentityInput a = identity_input_from_row(rows[i], p.n());
    const IdentityInput b = identity_input_at(p, rows[i].r);
    EXPECT_NEAR(a.fp, b.fp, 1e-15);
    EXPECT_NEAR(a.frame.R, b.frame.R, 1e-13);
    EXPECT_NEAR(a.frame.lapR, b.frame.lapR,
                1e-10 * std::fabs(b.frame.lapR) + 1e-14);
    EXPECT_NEAR(a.divY, b.divY, 1e-8 * (std::fabs(b.divY) + 1.0));
    const IdentityReport ra = evaluate_identities(a);
    for (const char* name : kIdentityNames) {
      EXPECT_LE(ra.residuals.at(name).rel, 1e-8) << name << " row " << i;
    }
  }
}

TEST(Summaries, TrackTheWorstRadius) {
  IdentityReport r1, r2;
  r1.r = 1.0;
  r2.r = 2.0;
  for (const char* name : kIdentityNames) {
    r1.residuals[name] = Residual{1e-12, 1e-12, 1.0};
    r2.residuals[name] = Residual{1e-9, 1e-9, 1.0};
  }
  r2.residuals["lemma23"] = Residual{5e-7, 5e-7, 1.0};
  const std::vector<IdentitySummary> sums = summarize_reports({r1, r2});
  for (const IdentitySummary& s : sums) {
    EXPECT_EQ(s.worst_r, 2.0) << s.identity;
    if (s.identity == "lemma23") {
      EXPECT_EQ(s.max_rel, 5e-7);
      EXPECT_EQ(s.max_abs, 5e-7);
    }
  }
}

TEST(Summaries, JsonIsGoldenAndKeyOrdered) {
  IdentityReport rep;
  rep.r = 0.5;
  for (const char* name : kIdentityNames) {
    rep.residuals[name] = Residual{0.0, 0.0, 1.0};
  }
  rep.residuals["first_integral"] = Residual{0.25, 0.125, 2.0};
  const std::string json = summaries_to_json(summarize_reports({rep}));
  const std::string expected_head =
      "[\n"
      "  {\n"
      "    \"identity\": \"first_integral\",\n"
      "    \"max_abs\": 0.25,\n"
      "    \"max_rel\": 0.125,\n"
      "    \"worst_r\": 0.5\n"
      "  },";
  EXPECT_EQ(json.rfind(expected_head, 0), 0u) << json;
  // All six identities appear, in declaration order.
  std::size_t pos = 0;
  for (const char* name : kIdentityNames) {
    const std::size_t found = json.find(name, pos);
    EXPECT_NE(found, std::string::npos) << name;
    pos = found;
  }
}

TEST(ResidualScales, RelativeFormNormalizesByLargestTerm) {
  // A synthetic frame with O(1) fields: rel = abs / scale keeps meaning.
  const IdentityInput in = identity_input_at(profile_n4(), 1.0);
  const IdentityReport rep = evaluate_identities(in);
  for (const char* name : kIdentityNames) {
    const Residual& res = rep.residuals.at(name);
    EXPECT_GE(res.scale, 0.0);
    if (res.scale > kResidualScaleFloor) {
      EXPECT_NEAR(res.rel, res.abs / res.scale, 1e-18 + 1e-12 * res.rel);
    }
  }
}
