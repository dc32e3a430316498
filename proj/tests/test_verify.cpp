#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "eikit/errors.hpp"
#include "eikit/json_output.hpp"
#include "eikit/verify.hpp"

using namespace eikit;

namespace {

constexpr double kGamma = 0.57721566490153286061;  // mpmath

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

// One default run shared by the read-only tests below; each run costs ~2 s.
const VerificationReport& default_report() {
  static const VerificationReport report = run_crosschecks();
  return report;
}

}  // namespace

TEST(GammaReference, SmallNTruncationError) {
  // Next Euler–Maclaurin term is -1/(120 n^4); mpmath puts the n=10 error at
  // +8.294060087569628e-7.
  EXPECT_NEAR(gamma_reference(10) - kGamma, 8.294060087569628e-7, 1e-15);
  EXPECT_LE(std::fabs(gamma_reference(10) - kGamma), gamma_reference_bound(10));
}

TEST(GammaReference, StabilizesMonotonically) {
  double previous_gap = std::numeric_limits<double>::infinity();
  for (std::int64_t n : {10, 100, 1000}) {
    const double gap = std::fabs(gamma_reference(10 * n) - gamma_reference(n));
    EXPECT_LT(gap, previous_gap) << "n=" << n;
    previous_gap = gap;
  }
  EXPECT_THROW(gamma_reference(9), DomainError);
}

TEST(GammaReference, ReproducesStoredConstant) {
  const double g = gamma_reference(kGammaReferenceTerms);
  EXPECT_NEAR(g, kGamma, 1e-15);
  EXPECT_NEAR(g, kEulerGamma, 1e-14);
}

TEST(RunCrosschecks, DefaultReportPasses) {
  const auto& report = default_report();
  EXPECT_TRUE(report.all_pass);
  for (const auto& r : report.records) {
    EXPECT_TRUE(r.pass) << r.name << " diff=" << r.abs_diff << " tol=" << r.tolerance << " "
                        << r.detail;
  }
}

TEST(RunCrosschecks, RecordInvariants) {
  const auto& report = default_report();
  bool all = true;
  for (const auto& r : report.records) {
    EXPECT_EQ(r.pass, r.diff_finite && r.abs_diff <= r.tolerance) << r.name;
    EXPECT_GE(r.abs_diff, 0.0) << r.name;
    if (starts_with(r.name, "exact_identities/")) {
      EXPECT_EQ(r.abs_diff, 0.0) << r.name;
      EXPECT_EQ(r.tolerance, 0.0) << r.name;
    }
    all = all && r.pass;
  }
  EXPECT_EQ(report.all_pass, all);
}

TEST(RunCrosschecks, EveryGroupAndRouteIsPresent) {
  std::set<std::string> groups;
  for (const auto& r : default_report().records) groups.insert(r.name.substr(0, r.name.find('/')));
  const std::set<std::string> expected = {
      "puiseux_grid", "gamma_three_ways", "ei_one_identity", "lemma2",          "interchange",
      "lemma1_route",  "goodwin_staton",   "soldner",         "exact_identities"};
  EXPECT_EQ(groups, expected);

  std::size_t puiseux = 0, exact = 0;
  for (const auto& r : default_report().records) {
    puiseux += starts_with(r.name, "puiseux_grid/");
    exact += starts_with(r.name, "exact_identities/");
  }
  EXPECT_EQ(puiseux, 10u);
  EXPECT_EQ(exact, 60u);
}

TEST(RunCrosschecks, DeterministicAcrossRuns) {
  const auto second = run_crosschecks();
  const auto& first = default_report();
  ASSERT_EQ(first.records.size(), second.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    EXPECT_EQ(first.records[i].name, second.records[i].name);
    EXPECT_EQ(first.records[i].lhs, second.records[i].lhs) << first.records[i].name;
    EXPECT_EQ(first.records[i].rhs, second.records[i].rhs) << first.records[i].name;
    EXPECT_EQ(first.records[i].tolerance, second.records[i].tolerance) << first.records[i].name;
  }
}

TEST(RunCrosschecks, LooseTolerancesStillPass) {
  SeriesPolicy policy;
  policy.abs_tol = 1e-2;
  QuadConfig cfg;
  cfg.abs_tol = 1e-2;
  const auto report = run_crosschecks(policy, cfg);
  for (const auto& r : report.records) EXPECT_TRUE(r.pass) << r.name << " " << r.detail;
  EXPECT_TRUE(report.all_pass);
}

TEST(RunCrosschecks, TermBudgetFailuresAreRecorded) {
  SeriesPolicy policy;
  policy.max_terms = 2;
  const auto report = run_crosschecks(policy, {});
  EXPECT_FALSE(report.all_pass);
  std::size_t non_finite = 0;
  for (const auto& r : report.records) {
    if (!r.diff_finite) {
      ++non_finite;
      EXPECT_FALSE(r.pass);
      EXPECT_TRUE(std::isinf(r.abs_diff));
      EXPECT_FALSE(r.detail.empty());
    }
    if (starts_with(r.name, "exact_identities/")) EXPECT_TRUE(r.pass);
  }
  EXPECT_GT(non_finite, 0u);
}

TEST(RunCrosschecks, AbsurdlyTightScaleFailsOnlyFloatingChecks) {
  const auto report = run_crosschecks({}, {}, 1e-6);
  EXPECT_FALSE(report.all_pass);
  for (const auto& r : report.records) {
    if (starts_with(r.name, "exact_identities/")) EXPECT_TRUE(r.pass) << r.name;
  }
  EXPECT_THROW(run_crosschecks({}, {}, 0.0), DomainError);
}

TEST(ReportJson, ShapeAndNumberFormat) {
  ::setenv("EIKIT_FIXED_TIMESTAMP", "2000-01-01T00:00:00Z", 1);
  EXPECT_EQ(report_timestamp(), "2000-01-01T00:00:00Z");
  ::unsetenv("EIKIT_FIXED_TIMESTAMP");
  EXPECT_EQ(report_timestamp().size(), 20u);

  VerificationReport report;
  CheckRecord ok{"a/b", 0.1, 0.1, 0.0, 1e-12, true, true, ""};
  CheckRecord bad{"c", std::nan(""), std::nan(""), INFINITY, 0.0, false, false, "boom"};
  report.records = {ok, bad};
  report.all_pass = false;
  report.generated_at = "T";

  const std::string text = dump_json(report_to_json(report));
  const auto parsed = nlohmann::json::parse(text);
  EXPECT_EQ(parsed["generated_at"], "T");
  EXPECT_EQ(parsed["all_pass"], false);
  ASSERT_EQ(parsed["records"].size(), 2u);
  EXPECT_EQ(parsed["records"][0]["lhs"].get<double>(), 0.1);
  EXPECT_TRUE(parsed["records"][1]["abs_diff"].is_null());
  EXPECT_EQ(parsed["records"][1]["diff_finite"], false);
  EXPECT_EQ(parsed["records"][1]["detail"], "boom");
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
}

TEST(ReportJson, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, kGamma, -1e-300, 6.02214076e23}) {
    const std::string s = format_real(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}
