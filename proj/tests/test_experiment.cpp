#include "c0wave/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace c0wave {
namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
  for (const auto& v : e.violations()) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::vector<std::string> violations_of(const std::string& text) {
  try {
    static_cast<void>(parse_config(text));
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("c0wave_" + name)).string();
}

TEST(ParseConfig, MinimalDocumentFillsDefaults) {
  const auto c = parse_config("case = case1\nsuite = tau_refine\n");
  EXPECT_EQ(c.case_id, CaseId::case1);
  EXPECT_EQ(c.suite, Suite::tau_refine);
  EXPECT_DOUBLE_EQ(c.theta, 0.5);
  EXPECT_FALSE(c.include_osc);
  EXPECT_EQ(c.max_iters, 25);
  EXPECT_EQ(c.eta_tol, 0.0);
  EXPECT_EQ(c.pt, (std::vector<int>{2}));
  EXPECT_EQ(c.T, (std::vector<double>{1.0}));
}

TEST(ParseConfig, FullDocument) {
  const auto c = parse_config(
      "# comment\n"
      "case = case3   # trailing comment\n"
      "mode_n = 2\nmode_m = 3\nomega = 1.5\n"
      "suite = spacetime_refine\n"
      "pt = 2, 3\npx = pt+1\nh = 2*tau\n"
      "tau = 0.2, 0.1\nT = 1, 2\n"
      "theta = 0.3\nmax_iters = 4\neta_tol = 1e-3\ninclude_osc = true\n"
      "output = out.csv\nseed = 18446744073709551615\n");
  EXPECT_EQ(c.case_id, CaseId::case3);
  EXPECT_EQ(c.params.mode_n, 2);
  EXPECT_EQ(c.params.mode_m, 3);
  EXPECT_DOUBLE_EQ(c.params.omega, 1.5);
  EXPECT_TRUE(c.px.follows_pt);
  EXPECT_EQ(c.px.offset, 1);
  EXPECT_TRUE(c.h.follows_tau);
  EXPECT_DOUBLE_EQ(c.h.factor, 2.0);
  EXPECT_EQ(c.tau, (std::vector<double>{0.2, 0.1}));
  EXPECT_EQ(c.T, (std::vector<double>{1.0, 2.0}));
  EXPECT_DOUBLE_EQ(c.theta, 0.3);
  EXPECT_EQ(c.max_iters, 4);
  EXPECT_TRUE(c.include_osc);
  EXPECT_EQ(c.output, "out.csv");
  EXPECT_EQ(c.seed, 18446744073709551615ull);

  const auto d = parse_config("case = 2\nsuite = adaptive\npx = 2, 3\npt = 2, 4\nh = 1\n");
  EXPECT_FALSE(d.px.follows_pt);
  EXPECT_EQ(d.px.values, (std::vector<int>{2, 3}));
  EXPECT_EQ(d.h.values, (std::vector<double>{1.0}));
}

TEST(ParseConfig, RejectsTimeDegreeOne) {
  try {
    static_cast<void>(parse_config("case = case1\nsuite = tau_refine\npt = 1\n"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(mentions(e, "pt >= 2"));
  }
}

TEST(ParseConfig, RejectsSmallAlpha) {
  try {
    static_cast<void>(parse_config("case = case2\nalpha = 1.2\nsuite = tau_refine\n"));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(mentions(e, "alpha > 1.5"));
  }
}

TEST(ParseConfig, ReportsEveryViolation) {
  const auto v = violations_of(
      "case = case9\nbogus = 1\npt = 1, x\ntau = 0.1, 0.2\ntheta = 2\nh = 0.45\nno equals sign\n");
  const auto has = [&](const std::string& s) {
    for (const auto& x : v) {
      if (x.find(s) != std::string::npos) return true;
    }
    return false;
  };
  EXPECT_TRUE(has("case:"));
  EXPECT_TRUE(has("bogus: unknown key"));
  EXPECT_TRUE(has("pt: expected"));
  EXPECT_TRUE(has("strictly decreasing"));
  EXPECT_TRUE(has("theta"));
  EXPECT_TRUE(has("h: 0.45"));
  EXPECT_TRUE(has("line 7"));
  EXPECT_TRUE(has("suite: required key missing"));
}

TEST(ParseConfig, RejectsNonDividingStep) {
  const auto v = violations_of("case = case1\nsuite = tau_refine\ntau = 0.3\nT = 1\n");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("does not divide"), std::string::npos);
  EXPECT_TRUE(violations_of("case = case1\nsuite = tau_refine\ntau = 0.0909\nT = 1\n").empty());
  EXPECT_FALSE(violations_of("case = case1\nsuite = tau_refine\nx = 1\nx = 2\n").empty());
}

TEST(RunSuite, ValidatesBeforeSolving) {
  ExperimentConfig c;
  c.tau = {0.3};
  EXPECT_THROW(static_cast<void>(run_suite(c)), ConfigError);
}

TEST(IntervalsFor, RoundsWithinTolerance) {
  EXPECT_EQ(intervals_for(1.0, 0.2), 5);
  EXPECT_EQ(intervals_for(1.0, 0.0909), 11);
  EXPECT_EQ(intervals_for(1.0, 0.00613), 163);
  EXPECT_EQ(intervals_for(6.0, 0.2), 30);
  EXPECT_THROW(static_cast<void>(intervals_for(1.0, 0.3)), std::invalid_argument);
  EXPECT_THROW(static_cast<void>(intervals_for(1.0, 3.0)), std::invalid_argument);
}

TEST(Suites, NamesRoundTrip) {
  for (auto s : {Suite::tau_refine, Suite::p_refine, Suite::spacetime_refine, Suite::long_time,
                 Suite::effectivity, Suite::adaptive}) {
    EXPECT_EQ(parse_suite(suite_name(s)), s);
  }
  EXPECT_THROW(static_cast<void>(parse_suite("nope")), std::invalid_argument);
}

ResultRow sample_row() {
  ResultRow r;
  r.suite = "tau_refine";
  r.run = "uniform";
  r.group = 1;
  r.level = 2;
  r.T = 1.0;
  r.h = 0.4;
  r.tau = 0.1;
  r.px = 2;
  r.pt = 3;
  r.N = 10;
  r.dofs = 2430;
  r.err = {1.234567890123e-3, 2.5e-4, 3.0 / 7.0, 1e-300, 6.02214076e23, std::sqrt(2.0)};
  r.eta = 0.1 + 0.2;
  r.eta_localized = 1.0 / 3.0;
  r.eta1 = std::acos(-1.0);
  r.eta2 = 2.718281828459045;
  r.osc = 0.0;
  r.kappa = 12.5;
  r.stability_lhs = 1.0;
  r.stability_rhs = 2.0;
  r.stable = 1;
  r.rate_W1inf_L2 = std::nan("");
  r.rate_Linf_L2 = -1.5;
  r.status = "failed: a, b";
  r.wall_time = 0.25;
  return r;
}

TEST(Csv, EmptyResultIsHeaderOnly) {
  const auto path = temp_path("empty.csv");
  emit_csv({}, path);
  std::ifstream in(path);
  std::string line;
  int count = 0;
  std::string header;
  while (std::getline(in, line)) {
    if (count == 0) header = line;
    ++count;
  }
  EXPECT_EQ(count, 1);
  EXPECT_EQ(header.rfind("suite,run,group,level,T,h,tau", 0), 0u);
  EXPECT_TRUE(read_csv(path).rows.empty());
}

void expect_rel(double a, double b) {
  if (std::isnan(b)) {
    EXPECT_TRUE(std::isnan(a));
    return;
  }
  EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(b));
}

TEST(Csv, RoundTrip) {
  const auto path = temp_path("one.csv");
  ExperimentResult res;
  res.rows.push_back(sample_row());
  emit_csv(res, path);
  std::ifstream in(path);
  std::stringstream all;
  all << in.rdbuf();
  const std::string text = all.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_NE(text.find("1.2345678901230000e-03"), std::string::npos);

  const auto back = read_csv(path);
  ASSERT_EQ(back.rows.size(), 1u);
  const auto& a = back.rows[0];
  const auto b = sample_row();
  EXPECT_EQ(a.suite, b.suite);
  EXPECT_EQ(a.run, b.run);
  EXPECT_EQ(a.group, b.group);
  EXPECT_EQ(a.level, b.level);
  EXPECT_EQ(a.px, b.px);
  EXPECT_EQ(a.pt, b.pt);
  EXPECT_EQ(a.N, b.N);
  EXPECT_EQ(a.dofs, b.dofs);
  EXPECT_EQ(a.stable, b.stable);
  EXPECT_EQ(a.status, "failed: a; b");
  for (auto [x, y] : std::vector<std::pair<double, double>>{
           {a.T, b.T}, {a.h, b.h}, {a.tau, b.tau}, {a.err.max_W1inf_L2, b.err.max_W1inf_L2},
           {a.err.max_Linf_H1, b.err.max_Linf_H1}, {a.err.L2_H1, b.err.L2_H1},
           {a.err.H1deriv_L2L2, b.err.H1deriv_L2L2}, {a.err.Linf_L2, b.err.Linf_L2},
           {a.err.jump_err, b.err.jump_err}, {a.eta, b.eta}, {a.eta_localized, b.eta_localized},
           {a.eta1, b.eta1}, {a.eta2, b.eta2}, {a.osc, b.osc}, {a.kappa, b.kappa},
           {a.stability_lhs, b.stability_lhs}, {a.stability_rhs, b.stability_rhs},
           {a.rate_W1inf_L2, b.rate_W1inf_L2}, {a.rate_Linf_L2, b.rate_Linf_L2},
           {a.wall_time, b.wall_time}}) {
    expect_rel(x, y);
  }
}

TEST(Csv, ReportsPathOnFailure) {
  try {
    emit_csv({}, "/nonexistent_dir_c0wave/x.csv");
    FAIL() << "expected failure";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir_c0wave/x.csv"), std::string::npos);
  }
  EXPECT_THROW(static_cast<void>(read_csv("/nonexistent_dir_c0wave/x.csv")), std::runtime_error);
}

TEST(FillRates, ComparesWithinGroups) {
  ExperimentResult res;
  for (int g = 0; g < 2; ++g) {
    for (int k = 0; k < 3; ++k) {
      ResultRow r;
      r.suite = "tau_refine";
      r.run = "uniform";
      r.group = g;
      r.level = k;
      r.tau = 0.2 / (1 << k);
      r.err.Linf_L2 = std::pow(r.tau, g + 2);
      r.err.jump_err = std::pow(r.tau, 1.5);
      r.eta = 3 * r.err.Linf_L2;
      res.rows.push_back(r);
    }
  }
  fill_rates(res);
  EXPECT_TRUE(std::isnan(res.rows[0].rate_Linf_L2));
  EXPECT_TRUE(std::isnan(res.rows[3].rate_Linf_L2));
  EXPECT_NEAR(res.rows[1].rate_Linf_L2, 2.0, 1e-12);
  EXPECT_NEAR(res.rows[5].rate_Linf_L2, 3.0, 1e-12);
  EXPECT_NEAR(res.rows[2].rate_jump, 1.5, 1e-12);
  EXPECT_NEAR(res.rows[4].rate_eta, 3.0, 1e-12);
  EXPECT_TRUE(std::isnan(res.rows[1].rate_W1inf_L2));
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.case_id = CaseId::case1;
  c.suite = Suite::tau_refine;
  c.pt = {2, 3};
  c.tau = {0.2, 0.1};
  c.T = {0.4};
  return c;
}

TEST(RunSuite, DeterministicAcrossThreadCounts) {
  const auto c = small_config();
  setenv("C0WAVE_THREADS", "1", 1);
  EXPECT_EQ(thread_count(), 1);
  const auto a = run_suite(c);
  setenv("C0WAVE_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3);
  const auto b = run_suite(c);
  unsetenv("C0WAVE_THREADS");
  ASSERT_EQ(a.rows.size(), 4u);
  ASSERT_EQ(b.rows.size(), 4u);
  EXPECT_TRUE(a.all_ok());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    auto x = a.rows[i];
    auto y = b.rows[i];
    x.wall_time = y.wall_time = 0.0;
    const auto px = temp_path("det_a.csv");
    const auto py = temp_path("det_b.csv");
    emit_csv({{x}}, px);
    emit_csv({{y}}, py);
    std::ifstream ia(px), ib(py);
    std::stringstream sa, sb;
    sa << ia.rdbuf();
    sb << ib.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
  }
  EXPECT_EQ(a.rows[0].pt, 2);
  EXPECT_EQ(a.rows[2].pt, 3);
  EXPECT_EQ(a.rows[1].N, 4);
  EXPECT_EQ(a.rows[1].dofs, 4 * 2 * 81);
  EXPECT_EQ(a.rows[0].stable, 1);
  EXPECT_GT(a.rows[1].rate_Linf_L2, 1.0);
}

TEST(RunSuite, LevelLayoutPerSuite) {
  auto c = small_config();
  c.suite = Suite::p_refine;
  c.tau = {0.2};
  c.pt = {2, 3, 4};
  const auto p = run_suite(c);
  ASSERT_EQ(p.rows.size(), 3u);
  EXPECT_EQ(p.rows[2].pt, 4);
  EXPECT_EQ(p.rows[2].level, 2);
  EXPECT_LT(p.rows[2].err.Linf_L2, p.rows[0].err.Linf_L2);

  c.suite = Suite::long_time;
  c.pt = {2};
  c.T = {0.4, 0.8};
  const auto l = run_suite(c);
  ASSERT_EQ(l.rows.size(), 2u);
  EXPECT_EQ(l.rows[1].N, 4);
  EXPECT_DOUBLE_EQ(l.rows[1].T, 0.8);

  c.suite = Suite::spacetime_refine;
  c.case_id = CaseId::case3;
  c.T = {0.4};
  c.tau = {0.4, 0.2};
  c.px.follows_pt = true;
  c.px.offset = 1;
  c.h.follows_tau = true;
  const auto s = run_suite(c);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.rows[1].px, 3);
  EXPECT_DOUBLE_EQ(s.rows[1].h, 0.2);
}

TEST(RunSuite, AdaptiveRecordsBothRuns) {
  ExperimentConfig c;
  c.case_id = CaseId::case2;
  c.suite = Suite::adaptive;
  c.pt = {2};
  c.h.values = {1.0};
  c.tau = {0.2, 0.1};
  c.max_iters = 3;
  const auto r = run_suite(c);
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_EQ(r.rows[0].run, "uniform");
  EXPECT_EQ(r.rows[2].run, "adaptive");
  EXPECT_EQ(r.rows[2].N, 5);
  EXPECT_GT(r.rows[4].N, r.rows[3].N);
  EXPECT_EQ(r.rows[2].dofs, 5 * 2 * 9);
  EXPECT_TRUE(std::isnan(r.rows[2].rate_Linf_L2));
  EXPECT_FALSE(std::isnan(r.rows[3].rate_Linf_L2));
  EXPECT_TRUE(r.all_ok());
}

}  // namespace
}  // namespace c0wave
