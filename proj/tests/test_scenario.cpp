// Copyright 2026 The entroflux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entroflux/check.hpp"
#include "entroflux/csv.hpp"
#include "entroflux/scenario.hpp"

namespace ef = entroflux;

namespace {

std::string scenario_path(const std::string& name) {
  const char* dir = std::getenv("ENTROFLUX_SCENARIOS");
  return std::string(dir ? dir : "scenarios") + "/" + name;
}

ef::ErrorCode parse_error(const std::string& text) {
  try {
    ef::parse_config(text);
  } catch (const ef::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error for:\n" << text;
  return ef::ErrorCode::InvalidArgument;
}

// The Gaussian occupation with the opposite sign under the square root.
double corrupted_u(double n, double m_abs2) {
  return 0.5 * (std::sqrt(std::max(0.0, 1.0 + 4.0 * (n * n + n + m_abs2))) - 1.0);
}

}  // namespace

TEST(ParseConfig, MinimalMaserUsesDefaults) {
  const auto cfg = ef::parse_config(
      "model = maser\n[model.maser]\ngap1 = 1\ngap2 = 2\ntemperature1 = 1\ntemperature2 = 0.5\n"
      "rate1 = 1\nrate2 = 1\ndephasing = 1.2\n");
  EXPECT_EQ(cfg.model, ef::ModelKind::maser);
  EXPECT_EQ(cfg.dt, 1e-3);
  EXPECT_EQ(cfg.sample_every, 10u);
  EXPECT_EQ(cfg.mode, ef::BoundMode::incremental);
  EXPECT_EQ(cfg.t_max, 10.0);
  const auto& m = std::get<ef::MaserParams>(cfg.params);
  EXPECT_EQ(m.beta2, 2.0);
  EXPECT_EQ(m.rate1, 1.0);
  EXPECT_EQ(m.dephasing, 1.2);
}

TEST(ParseConfig, CommentsWhitespaceAndOverrides) {
  const auto cfg = ef::parse_config(
      "  # leading comment\nmodel=qubit   # trailing\n\n t_max = 2\ndt=0.01\nsample_every = 5\n"
      "mode = resolve\noutput = out.csv\n[ model.qubit ]\n beta = 2 \np0 = 0.4\nc0_im = 0.05\n");
  EXPECT_EQ(cfg.model, ef::ModelKind::qubit);
  EXPECT_EQ(cfg.t_max, 2.0);
  EXPECT_EQ(cfg.dt, 0.01);
  EXPECT_EQ(cfg.sample_every, 5u);
  EXPECT_EQ(cfg.mode, ef::BoundMode::resolve);
  EXPECT_EQ(cfg.output_path, "out.csv");
  const auto& q = std::get<ef::QubitParams>(cfg.params);
  EXPECT_EQ(q.beta, 2.0);
  EXPECT_EQ(q.c0, ef::Complex(0.1, 0.05));
}

TEST(ParseConfig, SqueezedDefaultsAndMoments) {
  const auto cfg = ef::parse_config("model = squeezed\n");
  EXPECT_EQ(cfg.t_max, 6.0);
  const auto& p = std::get<ef::SqueezedParams>(cfg.params);
  EXPECT_NEAR(p.n0, std::sinh(1.0) * std::sinh(1.0), 1e-15);
  const auto moments = ef::parse_config(
      "model = squeezed\n[model.squeezed]\ninitial = moments\nn0 = 0\nm0_re = 0\n");
  EXPECT_EQ(std::get<ef::SqueezedParams>(moments.params).n0, 0.0);
}

TEST(ParseConfig, ParseErrors) {
  EXPECT_EQ(parse_error("model =\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("t_max = 1\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = laser\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\nfoo = 1\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\n[model.maser]\ngap3 = 1\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\ndt = fast\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\nmode = sideways\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\nmodel = qubit\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\n[model.maser\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\n[other]\n"), ef::ErrorCode::ParseError);
  EXPECT_EQ(parse_error("model = maser\njust words\n"), ef::ErrorCode::ParseError);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  try {
    ef::parse_config("model = maser\n\n[model.maser]\nrate1 = x\n");
    FAIL();
  } catch (const ef::Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, ValidationErrors) {
  EXPECT_EQ(parse_error("model = maser\n[model.maser]\np1_0 = 0.6\np2_0 = 0.6\nc0_re = 0\n"),
            ef::ErrorCode::ValidationError);
  EXPECT_EQ(parse_error("model = qubit\nt_max = 1\ndt = 2\n"), ef::ErrorCode::ValidationError);
  EXPECT_EQ(parse_error("model = qubit\nsample_every = 0\n"), ef::ErrorCode::ValidationError);
  EXPECT_EQ(parse_error("model = qubit\nsample_every = 2.5\n"), ef::ErrorCode::ValidationError);
  EXPECT_EQ(parse_error("model = qubit\n[model.qubit]\nbeta = 1\ntemperature = 1\n"),
            ef::ErrorCode::ValidationError);
  EXPECT_EQ(parse_error("model = squeezed\n[model.squeezed]\ninitial = moments\nn0 = 1\n"),
            ef::ErrorCode::ValidationError);
  EXPECT_EQ(parse_error("model = qubit\n[model.qubit]\nbeta = -1\n"), ef::ErrorCode::ValidationError);
}

TEST(Csv, HeaderAndLineCount) {
  ef::TrajectoryRecord rec;
  for (int i = 0; i < 3; ++i) {
    ef::Sample s;
    s.t = i;
    s.sigma = 0.1 * i;
    rec.push(s);
  }
  const std::string text = ef::format_csv(rec);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,entropy,flux,flux_rate,alpha,sigma,sigma_bound,gap");
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Csv, RoundTripIsExact) {
  const auto rec = ef::run_maser(ef::MaserParams{}, 2.0, 1e-3, ef::BoundMode::incremental, 50);
  const auto rows = ef::parse_csv(ef::format_csv(rec));
  ASSERT_EQ(rows.size(), rec.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].t, rec[i].t);
    EXPECT_EQ(rows[i].entropy, rec[i].entropy);
    EXPECT_EQ(rows[i].flux, rec[i].flux);
    EXPECT_EQ(rows[i].flux_rate, rec[i].flux_rate);
    EXPECT_EQ(rows[i].alpha, rec[i].alpha);
    EXPECT_EQ(rows[i].sigma, rec[i].sigma);
    EXPECT_EQ(rows[i].sigma_bound, rec[i].sigma_bound);
    EXPECT_EQ(rows[i].gap, rec[i].gap);
  }
}

TEST(Csv, ParseRejectsMalformedInput) {
  EXPECT_THROW(ef::parse_csv("t,x\n1,2\n"), ef::Error);
  const std::string header(ef::kCsvHeader);
  EXPECT_THROW(ef::parse_csv(header + "\n1,2,3\n"), ef::Error);
  EXPECT_THROW(ef::parse_csv(header + "\n1,2,3,4,5,6,7,8,9\n"), ef::Error);
  EXPECT_THROW(ef::parse_csv(header + "\n1,2,3,4,five,6,7,8\n"), ef::Error);
}

TEST(Csv, WriteFailsOnUnwritablePath) {
  ef::TrajectoryRecord rec;
  rec.push(ef::Sample{});
  try {
    ef::write_csv(rec, "/nonexistent/dir/out.csv");
    FAIL();
  } catch (const ef::Error& e) {
    EXPECT_EQ(e.code(), ef::ErrorCode::IoError);
  }
}

TEST(RunScenario, BundledFixtures) {
  const auto maser = ef::run_scenario(ef::load_config(scenario_path("fig1.cfg")));
  EXPECT_TRUE(maser.report.passed());
  EXPECT_NEAR(maser.record.front().gap, maser.record.sigma_a, 1e-12);
  EXPECT_LT(maser.record.back().gap, 1e-3);

  const auto squeezed = ef::run_scenario(ef::load_config(scenario_path("fig2.cfg")));
  EXPECT_TRUE(squeezed.report.passed());
  EXPECT_GT(squeezed.report.terminal_gap, 1.0);

  const auto eq = ef::run_scenario(ef::load_config(scenario_path("qubit_equilibrium.cfg")));
  for (const auto& s : eq.record.samples()) {
    EXPECT_NEAR(s.sigma, 0.0, 1e-15);
    EXPECT_NEAR(s.sigma_bound, 0.0, 1e-15);
  }
}

TEST(RunScenario, DeterministicCsv) {
  const auto cfg = ef::load_config(scenario_path("fig1.cfg"));
  EXPECT_EQ(ef::format_csv(ef::run_scenario(cfg).record), ef::format_csv(ef::run_scenario(cfg).record));
  const auto tmp = std::filesystem::temp_directory_path();
  const auto a = (tmp / "entroflux_det_a.csv").string();
  const auto b = (tmp / "entroflux_det_b.csv").string();
  ef::write_csv(ef::run_scenario(cfg).record, a);
  ef::write_csv(ef::run_scenario(cfg).record, b);
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(RunScenario, ReportFailsOnNegativeGap) {
  ef::RunReport rep;
  rep.tolerance = 1e-8;
  rep.max_negative_gap = 2e-8;
  EXPECT_FALSE(rep.passed());
  rep.max_negative_gap = 0.0;
  EXPECT_TRUE(rep.passed());
}

TEST(ExitCodes, NumericalVersusInputErrors) {
  EXPECT_EQ(ef::exit_code(ef::ErrorCode::NonFiniteState), 2);
  EXPECT_EQ(ef::exit_code(ef::ErrorCode::ConvergenceFailure), 2);
  EXPECT_EQ(ef::exit_code(ef::ErrorCode::ParseError), 1);
  EXPECT_EQ(ef::exit_code(ef::ErrorCode::ValidationError), 1);
  EXPECT_EQ(ef::exit_code(ef::ErrorCode::IoError), 1);
  EXPECT_EQ(ef::kExitInvariantViolation, 3);
}

TEST(CheckSuite, AllGroupsPass) {
  for (const auto& r : ef::run_checks()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(CheckSuite, CorruptedOccupationFailsPureSqueezedCheck) {
  ef::CheckOptions opt;
  opt.occupation_u = corrupted_u;
  const auto r = ef::check_gaussian(opt);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.detail.find("pure-squeezed"), std::string::npos);
  const auto g = ef::squeezed_vacuum(-1.0);
  EXPECT_GT(corrupted_u(g.occupation, std::norm(g.anomalous)), 1e-12);
}

TEST(CheckSuite, SolverGroupIsFast) {
  const auto r = ef::check_solver_residual(ef::CheckOptions{});
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_LT(r.seconds, 1.0);
}
