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

#pragma once

// Scenario files are flat `key = value` text with `#` comments. Run settings
// come first; model parameters live under a `[model.<name>]` section:
//
//   model = maser
//   t_max = 10
//   [model.maser]
//   gap1 = 1
//   temperature1 = 1
//   ...

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "entroflux/dynamics.hpp"
#include "entroflux/models/maser.hpp"
#include "entroflux/models/qubit.hpp"
#include "entroflux/models/squeezed.hpp"

namespace entroflux {

enum class ModelKind { qubit, maser, squeezed };

inline std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::qubit: return "qubit";
    case ModelKind::maser: return "maser";
    case ModelKind::squeezed: return "squeezed";
  }
  return "?";
}

struct ScenarioConfig {
  ModelKind model = ModelKind::maser;
  std::variant<QubitParams, MaserParams, SqueezedParams> params = MaserParams{};
  double t_max = 10.0;
  double dt = 1e-3;
  std::size_t sample_every = 10;
  std::string output_path;
  BoundMode mode = BoundMode::incremental;
};

/// Allowed negative-gap excursion per model before a run is flagged.
inline double gap_tolerance(ModelKind m) {
  switch (m) {
    case ModelKind::qubit: return 1e-9;
    case ModelKind::maser: return 1e-8;
    case ModelKind::squeezed: return 1e-6;
  }
  return 0.0;
}

struct RunReport {
  double terminal_sigma = 0.0;
  double terminal_bound = 0.0;
  double terminal_gap = 0.0;
  double max_constraint_residual = 0.0;
  double max_negative_gap = 0.0;  // max(0, -min gap)
  double wall_seconds = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> warnings;

  bool passed() const { return max_negative_gap <= tolerance; }
};

struct ScenarioResult {
  TrajectoryRecord record;
  RunReport report;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Section = std::map<std::string, Entry, std::less<>>;

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what,
              static_cast<double>(line));
}

[[noreturn]] inline void invalid(const std::string& what) {
  throw Error(ErrorCode::ValidationError, what);
}

inline double to_number(const Entry& e, std::string_view key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  if (!e.value.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    parse_fail(e.line, "'" + std::string(key) + "' expects a number, got '" + e.value + "'");
  }
  return v;
}

// Reads numeric keys out of a section, rejecting anything not in `allowed`.
class SectionReader {
 public:
  SectionReader(const Section& s, std::string name, std::set<std::string_view> allowed)
      : section_(s), name_(std::move(name)) {
    for (const auto& [key, entry] : section_) {
      if (!allowed.count(key)) parse_fail(entry.line, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

  bool has(std::string_view key) const { return section_.find(key) != section_.end(); }

  void number(std::string_view key, double& out) const {
    if (auto it = section_.find(key); it != section_.end()) out = to_number(it->second, key);
  }

  // Inverse temperature from either `beta<suffix>` or `temperature<suffix>`.
  void inverse_temperature(const std::string& suffix, double& beta) const {
    const std::string b = "beta" + suffix;
    const std::string t = "temperature" + suffix;
    if (has(b) && has(t)) invalid("[" + name_ + "] sets both " + b + " and " + t);
    if (has(b)) number(b, beta);
    if (has(t)) {
      double temp = 0.0;
      number(t, temp);
      if (!(temp > 0.0)) invalid("[" + name_ + "] " + t + " must be positive");
      beta = 1.0 / temp;
    }
  }

  std::optional<std::string> text(std::string_view key) const {
    if (auto it = section_.find(key); it != section_.end()) return it->second.value;
    return std::nullopt;
  }

 private:
  const Section& section_;
  std::string name_;
};

inline QubitParams read_qubit(const Section& s) {
  SectionReader r(s, "model.qubit", {"gap", "beta", "temperature", "gamma", "p0", "c0_re", "c0_im"});
  QubitParams q;
  double re = q.c0.real();
  double im = q.c0.imag();
  r.number("gap", q.gap);
  r.inverse_temperature("", q.beta);
  r.number("gamma", q.gamma);
  r.number("p0", q.p0);
  r.number("c0_re", re);
  r.number("c0_im", im);
  q.c0 = {re, im};
  return q;
}

inline MaserParams read_maser(const Section& s) {
  SectionReader r(s, "model.maser",
                  {"gap1", "gap2", "beta1", "beta2", "temperature1", "temperature2", "rate1", "rate2",
                   "dephasing", "p1_0", "p2_0", "c0_re", "c0_im"});
  MaserParams m;
  double re = m.c0.real();
  double im = m.c0.imag();
  r.number("gap1", m.gap1);
  r.number("gap2", m.gap2);
  r.inverse_temperature("1", m.beta1);
  r.inverse_temperature("2", m.beta2);
  r.number("rate1", m.rate1);
  r.number("rate2", m.rate2);
  r.number("dephasing", m.dephasing);
  r.number("p1_0", m.p1_0);
  r.number("p2_0", m.p2_0);
  r.number("c0_re", re);
  r.number("c0_im", im);
  m.c0 = {re, im};
  return m;
}

inline SqueezedParams read_squeezed(const Section& s) {
  SectionReader r(s, "model.squeezed",
                  {"omega", "omega_s", "temperature", "gamma", "r", "theta", "initial", "epsilon",
                   "n0", "m0_re", "m0_im"});
  SqueezedParams p;
  r.number("omega", p.omega);
  r.number("omega_s", p.omega_s);
  r.number("temperature", p.temperature);
  r.number("gamma", p.gamma);
  r.number("r", p.r);
  r.number("theta", p.theta);
  const std::string initial = r.text("initial").value_or("squeezed_vacuum");
  if (initial == "squeezed_vacuum") {
    if (r.has("n0") || r.has("m0_re") || r.has("m0_im")) {
      invalid("[model.squeezed] n0/m0 are only used with initial = moments");
    }
    double epsilon = -p.r;
    r.number("epsilon", epsilon);
    set_initial(p, squeezed_vacuum(epsilon));
  } else if (initial == "moments") {
    if (r.has("epsilon")) invalid("[model.squeezed] epsilon is only used with initial = squeezed_vacuum");
    double re = 0.0;
    double im = 0.0;
    r.number("n0", p.n0);
    r.number("m0_re", re);
    r.number("m0_im", im);
    p.m0 = {re, im};
  } else {
    invalid("[model.squeezed] initial must be squeezed_vacuum or moments, got '" + initial + "'");
  }
  return p;
}

inline double default_t_max(const ScenarioConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::qubit: return 8.0;
    case ModelKind::maser: return 10.0;
    case ModelKind::squeezed: return 6.0 / std::get<SqueezedParams>(cfg.params).gamma;
  }
  return 10.0;
}

}  // namespace detail

/// Checks run settings and the model block; throws ValidationError.
inline void validate(const ScenarioConfig& cfg) {
  if (!(cfg.t_max > 0.0)) detail::invalid("t_max must be positive");
  if (!(cfg.dt > 0.0)) detail::invalid("dt must be positive");
  if (cfg.dt > cfg.t_max) detail::invalid("dt must not exceed t_max");
  if (cfg.sample_every < 1) detail::invalid("sample_every must be at least 1");
  try {
    switch (cfg.model) {
      case ModelKind::qubit: {
        const auto& q = std::get<QubitParams>(cfg.params);
        validate(q);
        qubit_reference_state(q);
        break;
      }
      case ModelKind::maser: {
        const auto& m = std::get<MaserParams>(cfg.params);
        validate(m);
        const ReferencePotential pot = maser_reference_state(m);
        const double target = expectation_log_potential(maser_state(maser_initial_state(m)), pot);
        if (!(target > pot.log_min() && target < pot.log_max())) {
          detail::invalid("maser: initial tr{rho0 ln rho*} lies outside the range of f");
        }
        break;
      }
      case ModelKind::squeezed: {
        const auto& p = std::get<SqueezedParams>(cfg.params);
        validate(p);
        const GaussianState g = initial_moments(p);
        if (gaussian_occupation_u(g.occupation, std::norm(g.anomalous)) > 1e-9) {
          detail::invalid("squeezed: initial state must be pure");
        }
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, e.what(), e.magnitude());
  }
}

/// Parses scenario text. Throws ParseError (with line number) for malformed
/// input and ValidationError for well-formed but invalid settings.
inline ScenarioConfig parse_config(std::string_view text) {
  using detail::parse_fail;
  detail::Section top;
  std::map<std::string, detail::Section, std::less<>> sections;
  detail::Section* current = &top;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated section header");
      const std::string_view name = detail::trim(line.substr(1, line.size() - 2));
      constexpr std::string_view prefix = "model.";
      if (name.substr(0, prefix.size()) != prefix) {
        parse_fail(line_no, "unknown section [" + std::string(name) + "]");
      }
      const std::string model(name.substr(prefix.size()));
      if (model != "qubit" && model != "maser" && model != "squeezed") {
        parse_fail(line_no, "unknown model section [" + std::string(name) + "]");
      }
      if (sections.count(model)) parse_fail(line_no, "duplicate section [" + std::string(name) + "]");
      current = &sections[model];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) parse_fail(line_no, "empty key");
    if (current->count(key)) parse_fail(line_no, "duplicate key '" + key + "'");
    (*current)[key] = detail::Entry{value, line_no};
  }

  static const std::set<std::string_view> top_keys = {"model", "t_max", "dt", "sample_every", "mode",
                                                      "output"};
  for (const auto& [key, entry] : top) {
    if (!top_keys.count(key)) parse_fail(entry.line, "unknown key '" + key + "'");
  }

  ScenarioConfig cfg;
  const auto model_it = top.find("model");
  if (model_it == top.end()) parse_fail(line_no, "missing 'model'");
  const auto& model = model_it->second;
  if (model.value.empty()) parse_fail(model.line, "empty 'model'");
  if (model.value == "qubit") {
    cfg.model = ModelKind::qubit;
  } else if (model.value == "maser") {
    cfg.model = ModelKind::maser;
  } else if (model.value == "squeezed") {
    cfg.model = ModelKind::squeezed;
  } else {
    parse_fail(model.line, "unknown model '" + model.value + "'");
  }

  static const detail::Section empty;
  auto section = [&](std::string_view name) -> const detail::Section& {
    auto it = sections.find(name);
    return it == sections.end() ? empty : it->second;
  };
  switch (cfg.model) {
    case ModelKind::qubit: cfg.params = detail::read_qubit(section("qubit")); break;
    case ModelKind::maser: cfg.params = detail::read_maser(section("maser")); break;
    case ModelKind::squeezed: cfg.params = detail::read_squeezed(section("squeezed")); break;
  }

  cfg.t_max = detail::default_t_max(cfg);
  if (auto it = top.find("t_max"); it != top.end()) cfg.t_max = detail::to_number(it->second, "t_max");
  if (auto it = top.find("dt"); it != top.end()) cfg.dt = detail::to_number(it->second, "dt");
  if (auto it = top.find("sample_every"); it != top.end()) {
    const double k = detail::to_number(it->second, "sample_every");
    if (k < 1.0 || k != std::floor(k)) detail::invalid("sample_every must be a positive integer");
    cfg.sample_every = static_cast<std::size_t>(k);
  }
  if (auto it = top.find("mode"); it != top.end()) {
    if (it->second.value == "incremental") {
      cfg.mode = BoundMode::incremental;
    } else if (it->second.value == "resolve") {
      cfg.mode = BoundMode::resolve;
    } else {
      parse_fail(it->second.line, "mode must be incremental or resolve");
    }
  }
  if (auto it = top.find("output"); it != top.end()) cfg.output_path = it->second.value;

  validate(cfg);
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

/// Dispatches to the model and summarizes the run.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();
  ScenarioResult out;
  switch (cfg.model) {
    case ModelKind::qubit:
      out.record = run_qubit(std::get<QubitParams>(cfg.params), cfg.t_max, cfg.dt, cfg.sample_every);
      break;
    case ModelKind::maser:
      out.record = run_maser(std::get<MaserParams>(cfg.params), cfg.t_max, cfg.dt, cfg.mode,
                             cfg.sample_every);
      break;
    case ModelKind::squeezed:
      out.record =
          run_squeezed(std::get<SqueezedParams>(cfg.params), cfg.t_max, cfg.dt, cfg.sample_every);
      break;
  }
  const auto finished = std::chrono::steady_clock::now();

  RunReport& rep = out.report;
  const Sample& last = out.record.back();
  rep.terminal_sigma = last.sigma;
  rep.terminal_bound = last.sigma_bound;
  rep.terminal_gap = last.gap;
  for (const Sample& s : out.record.samples()) {
    rep.max_constraint_residual = std::max(rep.max_constraint_residual, s.residual);
    rep.max_negative_gap = std::max(rep.max_negative_gap, -s.gap);
  }
  rep.wall_seconds = std::chrono::duration<double>(finished - started).count();
  rep.tolerance = gap_tolerance(cfg.model);
  rep.warnings = out.record.warnings();
  return out;
}

/// Process exit status for an error: 1 for input problems, 2 for numerical failures.
inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteState:
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::TargetOutOfRange:
    case ErrorCode::DegenerateVariance:
    case ErrorCode::NonPositiveOccupation:
    case ErrorCode::Unphysical:
    case ErrorCode::SeriesTooShort:
    case ErrorCode::NonMonotoneTime:
      return 2;
    default:
      return 1;
  }
}

inline constexpr int kExitInvariantViolation = 3;

}  // namespace entroflux
