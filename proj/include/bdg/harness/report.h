// Copyright 2026 The bdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdg::harness {

enum class Verdict { Pass, Fail, Error };

std::string_view verdict_name(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view name);

inline constexpr std::string_view kBudgetFailureReason = "not achieved within training budget";

struct EpisodeResult {
  std::uint64_t seed = 0;
  bool success = false;
  std::vector<bool> assertions;
  std::map<std::string, std::int64_t> event_counts;
  double episodic_return = 0.0;
  std::int64_t ticks = 0;

  bool operator==(const EpisodeResult&) const = default;
};

struct EvalStats {
  int episodes = 0;
  int successes = 0;
  double success_rate = 0.0;
  /// Episodes in which each assertion held, in assertion order.
  std::vector<int> assertion_successes;
  std::vector<EpisodeResult> per_episode;

  bool operator==(const EvalStats&) const = default;
};

struct ScenarioReport {
  std::string name;
  std::string fingerprint;
  Verdict verdict = Verdict::Error;
  double threshold = 0.0;
  std::vector<std::string> assertions;
  std::optional<EvalStats> stats;
  std::string reason;
  double seconds = 0.0;

  bool operator==(const ScenarioReport&) const = default;
};

struct FeatureReport {
  std::string name;
  std::string file;
  std::vector<ScenarioReport> scenarios;

  bool operator==(const FeatureReport&) const = default;
};

struct ReportTotals {
  int scenarios = 0;
  int passed = 0;
  int failed = 0;
  int errors = 0;
};

struct TestReport {
  std::vector<FeatureReport> features;
  double wall_seconds = 0.0;

  ReportTotals totals() const;
  /// 0 all pass, 1 any fail, 2 any error.
  int exit_code() const;

  bool operator==(const TestReport&) const = default;
};

std::string to_junit_xml(const TestReport& report);
std::string to_json(const TestReport& report);

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of to_json. Throws ReportError.
TestReport report_from_json(std::string_view text);

}  // namespace bdg::harness
