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

#include "bdg/harness/harness.h"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "bdg/builtin/builtin.h"
#include "bdg/env/episode.h"
#include "bdg/gherkin/parser.h"
#include "bdg/harness/files.h"
#include "bdg/harness/model_io.h"
#include "bdg/netenv/client.h"

namespace bdg::harness {

namespace fs = std::filesystem;

std::string_view errc_name(HarnessErrc code) {
  switch (code) {
    case HarnessErrc::NoScenarioSelected: return "NoScenarioSelected";
    case HarnessErrc::MissingModel: return "MissingModel";
    case HarnessErrc::FingerprintMismatch: return "FingerprintMismatch";
    case HarnessErrc::UnreadableFeature: return "UnreadableFeature";
  }
  return "Unknown";
}

HarnessError::HarnessError(HarnessErrc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

Workspace Workspace::builtin() {
  return Workspace{builtin::default_envs(), builtin::default_steps(), RunConfig{}, std::string(builtin::kDefaultEnv)};
}

binding::Registries Workspace::registries() const {
  binding::Registries r;
  r.steps = &steps;
  r.envs = &envs;
  r.has_trainer = [this](const std::string& id) { return config.trainers.contains(id); };
  r.default_env = default_env;
  return r;
}

env::EnvFactory Workspace::factory(const std::string& env_id) const {
  const auto it = config.envs.find(env_id);
  if (it != config.envs.end() && it->second.remote) {
    const auto address = *it->second.remote;
    return [address]() -> std::unique_ptr<env::Environment> {
      return std::make_unique<netenv::RemoteEnvironment>(netenv::RemoteEnvironment::connect(address));
    };
  }
  return envs.at(env_id).factory;
}

env::EnvConfig Workspace::scenario_config(const binding::ExecutablePlan& plan) const {
  return plan.build_config(config.apply_env(envs.base_config(plan.env_id)));
}

rl::TrainerSpec Workspace::resolved_trainer(const std::string& trainer_id, const std::string& env_id) const {
  auto spec = config.trainers.at(trainer_id);
  const auto& entry = envs.at(env_id);
  if (!spec.features) spec.features = entry.default_features;
  if (!spec.rewards) spec.rewards = entry.default_rewards;
  if (!spec.bins) spec.bins = entry.default_bins;
  return spec;
}

ParsedFeature read_feature(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::runtime_error& e) {
    throw HarnessError(HarnessErrc::UnreadableFeature, e.what());
  }
  auto parsed = gherkin::parse_feature(text, path.string());
  ParsedFeature out;
  out.path = path;
  if (parsed.ast) out.ast = std::move(*parsed.ast);
  out.diagnostics = std::move(parsed.diagnostics);
  return out;
}

std::vector<const gherkin::Scenario*> select_scenarios(const gherkin::FeatureAst& feature, const std::string& filter) {
  std::vector<const gherkin::Scenario*> out;
  for (const auto& s : feature.scenarios) {
    if (filter.empty() || s.name.find(filter) != std::string::npos) out.push_back(&s);
  }
  if (out.empty()) {
    throw HarnessError(HarnessErrc::NoScenarioSelected,
                       "no scenario in '" + feature.name + "' matches '" + filter + "'");
  }
  return out;
}

fs::path model_path(const fs::path& root, const std::string& feature, const std::string& scenario) {
  return root / path_slug(feature) / (path_slug(scenario) + ".bdgm");
}

void parallel_for(int count, int jobs, const std::function<void(int)>& task) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

class Progress {
 public:
  explicit Progress(std::ostream* out) : out_(out) {}
  void line(const std::string& text) {
    if (out_ == nullptr) return;
    std::lock_guard lock(mutex_);
    *out_ << text << std::endl;
  }

 private:
  std::ostream* out_;
  std::mutex mutex_;
};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string diagnostics_text(const std::vector<gherkin::Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (d.severity != gherkin::Severity::Error) continue;
    if (!out.empty()) out += "; ";
    out += gherkin::format_diagnostic(d);
  }
  return out;
}

std::vector<std::string> assertion_texts(const binding::ExecutablePlan& plan) {
  std::vector<std::string> out;
  for (const auto& a : plan.assertions) out.push_back("Then " + a.text);
  return out;
}

std::string fail_reason(const EvalStats& stats, double threshold, const std::vector<std::string>& assertions) {
  std::size_t weakest = 0;
  for (std::size_t i = 1; i < stats.assertion_successes.size(); ++i) {
    if (stats.assertion_successes[i] < stats.assertion_successes[weakest]) weakest = i;
  }
  std::string out = std::string(kBudgetFailureReason) + " (success_rate " + fixed(stats.success_rate, 4) +
                    " < threshold " + fixed(threshold, 4);
  if (!assertions.empty()) {
    out += "; weakest assertion: " + assertions[weakest] + " held in " +
           std::to_string(stats.assertion_successes[weakest]) + "/" + std::to_string(stats.episodes) + " episodes";
  }
  return out + ")";
}

}  // namespace

int TrainOutcome::exit_code() const {
  if (gherkin::has_errors(diagnostics)) return 2;
  for (const auto& s : scenarios) {
    if (!s.ok) return 2;
  }
  return 0;
}

TrainOutcome train_mode(const Workspace& workspace, const fs::path& feature_file, const TrainOptions& options) {
  TrainOutcome outcome;
  auto feature = read_feature(feature_file);
  outcome.diagnostics = feature.diagnostics;
  if (gherkin::has_errors(outcome.diagnostics)) return outcome;

  const auto selected = select_scenarios(feature.ast, options.scenario_filter);
  const auto registries = workspace.registries();
  std::vector<binding::ExecutablePlan> plans;
  for (const auto* scenario : selected) {
    auto bound = binding::bind_scenario(feature.ast, *scenario, registries);
    outcome.diagnostics.insert(outcome.diagnostics.end(), bound.diagnostics.begin(), bound.diagnostics.end());
    if (bound.plan) plans.push_back(std::move(*bound.plan));
  }
  if (gherkin::has_errors(outcome.diagnostics)) return outcome;

  Progress progress(options.progress);
  outcome.scenarios.resize(plans.size());
  parallel_for(static_cast<int>(plans.size()), options.jobs, [&](int i) {
    const auto& plan = plans[static_cast<std::size_t>(i)];
    auto& result = outcome.scenarios[static_cast<std::size_t>(i)];
    result.scenario = plan.scenario_name;
    try {
      const std::string trainer_id = options.trainer.value_or(plan.trainer_id);
      auto spec = workspace.resolved_trainer(trainer_id, plan.env_id);
      if (options.budget) spec.budget = *options.budget;
      spec.validate();

      rl::TrainContext context;
      context.make_env = workspace.factory(plan.env_id);
      context.config = workspace.scenario_config(plan);
      context.features = *spec.features;
      context.rewards = *spec.rewards;
      context.bins = *spec.bins;
      context.success = [&plan](const env::EpisodeRecord& record) { return plan.satisfied(record); };
      context.threshold = plan.threshold;
      context.seed = options.seed;
      context.on_epoch = [&](const rl::EpochStats& e) {
        progress.line("[train] " + plan.scenario_name + ": step " + std::to_string(e.env_steps) + " return " +
                      fixed(e.mean_return) + " probe " + fixed(e.probe_success_rate));
      };
      progress.line("[train] " + plan.scenario_name + ": " + trainer_id + " (" +
                    std::string(rl::algorithm_name(spec.algorithm)) + "), budget " + std::to_string(spec.budget) +
                    " steps, seed " + std::to_string(options.seed));
      const auto trained = rl::train(context, spec);

      ModelManifest manifest;
      manifest.fingerprint = plan.fingerprint();
      manifest.feature = plan.feature_name;
      manifest.scenario = plan.scenario_name;
      manifest.env_id = plan.env_id;
      manifest.trainer = trainer_id;
      manifest.seed = options.seed;
      manifest.env_steps = trained.stats.env_steps;
      manifest.best_probe_success = trained.stats.best_probe_success;
      manifest.reached_threshold = trained.stats.reached_threshold;
      manifest.created_at = options.created_at;
      result.model_file = model_path(options.out_dir, plan.feature_name, plan.scenario_name);
      save_model(result.model_file, trained.model, manifest);
      result.stats = trained.stats;
      result.ok = true;
      progress.line("[train] " + plan.scenario_name + ": wrote " + result.model_file.string() + " after " +
                    std::to_string(trained.stats.env_steps) + " steps, best probe " +
                    fixed(trained.stats.best_probe_success) +
                    (trained.stats.reached_threshold ? "" : " (threshold not reached)"));
    } catch (const std::exception& e) {
      result.error = e.what();
      progress.line("[train] " + plan.scenario_name + ": error: " + result.error);
    }
  });
  return outcome;
}

EvalStats evaluate(const Workspace& workspace, const binding::ExecutablePlan& plan, const rl::Model& model,
                   int episodes, std::uint64_t seed) {
  const auto config = workspace.scenario_config(plan);
  env::RewardSpec rewards = workspace.envs.at(plan.env_id).default_rewards;
  if (workspace.config.trainers.contains(plan.trainer_id)) {
    rewards = *workspace.resolved_trainer(plan.trainer_id, plan.env_id).rewards;
  }
  auto environment = workspace.factory(plan.env_id)();
  if (environment->action_count() != model.action_count) {
    throw std::runtime_error("model has " + std::to_string(model.action_count) + " actions, environment has " +
                             std::to_string(environment->action_count()));
  }
  EvalStats stats;
  stats.episodes = episodes;
  stats.assertion_successes.assign(plan.assertions.size(), 0);
  for (int i = 0; i < episodes; ++i) {
    const std::uint64_t episode_seed = seed + static_cast<std::uint64_t>(i);
    const auto record = env::run_episode(
        *environment, config, episode_seed, [&](const env::Observation& obs) { return env::Action{model.greedy_action(obs)}; },
        [&](const env::Transition& t) { return env::reward_eval(t, rewards); });
    EpisodeResult r;
    r.seed = episode_seed;
    r.assertions = plan.evaluate(record);
    r.success = std::all_of(r.assertions.begin(), r.assertions.end(), [](bool b) { return b; });
    r.event_counts = record.event_counts;
    r.episodic_return = record.episodic_return;
    r.ticks = record.ticks;
    for (std::size_t a = 0; a < r.assertions.size(); ++a) stats.assertion_successes[a] += r.assertions[a];
    stats.successes += r.success;
    stats.per_episode.push_back(std::move(r));
  }
  stats.success_rate = episodes > 0 ? static_cast<double>(stats.successes) / episodes : 0.0;
  return stats;
}

TestOutcome test_mode(const Workspace& workspace, const fs::path& feature_file, const TestOptions& options) {
  TestOutcome outcome;
  auto feature = read_feature(feature_file);
  outcome.diagnostics = feature.diagnostics;
  if (gherkin::has_errors(outcome.diagnostics)) return outcome;
  const auto selected = select_scenarios(feature.ast, options.scenario_filter);
  const auto registries = workspace.registries();

  FeatureReport report;
  report.name = feature.ast.name;
  report.file = feature_file.string();
  report.scenarios.resize(selected.size());
  Progress progress(options.progress);
  std::mutex diagnostics_mutex;

  parallel_for(static_cast<int>(selected.size()), options.jobs, [&](int i) {
    const auto start = Clock::now();
    const auto& scenario = *selected[static_cast<std::size_t>(i)];
    auto& out = report.scenarios[static_cast<std::size_t>(i)];
    out.name = scenario.name;
    out.verdict = Verdict::Error;
    out.threshold = binding::kDefaultThreshold;
    auto bound = binding::bind_scenario(feature.ast, scenario, registries);
    if (!bound.diagnostics.empty()) {
      std::lock_guard lock(diagnostics_mutex);
      outcome.diagnostics.insert(outcome.diagnostics.end(), bound.diagnostics.begin(), bound.diagnostics.end());
    }
    try {
      if (!bound.plan) throw std::runtime_error("binding failed: " + diagnostics_text(bound.diagnostics));
      const auto& plan = *bound.plan;
      out.fingerprint = plan.fingerprint();
      out.threshold = plan.threshold;
      out.assertions = assertion_texts(plan);

      const auto path = model_path(options.models_dir, plan.feature_name, plan.scenario_name);
      if (!fs::exists(path)) throw HarnessError(HarnessErrc::MissingModel, "no model at " + path.string());
      const auto loaded = load_model(path);
      if (loaded.manifest.fingerprint != out.fingerprint && !options.force) {
        throw HarnessError(HarnessErrc::FingerprintMismatch,
                           path.string() + " was trained for a different version of this scenario (model " +
                               loaded.manifest.fingerprint + ", scenario " + out.fingerprint + "); retrain or pass --force");
      }
      out.stats = evaluate(workspace, plan, loaded.model, options.episodes, options.seed);
      if (out.stats->success_rate >= plan.threshold) {
        out.verdict = Verdict::Pass;
      } else {
        out.verdict = Verdict::Fail;
        out.reason = fail_reason(*out.stats, plan.threshold, out.assertions);
      }
    } catch (const std::exception& e) {
      out.verdict = Verdict::Error;
      out.reason = e.what();
    }
    out.seconds = since(start);
    std::string line = "[test] " + out.name + ": " + std::string(verdict_name(out.verdict));
    if (out.stats) line += " success_rate " + fixed(out.stats->success_rate, 4);
    if (!out.reason.empty()) line += " - " + out.reason;
    progress.line(line);
  });
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace bdg::harness
