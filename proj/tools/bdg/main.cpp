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

#include <csignal>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "bdg/binding/pattern.h"
#include "bdg/env/episode.h"
#include "bdg/flappy/flappy.h"
#include "bdg/flappy/oracle.h"
#include "bdg/gherkin/parser.h"
#include "bdg/harness/files.h"
#include "bdg/harness/harness.h"
#include "bdg/netenv/server.h"

namespace {

namespace fs = std::filesystem;
using namespace bdg;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

void print_diagnostics(const std::vector<gherkin::Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << gherkin::format_diagnostic(d) << "\n";
}

harness::Workspace load_workspace(const std::string& config_flag) {
  auto workspace = harness::Workspace::builtin();
  std::string path = config_flag;
  if (path.empty()) {
    if (const char* env = std::getenv("BDG_CONFIG"); env != nullptr) path = env;
  }
  if (!path.empty()) workspace.config = harness::load_run_config(path);
  return workspace;
}

// SOURCE_DATE_EPOCH keeps artifacts reproducible; the default is the epoch.
std::string created_at() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  ::gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_parse(const std::vector<std::string>& files, bool pretty) {
  int code = kExitOk;
  for (const auto& file : files) {
    const auto parsed = harness::read_feature(file);
    print_diagnostics(parsed.diagnostics);
    if (gherkin::has_errors(parsed.diagnostics)) {
      code = kExitError;
      continue;
    }
    std::cout << (pretty ? gherkin::pretty_print(parsed.ast) : gherkin::dump_summary(parsed.ast));
  }
  return code;
}

int cmd_lint(const std::vector<std::string>& files, const std::string& config) {
  const auto workspace = load_workspace(config);
  const auto registries = workspace.registries();
  int code = kExitOk;
  for (const auto& file : files) {
    const auto parsed = harness::read_feature(file);
    auto diagnostics = parsed.diagnostics;
    if (!gherkin::has_errors(diagnostics)) {
      const auto style = gherkin::lint(parsed.ast);
      diagnostics.insert(diagnostics.end(), style.begin(), style.end());
      for (const auto& scenario : parsed.ast.scenarios) {
        const auto bound = binding::bind_scenario(parsed.ast, scenario, registries);
        diagnostics.insert(diagnostics.end(), bound.diagnostics.begin(), bound.diagnostics.end());
      }
    }
    print_diagnostics(diagnostics);
    if (gherkin::has_errors(diagnostics)) code = kExitError;
    std::cerr << file << ": " << diagnostics.size() << " diagnostic(s)\n";
  }
  return code;
}

struct TrainFlags {
  std::vector<std::string> files;
  std::string scenario;
  std::string trainer;
  std::uint64_t seed = 42;
  std::int64_t budget = 0;
  std::string out = "models";
  std::string config;
  int jobs = 0;
};

int cmd_train(const TrainFlags& flags) {
  const auto workspace = load_workspace(flags.config);
  if (!flags.trainer.empty() && !workspace.config.trainers.contains(flags.trainer)) {
    throw UsageError("unknown trainer '" + flags.trainer + "'");
  }
  harness::TrainOptions options;
  options.scenario_filter = flags.scenario;
  if (!flags.trainer.empty()) options.trainer = flags.trainer;
  options.seed = flags.seed;
  if (flags.budget > 0) options.budget = flags.budget;
  options.out_dir = flags.out;
  options.jobs = flags.jobs;
  options.created_at = created_at();
  options.progress = &std::cerr;
  int code = kExitOk;
  for (const auto& file : flags.files) {
    const auto outcome = harness::train_mode(workspace, file, options);
    print_diagnostics(outcome.diagnostics);
    code = std::max(code, outcome.exit_code());
  }
  return code;
}

struct TestFlags {
  std::vector<std::string> files;
  std::string scenario;
  std::string models = "models";
  int episodes = 100;
  std::uint64_t seed = 0;
  std::string report_xml;
  std::string report_json;
  std::string config;
  int jobs = 0;
  bool force = false;
};

int cmd_test(const TestFlags& flags) {
  const auto workspace = load_workspace(flags.config);
  harness::TestOptions options;
  options.scenario_filter = flags.scenario;
  options.models_dir = flags.models;
  options.episodes = flags.episodes;
  options.seed = flags.seed;
  options.force = flags.force;
  options.jobs = flags.jobs;
  options.progress = &std::cerr;

  const auto start = std::chrono::steady_clock::now();
  harness::TestReport report;
  bool diagnostics_failed = false;
  for (const auto& file : flags.files) {
    auto outcome = harness::test_mode(workspace, file, options);
    print_diagnostics(outcome.diagnostics);
    if (!outcome.report) {
      diagnostics_failed = true;
      continue;
    }
    report.features.push_back(std::move(*outcome.report));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!report.features.empty()) {
    if (!flags.report_xml.empty()) harness::write_file_atomic(flags.report_xml, harness::to_junit_xml(report));
    if (!flags.report_json.empty()) harness::write_file_atomic(flags.report_json, harness::to_json(report));
  }
  const auto t = report.totals();
  std::cerr << t.scenarios << " scenario(s): " << t.passed << " passed, " << t.failed << " failed, " << t.errors
            << " error(s)\n";
  return diagnostics_failed ? kExitError : report.exit_code();
}

// Largest N over "the bird passes N pipes" assertions.
std::optional<int> asserted_pipes(const binding::ExecutablePlan& plan) {
  static const auto pattern = binding::compile_pattern("the bird passes {int} pipes");
  std::optional<int> out;
  for (const auto& a : plan.assertions) {
    if (const auto args = binding::match_step(pattern, a.text)) {
      const int n = static_cast<int>(std::get<std::int64_t>(args->front()));
      out = std::max(out.value_or(0), n);
    }
  }
  return out;
}

int cmd_oracle(const std::string& file, const std::string& scenario_name, std::int64_t max_ticks,
               const std::string& config) {
  const auto workspace = load_workspace(config);
  const auto parsed = harness::read_feature(file);
  print_diagnostics(parsed.diagnostics);
  if (gherkin::has_errors(parsed.diagnostics)) return kExitError;
  const auto selected = harness::select_scenarios(parsed.ast, scenario_name);
  if (selected.size() != 1) {
    std::string names;
    for (const auto* s : selected) names += "\n  " + s->name;
    throw UsageError("--scenario '" + scenario_name + "' matches " + std::to_string(selected.size()) +
                     " scenarios:" + names);
  }
  const auto bound = binding::bind_scenario(parsed.ast, *selected.front(), workspace.registries());
  print_diagnostics(bound.diagnostics);
  if (!bound.plan) return kExitError;
  const auto& plan = *bound.plan;
  if (plan.env_id != "flappy") {
    std::cerr << "oracle: only the flappy environment is supported, scenario uses '" << plan.env_id << "'\n";
    return kExitError;
  }
  const auto env_config = workspace.scenario_config(plan);
  const int target = asserted_pipes(plan).value_or(flappy::FlappyConfig::from(env_config).pipe_count);
  flappy::OracleLimits limits;
  limits.max_ticks = max_ticks;
  std::optional<std::vector<int>> witness;
  try {
    witness = flappy::solve_feasible(env_config, target, limits);
  } catch (const flappy::BudgetExceeded& e) {
    std::cout << "oracle: " << plan.scenario_name << ": undecided (" << e.what() << ")\n";
    return kExitError;
  }
  if (!witness) {
    std::cout << "oracle: " << plan.scenario_name << ": no solution within budget (" << target
              << " pipes without collision, " << std::min(max_ticks, env_config.episode_cap) << " ticks)\n";
    return kExitFail;
  }
  flappy::FlappyEnv env;
  std::size_t tick = 0;
  const auto record = env::run_episode(
      env, env_config, 0,
      [&](const env::Observation&) { return env::Action{tick < witness->size() ? (*witness)[tick++] : 0}; },
      [](const env::Transition&) { return 0.0; });
  const auto flaps = std::count(witness->begin(), witness->end(), flappy::kFlap);
  std::cout << "oracle: " << plan.scenario_name << ": solution found, witness length " << witness->size()
            << " ticks (" << flaps << " flaps)\n";
  std::cout << "replay: pipe_passed " << record.count("pipe_passed") << ", collision " << record.count("collision")
            << ", assertions " << (plan.satisfied(record) ? "hold" : "do not all hold") << "\n";
  return kExitOk;
}

int cmd_serve(const std::string& env_id, const std::string& host, int port, const std::string& config) {
  const auto workspace = load_workspace(config);
  if (!workspace.envs.contains(env_id)) throw UsageError("unknown environment '" + env_id + "'");
  netenv::EnvServer server(workspace.envs.at(env_id).factory,
                           netenv::Address{host, static_cast<std::uint16_t>(port)});
  server.set_log(&std::cerr);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on " << host << ":" << server.port() << " env " << env_id << std::endl;
  server.start();
  while (g_stop == 0) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Behaviour-driven game testing with reinforcement learning agents", "bdg"};
  app.require_subcommand(1);

  std::vector<std::string> parse_files;
  bool pretty = false;
  bool summary = false;
  auto* parse = app.add_subcommand("parse", "Parse feature files and print an AST summary");
  parse->add_option("files", parse_files, "Feature files")->required()->check(CLI::ExistingFile);
  auto* pretty_flag = parse->add_flag("--pretty", pretty, "Print the canonical feature text instead");
  parse->add_flag("--summary", summary, "Print the AST summary (default)")->excludes(pretty_flag);

  std::vector<std::string> lint_files;
  std::string lint_config;
  auto* lint = app.add_subcommand("lint", "Report parse, style and binding diagnostics");
  lint->add_option("files", lint_files, "Feature files")->required()->check(CLI::ExistingFile);
  lint->add_option("--config", lint_config, "Run-config TOML (default: $BDG_CONFIG)");

  TrainFlags tf;
  auto* train = app.add_subcommand("train", "Train one model per scenario");
  train->add_option("files", tf.files, "Feature files")->required()->check(CLI::ExistingFile);
  train->add_option("--scenario", tf.scenario, "Only scenarios whose name contains this text");
  train->add_option("--trainer", tf.trainer, "Trainer id overriding @trainer tags");
  train->add_option("--seed", tf.seed, "Training seed")->capture_default_str();
  train->add_option("--budget", tf.budget, "Environment-step budget overriding the trainer's")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()));
  train->add_option("--out", tf.out, "Model output directory")->capture_default_str();
  train->add_option("--config", tf.config, "Run-config TOML (default: $BDG_CONFIG)");
  train->add_option("--jobs", tf.jobs, "Parallel scenarios (default: CPU count)")->check(CLI::NonNegativeNumber);

  TestFlags sf;
  auto* test = app.add_subcommand("test", "Evaluate trained models against the assertions");
  test->add_option("files", sf.files, "Feature files")->required()->check(CLI::ExistingFile);
  test->add_option("--scenario", sf.scenario, "Only scenarios whose name contains this text");
  test->add_option("--models", sf.models, "Model directory")->capture_default_str();
  test->add_option("--episodes", sf.episodes, "Evaluation episodes per scenario")
      ->capture_default_str()
      ->check(CLI::Range(1, 1'000'000));
  test->add_option("--seed", sf.seed, "Episode i uses seed + i")->capture_default_str();
  test->add_option("--report-xml", sf.report_xml, "JUnit XML report path");
  test->add_option("--report-json", sf.report_json, "JSON report path");
  test->add_option("--config", sf.config, "Run-config TOML (default: $BDG_CONFIG)");
  test->add_option("--jobs", sf.jobs, "Parallel scenarios (default: CPU count)")->check(CLI::NonNegativeNumber);
  test->add_flag("--force", sf.force, "Use models whose scenario fingerprint differs");

  std::string oracle_file;
  std::string oracle_scenario;
  std::int64_t max_ticks = 2000;
  std::string oracle_config;
  auto* oracle = app.add_subcommand("oracle", "Decide feasibility of a flappy scenario by exhaustive search");
  oracle->add_option("file", oracle_file, "Feature file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--scenario", oracle_scenario, "Scenario name (substring)")->required();
  oracle->add_option("--max-ticks", max_ticks, "Search horizon")
      ->capture_default_str()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1'000'000}));
  oracle->add_option("--config", oracle_config, "Run-config TOML (default: $BDG_CONFIG)");

  std::string serve_env;
  std::string serve_host = "127.0.0.1";
  int serve_port = 0;
  std::string serve_config;
  auto* serve = app.add_subcommand("serve-env", "Serve an environment over the JSON-lines protocol");
  serve->add_option("--env", serve_env, "Environment id")->required();
  serve->add_option("--port", serve_port, "TCP port (0 picks a free one)")->required()->check(CLI::Range(0, 65535));
  serve->add_option("--host", serve_host, "IPv4 address to bind")->capture_default_str();
  serve->add_option("--config", serve_config, "Run-config TOML (default: $BDG_CONFIG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "bdg: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*parse) return cmd_parse(parse_files, pretty);
    if (*lint) return cmd_lint(lint_files, lint_config);
    if (*train) return cmd_train(tf);
    if (*test) return cmd_test(sf);
    if (*oracle) return cmd_oracle(oracle_file, oracle_scenario, max_ticks, oracle_config);
    if (*serve) return cmd_serve(serve_env, serve_host, serve_port, serve_config);
  } catch (const UsageError& e) {
    std::cerr << "bdg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "bdg: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
