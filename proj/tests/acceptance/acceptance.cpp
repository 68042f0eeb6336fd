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

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdg/env/chain.h"
#include "bdg/env/random.h"
#include "bdg/flappy/flappy.h"
#include "bdg/flappy/oracle.h"
#include "bdg/harness/model_io.h"
#include "bdg/netenv/client.h"
#include "bdg/rl/mlp.h"
#include "bdg/rl/qtable.h"
#include "json.hpp"
#include "support/corpus.h"

namespace bdg::acceptance {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double max_seconds;
  std::function<Outcome()> run;
};

fs::path g_work;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream ss;
  ss.precision(precision);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------- processes

struct ProcResult {
  int exit_code = -1;
  std::string output;
};

std::vector<char*> argv_of(std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  return argv;
}

// Runs bdg with stdout and stderr captured in `log`.
ProcResult run_bdg(std::vector<std::string> args, const fs::path& log) {
  args.insert(args.begin(), BDG_EXECUTABLE);
  fs::create_directories(log.parent_path());
  const pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    const int fd = open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) _exit(127);
    dup2(fd, STDOUT_FILENO);
    dup2(fd, STDERR_FILENO);
    auto argv = argv_of(args);
    execv(argv[0], argv.data());
    _exit(127);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  ProcResult out;
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  out.output = testing::slurp(log);
  return out;
}

// `bdg serve-env` child; its first stdout line announces the bound port.
// stderr goes to `log`.
class ServerProcess {
 public:
  ServerProcess(std::vector<std::string> args, const fs::path& log) {
    args.insert(args.begin(), BDG_EXECUTABLE);
    fs::create_directories(log.parent_path());
    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("fork failed");
    if (pid_ == 0) {
      const int err = open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      if (err >= 0) dup2(err, STDERR_FILENO);
      dup2(fds[1], STDOUT_FILENO);
      close(fds[0]);
      close(fds[1]);
      auto argv = argv_of(args);
      execv(argv[0], argv.data());
      _exit(127);
    }
    close(fds[1]);
    std::string line;
    char c = 0;
    while (read(fds[0], &c, 1) == 1 && c != '\n') line.push_back(c);
    close(fds[0]);
    banner_ = line;
    const auto colon = line.rfind(':');
    if (colon != std::string::npos) port_ = std::atoi(line.c_str() + colon + 1);
  }

  ServerProcess(const ServerProcess&) = delete;
  ServerProcess& operator=(const ServerProcess&) = delete;

  ~ServerProcess() { stop(); }

  int port() const { return port_; }
  const std::string& banner() const { return banner_; }

  int stop() {
    if (pid_ <= 0) return exit_code_;
    kill(pid_, SIGTERM);
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
    exit_code_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return exit_code_;
  }

 private:
  pid_t pid_ = -1;
  int port_ = 0;
  int exit_code_ = -1;
  std::string banner_;
};

// ---------------------------------------------------------------- reports

const json& only_scenario(const json& report) {
  const auto& features = report.at("features");
  if (features.size() != 1 || features[0].at("scenarios").size() != 1) {
    throw std::runtime_error("report does not hold exactly one scenario");
  }
  return features[0].at("scenarios")[0];
}

json read_json(const fs::path& path) { return json::parse(testing::slurp(path)); }

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::string flappy_feature() { return std::string(BDG_SOURCE_DIR) + "/features/flappy.feature"; }

// ---------------------------------------------------------------- 1 corpus

Outcome parser_corpus() {
  const auto cases = testing::corpus_cases(BDG_CORPUS_DIR);
  int valid = 0;
  for (const auto& c : cases) {
    if (!fs::exists(c.expected)) return {false, "missing " + c.expected.string()};
    const auto problem = testing::check_corpus_case(c);
    if (!problem.empty()) return {false, c.feature.filename().string() + ": " + problem};
    valid += c.valid ? 1 : 0;
  }
  if (cases.size() < 20) return {false, "only " + std::to_string(cases.size()) + " files"};
  return {true, std::to_string(cases.size()) + " files, " + std::to_string(valid) + " valid with round trip"};
}

// ---------------------------------------------------------------- 2 gradients

struct ReferenceNet {
  std::vector<int> sizes;
  std::vector<double> params;

  // Forward pass straight from the documented layout: per layer weights
  // w[i * out + j] then biases; ReLU on hidden layers. Records hidden
  // pre-activations so callers can avoid the ReLU kink.
  std::vector<double> forward(const std::vector<double>& x, std::vector<double>* pre = nullptr) const {
    std::vector<double> a = x;
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
      const int in = sizes[l];
      const int out = sizes[l + 1];
      std::vector<double> z(out, 0.0);
      for (int j = 0; j < out; ++j) {
        double sum = params[offset + static_cast<std::size_t>(in) * out + j];
        for (int i = 0; i < in; ++i) sum += a[i] * params[offset + static_cast<std::size_t>(i) * out + j];
        z[j] = sum;
      }
      offset += static_cast<std::size_t>(in) * out + out;
      const bool hidden = l + 2 < sizes.size();
      if (hidden) {
        if (pre) pre->insert(pre->end(), z.begin(), z.end());
        for (double& v : z) v = std::max(v, 0.0);
      }
      a = std::move(z);
    }
    return a;
  }
};

std::vector<double> uniform_vector(env::Pcg32& rng, int n) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
  return v;
}

Outcome gradient_oracle() {
  env::Pcg32 rng(2718);
  const double h = 1e-5;
  double worst = 0.0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> sizes;
    if (trial == 0) {
      sizes = {8, 16, 16, 4};
    } else {
      sizes.push_back(1 + static_cast<int>(rng.below(8)));
      for (std::uint32_t l = rng.below(3); l > 0; --l) sizes.push_back(1 + static_cast<int>(rng.below(16)));
      sizes.push_back(1 + static_cast<int>(rng.below(4)));
    }
    rl::Mlp net(sizes, rng);
    for (double& p : net.params()) p += 0.1 * (2.0 * rng.uniform() - 1.0);
    const ReferenceNet reference{sizes, net.params()};

    // Central differences are only meaningful away from the ReLU kink.
    std::vector<double> x;
    for (int attempt = 0;; ++attempt) {
      x = uniform_vector(rng, sizes.front());
      std::vector<double> pre;
      reference.forward(x, &pre);
      if (std::all_of(pre.begin(), pre.end(), [](double z) { return std::abs(z) > 1e-3; })) break;
      if (attempt == 1000) return {false, "no kink-free input for trial " + std::to_string(trial)};
    }
    const auto c = uniform_vector(rng, sizes.back());
    const auto loss = [&](const std::vector<double>& params) {
      const auto out = ReferenceNet{sizes, params}.forward(x);
      double sum = 0.0;
      for (std::size_t j = 0; j < out.size(); ++j) sum += c[j] * out[j];
      return sum;
    };

    rl::Mlp::Cache cache;
    net.forward(x, cache);
    std::vector<double> grad(net.params().size(), 0.0);
    net.backward(cache, c, grad);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      auto plus = net.params();
      auto minus = net.params();
      plus[k] += h;
      minus[k] -= h;
      const double numeric = (loss(plus) - loss(minus)) / (2.0 * h);
      const double error = std::abs(grad[k] - numeric) / std::max({std::abs(grad[k]), std::abs(numeric), 1e-6});
      worst = std::max(worst, error);
      ++checked;
    }
  }
  return {worst <= 1e-6, std::to_string(checked) + " partials, max relative error " + fmt(worst)};
}

// ---------------------------------------------------------------- 3 tabular

env::EnvConfig chain_config(int length, int start) {
  env::EnvConfig config;
  config.env_id = "chain";
  config.set("length", static_cast<double>(length));
  config.set("start", static_cast<double>(start));
  config.episode_cap = 1000;
  return config;
}

Outcome tabular_oracle() {
  const int length = 5;
  const double gamma = 0.9;

  // Deterministic model of the chain read off the environment itself.
  struct Edge {
    int next;
    double reward;
    bool done;
  };
  std::vector<std::array<Edge, 2>> model(length);
  env::ChainEnv probe;
  for (int s = 0; s + 1 < length; ++s) {
    for (int a = 0; a < 2; ++a) {
      probe.reset(chain_config(length, s), 0);
      const auto t = probe.step(env::Action{a});
      model[s][a] = {static_cast<int>(t.obs.at("state")), static_cast<double>(t.count("goal")), t.done};
    }
  }

  std::vector<std::array<double, 2>> q_star(length, {0.0, 0.0});
  for (int sweep = 0; sweep < 10'000; ++sweep) {
    double change = 0.0;
    for (int s = 0; s + 1 < length; ++s) {
      for (int a = 0; a < 2; ++a) {
        const auto& e = model[s][a];
        const double target = e.done ? e.reward : e.reward + gamma * std::max(q_star[e.next][0], q_star[e.next][1]);
        change = std::max(change, std::abs(target - q_star[s][a]));
        q_star[s][a] = target;
      }
    }
    if (change < 1e-14) break;
  }

  // Episodic Q-learning under a uniform behaviour policy.
  rl::QTable q(2);
  env::Pcg32 rng(5);
  env::ChainEnv chain;
  for (int episode = 0; episode < 3000; ++episode) {
    const int start = static_cast<int>(rng.below(length - 1));
    auto obs = chain.reset(chain_config(length, start), episode);
    bool done = false;
    while (!done) {
      const int a = static_cast<int>(rng.below(2));
      const rl::StateKey s{static_cast<std::int32_t>(obs.at("state"))};
      const auto t = chain.step(env::Action{a});
      const rl::StateKey next{static_cast<std::int32_t>(t.obs.at("state"))};
      rl::qtable_update(q, s, a, static_cast<double>(t.count("goal")), next, t.done, 0.5, gamma);
      obs = t.obs;
      done = t.done;
    }
  }

  double worst = 0.0;
  bool same_policy = true;
  for (int s = 0; s + 1 < length; ++s) {
    const auto& v = q.values(rl::StateKey{s});
    for (int a = 0; a < 2; ++a) worst = std::max(worst, std::abs(v[a] - q_star[s][a]));
    const int learned = rl::argmax(v);
    const int optimal = q_star[s][1] > q_star[s][0] ? 1 : 0;
    same_policy = same_policy && learned == optimal;
  }
  return {worst <= 1e-3 && same_policy,
          "max |Q - Q*| " + fmt(worst) + (same_policy ? ", greedy policies identical" : ", greedy policies differ")};
}

// ---------------------------------------------------------------- 4 feasibility

env::EnvConfig flappy_config() {
  env::EnvConfig config;
  config.env_id = "flappy";
  config.episode_cap = flappy::kDefaultEpisodeCap;
  return config;
}

std::optional<std::string> replay_witness(const env::EnvConfig& config, const std::vector<int>& witness) {
  flappy::FlappyEnv env;
  env.reset(config, 0);
  int passed = 0;
  int collisions = 0;
  for (int a : witness) {
    const auto t = env.step(env::Action{a});
    passed += t.count("pipe_passed");
    collisions += t.count("collision");
  }
  if (passed != 2 || collisions != 0) {
    return "replay gave " + std::to_string(passed) + " passes, " + std::to_string(collisions) + " collisions";
  }
  return std::nullopt;
}

Outcome feasibility_oracle() {
  auto limit = flappy_config();
  limit.set("pipe1", std::string("lowest"));
  limit.set("pipe2", std::string("highest"));
  std::string detail;
  for (const auto& [name, config] : {std::pair{"default", flappy_config()}, std::pair{"limit case", limit}}) {
    const auto witness = flappy::solve_feasible(config, 2);
    if (!witness) return {false, std::string(name) + " reported unsolvable"};
    if (auto problem = replay_witness(config, *witness)) return {false, std::string(name) + ": " + *problem};
    detail += std::string(name) + " witness " + std::to_string(witness->size()) + " ticks; ";
  }
  auto narrow = flappy_config();
  narrow.set("gap_height", 10.0);
  if (flappy::solve_feasible(narrow, 2)) return {false, "gap 10 reported solvable"};

  // The same verdicts through the CLI on the shipped feature file.
  const auto dir = g_work / "c4";
  const auto limit_cli = run_bdg({"oracle", flappy_feature(), "--scenario", "limit case"}, dir / "limit.log");
  const auto narrow_cli = run_bdg({"oracle", flappy_feature(), "--scenario", "gap too narrow"}, dir / "narrow.log");
  if (limit_cli.exit_code != 0) return {false, "bdg oracle on limit case exited " + std::to_string(limit_cli.exit_code)};
  if (narrow_cli.exit_code != 1 || narrow_cli.output.find("no solution") == std::string::npos) {
    return {false, "bdg oracle on gap 10 exited " + std::to_string(narrow_cli.exit_code)};
  }
  return {true, detail + "gap 10 has no solution"};
}

// ---------------------------------------------------------------- 5, 6 end to end

Outcome end_to_end(const std::string& trainer, const std::string& budget) {
  const auto dir = g_work / ("e2e_" + trainer);
  const auto train = run_bdg({"train", flappy_feature(), "--scenario", "easy course", "--trainer", trainer,
                              "--budget", budget, "--seed", "42", "--out", (dir / "models").string()},
                             dir / "train.log");
  if (train.exit_code != 0) return {false, "bdg train exited " + std::to_string(train.exit_code)};

  std::vector<double> rates;
  for (int run = 0; run < 2; ++run) {
    const auto report = dir / ("report" + std::to_string(run) + ".json");
    const auto test = run_bdg({"test", flappy_feature(), "--scenario", "easy course", "--models",
                               (dir / "models").string(), "--episodes", "100", "--report-json", report.string()},
                              dir / ("test" + std::to_string(run) + ".log"));
    const auto scenario = only_scenario(read_json(report));
    const auto verdict = scenario.at("verdict").get<std::string>();
    const auto& stats = scenario.at("stats");
    if (stats.is_null()) return {false, "verdict " + verdict + ": " + scenario.at("reason").get<std::string>()};
    rates.push_back(stats.at("success_rate").get<double>());
    if (test.exit_code != 0 || verdict != "Pass" || stats.at("episodes").get<int>() != 100 || rates.back() < 0.95) {
      return {false, "exit " + std::to_string(test.exit_code) + ", verdict " + verdict + ", success_rate " +
                         fmt(rates.back())};
    }
  }
  if (rates[0] != rates[1]) return {false, "success_rate differs between identical test runs"};
  return {true, "verdict pass, success_rate " + fmt(rates[0]) + " over 100 episodes"};
}

// ---------------------------------------------------------------- 7 negative path

Outcome negative_path() {
  const auto dir = g_work / "negative";
  const auto train = run_bdg({"train", flappy_feature(), "--scenario", "gap too narrow", "--trainer", "ppo_default",
                              "--budget", "20000", "--out", (dir / "models").string()},
                             dir / "train.log");
  if (train.exit_code != 0) return {false, "bdg train exited " + std::to_string(train.exit_code)};
  const auto xml_path = dir / "report.xml";
  const auto json_path = dir / "report.json";
  const auto test = run_bdg({"test", flappy_feature(), "--scenario", "gap too narrow", "--models",
                             (dir / "models").string(), "--report-xml", xml_path.string(), "--report-json",
                             json_path.string()},
                            dir / "test.log");
  const auto scenario = only_scenario(read_json(json_path));
  const auto verdict = scenario.at("verdict").get<std::string>();
  const auto reason = scenario.at("reason").get<std::string>();
  const auto xml = testing::slurp(xml_path);
  const auto failures = count_of(xml, "<failure");
  const bool ok = test.exit_code == 1 && verdict == "Fail" &&
                  reason.find("not achieved within training budget") != std::string::npos && failures == 1 &&
                  count_of(xml, "<error") == 0;
  return {ok, "exit " + std::to_string(test.exit_code) + ", verdict " + verdict + ", " + std::to_string(failures) +
                  " <failure>, reason \"" + reason.substr(0, 60) + "\""};
}

// ---------------------------------------------------------------- 8 remote

Outcome remote_transparency() {
  ServerProcess server({"serve-env", "--env", "flappy", "--port", "0"}, g_work / "remote" / "server.log");
  if (server.port() <= 0) return {false, "no port in banner '" + server.banner() + "'"};
  auto remote = netenv::RemoteEnvironment::connect(netenv::Address{"127.0.0.1", static_cast<std::uint16_t>(server.port())});

  env::Pcg32 rng(1000);
  const char* positions[] = {"lowest", "middle", "highest"};
  std::int64_t transitions = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto config = flappy_config();
    const int pipes = 1 + static_cast<int>(rng.below(3));
    config.set("pipe_count", static_cast<double>(pipes));
    for (int p = 1; p <= pipes; ++p) {
      if (rng.below(2) == 0) {
        config.set("pipe" + std::to_string(p), std::string(positions[rng.below(3)]));
      } else {
        config.set("pipe" + std::to_string(p), 60.0 + 280.0 * rng.uniform());
      }
    }
    config.episode_cap = 1 + rng.below(600);
    const std::uint64_t seed = rng.next();
    flappy::FlappyEnv local;
    if (!(remote.reset(config, seed) == local.reset(config, seed))) {
      return {false, "reset observation differs in sequence " + std::to_string(trial)};
    }
    const std::uint32_t flap_odds = 2 + rng.below(12);
    bool done = false;
    while (!done) {
      const env::Action action{rng.below(flap_odds) == 0 ? 1 : 0};
      const auto want = local.step(action);
      const auto got = remote.step(action);
      ++transitions;
      if (!(got.obs == want.obs) || got.events != want.events || got.done != want.done || got.tick != want.tick) {
        return {false, "sequence " + std::to_string(trial) + " differs at tick " + std::to_string(want.tick)};
      }
      done = want.done;
    }
  }
  remote.close();
  const int exit_code = server.stop();
  if (exit_code != 0) return {false, "serve-env exited " + std::to_string(exit_code) + " on SIGTERM"};
  return {true, "1000 sequences, " + std::to_string(transitions) + " transitions identical"};
}

// ---------------------------------------------------------------- 9 model io

rl::Mlp random_mlp(env::Pcg32& rng, std::vector<int> sizes) {
  rl::Mlp net(std::move(sizes), rng);
  for (double& p : net.params()) p += 1e-3 * (2.0 * rng.uniform() - 1.0);
  return net;
}

rl::Model model_of(env::Pcg32& rng, bool ppo) {
  rl::Model model;
  model.features = env::FeatureSpec{{{"bird_y", 1.0 / 512.0, 0.0}, {"bird_vy", 0.1, 0.0}}};
  if (ppo) {
    model.body = rl::PpoModel{random_mlp(rng, {2, 16, 2}), random_mlp(rng, {2, 16, 1})};
  } else {
    model.body = rl::DqnModel{random_mlp(rng, {2, 32, 32, 2})};
  }
  return model;
}

bool bit_identical(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::optional<harness::ModelErrc> decode_error(std::string_view bytes) {
  try {
    harness::decode_model(bytes);
  } catch (const harness::ModelError& e) {
    return e.code();
  }
  return std::nullopt;
}

Outcome model_round_trip() {
  env::Pcg32 rng(99);
  const auto dir = g_work / "models";
  std::size_t truncations = 0;
  for (const bool ppo : {false, true}) {
    const auto model = model_of(rng, ppo);
    harness::ModelManifest manifest;
    manifest.fingerprint = "f";
    manifest.feature = "Flappy";
    manifest.scenario = ppo ? "ppo" : "dqn";
    manifest.env_id = "flappy";
    manifest.trainer = ppo ? "ppo_default" : "dqn_default";
    manifest.seed = 7;
    manifest.created_at = "1970-01-01T00:00:00Z";
    const auto path = dir / (manifest.scenario + ".bdgm");
    harness::save_model(path, model, manifest);
    const auto loaded = harness::load_model(path);
    const auto& name = manifest.scenario;
    if (!(loaded.manifest == manifest)) return {false, name + ": manifest changed"};
    if (ppo) {
      const auto& a = std::get<rl::PpoModel>(model.body);
      const auto& b = std::get<rl::PpoModel>(loaded.model.body);
      if (!bit_identical(a.policy.params(), b.policy.params()) || !bit_identical(a.value.params(), b.value.params())) {
        return {false, name + ": parameters changed"};
      }
    } else {
      if (!bit_identical(std::get<rl::DqnModel>(model.body).q.params(),
                         std::get<rl::DqnModel>(loaded.model.body).q.params())) {
        return {false, name + ": parameters changed"};
      }
    }
    const auto bytes = testing::slurp(path);
    if (harness::encode_model(loaded.model, loaded.manifest) != bytes) return {false, name + ": re-encoding differs"};

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    if (decode_error(bad_magic) != harness::ModelErrc::BadMagic) return {false, name + ": corrupted magic accepted"};
    if (decode_error("") != harness::ModelErrc::BadMagic) return {false, name + ": empty file not BadMagic"};
    for (std::size_t len = 1; len < bytes.size(); ++len) {
      if (decode_error(std::string_view(bytes).substr(0, len)) != harness::ModelErrc::TruncatedFile) {
        return {false, name + ": truncation to " + std::to_string(len) + " bytes not reported as truncated"};
      }
      ++truncations;
    }
    auto flipped = bytes;
    flipped[bytes.size() - 20] ^= 0x01;
    if (decode_error(flipped) != harness::ModelErrc::ChecksumMismatch) return {false, name + ": bit flip accepted"};
  }
  return {true, "dqn and ppo bit-identical; bad magic and " + std::to_string(truncations) + " truncations rejected"};
}

// ---------------------------------------------------------------- 10 determinism

Outcome determinism() {
  const auto dir = g_work / "determinism";
  std::string detail;
  for (const auto& [trainer, budget] : {std::pair<std::string, std::string>{"dqn_default", "20000"},
                                        std::pair<std::string, std::string>{"ppo_default", "100000"}}) {
    std::vector<std::string> model_bytes;
    std::vector<double> rates;
    for (const std::string run : {"a", "b"}) {
      const auto out = dir / trainer / run;
      const auto train = run_bdg({"train", flappy_feature(), "--scenario", "easy course", "--trainer", trainer,
                                  "--budget", budget, "--seed", "7", "--out", (out / "models").string()},
                                 out / "train.log");
      if (train.exit_code != 0) return {false, trainer + ": bdg train exited " + std::to_string(train.exit_code)};
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(out / "models")) {
        if (e.path().extension() == ".bdgm") files.push_back(e.path());
      }
      if (files.size() != 1) return {false, trainer + ": expected one model file"};
      model_bytes.push_back(testing::slurp(files[0]));

      const auto report = out / "report.json";
      run_bdg({"test", flappy_feature(), "--scenario", "easy course", "--models", (out / "models").string(),
               "--report-json", report.string()},
              out / "test.log");
      const auto parsed = read_json(report);
      const auto& stats = only_scenario(parsed).at("stats");
      if (stats.is_null()) return {false, trainer + ": test produced no statistics"};
      rates.push_back(stats.at("success_rate").get<double>());
    }
    if (model_bytes[0] != model_bytes[1]) return {false, trainer + ": model files differ"};
    if (rates[0] != rates[1]) return {false, trainer + ": success_rate differs"};
    detail += trainer + " " + std::to_string(model_bytes[0].size()) + " bytes identical, success_rate " +
              fmt(rates[0]) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {true, detail};
}

}  // namespace
}  // namespace bdg::acceptance

int main(int argc, char** argv) {
  using namespace bdg::acceptance;
  CLI::App app("bdg acceptance suite");
  std::vector<int> only;
  std::string work;
  bool keep = false;
  app.add_option("--only", only, "Criterion ids to run")->delimiter(',');
  app.add_option("--work", work, "Scratch directory");
  app.add_flag("--keep", keep, "Keep the scratch directory");
  CLI11_PARSE(app, argc, argv);

  g_work = work.empty() ? fs::temp_directory_path() / ("bdg_acceptance_" + std::to_string(getpid())) : fs::path(work);
  fs::create_directories(g_work);

  const std::vector<Criterion> criteria{
      {1, "parser corpus", 1.0, parser_corpus},
      {2, "gradient oracle", 10.0, gradient_oracle},
      {3, "tabular oracle equivalence", 1.0, tabular_oracle},
      {4, "feasibility oracle", 30.0, feasibility_oracle},
      {5, "end-to-end dqn", 600.0, [] { return end_to_end("dqn_default", "500000"); }},
      {6, "end-to-end ppo", 900.0, [] { return end_to_end("ppo_default", "1000000"); }},
      {7, "negative path", 0.0, negative_path},
      {8, "remote transparency", 30.0, remote_transparency},
      {9, "model round trip", 0.0, model_round_trip},
      {10, "determinism", 0.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    if (outcome.pass && c.max_seconds > 0.0 && elapsed >= c.max_seconds) {
      outcome = {false, outcome.detail + "; took " + fmt(elapsed) + " s, limit " + fmt(c.max_seconds) + " s"};
    }
    failed += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << " (" << fmt(elapsed) << " s): "
              << outcome.detail << std::endl;
  }
  if (failed == 0 && !keep) fs::remove_all(g_work);
  return failed == 0 ? 0 : 1;
}
