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

#include "bdg/rl/train.h"

#include <chrono>
#include <cmath>

#include "bdg/env/random.h"
#include "bdg/rl/dqn.h"
#include "bdg/rl/error.h"
#include "bdg/rl/optim.h"
#include "bdg/rl/ppo.h"

namespace bdg::rl {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kProbeStream = 0x70726f6265ULL;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Steps the training environment, tracking features and the running
/// episode record; resets automatically when an episode ends.
class Runner {
 public:
  Runner(const TrainContext& context) : context_(context), env_(context.make_env()) { reset(); }

  const std::vector<double>& features() const { return features_; }
  int action_count() const { return env_->action_count(); }

  struct Step {
    double reward = 0.0;
    bool done = false;
  };

  Step step(int action) {
    const env::Transition t = env_->step(env::Action{action});
    Step out{env::reward_eval(t, context_.rewards), t.done};
    for (const auto& e : t.events) ++record_.event_counts[e];
    record_.episodic_return += out.reward;
    record_.ticks = t.tick;
    features_ = env::feature_extract(t.obs, context_.features);
    if (t.done) {
      record_.final_obs = t.obs;
      returns_ += record_.episodic_return;
      successes_ += context_.success && context_.success(record_) ? 1 : 0;
      ++finished_;
      reset();
    }
    return out;
  }

  /// Episodes finished since the last call, with their mean return and success rate.
  void drain(EpochStats& epoch) {
    epoch.episodes = finished_;
    epoch.mean_return = finished_ > 0 ? returns_ / static_cast<double>(finished_) : 0.0;
    epoch.train_success_rate = finished_ > 0 ? static_cast<double>(successes_) / static_cast<double>(finished_) : 0.0;
    total_finished_ += finished_;
    finished_ = 0;
    successes_ = 0;
    returns_ = 0.0;
  }

  std::int64_t total_finished() const { return total_finished_ + finished_; }

 private:
  void reset() {
    const auto obs = env_->reset(context_.config, env::episode_seed(context_.seed, episode_index_++));
    features_ = env::feature_extract(obs, context_.features);
    record_ = env::EpisodeRecord{};
  }

  const TrainContext& context_;
  std::unique_ptr<env::Environment> env_;
  std::vector<double> features_;
  env::EpisodeRecord record_;
  std::uint64_t episode_index_ = 0;
  std::int64_t finished_ = 0;
  std::int64_t successes_ = 0;
  std::int64_t total_finished_ = 0;
  double returns_ = 0.0;
};

/// Probe schedule, best-so-far tracking and epoch bookkeeping.
class Monitor {
 public:
  Monitor(const TrainContext& context, const TrainerSpec& spec, TrainingStats& stats)
      : context_(context), spec_(spec), stats_(stats), start_(Clock::now()), epoch_start_(start_) {}

  void record_loss(double loss) {
    loss_sum_ += loss;
    ++loss_count_;
    ++stats_.updates;
  }

  /// Returns true when training should stop.
  template <typename Snapshot>
  bool after_step(std::int64_t step, Runner& runner, Snapshot&& snapshot) {
    stats_.env_steps = step;
    if (step % spec_.probe_interval != 0 && step != spec_.budget) return false;
    return probe(step, runner, snapshot());
  }

  Model take_best() { return std::move(*best_); }

 private:
  bool probe(std::int64_t step, Runner& runner, Model model) {
    if (!probe_env_) probe_env_ = context_.make_env();
    const double success = probe_success(*probe_env_, context_, model, spec_.probe_episodes);
    EpochStats epoch;
    epoch.env_steps = step;
    runner.drain(epoch);
    epoch.probe_success_rate = success;
    epoch.mean_loss = loss_count_ > 0 ? loss_sum_ / static_cast<double>(loss_count_) : 0.0;
    epoch.seconds = seconds_since(epoch_start_);
    epoch_start_ = Clock::now();
    loss_sum_ = 0.0;
    loss_count_ = 0;
    stats_.epochs.push_back(epoch);
    stats_.episodes = runner.total_finished();
    stats_.wall_seconds = seconds_since(start_);
    if (context_.on_epoch) context_.on_epoch(epoch);

    if (!best_ || success >= stats_.best_probe_success) {
      best_ = std::move(model);
      stats_.best_probe_success = success;
      stats_.best_probe_step = step;
    }
    if (success >= context_.threshold) {
      stats_.reached_threshold = true;
      return true;
    }
    return false;
  }

  const TrainContext& context_;
  const TrainerSpec& spec_;
  TrainingStats& stats_;
  std::unique_ptr<env::Environment> probe_env_;
  std::optional<Model> best_;
  Clock::time_point start_;
  Clock::time_point epoch_start_;
  double loss_sum_ = 0.0;
  std::int64_t loss_count_ = 0;
};

int explore(env::Pcg32& rng, double eps, int action_count, int greedy) {
  if (rng.uniform() < eps) return static_cast<int>(rng.below(static_cast<std::uint32_t>(action_count)));
  return greedy;
}

TrainResult train_qtable(const TrainContext& context, const TrainerSpec& spec) {
  TrainResult result;
  Runner runner(context);
  Monitor monitor(context, spec, result.stats);
  env::Pcg32 rng(context.seed, 0x7174ULL);
  const auto& hp = spec.hp;
  QTableModel body{QTable(runner.action_count()), context.bins};
  auto snapshot = [&] { return Model{context.features, runner.action_count(), body}; };

  for (std::int64_t step = 1; step <= spec.budget; ++step) {
    const StateKey key = body.bins.key(runner.features());
    const double eps = epsilon(step - 1, hp.epsilon_start, hp.epsilon_end, hp.epsilon_steps);
    const int action = explore(rng, eps, runner.action_count(), argmax(body.table.values(key)));
    const auto s = runner.step(action);
    const StateKey next = body.bins.key(runner.features());
    qtable_update(body.table, key, action, s.reward, next, s.done, hp.alpha, hp.gamma);
    monitor.record_loss(0.0);
    if (monitor.after_step(step, runner, snapshot)) break;
  }
  result.model = monitor.take_best();
  return result;
}

TrainResult train_dqn(const TrainContext& context, const TrainerSpec& spec) {
  TrainResult result;
  Runner runner(context);
  Monitor monitor(context, spec, result.stats);
  const auto& hp = spec.hp;
  env::Pcg32 init_rng(context.seed, 0x696e6974ULL);
  env::Pcg32 rng(context.seed, 0x64716eULL);

  std::vector<int> sizes{static_cast<int>(context.features.dimension())};
  sizes.insert(sizes.end(), hp.hidden.begin(), hp.hidden.end());
  sizes.push_back(runner.action_count());
  DqnModel body{Mlp(sizes, init_rng)};
  Mlp target = body.q;
  Adam adam(body.q.params().size(), hp.learning_rate);
  ReplayBuffer buffer(static_cast<std::size_t>(hp.buffer_capacity), context.features.dimension());
  DqnScratch scratch;
  Mlp::Cache act_cache;
  std::vector<std::size_t> slots;
  std::vector<double> current;
  auto snapshot = [&] { return Model{context.features, runner.action_count(), body}; };

  for (std::int64_t step = 1; step <= spec.budget; ++step) {
    current = runner.features();
    const double eps = epsilon(step - 1, hp.epsilon_start, hp.epsilon_end, hp.epsilon_steps);
    int action = 0;
    if (rng.uniform() < eps) {
      action = static_cast<int>(rng.below(static_cast<std::uint32_t>(runner.action_count())));
    } else {
      action = argmax(body.q.forward(current, act_cache));
    }
    const auto s = runner.step(action);
    buffer.push(current, action, s.reward, runner.features(), s.done);

    if (step >= hp.learning_starts && buffer.size() >= static_cast<std::size_t>(hp.batch_size) &&
        step % hp.train_every == 0) {
      buffer.sample(static_cast<std::size_t>(hp.batch_size), rng, slots);
      monitor.record_loss(dqn_train_step(body.q, target, adam, buffer, slots, hp.gamma, hp.grad_clip, scratch));
    }
    if (step % hp.target_sync == 0) target = body.q;
    if (monitor.after_step(step, runner, snapshot)) break;
  }
  result.model = monitor.take_best();
  return result;
}

TrainResult train_ppo(const TrainContext& context, const TrainerSpec& spec) {
  TrainResult result;
  Runner runner(context);
  Monitor monitor(context, spec, result.stats);
  const auto& hp = spec.hp;
  env::Pcg32 init_rng(context.seed, 0x696e6974ULL);
  env::Pcg32 rng(context.seed, 0x70706fULL);

  const int dim = static_cast<int>(context.features.dimension());
  const int n_actions = runner.action_count();
  std::vector<int> policy_sizes{dim};
  policy_sizes.insert(policy_sizes.end(), hp.hidden.begin(), hp.hidden.end());
  std::vector<int> value_sizes = policy_sizes;
  policy_sizes.push_back(n_actions);
  value_sizes.push_back(1);
  PpoModel body{Mlp(policy_sizes, init_rng), Mlp(value_sizes, init_rng)};
  Adam policy_adam(body.policy.params().size(), hp.learning_rate);
  Adam value_adam(body.value.params().size(), hp.learning_rate);
  Rollout rollout;
  rollout.dim = static_cast<std::size_t>(dim);
  Mlp::Cache cache;
  auto snapshot = [&] { return Model{context.features, n_actions, body}; };

  bool stop = false;
  for (std::int64_t step = 1; step <= spec.budget && !stop;) {
    rollout.clear();
    for (std::int64_t k = 0; k < hp.rollout && step <= spec.budget; ++k, ++step) {
      const std::vector<double> x = runner.features();
      const auto logp = log_softmax(body.policy.forward(x, cache));
      double u = rng.uniform();
      int action = n_actions - 1;
      for (int a = 0; a < n_actions; ++a) {
        u -= std::exp(logp[a]);
        if (u < 0.0) {
          action = a;
          break;
        }
      }
      rollout.values.push_back(body.value.forward(x, cache)[0]);
      const auto s = runner.step(action);
      rollout.features.insert(rollout.features.end(), x.begin(), x.end());
      rollout.actions.push_back(action);
      rollout.log_probs.push_back(logp[action]);
      rollout.rewards.push_back(s.reward);
      rollout.dones.push_back(s.done ? 1 : 0);
      if (monitor.after_step(step, runner, snapshot)) {
        stop = true;
        break;
      }
    }
    if (stop || rollout.size() == 0) break;
    rollout.values.push_back(body.value.forward(runner.features(), cache)[0]);
    const auto stats = ppo_update(body.policy, body.value, policy_adam, value_adam, rollout, hp, rng);
    monitor.record_loss(stats.policy_loss + hp.value_coef * stats.value_loss);
  }
  result.model = monitor.take_best();
  return result;
}

}  // namespace

double probe_success(env::Environment& env, const TrainContext& context, const Model& model, int episodes) {
  int successes = 0;
  const auto policy = [&](const env::Observation& obs) { return env::Action{model.greedy_action(obs)}; };
  const auto reward = [&](const env::Transition& t) { return env::reward_eval(t, context.rewards); };
  for (int i = 0; i < episodes; ++i) {
    const auto record =
        env::run_episode(env, context.config, env::episode_seed(context.seed ^ kProbeStream, i), policy, reward);
    if (context.success && context.success(record)) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(episodes);
}

TrainResult train(const TrainContext& context, const TrainerSpec& spec) {
  spec.validate();
  if (!context.make_env) throw RlError(RlErrc::InvalidSpec, "no environment factory");
  switch (spec.algorithm) {
    case Algorithm::QTable: return train_qtable(context, spec);
    case Algorithm::Dqn: return train_dqn(context, spec);
    case Algorithm::Ppo: return train_ppo(context, spec);
  }
  throw RlError(RlErrc::InvalidSpec, "unknown algorithm");
}

}  // namespace bdg::rl
