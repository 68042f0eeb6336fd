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

#include "bdg/rl/ppo.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bdg/rl/error.h"

namespace bdg::rl {

std::vector<double> log_softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z - top);
  const double log_z = top + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) out[k] = logits[k] - log_z;
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  auto out = log_softmax(logits);
  for (double& x : out) x = std::exp(x);
  return out;
}

GaeResult gae(std::span<const double> rewards, std::span<const double> values, std::span<const std::uint8_t> dones,
              double gamma, double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n + 1 || dones.size() != n) {
    throw RlError(RlErrc::LengthMismatch, "gae needs T rewards, T done flags and T + 1 values");
  }
  GaeResult out{std::vector<double>(n), std::vector<double>(n)};
  double next_advantage = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double live = dones[t] ? 0.0 : 1.0;
    const double delta = rewards[t] + gamma * values[t + 1] * live - values[t];
    next_advantage = delta + gamma * lambda * live * next_advantage;
    out.advantages[t] = next_advantage;
    out.returns[t] = next_advantage + values[t];
  }
  return out;
}

double clipped_surrogate(double ratio, double advantage, double clip_eps) {
  const double clipped = std::clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps);
  return std::min(ratio * advantage, clipped * advantage);
}

void Rollout::clear() {
  features.clear();
  actions.clear();
  log_probs.clear();
  rewards.clear();
  dones.clear();
  values.clear();
}

double ppo_objective(const Mlp& policy, const Mlp& value, const Rollout& rollout, std::span<const std::size_t> indices,
                     std::span<const double> advantages, std::span<const double> returns, const Hyperparameters& hp,
                     std::vector<double>* policy_grad, std::vector<double>* value_grad, PpoStats* stats) {
  Mlp::Cache cache;
  Mlp::Cache value_cache;
  const double scale = 1.0 / static_cast<double>(indices.size());
  const std::size_t n_actions = static_cast<std::size_t>(policy.output_size());
  std::vector<double> d_logits(n_actions);
  double surrogate_sum = 0.0;
  double entropy_sum = 0.0;
  double value_sum = 0.0;
  for (const std::size_t i : indices) {
    const std::span<const double> x(rollout.features.data() + i * rollout.dim, rollout.dim);
    const auto logits = policy.forward(x, cache);
    const auto logp = log_softmax(logits);
    const int a = rollout.actions[i];
    const double adv = advantages[i];
    const double ratio = std::exp(logp[a] - rollout.log_probs[i]);
    const double unclipped = ratio * adv;
    const double surrogate = clipped_surrogate(ratio, adv, hp.clip);
    double entropy = 0.0;
    for (std::size_t k = 0; k < n_actions; ++k) entropy -= std::exp(logp[k]) * logp[k];
    surrogate_sum += surrogate;
    entropy_sum += entropy;

    if (policy_grad) {
      // d surrogate / d log pi(a) is ratio * A while the unclipped term is the minimum.
      const double g = unclipped <= surrogate ? unclipped : 0.0;
      for (std::size_t k = 0; k < n_actions; ++k) {
        const double p = std::exp(logp[k]);
        const double indicator = static_cast<int>(k) == a ? 1.0 : 0.0;
        d_logits[k] = scale * (-g * (indicator - p) + hp.entropy_coef * p * (logp[k] + entropy));
      }
      policy.backward(cache, d_logits, *policy_grad);
    }

    const double v = value.forward(x, value_cache)[0];
    const double diff = v - returns[i];
    value_sum += diff * diff;
    if (value_grad) {
      const double dv = 2.0 * hp.value_coef * diff * scale;
      value.backward(value_cache, std::span<const double>(&dv, 1), *value_grad);
    }
  }
  const double policy_loss = -surrogate_sum * scale;
  const double entropy = entropy_sum * scale;
  const double value_loss = value_sum * scale;
  if (stats) {
    stats->policy_loss = policy_loss;
    stats->entropy = entropy;
    stats->value_loss = value_loss;
  }
  return policy_loss - hp.entropy_coef * entropy + hp.value_coef * value_loss;
}

PpoStats ppo_update(Mlp& policy, Mlp& value, Adam& policy_adam, Adam& value_adam, const Rollout& rollout,
                    const Hyperparameters& hp, env::Pcg32& rng) {
  const std::size_t n = rollout.size();
  if (rollout.features.size() != n * rollout.dim || rollout.log_probs.size() != n) {
    throw RlError(RlErrc::LengthMismatch, "rollout columns differ in length");
  }
  auto estimate = gae(rollout.rewards, rollout.values, rollout.dones, hp.gamma, hp.lambda);
  auto& adv = estimate.advantages;
  const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  const double stddev = std::max(std::sqrt(var / static_cast<double>(n)), 1e-8);
  for (double& a : adv) a = (a - mean) / stddev;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> policy_grad;
  std::vector<double> value_grad;
  PpoStats total;
  std::size_t batches = 0;
  const std::size_t batch = static_cast<std::size_t>(hp.minibatch);
  for (std::int64_t epoch = 0; epoch < hp.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(static_cast<std::uint32_t>(i))]);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::span<const std::size_t> indices(order.data() + start, std::min(batch, n - start));
      policy_grad.assign(policy.params().size(), 0.0);
      value_grad.assign(value.params().size(), 0.0);
      PpoStats stats;
      const double loss =
          ppo_objective(policy, value, rollout, indices, adv, estimate.returns, hp, &policy_grad, &value_grad, &stats);
      if (!std::isfinite(loss)) throw RlError(RlErrc::NonFiniteLoss, "PPO loss is not finite");
      policy_adam.step(policy.params(), policy_grad);
      value_adam.step(value.params(), value_grad);
      total.policy_loss += stats.policy_loss;
      total.value_loss += stats.value_loss;
      total.entropy += stats.entropy;
      ++batches;
    }
  }
  if (batches > 0) {
    total.policy_loss /= static_cast<double>(batches);
    total.value_loss /= static_cast<double>(batches);
    total.entropy /= static_cast<double>(batches);
  }
  return total;
}

}  // namespace bdg::rl
