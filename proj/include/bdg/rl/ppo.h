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
#include <span>
#include <vector>

#include "bdg/env/random.h"
#include "bdg/rl/hyper.h"
#include "bdg/rl/mlp.h"
#include "bdg/rl/optim.h"

namespace bdg::rl {

std::vector<double> softmax(std::span<const double> logits);
std::vector<double> log_softmax(std::span<const double> logits);

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;
};

/// Generalised advantage estimation. `values` holds T + 1 entries, the last
/// one bootstrapping the state after the final transition. Throws
/// RlError(LengthMismatch).
GaeResult gae(std::span<const double> rewards, std::span<const double> values, std::span<const std::uint8_t> dones,
              double gamma, double lambda);

/// min(ratio * A, clip(ratio, 1 - eps, 1 + eps) * A)
double clipped_surrogate(double ratio, double advantage, double clip_eps);

/// On-policy samples gathered by the current policy.
struct Rollout {
  std::size_t dim = 0;
  std::vector<double> features;  // T x dim, row-major
  std::vector<int> actions;
  std::vector<double> log_probs;
  std::vector<double> rewards;
  std::vector<std::uint8_t> dones;
  std::vector<double> values;  // T + 1

  std::size_t size() const { return actions.size(); }
  void clear();
};

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
};

/// Minibatch loss  -mean(clipped surrogate) - entropy_coef * mean(entropy)
/// + value_coef * mean((V - R)^2)  over `indices`. Gradients are
/// accumulated into the optional outputs (sized to the parameters).
double ppo_objective(const Mlp& policy, const Mlp& value, const Rollout& rollout, std::span<const std::size_t> indices,
                     std::span<const double> advantages, std::span<const double> returns, const Hyperparameters& hp,
                     std::vector<double>* policy_grad, std::vector<double>* value_grad, PpoStats* stats = nullptr);

/// Clipped-surrogate update over `epochs` shuffled passes of minibatches,
/// one Adam step per minibatch on each network. Advantages are normalised
/// per rollout. Throws RlError(NonFiniteLoss).
PpoStats ppo_update(Mlp& policy, Mlp& value, Adam& policy_adam, Adam& value_adam, const Rollout& rollout,
                    const Hyperparameters& hp, env::Pcg32& rng);

}  // namespace bdg::rl
