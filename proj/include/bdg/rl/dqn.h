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

#include <span>
#include <vector>

#include "bdg/rl/mlp.h"
#include "bdg/rl/optim.h"
#include "bdg/rl/replay.h"

namespace bdg::rl {

/// Reusable buffers for dqn_train_step.
struct DqnScratch {
  Mlp::Cache cache;
  Mlp::Cache target_cache;
  std::vector<double> grad;
  std::vector<double> d_output;
};

/// Mean squared TD error of `net` on the given buffer slots against targets
/// y = r (done) or r + gamma * max_a target(s')[a].
double dqn_loss(const Mlp& net, const Mlp& target, const ReplayBuffer& buffer, std::span<const std::size_t> slots,
                double gamma);

/// One Adam step on the TD loss with element-wise gradient clipping.
/// Returns the loss before the update. Throws RlError(NonFiniteLoss).
double dqn_train_step(Mlp& net, const Mlp& target, Adam& adam, const ReplayBuffer& buffer,
                      std::span<const std::size_t> slots, double gamma, double grad_clip, DqnScratch& scratch);

}  // namespace bdg::rl
