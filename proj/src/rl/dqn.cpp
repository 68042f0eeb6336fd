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

#include "bdg/rl/dqn.h"

#include <algorithm>
#include <cmath>

#include "bdg/rl/error.h"

namespace bdg::rl {

namespace {

double td_target(const Mlp& target, Mlp::Cache& cache, const ReplayBuffer& buffer, std::size_t slot, double gamma) {
  if (buffer.done(slot)) return buffer.reward(slot);
  const auto q_next = target.forward(buffer.next_features(slot), cache);
  return buffer.reward(slot) + gamma * *std::max_element(q_next.begin(), q_next.end());
}

}  // namespace

double dqn_loss(const Mlp& net, const Mlp& target, const ReplayBuffer& buffer, std::span<const std::size_t> slots,
                double gamma) {
  Mlp::Cache cache;
  Mlp::Cache target_cache;
  double loss = 0.0;
  for (const std::size_t slot : slots) {
    const double y = td_target(target, target_cache, buffer, slot, gamma);
    const double q = net.forward(buffer.features(slot), cache)[buffer.action(slot)];
    loss += (q - y) * (q - y);
  }
  return slots.empty() ? 0.0 : loss / static_cast<double>(slots.size());
}

double dqn_train_step(Mlp& net, const Mlp& target, Adam& adam, const ReplayBuffer& buffer,
                      std::span<const std::size_t> slots, double gamma, double grad_clip, DqnScratch& scratch) {
  scratch.grad.assign(net.params().size(), 0.0);
  scratch.d_output.assign(net.output_size(), 0.0);
  const double scale = 1.0 / static_cast<double>(slots.size());
  double loss = 0.0;
  for (const std::size_t slot : slots) {
    const double y = td_target(target, scratch.target_cache, buffer, slot, gamma);
    const int a = buffer.action(slot);
    const double q = net.forward(buffer.features(slot), scratch.cache)[a];
    const double diff = q - y;
    loss += diff * diff;
    std::fill(scratch.d_output.begin(), scratch.d_output.end(), 0.0);
    scratch.d_output[a] = 2.0 * diff * scale;
    net.backward(scratch.cache, scratch.d_output, scratch.grad);
  }
  loss *= scale;
  if (!std::isfinite(loss)) throw RlError(RlErrc::NonFiniteLoss, "DQN loss is not finite");
  clip_elements(scratch.grad, grad_clip);
  adam.step(net.params(), scratch.grad);
  return loss;
}

}  // namespace bdg::rl
