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

#include "bdg/rl/replay.h"

#include <algorithm>

#include "bdg/rl/error.h"

namespace bdg::rl {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::size_t feature_dim)
    : capacity_(capacity),
      dim_(feature_dim),
      states_(capacity * feature_dim),
      next_states_(capacity * feature_dim),
      actions_(capacity),
      rewards_(capacity),
      dones_(capacity) {
  if (capacity == 0) throw RlError(RlErrc::InvalidSpec, "replay capacity must be >= 1");
}

void ReplayBuffer::push(std::span<const double> features, int action, double reward,
                        std::span<const double> next_features, bool done) {
  if (features.size() != dim_ || next_features.size() != dim_) {
    throw RlError(RlErrc::DimensionMismatch, "transition features do not match the buffer dimension");
  }
  std::copy(features.begin(), features.end(), states_.begin() + next_ * dim_);
  std::copy(next_features.begin(), next_features.end(), next_states_.begin() + next_ * dim_);
  actions_[next_] = action;
  rewards_[next_] = reward;
  dones_[next_] = done ? 1 : 0;
  next_ = (next_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

std::size_t ReplayBuffer::slot(std::size_t i) const {
  const std::size_t oldest = size_ < capacity_ ? 0 : next_;
  return (oldest + i) % capacity_;
}

void ReplayBuffer::sample(std::size_t count, env::Pcg32& rng, std::vector<std::size_t>& out) const {
  out.resize(count);
  for (auto& s : out) s = rng.below(static_cast<std::uint32_t>(size_));
}

}  // namespace bdg::rl
