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

namespace bdg::rl {

/// Fixed-capacity ring of transitions with feature vectors stored inline.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::size_t feature_dim);

  void push(std::span<const double> features, int action, double reward, std::span<const double> next_features,
            bool done);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t dimension() const { return dim_; }

  /// Item i in insertion order among the retained items (0 = oldest).
  std::size_t slot(std::size_t i) const;

  std::span<const double> features(std::size_t slot) const { return {states_.data() + slot * dim_, dim_}; }
  std::span<const double> next_features(std::size_t slot) const {
    return {next_states_.data() + slot * dim_, dim_};
  }
  int action(std::size_t slot) const { return actions_[slot]; }
  double reward(std::size_t slot) const { return rewards_[slot]; }
  bool done(std::size_t slot) const { return dones_[slot] != 0; }

  /// Uniform sample of slots, with replacement.
  void sample(std::size_t count, env::Pcg32& rng, std::vector<std::size_t>& out) const;

 private:
  std::size_t capacity_;
  std::size_t dim_;
  std::size_t next_ = 0;
  std::size_t size_ = 0;
  std::vector<double> states_;
  std::vector<double> next_states_;
  std::vector<int> actions_;
  std::vector<double> rewards_;
  std::vector<std::uint8_t> dones_;
};

}  // namespace bdg::rl
