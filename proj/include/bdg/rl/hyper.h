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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bdg::rl {

enum class Algorithm { QTable, Dqn, Ppo };

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Every tunable of the three learners. Fields that do not apply to the
/// selected algorithm are ignored.
struct Hyperparameters {
  double gamma = 0.99;
  double learning_rate = 1e-3;
  std::vector<int> hidden{64, 64};

  // Exploration for qtable and dqn.
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  std::int64_t epsilon_steps = 50'000;

  // qtable
  double alpha = 0.1;

  // dqn
  std::int64_t buffer_capacity = 100'000;
  std::int64_t batch_size = 64;
  std::int64_t target_sync = 1'000;
  std::int64_t learning_starts = 1'000;
  std::int64_t train_every = 1;
  double grad_clip = 10.0;

  // ppo
  std::int64_t rollout = 2'048;
  std::int64_t epochs = 4;
  std::int64_t minibatch = 64;
  double lambda = 0.95;
  double clip = 0.2;
  double entropy_coef = 0.01;
  double value_coef = 0.5;

  bool operator==(const Hyperparameters&) const = default;

  /// Defaults per algorithm (ppo uses lr 3e-4).
  static Hyperparameters defaults(Algorithm algorithm);

  /// Sets a field by its name as spelled above ("hidden" takes a list).
  /// Throws RlError(InvalidSpec) for unknown names.
  void set(std::string_view name, double value);
  void set_hidden(std::vector<int> sizes);

  /// Throws RlError(InvalidSpec) naming the first out-of-range field.
  void validate() const;
};

}  // namespace bdg::rl
