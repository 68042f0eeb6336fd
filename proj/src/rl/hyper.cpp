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

#include "bdg/rl/hyper.h"

#include <cmath>
#include <functional>
#include <map>

#include "bdg/rl/error.h"

namespace bdg::rl {

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::QTable: return "qtable";
    case Algorithm::Dqn: return "dqn";
    case Algorithm::Ppo: return "ppo";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "qtable") return Algorithm::QTable;
  if (name == "dqn") return Algorithm::Dqn;
  if (name == "ppo") return Algorithm::Ppo;
  return std::nullopt;
}

Hyperparameters Hyperparameters::defaults(Algorithm algorithm) {
  Hyperparameters hp;
  if (algorithm == Algorithm::Ppo) hp.learning_rate = 3e-4;
  return hp;
}

namespace {

using RealField = double Hyperparameters::*;
using IntField = std::int64_t Hyperparameters::*;

const std::map<std::string_view, RealField, std::less<>>& real_fields() {
  static const std::map<std::string_view, RealField, std::less<>> fields{
      {"gamma", &Hyperparameters::gamma},
      {"learning_rate", &Hyperparameters::learning_rate},
      {"epsilon_start", &Hyperparameters::epsilon_start},
      {"epsilon_end", &Hyperparameters::epsilon_end},
      {"alpha", &Hyperparameters::alpha},
      {"grad_clip", &Hyperparameters::grad_clip},
      {"lambda", &Hyperparameters::lambda},
      {"clip", &Hyperparameters::clip},
      {"entropy_coef", &Hyperparameters::entropy_coef},
      {"value_coef", &Hyperparameters::value_coef},
  };
  return fields;
}

const std::map<std::string_view, IntField, std::less<>>& int_fields() {
  static const std::map<std::string_view, IntField, std::less<>> fields{
      {"epsilon_steps", &Hyperparameters::epsilon_steps},
      {"buffer_capacity", &Hyperparameters::buffer_capacity},
      {"batch_size", &Hyperparameters::batch_size},
      {"target_sync", &Hyperparameters::target_sync},
      {"learning_starts", &Hyperparameters::learning_starts},
      {"train_every", &Hyperparameters::train_every},
      {"rollout", &Hyperparameters::rollout},
      {"epochs", &Hyperparameters::epochs},
      {"minibatch", &Hyperparameters::minibatch},
  };
  return fields;
}

[[noreturn]] void bad(std::string_view field, std::string_view reason) {
  throw RlError(RlErrc::InvalidSpec, std::string(field) + " " + std::string(reason));
}

}  // namespace

void Hyperparameters::set(std::string_view name, double value) {
  if (!std::isfinite(value)) bad(name, "must be finite");
  if (const auto it = real_fields().find(name); it != real_fields().end()) {
    this->*(it->second) = value;
    return;
  }
  if (const auto it = int_fields().find(name); it != int_fields().end()) {
    if (value != std::floor(value)) bad(name, "must be an integer");
    this->*(it->second) = static_cast<std::int64_t>(value);
    return;
  }
  bad(name, "is not a hyperparameter");
}

void Hyperparameters::set_hidden(std::vector<int> sizes) { hidden = std::move(sizes); }

void Hyperparameters::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) bad("gamma", "must be in [0, 1)");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) bad("learning_rate", "must be in (0, 1]");
  if (hidden.empty()) bad("hidden", "needs at least one layer");
  for (int h : hidden) {
    if (h < 1 || h > 4096) bad("hidden", "layer sizes must be in [1, 4096]");
  }
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0)) bad("epsilon_start", "must be in [0, 1]");
  if (!(epsilon_end >= 0.0 && epsilon_end <= 1.0)) bad("epsilon_end", "must be in [0, 1]");
  if (epsilon_steps < 0) bad("epsilon_steps", "must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) bad("alpha", "must be in (0, 1]");
  if (buffer_capacity < 1) bad("buffer_capacity", "must be >= 1");
  if (batch_size < 1) bad("batch_size", "must be >= 1");
  if (target_sync < 1) bad("target_sync", "must be >= 1");
  if (learning_starts < 0) bad("learning_starts", "must be >= 0");
  if (train_every < 1) bad("train_every", "must be >= 1");
  if (!(grad_clip > 0.0)) bad("grad_clip", "must be > 0");
  if (rollout < 1) bad("rollout", "must be >= 1");
  if (epochs < 1) bad("epochs", "must be >= 1");
  if (minibatch < 1) bad("minibatch", "must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) bad("lambda", "must be in [0, 1]");
  if (!(clip > 0.0 && clip < 1.0)) bad("clip", "must be in (0, 1)");
  if (!(entropy_coef >= 0.0)) bad("entropy_coef", "must be >= 0");
  if (!(value_coef > 0.0)) bad("value_coef", "must be > 0");
}

}  // namespace bdg::rl
