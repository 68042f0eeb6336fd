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

#include <variant>

#include "bdg/env/environment.h"
#include "bdg/env/spec.h"
#include "bdg/rl/hyper.h"
#include "bdg/rl/mlp.h"
#include "bdg/rl/qtable.h"

namespace bdg::rl {

struct QTableModel {
  QTable table;
  env::FeatureBins bins;
  bool operator==(const QTableModel&) const = default;
};

struct DqnModel {
  Mlp q;
  bool operator==(const DqnModel&) const = default;
};

struct PpoModel {
  Mlp policy;
  Mlp value;
  bool operator==(const PpoModel&) const = default;
};

/// A trained policy: feature extraction plus one of the learners' parameters.
/// Immutable once built; greedy_action is safe to call concurrently.
struct Model {
  env::FeatureSpec features;
  int action_count = 2;
  std::variant<QTableModel, DqnModel, PpoModel> body;

  Algorithm algorithm() const;
  /// Argmax of Q values or policy logits; ties go to the lowest index.
  int greedy_action(const env::Observation& obs) const;
  int greedy_action_features(std::span<const double> features) const;

  bool operator==(const Model&) const = default;
};

}  // namespace bdg::rl
