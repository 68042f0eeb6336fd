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

#include "bdg/rl/model.h"

namespace bdg::rl {

Algorithm Model::algorithm() const {
  if (std::holds_alternative<QTableModel>(body)) return Algorithm::QTable;
  if (std::holds_alternative<DqnModel>(body)) return Algorithm::Dqn;
  return Algorithm::Ppo;
}

int Model::greedy_action(const env::Observation& obs) const {
  return greedy_action_features(env::feature_extract(obs, features));
}

int Model::greedy_action_features(std::span<const double> x) const {
  if (const auto* q = std::get_if<QTableModel>(&body)) {
    return argmax(q->table.values(q->bins.key({x.begin(), x.end()})));
  }
  thread_local Mlp::Cache cache;
  if (const auto* d = std::get_if<DqnModel>(&body)) return argmax(d->q.forward(x, cache));
  return argmax(std::get<PpoModel>(body).policy.forward(x, cache));
}

}  // namespace bdg::rl
