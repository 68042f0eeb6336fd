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

#include "bdg/rl/qtable.h"

#include <algorithm>

#include "bdg/rl/error.h"

namespace bdg::rl {

const std::vector<double>& QTable::values(const StateKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? zeros_ : it->second;
}

std::vector<double>& QTable::values(const StateKey& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) it = entries_.emplace(key, std::vector<double>(action_count_, 0.0)).first;
  return it->second;
}

double QTable::max_value(const StateKey& key) const {
  const auto& v = values(key);
  return *std::max_element(v.begin(), v.end());
}

void qtable_update(QTable& q, const StateKey& s, int a, double r, const StateKey& next, bool done, double alpha,
                   double gamma) {
  if (a < 0 || a >= q.action_count()) throw RlError(RlErrc::DimensionMismatch, "action outside the table");
  const double target = done ? r : r + gamma * q.max_value(next);
  double& value = q.values(s)[a];
  value += alpha * (target - value);
}

}  // namespace bdg::rl
