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
#include <map>
#include <vector>

namespace bdg::rl {

using StateKey = std::vector<std::int32_t>;

/// Action values per discretised state; unseen states read as all zeros.
class QTable {
 public:
  explicit QTable(int action_count = 2) : action_count_(action_count) {}

  int action_count() const { return action_count_; }
  const std::vector<double>& values(const StateKey& key) const;
  std::vector<double>& values(const StateKey& key);
  double max_value(const StateKey& key) const;

  const std::map<StateKey, std::vector<double>>& entries() const { return entries_; }
  std::map<StateKey, std::vector<double>>& entries() { return entries_; }

  bool operator==(const QTable&) const = default;

 private:
  int action_count_;
  std::map<StateKey, std::vector<double>> entries_;
  std::vector<double> zeros_ = std::vector<double>(action_count_, 0.0);
};

/// target = r if done else r + gamma * max_a' Q(s', a');
/// Q(s, a) += alpha * (target - Q(s, a)).
void qtable_update(QTable& q, const StateKey& s, int a, double r, const StateKey& next, bool done, double alpha,
                   double gamma);

}  // namespace bdg::rl
