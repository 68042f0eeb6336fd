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

#include "bdg/flappy/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace bdg::flappy {

BudgetExceeded::BudgetExceeded(std::size_t states)
    : std::runtime_error("feasibility search exceeded its bound of " + std::to_string(states) + " states"),
      states_(states) {}

namespace {

struct Node {
  double y;
  double vy;
  std::int32_t parent;
  std::int8_t action;
};

std::uint64_t dedup_key(double y, double vy) {
  const auto qy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(std::llround(y))));
  const auto qv = static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(std::llround(vy))));
  return (qy << 32) | qv;
}

std::vector<int> unwind(const std::vector<Node>& nodes, std::int32_t leaf, int last_action) {
  std::vector<int> actions{last_action};
  for (std::int32_t i = leaf; nodes[i].parent >= 0; i = nodes[i].parent) actions.push_back(nodes[i].action);
  std::reverse(actions.begin(), actions.end());
  return actions;
}

}  // namespace

std::optional<std::vector<int>> solve_feasible(const FlappyConfig& config, int target_pipes,
                                               const OracleLimits& limits) {
  if (target_pipes <= 0) return std::vector<int>{};
  if (target_pipes > config.pipe_count) return std::nullopt;

  std::vector<Node> nodes{{kStartY, 0.0, -1, 0}};
  std::vector<std::int32_t> layer{0};
  for (std::int64_t tick = 0; tick < limits.max_ticks && !layer.empty(); ++tick) {
    std::vector<std::int32_t> next;
    std::unordered_set<std::uint64_t> seen;
    for (const std::int32_t index : layer) {
      for (const int action : {kNoop, kFlap}) {
        const Node& node = nodes[index];
        FlappyState state = state_at(config, tick, node.y, node.vy);
        const TickOutcome outcome = advance(config, state, action);
        if (outcome.collision) continue;
        if (state.passed_count >= target_pipes) return unwind(nodes, index, action);
        // The environment ends the episode here without reaching the target.
        if (outcome.cleared || tick + 1 >= limits.max_ticks) continue;
        if (!seen.insert(dedup_key(state.bird_y, state.bird_vy)).second) continue;
        nodes.push_back(Node{state.bird_y, state.bird_vy, index, static_cast<std::int8_t>(action)});
        next.push_back(static_cast<std::int32_t>(nodes.size() - 1));
      }
    }
    if (nodes.size() > limits.max_states) throw BudgetExceeded(limits.max_states);
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<std::vector<int>> solve_feasible(const env::EnvConfig& config, int target_pipes,
                                               OracleLimits limits) {
  limits.max_ticks = std::min(limits.max_ticks, config.episode_cap);
  return solve_feasible(FlappyConfig::from(config), target_pipes, limits);
}

}  // namespace bdg::flappy
