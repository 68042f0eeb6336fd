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
#include <stdexcept>
#include <vector>

#include "bdg/env/environment.h"
#include "bdg/flappy/flappy.h"

namespace bdg::flappy {

/// The search table outgrew its bound before reaching a verdict. Distinct
/// from a proof that no solution exists.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t states);
  std::size_t states() const { return states_; }

 private:
  std::size_t states_;
};

struct OracleLimits {
  std::int64_t max_ticks = 2000;
  std::size_t max_states = 8'000'000;
};

/// Breadth-first search over the deterministic action tree, deduplicating
/// states on (tick, round(y), round(vy)). Returns a witness action sequence
/// passing `target_pipes` pipes without a collision, or nullopt when none
/// exists within the tick limit. Under the default integer-valued physics
/// the deduplication is exact, so nullopt is a proof of infeasibility.
std::optional<std::vector<int>> solve_feasible(const FlappyConfig& config, int target_pipes,
                                               const OracleLimits& limits = {});

/// Same, taking the tick limit as min(max_ticks, config.episode_cap).
std::optional<std::vector<int>> solve_feasible(const env::EnvConfig& config, int target_pipes,
                                               OracleLimits limits = {});

}  // namespace bdg::flappy
