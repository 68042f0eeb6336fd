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

#include "bdg/env/environment.h"
#include "bdg/env/registry.h"

namespace bdg::env {

/// Deterministic chain MDP. States 0..length-1; action 0 moves left
/// (clamped at 0), action 1 moves right. Entering the last state emits
/// "goal" and ends the episode.
///
/// Parameters: length (>= 2, default 5), start (default 0, < length - 1).
class ChainEnv final : public LocalEnvironment {
 public:
  ChainEnv();

  std::string_view id() const override { return "chain"; }
  int action_count() const override { return 2; }
  const Observation::Channels& channels() const override { return channels_; }

  int state() const { return state_; }
  int length() const { return length_; }

 protected:
  void on_reset(const EnvConfig& config, std::uint64_t seed) override;
  StepResult on_step(int action) override;
  std::vector<double> observe() const override;

 private:
  Observation::Channels channels_;
  int length_ = 5;
  int state_ = 0;
};

EnvEntry chain_entry();

}  // namespace bdg::env
