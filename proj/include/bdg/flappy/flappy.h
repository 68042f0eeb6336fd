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
#include <vector>

#include "bdg/env/environment.h"
#include "bdg/env/registry.h"

namespace bdg::flappy {

// World geometry in pixels; y grows downwards.
inline constexpr double kWorldWidth = 288.0;
inline constexpr double kWorldHeight = 512.0;
inline constexpr double kGroundHeight = 112.0;
inline constexpr double kGroundTop = kWorldHeight - kGroundHeight;  // 400
inline constexpr double kBirdX = 60.0;
inline constexpr double kBirdSize = 24.0;
inline constexpr double kBirdHalf = kBirdSize / 2.0;
inline constexpr double kPipeWidth = 52.0;
inline constexpr double kPipeSpacing = 160.0;
inline constexpr double kStartY = 256.0;
inline constexpr double kFirstPipeX = kWorldWidth;
// Clearance between a symbolic gap edge and the ground or ceiling.
inline constexpr double kGapClearance = 10.0;
// Observation value when there is no upcoming pipe.
inline constexpr double kNoPipeDx = 1000.0;
inline constexpr double kNoPipeGapY = kGroundTop / 2.0;

inline constexpr int kNoop = 0;
inline constexpr int kFlap = 1;

enum class GapPosition { Lowest, Middle, Highest };

/// Gap centre for a symbolic position: lowest sits gap/2 + 10 above the
/// ground, highest gap/2 + 10 below the ceiling, middle halfway between.
double resolve_gap(GapPosition position, double gap_height);

struct FlappyConfig {
  std::vector<double> gap_centers;  // one per pipe, resolved to pixels
  int pipe_count = 2;
  double gap_height = 100.0;
  double scroll_speed = 3.0;
  double gravity = 1.0;
  double flap_velocity = -8.0;
  double terminal_velocity = 10.0;

  /// Validates and resolves an EnvConfig. Unset pipes default to the middle
  /// position. Throws EnvError(InvalidConfig).
  static FlappyConfig from(const env::EnvConfig& config);
};

struct Pipe {
  double x = 0.0;  // left edge
  double gap_center = 0.0;
};

struct FlappyState {
  double bird_y = kStartY;
  double bird_vy = 0.0;
  std::vector<Pipe> pipes;  // ascending x
  std::int64_t tick = 0;
  int passed_count = 0;
};

struct TickOutcome {
  int pipes_passed = 0;
  bool collision = false;
  bool cleared = false;
};

FlappyState initial_state(const FlappyConfig& config);

/// State at `tick` with the given bird kinematics. Pipe positions and the
/// passed count are functions of the tick alone.
FlappyState state_at(const FlappyConfig& config, std::int64_t tick, double bird_y, double bird_vy);

/// One physics tick. Flap sets the vertical velocity; otherwise gravity
/// accelerates up to terminal velocity.
TickOutcome advance(const FlappyConfig& config, FlappyState& state, int action);

/// Observation channels in order:
/// bird_y, bird_vy, next_pipe_dx, next_pipe_gap_y, next2_pipe_gap_y.
std::vector<double> observe(const FlappyState& state);

/// Environment registered as "flappy". Events: pipe_passed, collision and
/// course_cleared (all pipes passed, ends the episode).
class FlappyEnv final : public env::LocalEnvironment {
 public:
  FlappyEnv();

  std::string_view id() const override { return "flappy"; }
  int action_count() const override { return 2; }
  const env::Observation::Channels& channels() const override { return channels_; }

  const FlappyState& state() const { return state_; }
  const FlappyConfig& config() const { return config_; }

 protected:
  void on_reset(const env::EnvConfig& config, std::uint64_t seed) override;
  StepResult on_step(int action) override;
  std::vector<double> observe() const override;

 private:
  env::Observation::Channels channels_;
  FlappyConfig config_;
  FlappyState state_;
};

inline constexpr std::int64_t kDefaultEpisodeCap = 2000;

/// Registry entry with default feature normalisation, rewards
/// (pipe_passed +1, collision -1, living bonus 0.01) and Q-table bins.
env::EnvEntry flappy_entry();

}  // namespace bdg::flappy
