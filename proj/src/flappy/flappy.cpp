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

#include "bdg/flappy/flappy.h"

#include <algorithm>
#include <charconv>
#include <string>

namespace bdg::flappy {

using env::EnvConfig;
using env::invalid_config;

double resolve_gap(GapPosition position, double gap_height) {
  const double margin = gap_height / 2.0 + kGapClearance;
  switch (position) {
    case GapPosition::Lowest: return kGroundTop - margin;
    case GapPosition::Highest: return margin;
    case GapPosition::Middle: return kGroundTop / 2.0;
  }
  return kGroundTop / 2.0;
}

FlappyConfig FlappyConfig::from(const EnvConfig& config) {
  env::require_known_parameters(
      config, {"pipe_count", "gap_height", "scroll_speed", "gravity", "flap_velocity", "terminal_velocity"}, "pipe");
  FlappyConfig out;
  const auto count = env::param_int(config, "pipe_count", 2);
  if (count < 0 || count > 1000) throw invalid_config("pipe_count", "must be in [0, 1000]");
  out.pipe_count = static_cast<int>(count);
  out.gap_height = env::param_real(config, "gap_height", 100.0);
  if (out.gap_height <= 0.0) throw invalid_config("gap_height", "must be > 0");
  if (out.gap_height / 2.0 + kGapClearance > kGroundTop / 2.0) {
    throw invalid_config("gap_height", "too tall for the play area (max 380)");
  }
  out.scroll_speed = env::param_real(config, "scroll_speed", 3.0);
  if (out.scroll_speed <= 0.0) throw invalid_config("scroll_speed", "must be > 0");
  out.gravity = env::param_real(config, "gravity", 1.0);
  if (out.gravity < 0.0) throw invalid_config("gravity", "must be >= 0");
  out.flap_velocity = env::param_real(config, "flap_velocity", -8.0);
  if (out.flap_velocity >= 0.0) throw invalid_config("flap_velocity", "must be < 0 (upwards)");
  out.terminal_velocity = env::param_real(config, "terminal_velocity", 10.0);
  if (out.terminal_velocity <= 0.0) throw invalid_config("terminal_velocity", "must be > 0");

  out.gap_centers.assign(out.pipe_count, resolve_gap(GapPosition::Middle, out.gap_height));
  for (const auto& [name, value] : config.parameters) {
    if (!name.starts_with("pipe") || name == "pipe_count") continue;
    int index = 0;
    const auto digits = std::string_view(name).substr(4);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || index < 1 || index > out.pipe_count) {
      throw invalid_config(name, "no such pipe (pipe_count = " + std::to_string(out.pipe_count) + ")");
    }
    double center = 0.0;
    if (const auto* text = std::get_if<std::string>(&value)) {
      if (*text == "lowest") {
        center = resolve_gap(GapPosition::Lowest, out.gap_height);
      } else if (*text == "highest") {
        center = resolve_gap(GapPosition::Highest, out.gap_height);
      } else if (*text == "middle") {
        center = resolve_gap(GapPosition::Middle, out.gap_height);
      } else {
        center = env::param_real(config, name, 0.0);
      }
    } else {
      center = std::get<double>(value);
    }
    if (!(center >= 0.0 && center <= kGroundTop)) throw invalid_config(name, "gap centre outside [0, 400]");
    out.gap_centers[index - 1] = center;
  }
  return out;
}

namespace {

int passed_at(const FlappyConfig& config, std::int64_t tick) {
  int passed = 0;
  for (int k = 0; k < config.pipe_count; ++k) {
    const double x = kFirstPipeX + k * kPipeSpacing - config.scroll_speed * static_cast<double>(tick);
    if (x + kPipeWidth < kBirdX) ++passed;
  }
  return passed;
}

void place_pipes(const FlappyConfig& config, FlappyState& state) {
  state.pipes.resize(config.pipe_count);
  for (int k = 0; k < config.pipe_count; ++k) {
    state.pipes[k].x = kFirstPipeX + k * kPipeSpacing - config.scroll_speed * static_cast<double>(state.tick);
    state.pipes[k].gap_center = config.gap_centers[k];
  }
}

bool hits_pipe(const FlappyConfig& config, const FlappyState& state) {
  const double left = kBirdX - kBirdHalf;
  const double right = kBirdX + kBirdHalf;
  const double top = state.bird_y - kBirdHalf;
  const double bottom = state.bird_y + kBirdHalf;
  for (const auto& pipe : state.pipes) {
    if (pipe.x >= right) break;
    if (pipe.x + kPipeWidth <= left) continue;
    const double gap_top = pipe.gap_center - config.gap_height / 2.0;
    const double gap_bottom = pipe.gap_center + config.gap_height / 2.0;
    if (top < gap_top || bottom > gap_bottom) return true;
  }
  return false;
}

}  // namespace

FlappyState initial_state(const FlappyConfig& config) { return state_at(config, 0, kStartY, 0.0); }

FlappyState state_at(const FlappyConfig& config, std::int64_t tick, double bird_y, double bird_vy) {
  FlappyState state;
  state.bird_y = bird_y;
  state.bird_vy = bird_vy;
  state.tick = tick;
  place_pipes(config, state);
  state.passed_count = passed_at(config, tick);
  return state;
}

TickOutcome advance(const FlappyConfig& config, FlappyState& state, int action) {
  if (action == kFlap) {
    state.bird_vy = config.flap_velocity;
  } else {
    state.bird_vy = std::min(state.bird_vy + config.gravity, config.terminal_velocity);
  }
  state.bird_y += state.bird_vy;
  ++state.tick;
  place_pipes(config, state);

  TickOutcome outcome;
  const int passed = passed_at(config, state.tick);
  outcome.pipes_passed = passed - state.passed_count;
  state.passed_count = passed;
  outcome.collision = state.bird_y + kBirdHalf >= kGroundTop || state.bird_y - kBirdHalf <= 0.0 ||
                      hits_pipe(config, state);
  outcome.cleared = config.pipe_count > 0 && state.passed_count == config.pipe_count;
  return outcome;
}

std::vector<double> observe(const FlappyState& state) {
  std::vector<double> out{state.bird_y, state.bird_vy, kNoPipeDx, kNoPipeGapY, kNoPipeGapY};
  int found = 0;
  for (const auto& pipe : state.pipes) {
    if (pipe.x + kPipeWidth < kBirdX) continue;
    if (found == 0) {
      out[2] = pipe.x - kBirdX;
      out[3] = pipe.gap_center;
    } else {
      out[4] = pipe.gap_center;
      break;
    }
    ++found;
  }
  return out;
}

FlappyEnv::FlappyEnv()
    : channels_(std::make_shared<const std::vector<std::string>>(std::vector<std::string>{
          "bird_y", "bird_vy", "next_pipe_dx", "next_pipe_gap_y", "next2_pipe_gap_y"})) {}

void FlappyEnv::on_reset(const EnvConfig& config, std::uint64_t) {
  config_ = FlappyConfig::from(config);
  state_ = initial_state(config_);
}

env::LocalEnvironment::StepResult FlappyEnv::on_step(int action) {
  const TickOutcome outcome = advance(config_, state_, action);
  StepResult result;
  for (int i = 0; i < outcome.pipes_passed; ++i) result.events.emplace_back("pipe_passed");
  if (outcome.collision) result.events.emplace_back("collision");
  if (outcome.cleared) result.events.emplace_back("course_cleared");
  result.terminal = outcome.collision || outcome.cleared;
  return result;
}

std::vector<double> FlappyEnv::observe() const { return flappy::observe(state_); }

env::EnvEntry flappy_entry() {
  env::EnvEntry entry;
  entry.id = "flappy";
  entry.factory = [] { return std::make_unique<FlappyEnv>(); };
  entry.default_features = env::FeatureSpec{{
      {"bird_y", 1.0 / kGroundTop, 0.0},
      {"bird_vy", 1.0 / 10.0, 0.0},
      {"next_pipe_dx", 1.0 / kWorldWidth, 0.0},
      {"next_pipe_gap_y", 1.0 / kGroundTop, 0.0},
      {"next2_pipe_gap_y", 1.0 / kGroundTop, 0.0},
  }};
  entry.default_rewards = env::RewardSpec{{{"pipe_passed", 1.0}, {"collision", -1.0}}, 0.01};
  entry.default_bins = env::FeatureBins{{
      {0.0, 1.0, 20},
      {-0.8, 1.0, 9},
      {-0.25, 1.0, 10},
      {0.0, 1.0, 5},
      {0.0, 1.0, 5},
  }};
  entry.default_episode_cap = kDefaultEpisodeCap;
  return entry;
}

}  // namespace bdg::flappy
