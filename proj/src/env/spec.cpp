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

#include "bdg/env/spec.h"

#include <algorithm>
#include <cmath>

namespace bdg::env {

FeatureSpec FeatureSpec::identity(const std::vector<std::string>& channels) {
  FeatureSpec spec;
  for (const auto& c : channels) spec.entries.push_back({c, 1.0, 0.0});
  return spec;
}

std::vector<double> feature_extract(const Observation& obs, const FeatureSpec& spec) {
  std::vector<double> out;
  out.reserve(spec.entries.size());
  for (const auto& entry : spec.entries) out.push_back(entry.scale * obs.at(entry.channel) + entry.offset);
  return out;
}

double reward_eval(const Transition& transition, const RewardSpec& spec) {
  double reward = 0.0;
  for (const auto& event : transition.events) {
    const auto it = spec.event_weights.find(event);
    if (it != spec.event_weights.end()) reward += it->second;
  }
  if (!transition.done) reward += spec.living_bonus;
  return reward;
}

std::vector<std::int32_t> FeatureBins::key(const std::vector<double>& features) const {
  std::vector<std::int32_t> out(axes.size());
  for (std::size_t i = 0; i < axes.size() && i < features.size(); ++i) {
    const auto& axis = axes[i];
    const double unit = (features[i] - axis.low) / (axis.high - axis.low);
    const double bucket = std::floor(unit * axis.bins);
    out[i] = static_cast<std::int32_t>(std::clamp(bucket, 0.0, static_cast<double>(axis.bins - 1)));
  }
  return out;
}

FeatureBins FeatureBins::uniform(std::size_t dimension, double low, double high, int bins) {
  FeatureBins out;
  out.axes.assign(dimension, Axis{low, high, bins});
  return out;
}

}  // namespace bdg::env
