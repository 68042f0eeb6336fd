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
#include <string>
#include <vector>

#include "bdg/env/environment.h"

namespace bdg::env {

/// Declarative feature extraction: v[i] = scale_i * obs[channel_i] + offset_i.
struct FeatureSpec {
  struct Entry {
    std::string channel;
    double scale = 1.0;
    double offset = 0.0;

    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> entries;

  std::size_t dimension() const { return entries.size(); }
  bool operator==(const FeatureSpec&) const = default;

  /// Identity normalisation over the given channels.
  static FeatureSpec identity(const std::vector<std::string>& channels);
};

/// Throws EnvError(MissingChannel) when the observation lacks a channel.
std::vector<double> feature_extract(const Observation& obs, const FeatureSpec& spec);

/// Event-driven reward. A collision penalty is just a negative event weight.
struct RewardSpec {
  std::map<std::string, double> event_weights;
  double living_bonus = 0.0;

  bool operator==(const RewardSpec&) const = default;
};

/// reward = sum_e weight[e] * count_e + living_bonus * (not done).
/// Unknown events contribute zero.
double reward_eval(const Transition& transition, const RewardSpec& spec);

/// Uniform bucketing of a feature vector for tabular learners. Values
/// outside [low, high] fall into the edge buckets.
struct FeatureBins {
  struct Axis {
    double low = 0.0;
    double high = 1.0;
    int bins = 1;

    bool operator==(const Axis&) const = default;
  };
  std::vector<Axis> axes;

  bool operator==(const FeatureBins&) const = default;

  std::vector<std::int32_t> key(const std::vector<double>& features) const;
  static FeatureBins uniform(std::size_t dimension, double low, double high, int bins);
};

}  // namespace bdg::env
