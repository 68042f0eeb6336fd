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
#include <span>
#include <vector>

namespace bdg::rl {

struct Adam {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t t = 0;

  Adam() = default;
  Adam(std::size_t size, double lr) : learning_rate(lr), m(size, 0.0), v(size, 0.0) {}

  /// One bias-corrected update. Throws RlError(NonFiniteGradient) before
  /// touching any state if a gradient is NaN or infinite.
  void step(std::span<double> params, std::span<const double> grads);
};

/// Clamps every element to [-limit, limit].
void clip_elements(std::span<double> values, double limit);

/// Linear decay from `start` to `end` over `steps`, then constant.
double epsilon(std::int64_t t, double start = 1.0, double end = 0.05, std::int64_t steps = 50'000);

}  // namespace bdg::rl
