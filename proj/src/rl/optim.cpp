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

#include "bdg/rl/optim.h"

#include <algorithm>
#include <cmath>

#include "bdg/rl/error.h"

namespace bdg::rl {

void Adam::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size() || m.size() != params.size() || v.size() != params.size()) {
    throw RlError(RlErrc::DimensionMismatch, "optimizer state does not match the parameters");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw RlError(RlErrc::NonFiniteGradient, "gradient contains NaN or infinity");
  }
  ++t;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double g = grads[k];
    m[k] = beta1 * m[k] + (1.0 - beta1) * g;
    v[k] = beta2 * v[k] + (1.0 - beta2) * g * g;
    const double m_hat = m[k] / c1;
    const double v_hat = v[k] / c2;
    params[k] -= learning_rate * m_hat / (std::sqrt(v_hat) + epsilon);
  }
}

void clip_elements(std::span<double> values, double limit) {
  for (double& x : values) x = std::clamp(x, -limit, limit);
}

double epsilon(std::int64_t t, double start, double end, std::int64_t steps) {
  if (steps <= 0 || t >= steps) return end;
  if (t <= 0) return start;
  return start + (end - start) * static_cast<double>(t) / static_cast<double>(steps);
}

}  // namespace bdg::rl
