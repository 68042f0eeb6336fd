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

#include "bdg/env/random.h"

namespace bdg::rl {

/// Fully connected net, ReLU hidden layers, linear output. All parameters
/// live in one flat vector: per layer the weights (input-major,
/// w[i * out + j]) followed by the biases.
class Mlp {
 public:
  Mlp() = default;
  /// Zero-initialised.
  explicit Mlp(std::vector<int> sizes);
  /// Uniform in +-sqrt(6 / (fan_in + fan_out)); biases zero.
  Mlp(std::vector<int> sizes, env::Pcg32& rng);

  /// Per-sample activations kept for the backward pass. Reusable across calls.
  struct Cache {
    std::vector<std::vector<double>> activations;  // [0] input ... [L] output
    std::vector<std::vector<double>> deltas;
  };

  const std::vector<int>& sizes() const { return sizes_; }
  int input_size() const { return sizes_.empty() ? 0 : sizes_.front(); }
  int output_size() const { return sizes_.empty() ? 0 : sizes_.back(); }
  std::size_t layer_count() const { return sizes_.empty() ? 0 : sizes_.size() - 1; }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1];
  }

  /// Throws RlError(DimensionMismatch) when x has the wrong length.
  std::span<const double> forward(std::span<const double> x, Cache& cache) const;
  std::vector<double> forward(std::span<const double> x) const;

  /// Accumulates dLoss/dparams into `grad` (same length as params()) for the
  /// sample cached by the matching forward call.
  void backward(Cache& cache, std::span<const double> d_output, std::span<double> grad) const;

  bool operator==(const Mlp&) const = default;

 private:
  void layout();

  std::vector<int> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

/// Index of the largest value; ties go to the lowest index.
int argmax(std::span<const double> values);

}  // namespace bdg::rl
