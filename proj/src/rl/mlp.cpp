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

#include "bdg/rl/mlp.h"

#include <cmath>
#include <string>

#include "bdg/rl/error.h"

namespace bdg::rl {

Mlp::Mlp(std::vector<int> sizes) : sizes_(std::move(sizes)) { layout(); }

Mlp::Mlp(std::vector<int> sizes, env::Pcg32& rng) : Mlp(std::move(sizes)) {
  for (std::size_t l = 0; l < layer_count(); ++l) {
    const double limit = std::sqrt(6.0 / (sizes_[l] + sizes_[l + 1]));
    const std::size_t begin = weight_offset(l);
    const std::size_t end = bias_offset(l);
    for (std::size_t k = begin; k < end; ++k) params_[k] = limit * (2.0 * rng.uniform() - 1.0);
  }
}

void Mlp::layout() {
  if (sizes_.size() < 2) throw RlError(RlErrc::DimensionMismatch, "a network needs at least two layer sizes");
  offsets_.clear();
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] < 1 || sizes_[l + 1] < 1) throw RlError(RlErrc::DimensionMismatch, "layer sizes must be >= 1");
    offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l] + 1) * sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

std::span<const double> Mlp::forward(std::span<const double> x, Cache& cache) const {
  if (static_cast<int>(x.size()) != input_size()) {
    throw RlError(RlErrc::DimensionMismatch, "input has " + std::to_string(x.size()) + " values, network expects " +
                                                 std::to_string(input_size()));
  }
  const std::size_t layers = layer_count();
  cache.activations.resize(layers + 1);
  cache.activations[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    const double* a = cache.activations[l].data();
    auto& z = cache.activations[l + 1];
    z.assign(b, b + out);
    double* zp = z.data();
    for (int i = 0; i < in; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const double* row = w + static_cast<std::size_t>(i) * out;
      for (int j = 0; j < out; ++j) zp[j] += ai * row[j];
    }
    if (l + 1 < layers) {
      for (int j = 0; j < out; ++j) zp[j] = zp[j] > 0.0 ? zp[j] : 0.0;
    }
  }
  return cache.activations.back();
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  Cache cache;
  const auto out = forward(x, cache);
  return {out.begin(), out.end()};
}

void Mlp::backward(Cache& cache, std::span<const double> d_output, std::span<double> grad) const {
  const std::size_t layers = layer_count();
  if (static_cast<int>(d_output.size()) != output_size() || grad.size() != params_.size() ||
      cache.activations.size() != layers + 1) {
    throw RlError(RlErrc::DimensionMismatch, "backward pass does not match the network shape");
  }
  cache.deltas.resize(layers + 1);
  cache.deltas[layers].assign(d_output.begin(), d_output.end());
  for (std::size_t l = layers; l-- > 0;) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const double* w = params_.data() + weight_offset(l);
    const double* a = cache.activations[l].data();
    const double* delta = cache.deltas[l + 1].data();
    double* gw = grad.data() + weight_offset(l);
    double* gb = grad.data() + bias_offset(l);
    for (int j = 0; j < out; ++j) gb[j] += delta[j];
    for (int i = 0; i < in; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      double* grow = gw + static_cast<std::size_t>(i) * out;
      for (int j = 0; j < out; ++j) grow[j] += ai * delta[j];
    }
    if (l == 0) break;
    // Hidden activations are post-ReLU, so a == 0 marks an inactive unit.
    auto& prev = cache.deltas[l];
    prev.assign(in, 0.0);
    for (int i = 0; i < in; ++i) {
      if (a[i] <= 0.0) continue;
      const double* row = w + static_cast<std::size_t>(i) * out;
      double sum = 0.0;
      for (int j = 0; j < out; ++j) sum += row[j] * delta[j];
      prev[i] = sum;
    }
  }
}

int argmax(std::span<const double> values) {
  int best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace bdg::rl
