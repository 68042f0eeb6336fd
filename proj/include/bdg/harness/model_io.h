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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bdg/rl/model.h"

namespace bdg::harness {

inline constexpr std::string_view kModelMagic = "BDGMODL1";
inline constexpr int kModelFormatVersion = 1;

enum class ModelErrc { BadMagic, VersionUnsupported, TruncatedFile, ChecksumMismatch, MalformedManifest, Io };

std::string_view errc_name(ModelErrc code);

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrc code, const std::string& message);
  ModelErrc code() const { return code_; }

 private:
  ModelErrc code_;
};

/// Provenance stored next to the parameters. Layer sizes and bins are
/// derived from the model itself when encoding.
struct ModelManifest {
  int format_version = kModelFormatVersion;
  std::string fingerprint;
  std::string feature;
  std::string scenario;
  std::string env_id;
  std::string trainer;
  std::uint64_t seed = 0;
  std::int64_t env_steps = 0;
  double best_probe_success = 0.0;
  bool reached_threshold = false;
  std::string created_at;

  bool operator==(const ModelManifest&) const = default;
};

struct LoadedModel {
  rl::Model model;
  ModelManifest manifest;
};

/// Layout: magic, u32 LE manifest length, JSON manifest, parameter blob
/// (f64 LE; qtable records sorted by key), u32 LE CRC-32 of all prior bytes.
std::string encode_model(const rl::Model& model, const ModelManifest& manifest);
/// Checks magic, then length, then checksum, then version. Throws ModelError.
LoadedModel decode_model(std::string_view bytes);

void save_model(const std::filesystem::path& path, const rl::Model& model, const ModelManifest& manifest);
LoadedModel load_model(const std::filesystem::path& path);

}  // namespace bdg::harness
