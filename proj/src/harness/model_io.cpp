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

#include "bdg/harness/model_io.h"

#include <zlib.h>

#include <bit>
#include <cstring>

#include "bdg/harness/files.h"
#include "json.hpp"

namespace bdg::harness {

using json = nlohmann::json;

std::string_view errc_name(ModelErrc code) {
  switch (code) {
    case ModelErrc::BadMagic: return "BadMagic";
    case ModelErrc::VersionUnsupported: return "VersionUnsupported";
    case ModelErrc::TruncatedFile: return "TruncatedFile";
    case ModelErrc::ChecksumMismatch: return "ChecksumMismatch";
    case ModelErrc::MalformedManifest: return "MalformedManifest";
    case ModelErrc::Io: return "Io";
  }
  return "Unknown";
}

ModelError::ModelError(ModelErrc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

namespace {

constexpr std::size_t kHeaderBytes = 8 + 4;
constexpr std::size_t kTrailerBytes = 4;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::string_view in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks to stay portable.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t at = 0; at < bytes.size(); at += kChunk) {
    const auto n = static_cast<uInt>(std::min(kChunk, bytes.size() - at));
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + at), n);
  }
  return static_cast<std::uint32_t>(crc);
}

[[noreturn]] void malformed(const std::string& what) { throw ModelError(ModelErrc::MalformedManifest, what); }

json features_json(const env::FeatureSpec& spec) {
  json out = json::array();
  for (const auto& e : spec.entries) out.push_back({{"channel", e.channel}, {"scale", e.scale}, {"offset", e.offset}});
  return out;
}

json bins_json(const env::FeatureBins& bins) {
  json out = json::array();
  for (const auto& a : bins.axes) out.push_back({{"low", a.low}, {"high", a.high}, {"bins", a.bins}});
  return out;
}

std::vector<int> sizes_from(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_array() || it->size() < 2) malformed(std::string("'") + name + "' must list layer sizes");
  std::vector<int> out;
  for (const auto& v : *it) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 1 << 20) {
      malformed(std::string("bad layer size in '") + name + "'");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

template <typename T>
T field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) malformed(std::string("missing '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    malformed(std::string("bad type for '") + name + "'");
  }
}

std::size_t mlp_bytes(const std::vector<int>& sizes) { return rl::Mlp(sizes).params().size() * 8; }

}  // namespace

std::string encode_model(const rl::Model& model, const ModelManifest& manifest) {
  json m = {
      {"format_version", manifest.format_version},
      {"fingerprint", manifest.fingerprint},
      {"feature", manifest.feature},
      {"scenario", manifest.scenario},
      {"env", manifest.env_id},
      {"trainer", manifest.trainer},
      {"algorithm", rl::algorithm_name(model.algorithm())},
      {"seed", manifest.seed},
      {"env_steps", manifest.env_steps},
      {"best_probe_success", manifest.best_probe_success},
      {"reached_threshold", manifest.reached_threshold},
      {"created_at", manifest.created_at},
      {"action_count", model.action_count},
      {"features", features_json(model.features)},
  };
  std::string blob;
  if (const auto* q = std::get_if<rl::QTableModel>(&model.body)) {
    m["bins"] = bins_json(q->bins);
    m["entries"] = q->table.entries().size();
    for (const auto& [key, values] : q->table.entries()) {
      for (const auto k : key) put_u32(blob, static_cast<std::uint32_t>(k));
      for (const double v : values) put_f64(blob, v);
    }
  } else if (const auto* d = std::get_if<rl::DqnModel>(&model.body)) {
    m["layers"] = d->q.sizes();
    for (const double v : d->q.params()) put_f64(blob, v);
  } else {
    const auto& p = std::get<rl::PpoModel>(model.body);
    m["policy_layers"] = p.policy.sizes();
    m["value_layers"] = p.value.sizes();
    for (const double v : p.policy.params()) put_f64(blob, v);
    for (const double v : p.value.params()) put_f64(blob, v);
  }
  m["blob_bytes"] = blob.size();

  const std::string text = m.dump();
  std::string out(kModelMagic);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  out += blob;
  put_u32(out, crc32_of(out));
  return out;
}

LoadedModel decode_model(std::string_view bytes) {
  const auto magic_part = bytes.substr(0, kModelMagic.size());
  if (magic_part != kModelMagic.substr(0, magic_part.size()) || bytes.empty()) {
    throw ModelError(ModelErrc::BadMagic, "not a model file");
  }
  if (bytes.size() < kHeaderBytes + kTrailerBytes) throw ModelError(ModelErrc::TruncatedFile, "file ends inside the header");
  const std::size_t manifest_len = get_u32(bytes, 8);
  if (bytes.size() < kHeaderBytes + manifest_len + kTrailerBytes) {
    throw ModelError(ModelErrc::TruncatedFile, "file ends inside the manifest");
  }
  const auto body_ok = [&] {
    return crc32_of(bytes.substr(0, bytes.size() - kTrailerBytes)) == get_u32(bytes, bytes.size() - kTrailerBytes);
  };
  const json m = json::parse(bytes.substr(kHeaderBytes, manifest_len), nullptr, false);
  if (m.is_discarded() || !m.is_object()) {
    if (!body_ok()) throw ModelError(ModelErrc::ChecksumMismatch, "checksum does not match contents");
    malformed("manifest is not a JSON object");
  }
  const auto blob_bytes = field<std::uint64_t>(m, "blob_bytes");
  if (blob_bytes > bytes.size()) throw ModelError(ModelErrc::TruncatedFile, "file ends inside the parameter blob");
  const std::size_t expected = kHeaderBytes + manifest_len + blob_bytes + kTrailerBytes;
  if (bytes.size() < expected) throw ModelError(ModelErrc::TruncatedFile, "file ends inside the parameter blob");
  if (bytes.size() > expected) {
    if (!body_ok()) throw ModelError(ModelErrc::ChecksumMismatch, "checksum does not match contents");
    malformed("trailing bytes after the checksum");
  }
  if (!body_ok()) throw ModelError(ModelErrc::ChecksumMismatch, "checksum does not match contents");
  const int version = field<int>(m, "format_version");
  if (version != kModelFormatVersion) {
    throw ModelError(ModelErrc::VersionUnsupported, "format version " + std::to_string(version) + " is not supported");
  }

  LoadedModel out;
  auto& man = out.manifest;
  man.format_version = version;
  man.fingerprint = field<std::string>(m, "fingerprint");
  man.feature = field<std::string>(m, "feature");
  man.scenario = field<std::string>(m, "scenario");
  man.env_id = field<std::string>(m, "env");
  man.trainer = field<std::string>(m, "trainer");
  man.seed = field<std::uint64_t>(m, "seed");
  man.env_steps = field<std::int64_t>(m, "env_steps");
  man.best_probe_success = field<double>(m, "best_probe_success");
  man.reached_threshold = field<bool>(m, "reached_threshold");
  man.created_at = field<std::string>(m, "created_at");

  auto& model = out.model;
  model.action_count = field<int>(m, "action_count");
  if (model.action_count < 1) malformed("action_count must be positive");
  const auto features = m.find("features");
  if (features == m.end() || !features->is_array()) malformed("'features' must be an array");
  for (const auto& f : *features) {
    model.features.entries.push_back(
        {field<std::string>(f, "channel"), field<double>(f, "scale"), field<double>(f, "offset")});
  }

  const auto algorithm = rl::parse_algorithm(field<std::string>(m, "algorithm"));
  if (!algorithm) malformed("unknown algorithm");
  std::size_t at = kHeaderBytes + manifest_len;
  const auto read_params = [&](rl::Mlp& net) {
    for (double& v : net.params()) {
      v = std::bit_cast<double>(get_u64(bytes, at));
      at += 8;
    }
  };
  switch (*algorithm) {
    case rl::Algorithm::QTable: {
      rl::QTableModel q{rl::QTable(model.action_count), {}};
      const auto bins = m.find("bins");
      if (bins == m.end() || !bins->is_array()) malformed("'bins' must be an array");
      for (const auto& b : *bins) q.bins.axes.push_back({field<double>(b, "low"), field<double>(b, "high"), field<int>(b, "bins")});
      const auto dim = q.bins.axes.size();
      const auto entries = field<std::uint64_t>(m, "entries");
      const std::size_t record = dim * 4 + static_cast<std::size_t>(model.action_count) * 8;
      if (entries * record != blob_bytes) malformed("blob size does not match qtable entries");
      for (std::uint64_t e = 0; e < entries; ++e) {
        rl::StateKey key(dim);
        for (auto& k : key) {
          k = static_cast<std::int32_t>(get_u32(bytes, at));
          at += 4;
        }
        auto& values = q.table.values(key);
        for (double& v : values) {
          v = std::bit_cast<double>(get_u64(bytes, at));
          at += 8;
        }
      }
      model.body = std::move(q);
      break;
    }
    case rl::Algorithm::Dqn: {
      const auto sizes = sizes_from(m, "layers");
      if (mlp_bytes(sizes) != blob_bytes) malformed("blob size does not match layer sizes");
      rl::DqnModel d{rl::Mlp(sizes)};
      read_params(d.q);
      model.body = std::move(d);
      break;
    }
    case rl::Algorithm::Ppo: {
      const auto policy = sizes_from(m, "policy_layers");
      const auto value = sizes_from(m, "value_layers");
      if (mlp_bytes(policy) + mlp_bytes(value) != blob_bytes) malformed("blob size does not match layer sizes");
      rl::PpoModel p{rl::Mlp(policy), rl::Mlp(value)};
      read_params(p.policy);
      read_params(p.value);
      model.body = std::move(p);
      break;
    }
  }
  return out;
}

void save_model(const std::filesystem::path& path, const rl::Model& model, const ModelManifest& manifest) {
  try {
    write_file_atomic(path, encode_model(model, manifest));
  } catch (const std::runtime_error& e) {
    throw ModelError(ModelErrc::Io, e.what());
  }
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const std::runtime_error& e) {
    throw ModelError(ModelErrc::Io, e.what());
  }
  return decode_model(bytes);
}

}  // namespace bdg::harness
