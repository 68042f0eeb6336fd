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

#include "bdg/rl/error.h"

namespace bdg::rl {

std::string_view errc_name(RlErrc code) {
  switch (code) {
    case RlErrc::DimensionMismatch: return "DimensionMismatch";
    case RlErrc::LengthMismatch: return "LengthMismatch";
    case RlErrc::NonFiniteGradient: return "NonFiniteGradient";
    case RlErrc::NonFiniteLoss: return "NonFiniteLoss";
    case RlErrc::InvalidSpec: return "InvalidSpec";
    case RlErrc::UnknownTrainer: return "UnknownTrainer";
  }
  return "Unknown";
}

RlError::RlError(RlErrc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace bdg::rl
