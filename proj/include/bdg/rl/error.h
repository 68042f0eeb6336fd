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

#include <stdexcept>
#include <string>
#include <string_view>

namespace bdg::rl {

enum class RlErrc {
  DimensionMismatch,
  LengthMismatch,
  NonFiniteGradient,
  NonFiniteLoss,
  InvalidSpec,
  UnknownTrainer,
};

std::string_view errc_name(RlErrc code);

class RlError : public std::runtime_error {
 public:
  RlError(RlErrc code, const std::string& message);
  RlErrc code() const { return code_; }

 private:
  RlErrc code_;
};

}  // namespace bdg::rl
