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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace bdg::harness {

// TOML subset: tables, dotted keys, basic and literal strings, integers,
// floats, booleans, arrays and inline tables. No dates, no array tables,
// no multi-line strings.

struct TomlValue;

/// Keys keep their file order.
struct TomlTable {
  std::vector<std::pair<std::string, TomlValue>> items;

  const TomlValue* find(std::string_view key) const;
  TomlValue* find(std::string_view key);
};

using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, TomlArray, TomlTable> data;

  bool is_table() const { return std::holds_alternative<TomlTable>(data); }
  bool is_number() const { return std::holds_alternative<std::int64_t>(data) || std::holds_alternative<double>(data); }
  const TomlTable* table() const { return std::get_if<TomlTable>(&data); }
  const TomlArray* array() const { return std::get_if<TomlArray>(&data); }
  const std::string* string() const { return std::get_if<std::string>(&data); }
  const bool* boolean() const { return std::get_if<bool>(&data); }
  const std::int64_t* integer() const { return std::get_if<std::int64_t>(&data); }
  /// Integers widen to double.
  std::optional<double> number() const;
  std::string_view type_name() const;
};

class TomlError : public std::runtime_error {
 public:
  TomlError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Throws TomlError.
TomlTable parse_toml(std::string_view text);

}  // namespace bdg::harness
