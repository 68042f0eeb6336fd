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

#include "bdg/gherkin/diagnostic.h"

#include <algorithm>

namespace bdg::gherkin {

Diagnostic make_error(std::string_view code, std::string message, SourceSpan span) {
  return Diagnostic{Severity::Error, std::string(code), std::move(message), std::move(span)};
}

Diagnostic make_warning(std::string_view code, std::string message, SourceSpan span) {
  return Diagnostic{Severity::Warning, std::string(code), std::move(message), std::move(span)};
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.span.file.empty() ? std::string("<input>") : d.span.file;
  out += ':' + std::to_string(d.span.line) + ':' + std::to_string(d.span.column) + ": ";
  out += d.severity == Severity::Error ? "error" : "warning";
  out += '[' + d.code + "] " + d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace bdg::gherkin
