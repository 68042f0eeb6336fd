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

#include "bdg/harness/report.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace bdg::harness {

using json = nlohmann::json;

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Error: return "Error";
  }
  return "Error";
}

std::optional<Verdict> parse_verdict(std::string_view name) {
  for (const auto v : {Verdict::Pass, Verdict::Fail, Verdict::Error}) {
    if (verdict_name(v) == name) return v;
  }
  return std::nullopt;
}

ReportTotals TestReport::totals() const {
  ReportTotals t;
  for (const auto& f : features) {
    for (const auto& s : f.scenarios) {
      ++t.scenarios;
      switch (s.verdict) {
        case Verdict::Pass: ++t.passed; break;
        case Verdict::Fail: ++t.failed; break;
        case Verdict::Error: ++t.errors; break;
      }
    }
  }
  return t;
}

int TestReport::exit_code() const {
  const auto t = totals();
  if (t.errors > 0) return 2;
  return t.failed > 0 ? 1 : 0;
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not allowed in XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n' && c != '\r') {
          out += '?';
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string failure_body(const ScenarioReport& s) {
  std::ostringstream out;
  if (s.stats) {
    char rate[64];
    std::snprintf(rate, sizeof rate, "success_rate=%.4f threshold=%.4f episodes=%d", s.stats->success_rate, s.threshold,
                  s.stats->episodes);
    out << rate << "\n";
  }
  for (std::size_t i = 0; i < s.assertions.size(); ++i) {
    out << s.assertions[i];
    if (s.stats && i < s.stats->assertion_successes.size()) {
      out << " (" << s.stats->assertion_successes[i] << "/" << s.stats->episodes << ")";
    }
    out << "\n";
  }
  return out.str();
}

json episode_json(const EpisodeResult& e) {
  return {{"seed", e.seed},       {"success", e.success},
          {"assertions", e.assertions}, {"event_counts", e.event_counts},
          {"episodic_return", e.episodic_return}, {"ticks", e.ticks}};
}

json stats_json(const EvalStats& s) {
  json episodes = json::array();
  for (const auto& e : s.per_episode) episodes.push_back(episode_json(e));
  return {{"episodes", s.episodes},
          {"successes", s.successes},
          {"success_rate", s.success_rate},
          {"assertion_successes", s.assertion_successes},
          {"per_episode", std::move(episodes)}};
}

json scenario_json(const ScenarioReport& s) {
  return {{"name", s.name},
          {"fingerprint", s.fingerprint},
          {"verdict", verdict_name(s.verdict)},
          {"threshold", s.threshold},
          {"assertions", s.assertions},
          {"stats", s.stats ? stats_json(*s.stats) : json(nullptr)},
          {"reason", s.reason},
          {"seconds", s.seconds}};
}

template <typename T>
T get(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw ReportError(std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ReportError(std::string("bad type for field '") + name + "'");
  }
}

const json& array_field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_array()) throw ReportError(std::string("field '") + name + "' must be an array");
  return *it;
}

EvalStats stats_from(const json& j) {
  EvalStats s;
  s.episodes = get<int>(j, "episodes");
  s.successes = get<int>(j, "successes");
  s.success_rate = get<double>(j, "success_rate");
  s.assertion_successes = get<std::vector<int>>(j, "assertion_successes");
  for (const auto& e : array_field(j, "per_episode")) {
    EpisodeResult r;
    r.seed = get<std::uint64_t>(e, "seed");
    r.success = get<bool>(e, "success");
    r.assertions = get<std::vector<bool>>(e, "assertions");
    r.event_counts = get<std::map<std::string, std::int64_t>>(e, "event_counts");
    r.episodic_return = get<double>(e, "episodic_return");
    r.ticks = get<std::int64_t>(e, "ticks");
    s.per_episode.push_back(std::move(r));
  }
  return s;
}

}  // namespace

std::string to_junit_xml(const TestReport& report) {
  const auto totals = report.totals();
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<testsuites tests=\"" << totals.scenarios << "\" failures=\"" << totals.failed << "\" errors=\""
      << totals.errors << "\" time=\"" << seconds_text(report.wall_seconds) << "\">\n";
  for (const auto& f : report.features) {
    int failures = 0;
    int errors = 0;
    double time = 0.0;
    for (const auto& s : f.scenarios) {
      failures += s.verdict == Verdict::Fail;
      errors += s.verdict == Verdict::Error;
      time += s.seconds;
    }
    out << "  <testsuite name=\"" << xml_escape(f.name) << "\" tests=\"" << f.scenarios.size() << "\" failures=\""
        << failures << "\" errors=\"" << errors << "\" time=\"" << seconds_text(time) << "\" file=\""
        << xml_escape(f.file) << "\">\n";
    for (const auto& s : f.scenarios) {
      out << "    <testcase name=\"" << xml_escape(s.name) << "\" classname=\"" << xml_escape(f.name) << "\" time=\""
          << seconds_text(s.seconds) << "\"";
      if (s.verdict == Verdict::Pass) {
        out << "/>\n";
        continue;
      }
      out << ">\n";
      const char* tag = s.verdict == Verdict::Fail ? "failure" : "error";
      out << "      <" << tag << " message=\"" << xml_escape(s.reason) << "\" type=\"" << verdict_name(s.verdict)
          << "\">" << xml_escape(failure_body(s)) << "</" << tag << ">\n";
      out << "    </testcase>\n";
    }
    out << "  </testsuite>\n";
  }
  out << "</testsuites>\n";
  return out.str();
}

std::string to_json(const TestReport& report) {
  const auto t = report.totals();
  json features = json::array();
  for (const auto& f : report.features) {
    json scenarios = json::array();
    for (const auto& s : f.scenarios) scenarios.push_back(scenario_json(s));
    features.push_back({{"name", f.name}, {"file", f.file}, {"scenarios", std::move(scenarios)}});
  }
  const json out = {
      {"features", std::move(features)},
      {"totals", {{"scenarios", t.scenarios}, {"passed", t.passed}, {"failed", t.failed}, {"errors", t.errors}}},
      {"wall_seconds", report.wall_seconds},
  };
  return out.dump(2) + "\n";
}

TestReport report_from_json(std::string_view text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ReportError("report is not a JSON object");
  TestReport report;
  report.wall_seconds = get<double>(j, "wall_seconds");
  for (const auto& f : array_field(j, "features")) {
    FeatureReport fr;
    fr.name = get<std::string>(f, "name");
    fr.file = get<std::string>(f, "file");
    for (const auto& s : array_field(f, "scenarios")) {
      ScenarioReport sr;
      sr.name = get<std::string>(s, "name");
      sr.fingerprint = get<std::string>(s, "fingerprint");
      const auto verdict = parse_verdict(get<std::string>(s, "verdict"));
      if (!verdict) throw ReportError("unknown verdict");
      sr.verdict = *verdict;
      sr.threshold = get<double>(s, "threshold");
      sr.assertions = get<std::vector<std::string>>(s, "assertions");
      if (const auto it = s.find("stats"); it != s.end() && !it->is_null()) sr.stats = stats_from(*it);
      sr.reason = get<std::string>(s, "reason");
      sr.seconds = get<double>(s, "seconds");
      fr.scenarios.push_back(std::move(sr));
    }
    report.features.push_back(std::move(fr));
  }
  return report;
}

}  // namespace bdg::harness
