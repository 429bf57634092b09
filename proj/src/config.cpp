#include "coherence/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string_view>

#include "coherence/errors.hpp"

namespace coherence {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

}  // namespace

double parse_angle(std::string_view text) {
  text = trim(text);
  const auto pi_pos = text.find("pi");
  const std::string bad = "invalid angle '" + std::string(text) + "'";
  if (pi_pos == std::string_view::npos) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) throw ConfigError(bad);
    return value;
  }
  double factor = 1.0;
  double divisor = 1.0;
  const auto head = trim(text.substr(0, pi_pos));
  const auto tail = trim(text.substr(pi_pos + 2));
  if (!head.empty()) {
    if (head.back() != '*') throw ConfigError(bad);
    factor = parse_angle(head.substr(0, head.size() - 1));
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError(bad);
    divisor = parse_angle(tail.substr(1));
    if (divisor == 0.0) throw ConfigError(bad);
  }
  return factor * std::numbers::pi / divisor;
}

namespace {

bool parse_bool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "family",          "schemes",         "master_seed",
    "repetitions",     "budget_N",        "grid",
    "adaptive_step1_fraction", "adaptive_pilot", "exact_limit",
    "threads"};

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  std::map<std::string, std::string, std::less<>> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    }
    if (!values.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  for (const char* required : {"family", "schemes", "master_seed"}) {
    if (!values.contains(required)) {
      throw ConfigError(std::string("missing required key '") + required + "'");
    }
  }

  SweepConfig config;
  try {
    config.family = parse_state_family(values.at("family"));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  config.master_seed = parse_number<std::uint64_t>(values.at("master_seed"), "master_seed");
  if (auto it = values.find("repetitions"); it != values.end()) {
    config.repetitions = parse_number<int>(it->second, "repetitions");
  }
  if (auto it = values.find("budget_N"); it != values.end()) {
    config.budget = parse_number<std::int64_t>(it->second, "budget_N");
  }
  if (auto it = values.find("threads"); it != values.end()) {
    config.threads = parse_number<int>(it->second, "threads");
    if (config.threads < 0) throw ConfigError("threads must be >= 0");
  }
  if (auto it = values.find("exact_limit"); it != values.end()) {
    config.exact_limit = parse_bool(it->second, "exact_limit");
  }
  if (auto it = values.find("grid"); it != values.end() && it->second != "default") {
    config.grid.clear();
    for (auto token : split(it->second, ',')) config.grid.push_back(parse_angle(token));
  }

  AdaptiveOptions adaptive;
  if (auto it = values.find("adaptive_step1_fraction"); it != values.end()) {
    adaptive.step1_fraction = parse_number<double>(it->second, "adaptive_step1_fraction");
  }
  if (auto it = values.find("adaptive_pilot"); it != values.end()) {
    if (it->second == "within_budget") {
      adaptive.pilot_outside_budget = false;
    } else if (it->second == "outside_budget") {
      adaptive.pilot_outside_budget = true;
    } else {
      throw ConfigError("adaptive_pilot must be within_budget or outside_budget");
    }
  }

  for (auto token : split(values.at("schemes"), ',')) {
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("scheme '" + std::string(token) + "' must be Kind:Measure");
    }
    auto kind_name = trim(token.substr(0, colon));
    const auto measure_name = trim(token.substr(colon + 1));
    SchemeSpec spec;
    spec.adaptive = adaptive;
    constexpr std::string_view kPilotSuffix = "+pilot";
    const bool pilot_suffix = kind_name.ends_with(kPilotSuffix);
    if (pilot_suffix) {
      kind_name.remove_suffix(kPilotSuffix.size());
      spec.adaptive.pilot_outside_budget = true;
    }
    try {
      spec.kind = parse_scheme_kind(kind_name);
      spec.measure = parse_measure(measure_name);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    if (pilot_suffix && spec.kind != SchemeKind::Adaptive2Step) {
      throw ConfigError("+pilot applies to Adaptive2Step only");
    }
    spec.budget = config.budget;
    config.schemes.push_back(spec);
  }

  try {
    validate(config);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_sweep_config(in);
}

}  // namespace coherence
