#pragma once

#include "tyurin/check.hpp"
#include "tyurin/toric.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tyurin {

extern const char* const kVersion;

struct RunConfig {
  std::string example = "quintic_p4";
  std::optional<ToricCI> inlineData;  // takes precedence over example
  std::vector<std::string> checks;    // empty selects the default groups
  int qOrder = 4;
  int q0Order = 4;
  bool autoWindow = true;
  std::optional<Window> window;  // used when autoWindow is off
  std::map<std::string, int> algebraOrders;
  std::string report = "text";
};

struct CheckGroup {
  std::string id;
  std::string description;
  bool byDefault = true;
};

// registry order; ids are stable
const std::vector<CheckGroup>& check_groups();

struct Task {
  std::string id;
  std::function<CheckResult()> run;
};

ToricCI resolve_toric(const RunConfig& c);
std::vector<std::string> selected_groups(const RunConfig& c);
std::vector<Task> plan(const RunConfig& c);

struct Report {
  RunConfig config;
  std::string label;
  bool untestedRegime = false;
  std::vector<CheckResult> results;

  bool all_passed() const;
};

// TYURIN_WORKERS caps the number of concurrent checks
int worker_count();
Report run(const RunConfig& c);

// throws ConfigError naming the offending field
RunConfig parse_config(const nlohmann::json& j);
ToricCI parse_toric(const nlohmann::json& j, const std::string& path = "toric");
void validate_config(const RunConfig& c);

nlohmann::json to_json(const CheckResult& r, bool wallTime = true);
nlohmann::json to_json(const Report& r, bool wallTime = true);
std::string to_text(const Report& r);

} // namespace tyurin
