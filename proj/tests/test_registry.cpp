#include "tyurin/errors.hpp"
#include "tyurin/registry.hpp"

#include <doctest.h>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

using namespace tyurin;
using nlohmann::json;

namespace {

std::string config_error_field(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.field;
  }
  return "";
}

std::string golden_path(const std::string& example) {
  std::string name;
  for (char c : example) name += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_';
  return std::string(TYURIN_GOLDEN_DIR) + "/" + name + ".json";
}

} // namespace

TEST_CASE("config parsing") {
  auto c = parse_config(json::parse(R"j({"example": "p1_power(2)", "qOrder": 2, "checks": ["hurwitz"],
                                        "algebraOrders": {"H": 4}, "report": "json"})j"));
  CHECK(c.example == "p1_power(2)");
  CHECK(c.qOrder == 2);
  CHECK(c.q0Order == 4);
  CHECK(c.algebraOrders.at("H") == 4);
  CHECK(selected_groups(c) == std::vector<std::string>{"hurwitz"});

  auto d = parse_config(json::object());
  auto def = selected_groups(d);
  CHECK(std::find(def.begin(), def.end(), "negative-controls") == def.end());
  CHECK(def.size() == check_groups().size() - 1);
}

TEST_CASE("inline toric data") {
  auto j = json::parse(R"j({"toric": {"r": 1, "matrix": [[1],[1],[1],[1],[1]], "groups": [[0,1,2,3,4]],
                           "refinement": [[0],[1,2,3,4]], "label": "mine"}, "checks": ["period-glue"]})j");
  auto c = parse_config(j);
  REQUIRE(c.inlineData);
  CHECK(c.inlineData->pNames == std::vector<std::string>{"H"});
  CHECK(c.inlineData->qNames == std::vector<std::string>{"q1"});
  CHECK(resolve_toric(c).label == "mine");
  CHECK(c.inlineData->matrix == quintic_p4().matrix);
}

TEST_CASE("config errors name the field") {
  CHECK(config_error_field(json::parse(R"j({"bogus": 1})j")) == "bogus");
  CHECK(config_error_field(json::parse(R"j({"qOrder": "four"})j")) == "qOrder");
  CHECK(config_error_field(json::parse(R"j({"qOrder": -1})j")) == "qOrder");
  CHECK(config_error_field(json::parse(R"j({"checks": ["hurwitz", "nope"]})j")) == "checks[1]");
  CHECK(config_error_field(json::parse(R"j({"example": "p7"})j")) == "example");
  CHECK(config_error_field(json::parse(R"j({"report": "xml"})j")) == "report");
  CHECK(config_error_field(json::parse(R"j({"autoWindow": false})j")) == "window");
  CHECK(config_error_field(json::parse(R"j({"window": {"lo": 1, "hi": 3}})j")) == "window.lo");
  CHECK(config_error_field(json::parse(R"j({"algebraOrders": {"H": 0}})j")) == "algebraOrders.H");
  CHECK(config_error_field(json::parse(R"j({"toric": {"r": 1, "matrix": [[1],[-1]], "groups": [[0,1]],
                                            "refinement": [[0],[1]]}})j")) == "toric.matrix[1][0]");
  CHECK(config_error_field(json::parse(R"j({"toric": {"r": 1, "matrix": [[1]]}})j")) == "toric.groups");
  CHECK(config_error_field(json::parse("[]")) == "$");
}

TEST_CASE("plan ids are unique and grouped") {
  RunConfig c;
  c.checks = {"period-glue", "pf-annihilate", "negative-controls"};
  auto tasks = plan(c);
  std::set<std::string> ids;
  for (const auto& t : tasks) ids.insert(t.id);
  CHECK(ids.size() == tasks.size());
  CHECK(tasks.front().id.rfind("period-glue/", 0) == 0);
  CHECK(tasks.back().id.rfind("negative-controls/", 0) == 0);
}

TEST_CASE("small window is a skip, not a failure") {
  RunConfig c;
  c.checks = {"period-glue"};
  c.qOrder = 2;
  c.autoWindow = false;
  c.window = Window{-1, 1};
  auto rep = run(c);
  bool sawSkip = false;
  for (const auto& r : rep.results) {
    if (r.checkId == "period-glue/quintic_p4/general") {
      CHECK(r.status == Status::Skipped);
      CHECK(r.note.find("window too small") != std::string::npos);
      sawSkip = true;
    }
    CHECK(r.status != Status::Fail);
  }
  CHECK(sawSkip);
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("dimension one is flagged") {
  RunConfig c;
  c.example = "p1_power(2)";
  c.checks = {"fi-product"};
  auto rep = run(c);
  CHECK(rep.untestedRegime);
  for (const auto& r : rep.results) CHECK(r.note.find("untested regime") != std::string::npos);
  c.example = "quintic_p4";
  CHECK_FALSE(run(c).untestedRegime);
}

TEST_CASE("reports are deterministic") {
  RunConfig c;
  c.checks = {"period-glue", "ifn-glue", "pf-annihilate"};
  c.qOrder = 2;
  c.q0Order = 2;
  auto a = to_json(run(c), false), b = to_json(run(c), false);
  CHECK(a.dump() == b.dump());
  auto j = to_json(run(c));
  CHECK(j["results"][0].contains("wallTime"));
  CHECK(j["version"] == kVersion);
  CHECK(j["config"]["checks"].size() == 3);
}

TEST_CASE("text report") {
  RunConfig c;
  c.checks = {"hurwitz"};
  auto text = to_text(run(c));
  CHECK(text.find("hurwitz/quintic-limit") != std::string::npos);
  CHECK(text.find("4/4 passed") != std::string::npos);
}

TEST_CASE("failure carries the located mismatch") {
  RunConfig c;
  c.checks = {"negative-controls"};
  auto j = to_json(run(c), false);
  for (const auto& r : j["results"]) {
    CHECK(r["status"] == "fail");
    CHECK(r["firstMismatch"].is_object());
    CHECK(r["firstMismatch"].contains("exponent"));
  }
}

TEST_CASE("golden reports") {
  const bool update = std::getenv("TYURIN_UPDATE_GOLDEN") != nullptr;
  for (const auto& n : example_names()) {
    CAPTURE(n);
    RunConfig c;
    c.example = n;
    auto rep = run(c);
    CHECK(rep.all_passed());
    auto got = to_json(rep, false);
    const auto path = golden_path(n);
    if (update) {
      std::ofstream(path) << got.dump(2) << "\n";
      continue;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    CHECK(json::parse(in) == got);
  }
}
