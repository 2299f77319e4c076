#include "tyurin/errors.hpp"
#include "tyurin/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tyurin;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void list_checks() {
  for (const auto& g : check_groups())
    std::cout << g.id << (g.byDefault ? "" : " (not run by default)") << "\n  " << g.description
              << "\n";
}

void list_examples() {
  for (const auto& n : example_names()) {
    auto t = example(n);
    std::cout << n << "  r=" << t.r << " m=" << t.m() << " dim=" << t.dimension() << "\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of Tyurin-degeneration gluing identities"};
  app.require_subcommand(0, 1);
  bool listChecks = false, listExamples = false;
  app.add_flag("--list-checks", listChecks, "List check groups");
  app.add_flag("--list-examples", listExamples, "List built-in examples");

  auto* verify = app.add_subcommand("verify", "Run check groups and report");
  std::string exampleName, configPath, checks, report, out;
  std::optional<int> qOrder, q0Order;
  verify->add_option("--example", exampleName, "Built-in example name");
  verify->add_option("--config", configPath, "JSON run configuration");
  verify->add_option("--q-order", qOrder, "Total degree in the q variables");
  verify->add_option("--q0-order", q0Order, "Degree cap on q0 in the both-blow-up case");
  verify->add_option("--checks", checks, "Comma-separated check groups");
  verify->add_option("--report", report, "Report format")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", out, "Write the report here instead of stdout");
  verify->add_flag("--list-checks", listChecks, "List check groups");
  verify->add_flag("--list-examples", listExamples, "List built-in examples");

  CLI11_PARSE(app, argc, argv);

  if (listChecks || listExamples) {
    if (listChecks) list_checks();
    if (listExamples) list_examples();
    return 0;
  }
  if (!verify->parsed()) {
    std::cout << app.help();
    return 0;
  }

  RunConfig cfg;
  try {
    if (!configPath.empty()) {
      std::ifstream in(configPath);
      if (!in) throw ConfigError("--config", "cannot open " + configPath);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("--config", e.what());
      }
      cfg = parse_config(j);
    }
    if (!exampleName.empty()) {
      cfg.example = exampleName;
      cfg.inlineData.reset();
    }
    if (qOrder) cfg.qOrder = *qOrder;
    if (q0Order) cfg.q0Order = *q0Order;
    if (!checks.empty()) cfg.checks = split_commas(checks);
    if (!report.empty()) cfg.report = report;
    validate_config(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  Report rep = run(cfg);
  std::string text = cfg.report == "json" ? to_json(rep).dump(2) + "\n" : to_text(rep);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(out);
    if (!o) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    o << text;
  }
  return rep.all_passed() ? 0 : 1;
}
