// Command-line checker for .irr vernacular files.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irr/irr.hpp"

namespace {

nlohmann::json to_json(const irr::frontend::Report& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    if (e.ok) {
      entries.push_back({{"status", "ok"}, {"name", e.label}, {"type", e.result}});
    } else {
      entries.push_back({{"status", "error"},
                         {"command", e.label},
                         {"line", e.loc.line},
                         {"column", e.loc.col},
                         {"kind", e.kind},
                         {"detail", e.detail}});
    }
  }
  return {{"file", r.file},
          {"entries", entries},
          {"declarations", r.declarations},
          {"directives", r.directives},
          {"exit", r.exit_code}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type checker for the proof-irrelevant calculus of constructions"};
  irr::frontend::Flags flags;
  std::vector<std::string> files;
  bool json = false;
  app.add_option("files", files, "Vernacular files to check")->required()->check(CLI::ExistingFile);
  app.add_option("--fuel", flags.fuel, "Reduction budget per conversion query")->capture_default_str();
  app.add_flag("--eta", flags.eta, "Extend conversion with eta");
  app.add_flag("--singleton-simpl", flags.singleton, "Collapse subset pairs and first projections in conversion");
  app.add_flag("--propdata", flags.propdata, "Allow single-constructor Prop inductive declarations");
  app.add_option("--model-bound", flags.model_bound, "Rank bound of the finite model")->capture_default_str();
  app.add_flag("--keep-going", flags.keep_going, "Continue after the first error");
  app.add_flag("--json", json, "Emit a JSON report");
  CLI11_PARSE(app, argc, argv);

  int status = 0;
  nlohmann::json reports = nlohmann::json::array();
  for (const std::string& f : files) {
    irr::frontend::Report r = irr::frontend::run_file(f, flags);
    if (json)
      reports.push_back(to_json(r));
    else
      std::cout << r.text();
    if (status == 0) status = r.exit_code;
  }
  if (json) std::cout << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
  return status;
}
