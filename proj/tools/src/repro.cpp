#include <string>
#include <vector>

#include "commands.hpp"
#include "gaitlift/error.hpp"

namespace gaitlift::cli {

namespace {

struct Row {
  const char* label;
  const char* net;
  const char* params;
};

struct Table {
  const char* id;
  const char* kind;  // floquet-none | floquet-1node | floquet-2node | stability
  std::vector<Row> rows;
};

const std::vector<Table>& tables() {
  static const std::vector<Table> kTables = {
      {"chain7",
       "floquet-none",
       {{"set1", "chain7", "chain7-set1"},
        {"set2", "chain7", "chain7-set2"},
        {"set3", "chain7", "chain7-set3"},
        {"set4", "chain7", "chain7-set4"}}},
      {"biped-1node",
       "floquet-1node",
       {{"hop", "biped4", "hop"}, {"run", "biped4", "run"}, {"jump", "biped4", "jump"},
        {"walk", "biped4", "walk"}}},
      {"biped-2node",
       "floquet-2node",
       {{"hop", "biped4", "hop"}, {"run", "biped4", "run"}, {"jump", "biped4", "jump"},
        {"walk", "biped4", "walk"}}},
      {"gaits-g14",
       "stability",
       {{"hop", "biped4", "hop-g14"}, {"run", "biped4", "run-g14"}, {"jump", "biped4", "jump-g14"},
        {"walk", "biped4", "walk-g14"}}},
  };
  return kTables;
}

}  // namespace

std::vector<std::string> repro_tables() {
  std::vector<std::string> ids;
  for (const auto& t : tables()) ids.emplace_back(t.id);
  return ids;
}

Json repro_table(const std::string& table, const RunConfig& cfg) {
  for (const auto& t : tables()) {
    if (table != t.id) continue;
    const std::string kind = t.kind;
    Json rows = Json::array();
    Json prov;
    for (const Row& r : t.rows) {
      RunConfig rc = cfg;
      rc.net = r.net;
      rc.params = r.params;
      rc.out.clear();
      const Loaded loaded = load(rc);
      Json report;
      if (kind == "stability") {
        report = stability_report(loaded, rc, {});
      } else {
        FloquetOptions opt;
        opt.module_kind = kind.substr(kind.find('-') + 1);
        report = floquet_report(loaded, rc, opt);
      }
      prov = report["provenance"];
      report.erase("provenance");
      rows.push_back({{"label", r.label}, {"params", params_to_json(loaded.params)}, {"report", report}});
    }
    prov.erase("step");  // differs per row; each report lists its own
    return {{"provenance", prov}, {"table", table}, {"rows", rows}};
  }
  std::string known;
  for (const auto& id : repro_tables()) known += (known.empty() ? "" : ", ") + id;
  throw InvalidParameters("unknown table '" + table + "' (known: " + known + ")");
}

}  // namespace gaitlift::cli
