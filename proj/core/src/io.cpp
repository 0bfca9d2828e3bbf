#include "gaitlift/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gaitlift/error.hpp"

namespace gaitlift {

namespace {

Weight weight_from_json(const Json& w) {
  if (w.is_string()) return Weight::named(w.get<std::string>());
  if (w.is_number()) return Weight::numeric(w.get<double>());
  throw FormatError("arrow weight must be a number or a symbol name");
}

Json weight_to_json(const Weight& w) {
  if (w.is_symbolic()) return w.symbol;
  return w.value;
}

template <class T>
T required(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json network_to_json(const Network& net) {
  Json nodes = Json::array();
  for (const Node& n : net.nodes()) nodes.push_back({{"id", n.id}, {"type", n.type}});
  Json arrows = Json::array();
  for (const Arrow& a : net.arrows()) {
    arrows.push_back(
        {{"from", a.from}, {"to", a.to}, {"type", a.type}, {"weight", weight_to_json(a.weight)}});
  }
  Json doc = {{"version", kNetworkFormatVersion}, {"nodes", nodes}, {"arrows", arrows}};
  if (!net.name().empty()) doc["name"] = net.name();
  return doc;
}

Network network_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("network document must be a JSON object");
  const int version = required<int>(doc, "version");
  if (version != kNetworkFormatVersion) {
    throw FormatError("unsupported network format version " + std::to_string(version));
  }
  std::vector<Node> nodes;
  for (const Json& n : required<Json>(doc, "nodes")) {
    nodes.push_back({required<int>(n, "id"), n.value("type", std::string("std"))});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  std::vector<Arrow> arrows;
  for (const Json& a : required<Json>(doc, "arrows")) {
    Arrow arrow;
    arrow.from = required<int>(a, "from");
    arrow.to = required<int>(a, "to");
    arrow.type = a.value("type", std::string("std"));
    arrow.weight = a.contains("weight") ? weight_from_json(a.at("weight")) : Weight::numeric(1.0);
    arrows.push_back(std::move(arrow));
  }
  return Network(std::move(nodes), std::move(arrows), doc.value("name", std::string()));
}

RateParams params_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("parameter document must be a JSON object");
  RateParams p;
  p.epsilon = required<double>(doc, "epsilon");
  p.g = required<double>(doc, "g");
  const Json& input = doc.contains("I") ? doc.at("I") : Json(0.0);
  if (input.is_number()) {
    p.input = {input.get<double>()};
  } else if (input.is_array()) {
    p.input = input.get<std::vector<double>>();
  } else {
    throw FormatError("'I' must be a number or an array of numbers");
  }
  for (const char* key : {"alpha", "beta", "gamma"}) {
    if (doc.contains(key) && !doc.at(key).is_null()) p.symbols[key] = required<double>(doc, key);
  }
  if (doc.contains("symbols")) {
    for (const auto& [k, v] : doc.at("symbols").items()) p.symbols[k] = v.get<double>();
  }
  if (doc.contains("gain")) {
    const Json& g = doc.at("gain");
    p.gain.a = g.value("a", p.gain.a);
    p.gain.b = g.value("b", p.gain.b);
    p.gain.c = g.value("c", p.gain.c);
  }
  if (doc.contains("h") && !doc.at("h").is_null()) p.h = required<double>(doc, "h");
  if (doc.contains("time_scale")) {
    const auto ts = required<std::string>(doc, "time_scale");
    if (ts == "slow") {
      p.time_scale = TimeScale::slow;
    } else if (ts == "fast") {
      p.time_scale = TimeScale::fast;
    } else {
      throw FormatError("time_scale must be 'slow' or 'fast'");
    }
  }
  p.validate();
  return p;
}

Json params_to_json(const RateParams& p) {
  Json doc;
  doc["epsilon"] = p.epsilon;
  doc["g"] = p.g;
  if (p.input.size() == 1) {
    doc["I"] = p.input.front();
  } else {
    doc["I"] = p.input;
  }
  Json extra = Json::object();
  for (const auto& [k, v] : p.symbols) {
    if (k == "alpha" || k == "beta" || k == "gamma") {
      doc[k] = v;
    } else {
      extra[k] = v;
    }
  }
  if (!extra.empty()) doc["symbols"] = extra;
  doc["gain"] = {{"a", p.gain.a}, {"b", p.gain.b}, {"c", p.gain.c}};
  doc["h"] = p.h ? Json(*p.h) : Json(nullptr);
  doc["time_scale"] = p.time_scale == TimeScale::fast ? "fast" : "slow";
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int n_nodes) {
  os << 't';
  for (int i = 1; i <= n_nodes; ++i) os << ",x" << i << 'E';
  for (int i = 1; i <= n_nodes; ++i) os << ",x" << i << 'H';
  os << '\n';
  char buf[40];
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.time(k));
    os << buf;
    const State& s = traj.samples[k];
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      std::snprintf(buf, sizeof buf, ",%.17g", s(j));
      os << buf;
    }
    os << '\n';
  }
}

Json provenance_json(const Provenance& prov) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"seed", prov.seed},
          {"step", prov.step},
          {"transient", prov.transient}};
}

Json phase_pattern_json(const PhasePattern& pattern, std::optional<GaitLabel> gait) {
  Json shifts = Json::object();
  for (std::size_t i = 0; i < pattern.shifts.size(); ++i) {
    shifts[std::to_string(i + 1)] = pattern.shifts[i];
  }
  Json doc = {{"period", pattern.period}, {"clusters", pattern.clusters}, {"shifts", shifts}};
  if (gait) doc["gait"] = to_string(*gait);
  return doc;
}

Json multiplier_report_json(double period, const MultiplierSet& ms, Verdict verdict) {
  Json list = Json::array();
  for (const auto& m : ms.items) {
    list.push_back({{"re", m.value.real()},
                    {"im", m.value.imag()},
                    {"abs", m.modulus()},
                    {"block", m.block}});
  }
  return {{"period", period}, {"multipliers", list}, {"verdict", to_string(verdict)}};
}

Json stability_report_json(const std::vector<ConditionReport>& reports) {
  Json list = Json::array();
  for (const auto& r : reports) {
    list.push_back(
        {{"condition", r.condition}, {"holds", r.holds}, {"margin", r.margin}, {"inputs", r.inputs}});
  }
  return list;
}

}  // namespace gaitlift
