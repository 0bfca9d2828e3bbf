#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "gaitlift/error.hpp"
#include "gaitlift/floquet.hpp"
#include "gaitlift/stability.hpp"

namespace gaitlift::cli {

namespace {

struct BundledEntry {
  const char* name;
  const char* text;
};

constexpr BundledEntry kBundled[] = {
#include "bundled_params.inc"
};

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Trajectory record(const PeriodicOrbit& orbit, const RateSystem& sys, double step, int samples,
                  int periods) {
  IntegratorConfig icfg;
  icfg.step = step;
  Trajectory full = integrate(orbit.base_point(), sys, icfg, 0.0, periods * orbit.period());
  const auto stride = static_cast<std::size_t>(
      std::max(1.0, std::round(orbit.period() / (step * std::max(samples, 1)))));
  Trajectory out;
  out.t0 = full.t0;
  out.step = full.step * static_cast<double>(stride);
  for (std::size_t k = 0; k < full.samples.size(); k += stride) out.samples.push_back(full.samples[k]);
  return out;
}

int thread_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GAITLIFT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

}  // namespace

double Range::at(int i) const {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

Range parse_range(const std::string& text) {
  Range r;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  try {
    if (parts.size() == 1) {
      r.lo = r.hi = std::stod(parts[0]);
      r.n = 1;
    } else if (parts.size() == 3) {
      r.lo = std::stod(parts[0]);
      r.hi = std::stod(parts[1]);
      r.n = std::stoi(parts[2]);
    } else {
      throw InvalidParameters("range '" + text + "' must be 'value' or 'lo:hi:n'");
    }
  } catch (const std::logic_error&) {
    throw InvalidParameters("cannot parse range '" + text + "'");
  }
  if (r.n < 1) throw InvalidParameters("range '" + text + "' needs at least one point");
  return r;
}

std::optional<std::string> bundled_params(const std::string& name) {
  std::string key = name;
  if (key.size() > 5 && key.ends_with(".json")) key.resize(key.size() - 5);
  for (const auto& e : kBundled) {
    if (key == e.name) return std::string(e.text);
  }
  return std::nullopt;
}

std::vector<std::string> bundled_param_names() {
  std::vector<std::string> out;
  for (const auto& e : kBundled) out.emplace_back(e.name);
  return out;
}

RateParams load_params(const std::string& source) {
  if (source.empty()) throw InvalidParameters("--params is required");
  if (std::filesystem::exists(source)) return params_from_json(read_json_file(source));
  if (auto text = bundled_params(std::filesystem::path(source).filename().string())) {
    return params_from_json(Json::parse(*text));
  }
  throw FormatError("cannot open '" + source + "'");
}

Loaded load(const RunConfig& cfg) {
  Loaded out;
  try {
    out.net = builtin(cfg.net);
  } catch (const UnknownNetwork&) {
    if (!std::filesystem::exists(cfg.net)) throw;
    out.net.network = network_from_json(read_json_file(cfg.net));
  }
  out.params = load_params(cfg.params);
  return out;
}

OrbitSearchConfig orbit_config(const RunConfig& cfg) {
  if (!(cfg.transient >= 0.0)) throw InvalidParameters("--transient must be non-negative");
  if (cfg.step < 0.0) throw InvalidParameters("--step must be positive");
  if (cfg.samples < 256) throw InvalidParameters("--samples must be at least 256");
  OrbitSearchConfig oc;
  oc.transient = cfg.transient;
  oc.step = cfg.step;
  oc.samples = cfg.samples;
  return oc;
}

double effective_step(const RunConfig& cfg, const RateSystem& sys) {
  return cfg.step > 0.0 ? cfg.step : sys.default_step();
}

Json provenance(const RunConfig& cfg, const RateSystem& sys) {
  return provenance_json({cfg.seed, effective_step(cfg, sys), cfg.transient});
}

std::optional<std::pair<int, int>> lateral_pair(const Network& net, int node) {
  auto linked = [&](int from, int to) {
    for (std::size_t k : net.inputs(to)) {
      const Arrow& a = net.arrows()[k];
      if (a.from == from && a.type == "lateral") return true;
    }
    return false;
  };
  if (node < 1 || node > net.size()) return std::nullopt;
  for (int other = 1; other <= net.size(); ++other) {
    if (other != node && linked(node, other) && linked(other, node)) return std::pair{node, other};
  }
  return std::nullopt;
}

Json floquet_report(const Loaded& loaded, const RunConfig& cfg, const FloquetOptions& opt) {
  const RateSystem sys(loaded.net.network, loaded.params);
  const PeriodicOrbit orbit =
      find_periodic_orbit(sys, random_initial_state(sys.dim(), cfg.seed), orbit_config(cfg));
  const MonodromyResult mono = monodromy(orbit, sys);

  MultiplierSet ms;
  Json extra = Json::object();
  if (opt.module_kind == "none") {
    ms = loaded.net.lift ? split_multipliers(mono, *loaded.net.lift) : multipliers(mono);
    if (loaded.net.lift) extra["module_spread"] = ms.module_spread;
  } else if (opt.module_kind == "1node") {
    ms = multipliers(mono);
    for (auto& m : multipliers(transverse_monodromy_1node(orbit, sys, opt.node), "transverse:1").items) {
      ms.items.push_back(m);
    }
    extra["node"] = opt.node;
  } else if (opt.module_kind == "2node") {
    const auto pair = lateral_pair(loaded.net.network, opt.node);
    if (!pair) {
      throw InvalidNetwork("node " + std::to_string(opt.node) + " has no lateral partner");
    }
    const double h = opt.h ? *opt.h : loaded.params.resolve(Weight::named("h"));
    ms = multipliers(mono);
    for (auto& m : multipliers(transverse_monodromy_2node(orbit, sys, *pair, h), "transverse:1").items) {
      ms.items.push_back(m);
    }
    extra["pair"] = {pair->first, pair->second};
    extra["h"] = h;
  } else {
    throw InvalidParameters("--module-kind must be none, 1node or 2node");
  }
  ms.sort();

  Json doc = multiplier_report_json(orbit.period(), ms, stability_verdict(ms));
  doc["provenance"] = provenance(cfg, sys);
  doc["network"] = cfg.net;
  doc["module_kind"] = opt.module_kind;
  for (auto& [k, v] : extra.items()) doc[k] = v;
  return doc;
}

Json stability_report(const Loaded& loaded, const RunConfig& cfg, const FloquetOptions& opt) {
  const RateSystem sys(loaded.net.network, loaded.params);
  const PeriodicOrbit orbit =
      find_periodic_orbit(sys, random_initial_state(sys.dim(), cfg.seed), orbit_config(cfg));
  const auto& p = loaded.params;
  const EtaBounds eb = eta_bounds(orbit, sys, opt.node);

  std::vector<ConditionReport> reports{check_liap1(p.g, eb), check_floquet_bound(p.g, p.epsilon, eb),
                                       check_liap2(p.g, p.epsilon, eb)};
  if (const auto pair = lateral_pair(loaded.net.network, opt.node)) {
    const double h = opt.h ? *opt.h : p.resolve(Weight::named("h"));
    reports.push_back(lateral_margin(orbit, sys, *pair, h));
  }
  const ActivityBound ab = activity_g_bound(orbit, sys, opt.node);

  Json doc;
  doc["provenance"] = provenance(cfg, sys);
  doc["network"] = cfg.net;
  doc["node"] = opt.node;
  doc["period"] = orbit.period();
  if (sys.nodes() == 4) doc["gait"] = to_string(classify_gait(phase_shifts(orbit, 4)));
  doc["eta"] = {{"D0", eb.d0}, {"D", eb.d}, {"min", eb.raw_min}, {"max", eb.raw_max},
                {"samples", eb.samples}};
  doc["conditions"] = stability_report_json(reports);
  doc["activity_bound"] = {
      {"activity_max", ab.activity_max}, {"slope", ab.slope}, {"g_bound", ab.g_bound}};
  return doc;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const Loaded loaded = load(cfg);
  const RateSystem sys(loaded.net.network, loaded.params);
  const PeriodicOrbit orbit =
      find_periodic_orbit(sys, random_initial_state(sys.dim(), cfg.seed), orbit_config(cfg));
  const int n = sys.nodes();
  const PhasePattern pattern = phase_shifts(orbit, n);
  std::optional<GaitLabel> gait;
  if (n == 4) gait = classify_gait(pattern);

  const double step = effective_step(cfg, sys);
  const Trajectory traj = record(orbit, sys, step, cfg.samples, 5);

  Json doc;
  doc["provenance"] = provenance(cfg, sys);
  doc["network"] = cfg.net;
  doc["period"] = orbit.period();
  doc["closure_defect"] = orbit.closure_defect();
  doc["phase_pattern"] = phase_pattern_json(pattern, gait);
  if (loaded.net.coloring && loaded.net.coloring->num_colours() < n) {
    const SynchronyResult sr = synchrony_check(traj, *loaded.net.coloring, 1e-5);
    doc["synchrony"] = {{"clusters", loaded.net.coloring->clusters()},
                        {"synchronous", sr.synchronous},
                        {"max_defect", sr.max_defect}};
  }

  if (cfg.out.empty()) {
    emit(doc, {}, out);
  } else {
    std::ostringstream csv;
    write_trajectory_csv(csv, traj, n);
    write_text_file(cfg.out + ".csv", csv.str());
    emit(doc, cfg.out + ".json", out);
  }
  return kOk;
}

int cmd_floquet(const RunConfig& cfg, const FloquetOptions& opt, std::ostream& out) {
  emit(floquet_report(load(cfg), cfg, opt), cfg.out, out);
  return kOk;
}

int cmd_stability(const RunConfig& cfg, const FloquetOptions& opt, std::ostream& out) {
  emit(stability_report(load(cfg), cfg, opt), cfg.out, out);
  return kOk;
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int cmd_sweep(const RunConfig& cfg, const SweepOptions& opt, std::ostream& out) {
  const Loaded loaded = load(cfg);
  if (loaded.net.network.size() != 4) throw InvalidNetwork("sweep needs a 4-node CPG");
  const OrbitSearchConfig oc = orbit_config(cfg);

  const std::size_t total = static_cast<std::size_t>(opt.alpha.n) *
                            static_cast<std::size_t>(opt.beta.n) *
                            static_cast<std::size_t>(opt.gamma.n);
  std::vector<std::string> rows(total);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const int ig = static_cast<int>(idx % static_cast<std::size_t>(opt.gamma.n));
      const int ib = static_cast<int>((idx / static_cast<std::size_t>(opt.gamma.n)) %
                                      static_cast<std::size_t>(opt.beta.n));
      const int ia = static_cast<int>(idx / (static_cast<std::size_t>(opt.gamma.n) *
                                             static_cast<std::size_t>(opt.beta.n)));
      const double a = opt.alpha.at(ia), b = opt.beta.at(ib), c = opt.gamma.at(ig);
      RateParams p = loaded.params;
      p.symbols["alpha"] = a;
      p.symbols["beta"] = b;
      p.symbols["gamma"] = c;
      std::string label, period;
      try {
        const RateSystem sys(loaded.net.network, p);
        const PeriodicOrbit orbit =
            find_periodic_orbit(sys, random_initial_state(sys.dim(), point_seed(cfg.seed, idx)), oc);
        label = to_string(classify_gait(phase_shifts(orbit, 4)));
        period = fmt(orbit.period());
      } catch (const NoOscillation&) {
        label = "equilibrium";
      } catch (const Error&) {
        label = "irregular";
      }
      rows[idx] = fmt(a) + "," + fmt(b) + "," + fmt(c) + "," + label + "," + period + "\n";
    }
  };

  const int n_threads = std::min<int>(thread_count(opt.threads), static_cast<int>(std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "alpha,beta,gamma,gait,period\n";
  for (const auto& r : rows) csv << r;
  if (cfg.out.empty()) {
    out << csv.str();
  } else {
    write_text_file(cfg.out, csv.str());
  }
  return kOk;
}

int cmd_net_export(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  const BuiltinNetwork b = builtin(name);
  Json doc = network_to_json(b.network);
  doc["name"] = name;
  if (b.coloring) doc["clusters"] = b.coloring->clusters();
  doc["provenance"] = provenance_json({cfg.seed, cfg.step, cfg.transient});
  emit(doc, cfg.out, out);
  return kOk;
}

int cmd_repro(const std::string& table, const RunConfig& cfg, std::ostream& out) {
  emit(repro_table(table, cfg), cfg.out, out);
  return kOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const NoOscillation& e) {
    std::cerr << "gaitlift: " << e.what() << '\n';
    return kNoOscillation;
  } catch (const std::exception& e) {
    std::cerr << "gaitlift: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace gaitlift::cli
