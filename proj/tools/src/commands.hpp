#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gaitlift/builtins.hpp"
#include "gaitlift/io.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"

namespace gaitlift::cli {

enum ExitCode { kOk = 0, kError = 1, kNoOscillation = 2 };

struct RunConfig {
  std::string net = "biped4";  // builtin name or network file
  std::string params;          // parameter file or bundled name
  std::uint64_t seed = 1;
  double transient = 300.0;
  double step = 0.0;  // 0: system default
  int samples = 512;
  std::string out;  // empty: stdout
};

struct FloquetOptions {
  std::string module_kind = "none";  // none | 1node | 2node
  std::optional<double> h;
  int node = 1;
};

/// Inclusive grid lo..hi with n points (n == 1 means just lo).
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;
  double at(int i) const;
};
Range parse_range(const std::string& text);

struct SweepOptions {
  Range alpha{-1.0, 1.0, 5};
  Range beta{-1.0, 1.0, 5};
  Range gamma{-1.0, 1.0, 5};
  int threads = 0;  // 0: hardware concurrency, capped by GAITLIFT_THREADS
};

struct Loaded {
  BuiltinNetwork net;
  RateParams params;
};

/// Resolves --net and --params. Bundled parameter names (e.g. "walk") are
/// used when no such file exists.
Loaded load(const RunConfig& cfg);
RateParams load_params(const std::string& source);
std::optional<std::string> bundled_params(const std::string& name);
std::vector<std::string> bundled_param_names();

OrbitSearchConfig orbit_config(const RunConfig& cfg);
double effective_step(const RunConfig& cfg, const RateSystem& sys);
Json provenance(const RunConfig& cfg, const RateSystem& sys);

/// Lateral partner of `node`: a node joined to it by arrows of type
/// "lateral" in both directions.
std::optional<std::pair<int, int>> lateral_pair(const Network& net, int node);

Json floquet_report(const Loaded& loaded, const RunConfig& cfg, const FloquetOptions& opt);
Json stability_report(const Loaded& loaded, const RunConfig& cfg, const FloquetOptions& opt);

int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_floquet(const RunConfig& cfg, const FloquetOptions& opt, std::ostream& out);
int cmd_stability(const RunConfig& cfg, const FloquetOptions& opt, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const SweepOptions& opt, std::ostream& out);
int cmd_net_export(const std::string& name, const RunConfig& cfg, std::ostream& out);
int cmd_repro(const std::string& table, const RunConfig& cfg, std::ostream& out);

std::vector<std::string> repro_tables();
Json repro_table(const std::string& table, const RunConfig& cfg);

/// Seed for grid point `index` of a sweep started with `seed`.
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index);

/// Runs `body`, mapping NoOscillation to exit 2 and other errors to exit 1
/// with a diagnostic on standard error.
int guarded(const std::function<int()>& body);

}  // namespace gaitlift::cli
