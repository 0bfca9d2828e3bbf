#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitlift/floquet.hpp"
#include "gaitlift/integrator.hpp"
#include "gaitlift/network.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"
#include "gaitlift/stability.hpp"

namespace gaitlift {

using Json = nlohmann::json;

inline constexpr int kNetworkFormatVersion = 1;
inline constexpr const char* kToolName = "gaitlift";
inline constexpr const char* kToolVersion = "1.0.0";

/// {"version":1,"nodes":[{"id":1,"type":"std"}],"arrows":[{"from":4,"to":1,
/// "type":"diag","weight":"alpha"}]}; weights are numbers or symbol names.
Json network_to_json(const Network& net);
Network network_from_json(const Json& doc);

/// Parameter document; "I" may be a scalar or per-node array, "h": null
/// defers to beta, optional "time_scale": "slow" | "fast".
RateParams params_from_json(const Json& doc);
Json params_to_json(const RateParams& p);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Header t,x1E,...,xnE,x1H,...,xnH then one row per sample at %.17g.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int n_nodes);

struct Provenance {
  std::uint64_t seed = 0;
  double step = 0.0;
  double transient = 0.0;
};

Json provenance_json(const Provenance& prov);

Json phase_pattern_json(const PhasePattern& pattern, std::optional<GaitLabel> gait);

Json multiplier_report_json(double period, const MultiplierSet& ms, Verdict verdict);

Json stability_report_json(const std::vector<ConditionReport>& reports);

}  // namespace gaitlift
