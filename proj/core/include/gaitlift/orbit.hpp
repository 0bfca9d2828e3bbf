#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaitlift/integrator.hpp"
#include "gaitlift/network.hpp"
#include "gaitlift/rate_model.hpp"

namespace gaitlift {

/// One period of a periodic orbit sampled at m uniformly spaced times.
class PeriodicOrbit {
 public:
  PeriodicOrbit(double period, std::vector<State> samples, std::vector<State> derivatives,
                double closure_defect, double step);

  double period() const { return period_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double spacing() const { return period_ / static_cast<double>(samples_.size()); }
  const std::vector<State>& samples() const { return samples_; }
  const State& sample(int k) const { return samples_[static_cast<std::size_t>(k)]; }
  const State& base_point() const { return samples_.front(); }
  double closure_defect() const { return closure_defect_; }
  /// Integration step used to generate the samples; reused downstream.
  double step() const { return step_; }

  /// Cubic Hermite interpolation; t is taken modulo the period.
  State state_at(double t) const;

 private:
  double period_;
  std::vector<State> samples_;
  std::vector<State> derivatives_;
  double closure_defect_;
  double step_;
};

struct PhasePattern {
  double period = 0.0;
  std::vector<std::vector<int>> clusters;
  /// shifts[i] is the phase of node i+1 as a fraction of the period, in [0,1):
  /// xE_{i+1}(t) ~ xE_ref(t + shifts[i] * period).
  std::vector<double> shifts;
};

enum class GaitLabel { hop, walk, jump, run, other };

std::string to_string(GaitLabel g);

struct SynchronyResult {
  bool synchronous = false;
  double max_defect = 0.0;
};

struct OrbitSearchConfig {
  double transient = 300.0;
  /// Integration step; 0 selects the system default.
  double step = 0.0;
  int probe_node = 1;
  int samples = 512;
  double amplitude_floor = 1e-4;
  /// Observation window after the transient; grown until enough crossings.
  double window = 60.0;
  double max_window = 4000.0;
  bool refine = true;
};

/// Uniform [0,1)^dim from a 64-bit Mersenne Twister with a fixed mapping,
/// identical on every platform.
State random_initial_state(int dim, std::uint64_t seed);

State settle(const State& s0, const OdeSystem& sys, double step, double t_transient);

/// Mean upward-crossing period of xE_probe. Throws NoOscillation or
/// IrregularPeriod.
double detect_period(const Trajectory& traj, int probe_node, double amplitude_floor = 1e-4);

struct RefinedOrbit {
  State base;
  double period = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Newton shooting on (x0, T) with the phase condition f(x0) . dx = 0.
RefinedOrbit refine_periodic_orbit(const State& s, double period, const OdeSystem& sys,
                                   double step, int max_iterations = 12);

/// Samples one period starting at a point on the orbit. Throws
/// ClosureFailure if the orbit does not close or is an equilibrium.
PeriodicOrbit sample_orbit(const State& s_on_orbit, const OdeSystem& sys, double period, int m,
                           double step, double amplitude_floor = 1e-4);

/// settle -> detect_period -> refine -> sample_orbit.
PeriodicOrbit find_periodic_orbit(const RateSystem& sys, const State& s0,
                                  const OrbitSearchConfig& cfg = {});

PhasePattern phase_shifts(const PeriodicOrbit& orbit, int n_nodes, int reference_node = 1,
                          double shift_tolerance = 0.02, double cluster_tolerance = 1e-4);

GaitLabel classify_gait(const PhasePattern& pattern, double tolerance = 0.02);

SynchronyResult synchrony_check(const Trajectory& traj, const Coloring& col, double tol);

}  // namespace gaitlift
