#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gaitlift/floquet.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"

namespace gaitlift {

/// Range of eta(t) = G'(gain argument of a CPG node) along an orbit.
struct EtaBounds {
  double d0 = 0.0;  // infimum, shrunk by the safety factor
  double d = 0.0;   // supremum, widened by the safety factor (capped at ab/4)
  int samples = 0;
  double raw_min = 0.0;
  double raw_max = 0.0;
};

/// A sufficient condition evaluated with its distance to the boundary;
/// holds == (margin > 0).
struct ConditionReport {
  std::string condition;
  bool holds = false;
  double margin = 0.0;
  std::map<std::string, double> inputs;
};

std::vector<double> eta_series(const PeriodicOrbit& orbit, const RateSystem& sys, int cpg_node);

EtaBounds eta_bounds(const PeriodicOrbit& orbit, const RateSystem& sys, int cpg_node,
                     double safety = 0.01);

/// L = eps u^2 + v^2 decreases when g D < 3.
ConditionReport check_liap1(double g, const EtaBounds& bounds);

/// Zeros 1 -/+ sqrt(3 (4 - eps)) / 2 of eps^2 (4 z^2 - 8 z - 8 + 3 eps).
/// Throws EpsilonOutOfRange unless 0 < eps <= 4.
std::pair<double, double> floquet_bound_interval(double epsilon);

/// Exponential decay bound; evaluated with the supremum D.
ConditionReport check_floquet_bound(double g, double epsilon, const EtaBounds& bounds);

/// Zeros of (eps z - 1)^2 - 4 eps: ((1 - 2 sqrt(eps)) / eps, (1 + 2 sqrt(eps)) / eps).
std::pair<double, double> liap2_interval(double epsilon);

/// L = eps^2 u^2 + v^2 decreases when g eta(t) stays inside liap2_interval.
ConditionReport check_liap2(double g, double epsilon, const EtaBounds& bounds);

struct TransverseEigs1 {
  double t = 0.0;
  std::array<Complex, 2> eigenvalues{};
  double trace = 0.0;
  double det = 0.0;
};

/// Eigenvalues of [[-1/eps, -(g/eps) eta], [1, -1]] at every orbit sample.
std::vector<TransverseEigs1> transverse_eigs_1node(const PeriodicOrbit& orbit,
                                                   const RateSystem& sys, int cpg_node);

struct TransverseEigs2 {
  double t = 0.0;
  std::array<Complex, 4> eigenvalues{};  // of J
  double trace = 0.0;                    // of eps J
  double det = 0.0;                      // of eps J
  bool det_nonpositive = false;
};

/// eps J for a laterally coupled pair, assembled and analysed per sample.
Matrix lateral_block(double epsilon, double g, double h, double g1, double g2);

std::vector<TransverseEigs2> transverse_eigs_2node(const PeriodicOrbit& orbit,
                                                   const RateSystem& sys,
                                                   std::pair<int, int> cpg_nodes, double h);

/// sqrt((g + 1/G1(t)) (g + 1/G2(t))) minimised over the orbit, minus |h|.
/// inputs["boundary"] carries the minimum boundary value.
ConditionReport lateral_margin(const PeriodicOrbit& orbit, const RateSystem& sys,
                               std::pair<int, int> cpg_nodes, double h);

/// Coarser Liapunov-1 estimate from the largest activity of a node: since
/// G' increases below its midpoint, eta <= G'(max xE) when max xE < c.
struct ActivityBound {
  double activity_max = 0.0;
  double slope = 0.0;
  double g_bound = 0.0;
};

ActivityBound activity_g_bound(const PeriodicOrbit& orbit, const RateSystem& sys, int cpg_node);

}  // namespace gaitlift
