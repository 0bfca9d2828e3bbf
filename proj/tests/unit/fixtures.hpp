#pragma once

#include <string>

#include "gaitlift/builtins.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"

namespace fixtures {

inline gaitlift::RateParams biped(double alpha, double beta, double gamma, double eps = 0.67,
                                  double g = 1.8, double input = 1.1) {
  gaitlift::RateParams p;
  p.epsilon = eps;
  p.g = g;
  p.input = {input};
  p.symbols = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
  return p;
}

inline gaitlift::RateParams hop() { return biped(0.5, 0.6, 0.8); }
inline gaitlift::RateParams run() { return biped(-0.5, -0.6, 0.8); }
inline gaitlift::RateParams jump() { return biped(-0.5, 0.6, -0.8); }
inline gaitlift::RateParams walk() { return biped(0.5, -0.6, -0.8); }

inline gaitlift::RateParams chain_set1() {
  gaitlift::RateParams p;
  p.epsilon = 0.1;
  p.g = 2.0;
  p.input = {2.0};
  p.symbols = {{"alpha", -5.0}};
  p.time_scale = gaitlift::TimeScale::fast;
  return p;
}

inline gaitlift::PeriodicOrbit orbit_of(const gaitlift::RateSystem& sys, std::uint64_t seed = 1) {
  return gaitlift::find_periodic_orbit(sys, gaitlift::random_initial_state(sys.dim(), seed));
}

}  // namespace fixtures
