#include "gaitlift/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaitlift/error.hpp"

namespace gaitlift {

namespace {

ConditionReport make_report(std::string id, double margin,
                            std::map<std::string, double> inputs) {
  return {std::move(id), margin > 0.0, margin, std::move(inputs)};
}

void require_node(const RateSystem& sys, int node) {
  if (node < 1 || node > sys.nodes()) throw DimensionMismatch("CPG node out of range");
}

}  // namespace

std::vector<double> eta_series(const PeriodicOrbit& orbit, const RateSystem& sys, int cpg_node) {
  require_node(sys, cpg_node);
  std::vector<double> eta;
  eta.reserve(static_cast<std::size_t>(orbit.size()));
  for (const State& s : orbit.samples()) {
    eta.push_back(gain_prime(sys.gain_argument(s, cpg_node), sys.params().gain));
  }
  return eta;
}

EtaBounds eta_bounds(const PeriodicOrbit& orbit, const RateSystem& sys, int cpg_node,
                     double safety) {
  const auto eta = eta_series(orbit, sys, cpg_node);
  const auto [lo, hi] = std::minmax_element(eta.begin(), eta.end());
  const auto& gp = sys.params().gain;
  EtaBounds b;
  b.samples = static_cast<int>(eta.size());
  b.raw_min = *lo;
  b.raw_max = *hi;
  b.d0 = *lo * (1.0 - safety);
  b.d = std::min(*hi * (1.0 + safety), gp.a * gp.b / 4.0);
  return b;
}

ConditionReport check_liap1(double g, const EtaBounds& bounds) {
  if (g < 0.0) throw InvalidParameters("g must be non-negative");
  return make_report("liap1", 3.0 - g * bounds.d, {{"g", g}, {"D0", bounds.d0}, {"D", bounds.d}});
}

std::pair<double, double> floquet_bound_interval(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 4.0) {
    throw EpsilonOutOfRange("epsilon = " + std::to_string(epsilon) + " is outside (0, 4]");
  }
  const double r = std::sqrt(3.0 * (4.0 - epsilon)) / 2.0;
  return {1.0 - r, 1.0 + r};
}

ConditionReport check_floquet_bound(double g, double epsilon, const EtaBounds& bounds) {
  if (g < 0.0) throw InvalidParameters("g must be non-negative");
  std::map<std::string, double> inputs{
      {"g", g}, {"epsilon", epsilon}, {"D0", bounds.d0}, {"D", bounds.d}};
  if (epsilon > 4.0) return make_report("floquet_bound", 4.0 - epsilon, std::move(inputs));
  const auto [lo, hi] = floquet_bound_interval(epsilon);
  // zeta = g eta >= 0 > lo whenever eps < 4, so only the upper end can bind.
  double margin = hi - g * bounds.d;
  if (lo >= 0.0) margin = std::min(margin, g * bounds.d0 - lo);
  inputs["zeta_hi"] = hi;
  return make_report("floquet_bound", margin, std::move(inputs));
}

std::pair<double, double> liap2_interval(double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidParameters("epsilon must be positive");
  const double r = 2.0 * std::sqrt(epsilon);
  return {(1.0 - r) / epsilon, (1.0 + r) / epsilon};
}

ConditionReport check_liap2(double g, double epsilon, const EtaBounds& bounds) {
  if (g < 0.0) throw InvalidParameters("g must be non-negative");
  const auto [lo, hi] = liap2_interval(epsilon);
  double margin = hi - g * bounds.d;
  if (lo > 0.0) margin = std::min(margin, g * bounds.d0 - lo);
  return make_report("liap2", margin,
                     {{"g", g}, {"epsilon", epsilon}, {"D0", bounds.d0}, {"D", bounds.d},
                      {"zeta_lo", lo}, {"zeta_hi", hi}});
}

std::vector<TransverseEigs1> transverse_eigs_1node(const PeriodicOrbit& orbit,
                                                   const RateSystem& sys, int cpg_node) {
  const auto eta = eta_series(orbit, sys, cpg_node);
  const double eps = sys.params().epsilon;
  const double g = sys.params().g;
  std::vector<TransverseEigs1> out;
  out.reserve(eta.size());
  for (std::size_t k = 0; k < eta.size(); ++k) {
    TransverseEigs1 e;
    e.t = static_cast<double>(k) * orbit.spacing();
    e.trace = -1.0 / eps - 1.0;
    e.det = (1.0 + g * eta[k]) / eps;
    const Complex disc = std::sqrt(Complex(e.trace * e.trace - 4.0 * e.det, 0.0));
    e.eigenvalues = {(e.trace + disc) / 2.0, (e.trace - disc) / 2.0};
    out.push_back(e);
  }
  return out;
}

Matrix lateral_block(double epsilon, double g, double h, double g1, double g2) {
  Matrix m(4, 4);
  m << -1.0, h * g1, -g * g1, 0.0,
       h * g2, -1.0, 0.0, -g * g2,
       epsilon, 0.0, -epsilon, 0.0,
       0.0, epsilon, 0.0, -epsilon;
  return m;
}

std::vector<TransverseEigs2> transverse_eigs_2node(const PeriodicOrbit& orbit,
                                                   const RateSystem& sys,
                                                   std::pair<int, int> cpg_nodes, double h) {
  const auto e1 = eta_series(orbit, sys, cpg_nodes.first);
  const auto e2 = eta_series(orbit, sys, cpg_nodes.second);
  const double eps = sys.params().epsilon;
  const double g = sys.params().g;
  std::vector<TransverseEigs2> out;
  out.reserve(e1.size());
  for (std::size_t k = 0; k < e1.size(); ++k) {
    const Matrix ej = lateral_block(eps, g, h, e1[k], e2[k]);
    TransverseEigs2 r;
    r.t = static_cast<double>(k) * orbit.spacing();
    r.trace = ej.trace();
    r.det = ej.determinant();
    r.det_nonpositive = r.det <= 0.0;
    const auto ev = eig(ej);
    for (std::size_t i = 0; i < 4; ++i) r.eigenvalues[i] = ev[i] / eps;
    out.push_back(r);
  }
  return out;
}

ConditionReport lateral_margin(const PeriodicOrbit& orbit, const RateSystem& sys,
                               std::pair<int, int> cpg_nodes, double h) {
  const auto e1 = eta_series(orbit, sys, cpg_nodes.first);
  const auto e2 = eta_series(orbit, sys, cpg_nodes.second);
  const double g = sys.params().g;
  double boundary = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < e1.size(); ++k) {
    boundary = std::min(boundary, std::sqrt((g + 1.0 / e1[k]) * (g + 1.0 / e2[k])));
  }
  return make_report("lateral", boundary - std::abs(h),
                     {{"g", g}, {"h", h}, {"boundary", boundary}});
}

ActivityBound activity_g_bound(const PeriodicOrbit& orbit, const RateSystem& sys, int cpg_node) {
  require_node(sys, cpg_node);
  ActivityBound out;
  out.activity_max = -std::numeric_limits<double>::infinity();
  for (const State& s : orbit.samples()) {
    out.activity_max = std::max(out.activity_max, s(cpg_node - 1));
  }
  const auto& gp = sys.params().gain;
  out.slope = out.activity_max < gp.c ? gain_prime(out.activity_max, gp) : gp.a * gp.b / 4.0;
  out.g_bound = 3.0 / out.slope;
  return out;
}

}  // namespace gaitlift
