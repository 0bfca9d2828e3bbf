#include "gaitlift/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gaitlift/error.hpp"

namespace gaitlift {

namespace {

double wrap_unit(double s) {
  s -= std::floor(s);
  return s >= 1.0 ? 0.0 : s;
}

double circular_distance(double a, double b) {
  const double d = wrap_unit(a - b);
  return std::min(d, 1.0 - d);
}

// Root in [0,1] of the cubic through (-1,y0),(0,y1),(1,y2),(2,y3) minus level,
// given y1 < level <= y2.
double cubic_crossing(double y0, double y1, double y2, double y3, double level) {
  auto p = [&](double s) {
    const double l0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double l1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double l2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double l3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return y0 * l0 + y1 * l1 + y2 * l2 + y3 * l3 - level;
  };
  double lo = 0.0, hi = 1.0;
  double plo = p(lo);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double pm = p(mid);
    if ((pm < 0.0) == (plo < 0.0)) {
      lo = mid;
      plo = pm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(GaitLabel g) {
  switch (g) {
    case GaitLabel::hop: return "hop";
    case GaitLabel::walk: return "walk";
    case GaitLabel::jump: return "jump";
    case GaitLabel::run: return "run";
    case GaitLabel::other: return "other";
  }
  return "other";
}

PeriodicOrbit::PeriodicOrbit(double period, std::vector<State> samples,
                             std::vector<State> derivatives, double closure_defect, double step)
    : period_(period),
      samples_(std::move(samples)),
      derivatives_(std::move(derivatives)),
      closure_defect_(closure_defect),
      step_(step) {}

State PeriodicOrbit::state_at(double t) const {
  const int m = size();
  const double dt = spacing();
  double u = t - period_ * std::floor(t / period_);
  int k = static_cast<int>(std::floor(u / dt));
  k = std::clamp(k, 0, m - 1);
  const double s = u / dt - k;
  const State& x0 = samples_[static_cast<std::size_t>(k)];
  const State& x1 = samples_[static_cast<std::size_t>((k + 1) % m)];
  const State& d0 = derivatives_[static_cast<std::size_t>(k)];
  const State& d1 = derivatives_[static_cast<std::size_t>((k + 1) % m)];
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * x0 + (h10 * dt) * d0 + h01 * x1 + (h11 * dt) * d1;
}

State random_initial_state(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  State s(dim);
  for (int i = 0; i < dim; ++i) s(i) = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return s;
}

State settle(const State& s0, const OdeSystem& sys, double step, double t_transient) {
  if (t_transient < 0.0) throw InvalidParameters("transient must be non-negative");
  if (t_transient == 0.0) return s0;
  IntegratorConfig cfg;
  cfg.step = step;
  return flow(s0, sys, cfg, 0.0, t_transient);
}

double detect_period(const Trajectory& traj, int probe_node, double amplitude_floor) {
  const auto& xs = traj.samples;
  if (xs.size() < 4) throw NoOscillation("trajectory too short");
  const int idx = probe_node - 1;
  if (idx < 0 || idx >= xs.front().size()) throw DimensionMismatch("probe node out of range");

  std::vector<double> x(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) x[k] = xs[k](idx);
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  if (*mx - *mn < amplitude_floor) {
    throw NoOscillation("peak-to-peak amplitude " + std::to_string(*mx - *mn) +
                        " below floor");
  }
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  // Re-arm only after a clear excursion below the mean.
  const double arm_level = mean - 0.25 * (mean - *mn);

  std::vector<double> crossings;
  bool armed = false;
  for (std::size_t k = 1; k + 2 < x.size(); ++k) {
    if (x[k] < arm_level) armed = true;
    if (armed && x[k] < mean && x[k + 1] >= mean) {
      const double s = cubic_crossing(x[k - 1], x[k], x[k + 1], x[k + 2], mean);
      crossings.push_back(traj.time(k) + s * traj.step);
      armed = false;
    }
  }
  if (crossings.size() < 5) {
    throw NoOscillation("only " + std::to_string(crossings.size()) + " mean crossings");
  }
  std::vector<double> gaps(crossings.size() - 1);
  for (std::size_t i = 0; i + 1 < crossings.size(); ++i) gaps[i] = crossings[i + 1] - crossings[i];
  const double mean_gap =
      std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  double var = 0.0;
  for (double g : gaps) var += (g - mean_gap) * (g - mean_gap);
  const double sd = std::sqrt(var / static_cast<double>(gaps.size()));
  if (sd > 0.01 * mean_gap) {
    throw IrregularPeriod("crossing gaps vary by " + std::to_string(100.0 * sd / mean_gap) + "%");
  }
  return mean_gap;
}

RefinedOrbit refine_periodic_orbit(const State& s, double period, const OdeSystem& sys,
                                   double step, int max_iterations) {
  const int n = sys.dim();
  IntegratorConfig cfg;
  cfg.step = step;
  RefinedOrbit out{s, period, 0.0, 0};
  State f0(n), ft(n);
  sys.rhs(0.0, out.base, f0);
  const State anchor = out.base;
  const State phase_normal = f0;

  auto residual_of = [&](const State& x, double T) {
    return (flow(x, sys, cfg, 0.0, T) - x).norm();
  };
  out.residual = residual_of(out.base, out.period);
  const double scale = std::max(1.0, out.base.norm());

  for (int it = 0; it < max_iterations && out.residual > 1e-11 * scale; ++it) {
    auto [xt, phi] = flow_with_variational(out.base, Matrix::Identity(n, n), sys, cfg, 0.0,
                                           out.period);
    sys.rhs(0.0, xt, ft);
    Matrix m = Matrix::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = phi - Matrix::Identity(n, n);
    m.topRightCorner(n, 1) = ft;
    m.bottomLeftCorner(1, n) = phase_normal.transpose();
    Eigen::VectorXd r(n + 1);
    r.head(n) = -(xt - out.base);
    r(n) = -phase_normal.dot(out.base - anchor);
    const Eigen::VectorXd delta = m.colPivHouseholderQr().solve(r);
    if (!delta.allFinite()) break;

    State x_new = out.base + delta.head(n);
    double t_new = out.period + delta(n);
    if (!(t_new > 0.0)) break;
    const double res_new = residual_of(x_new, t_new);
    if (!(res_new < out.residual)) break;
    out.base = std::move(x_new);
    out.period = t_new;
    out.residual = res_new;
    out.iterations = it + 1;
  }
  return out;
}

PeriodicOrbit sample_orbit(const State& s_on_orbit, const OdeSystem& sys, double period, int m,
                           double step, double amplitude_floor) {
  if (m < 256) throw InvalidParameters("need at least 256 samples per period");
  if (!(period > 0.0)) throw InvalidParameters("period must be positive");
  const int n = sys.dim();
  const double dt = period / m;
  const long sub = steps_for(0.0, dt, step);
  auto f = [&sys](double t, const State& x, State& dx) { sys.rhs(t, x, dx); };

  std::vector<State> samples, derivs;
  samples.reserve(static_cast<std::size_t>(m));
  derivs.reserve(static_cast<std::size_t>(m));
  State x = s_on_orbit;
  State dx(n);
  double spread = 0.0;
  for (int k = 0; k < m; ++k) {
    samples.push_back(x);
    sys.rhs(k * dt, x, dx);
    derivs.push_back(dx);
    spread = std::max(spread, (x - s_on_orbit).lpNorm<Eigen::Infinity>());
    x = rk4_flow(f, x, k * dt, (k + 1) * dt, dt / static_cast<double>(sub) * (1 + 1e-12));
  }
  const double defect = (x - s_on_orbit).norm();
  if (spread < amplitude_floor) {
    throw ClosureFailure("degenerate orbit: state varies by " + std::to_string(spread) +
                         " over the period (equilibrium?)");
  }
  if (defect > 1e-6 * std::max(1.0, s_on_orbit.norm())) {
    throw ClosureFailure("closure defect " + std::to_string(defect) + " after one period");
  }
  return PeriodicOrbit(period, std::move(samples), std::move(derivs), defect,
                       dt / static_cast<double>(sub));
}

PeriodicOrbit find_periodic_orbit(const RateSystem& sys, const State& s0,
                                  const OrbitSearchConfig& cfg) {
  const double step = cfg.step > 0.0 ? cfg.step : sys.default_step();
  State x = settle(s0, sys, step, cfg.transient);

  IntegratorConfig icfg;
  icfg.step = step;
  double window = cfg.window;
  double period = 0.0;
  for (;;) {
    Trajectory traj = integrate(x, sys, icfg, 0.0, window);
    try {
      period = detect_period(traj, cfg.probe_node, cfg.amplitude_floor);
      x = traj.samples.back();
      break;
    } catch (const NoOscillation&) {
      // Too few crossings in the window: look longer unless the signal is flat.
      const int idx = cfg.probe_node - 1;
      double lo = traj.samples.front()(idx), hi = lo;
      for (const auto& s : traj.samples) {
        lo = std::min(lo, s(idx));
        hi = std::max(hi, s(idx));
      }
      if (hi - lo < cfg.amplitude_floor || window * 2 > cfg.max_window) throw;
      x = traj.samples.back();
      window *= 2;
    } catch (const IrregularPeriod&) {
      if (window * 2 > cfg.max_window) throw;
      x = traj.samples.back();
      window *= 2;
    }
  }

  if (cfg.refine) {
    RefinedOrbit r = refine_periodic_orbit(x, period, sys, step);
    x = r.base;
    period = r.period;
  }
  return sample_orbit(x, sys, period, cfg.samples, step, cfg.amplitude_floor);
}

PhasePattern phase_shifts(const PeriodicOrbit& orbit, int n_nodes, int reference_node,
                          double shift_tolerance, double cluster_tolerance) {
  const int m = orbit.size();
  const int n = n_nodes;
  if (reference_node < 1 || reference_node > n) {
    throw DimensionMismatch("reference node out of range");
  }
  auto waveform = [&](int node) {
    Eigen::VectorXd w(m);
    for (int k = 0; k < m; ++k) w(k) = orbit.sample(k)(node - 1);
    return w;
  };
  Eigen::VectorXd ref = waveform(reference_node);
  const double amplitude = ref.maxCoeff() - ref.minCoeff();
  ref.array() -= ref.mean();

  PhasePattern out;
  out.period = orbit.period();
  out.shifts.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i <= n; ++i) {
    if (i == reference_node) continue;
    Eigen::VectorXd w = waveform(i);
    w.array() -= w.mean();
    std::vector<double> corr(static_cast<std::size_t>(m));
    for (int lag = 0; lag < m; ++lag) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j) acc += ref((j + lag) % m) * w(j);
      corr[static_cast<std::size_t>(lag)] = acc;
    }
    const int best = static_cast<int>(std::max_element(corr.begin(), corr.end()) - corr.begin());
    const double cm = corr[static_cast<std::size_t>((best - 1 + m) % m)];
    const double c0 = corr[static_cast<std::size_t>(best)];
    const double cp = corr[static_cast<std::size_t>((best + 1) % m)];
    const double denom = cm - 2.0 * c0 + cp;
    const double offset = denom != 0.0 ? 0.5 * (cm - cp) / denom : 0.0;
    out.shifts[static_cast<std::size_t>(i - 1)] =
        wrap_unit((best + std::clamp(offset, -0.5, 0.5)) / m);
  }

  // Synchrony clusters: equal shift and matching full node state.
  const double tol = cluster_tolerance * std::max(amplitude, 1e-12);
  auto same_state = [&](int a, int b) {
    for (int k = 0; k < m; ++k) {
      const State& s = orbit.sample(k);
      if (std::abs(s(a - 1) - s(b - 1)) > tol) return false;
      if (std::abs(s(n + a - 1) - s(n + b - 1)) > tol) return false;
    }
    return true;
  };
  for (int i = 1; i <= n; ++i) {
    bool placed = false;
    for (auto& cl : out.clusters) {
      const int rep = cl.front();
      if (circular_distance(out.shifts[static_cast<std::size_t>(i - 1)],
                            out.shifts[static_cast<std::size_t>(rep - 1)]) <= shift_tolerance &&
          same_state(i, rep)) {
        cl.push_back(i);
        out.shifts[static_cast<std::size_t>(i - 1)] = out.shifts[static_cast<std::size_t>(rep - 1)];
        placed = true;
        break;
      }
    }
    if (!placed) out.clusters.push_back({i});
  }
  return out;
}

GaitLabel classify_gait(const PhasePattern& pattern, double tolerance) {
  if (pattern.shifts.size() < 4) throw DimensionMismatch("gait classification needs 4 nodes");
  struct Template {
    GaitLabel label;
    double s[4];
  };
  static constexpr Template kTemplates[] = {
      {GaitLabel::hop, {0.0, 0.0, 0.0, 0.0}},
      {GaitLabel::walk, {0.0, 0.5, 0.5, 0.0}},
      {GaitLabel::jump, {0.0, 0.5, 0.0, 0.5}},
      {GaitLabel::run, {0.0, 0.0, 0.5, 0.5}},
  };
  const double base = pattern.shifts[0];
  for (const auto& t : kTemplates) {
    bool match = true;
    for (int i = 0; i < 4 && match; ++i) {
      match = circular_distance(pattern.shifts[static_cast<std::size_t>(i)] - base, t.s[i]) <=
              tolerance;
    }
    if (match) return t.label;
  }
  return GaitLabel::other;
}

SynchronyResult synchrony_check(const Trajectory& traj, const Coloring& col, double tol) {
  const int n = col.size();
  if (traj.samples.empty()) return {true, 0.0};
  if (traj.samples.front().size() != 2 * n) {
    throw DimensionMismatch("colouring does not match trajectory dimension");
  }
  const std::size_t total = traj.samples.size();
  const std::size_t start = total - std::max<std::size_t>(1, total / 4);
  double defect = 0.0;
  for (const auto& cluster : col.clusters()) {
    const int rep = cluster.front() - 1;
    for (std::size_t c = 1; c < cluster.size(); ++c) {
      const int v = cluster[c] - 1;
      for (std::size_t k = start; k < total; ++k) {
        const State& s = traj.samples[k];
        defect = std::max({defect, std::abs(s(v) - s(rep)), std::abs(s(n + v) - s(n + rep))});
      }
    }
  }
  return {defect < tol, defect};
}

}  // namespace gaitlift
