// Acceptance runner: `gaitlift_acceptance [N]` checks criterion N (all when
// omitted) and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gaitlift/builtins.hpp"
#include "gaitlift/error.hpp"
#include "gaitlift/floquet.hpp"
#include "gaitlift/orbit.hpp"
#include "gaitlift/rate_model.hpp"
#include "gaitlift/stability.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace gaitlift;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    std::printf("  %s %s\n", cond ? "ok  " : "MISS", what.c_str());
    ok = ok && cond;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

RateParams biped_params(double a, double b, double c, double eps, double g, double input) {
  RateParams p;
  p.epsilon = eps;
  p.g = g;
  p.input = {input};
  p.symbols = {{"alpha", a}, {"beta", b}, {"gamma", c}};
  return p;
}

struct Gait {
  std::string name;
  double alpha, beta, gamma;
  std::vector<double> shifts;
};

const std::vector<Gait>& gaits() {
  static const std::vector<Gait> g{
      {"hop", 0.5, 0.6, 0.8, {0.0, 0.0, 0.0, 0.0}},
      {"run", -0.5, -0.6, 0.8, {0.0, 0.0, 0.5, 0.5}},
      {"jump", -0.5, 0.6, -0.8, {0.0, 0.5, 0.0, 0.5}},
      {"walk", 0.5, -0.6, -0.8, {0.0, 0.5, 0.5, 0.0}},
  };
  return g;
}

RateParams strong(const Gait& g) { return biped_params(g.alpha, g.beta, g.gamma, 0.67, 1.8, 1.1); }

RateParams weak(const Gait& g) {
  return biped_params(g.alpha, g.beta, g.gamma, 0.5, 1.4, g.name == "hop" ? 0.7 : 1.1);
}

PeriodicOrbit orbit_of(const RateSystem& sys) {
  return find_periodic_orbit(sys, random_initial_state(sys.dim(), 1));
}

std::vector<Complex> values(const MultiplierSet& ms, const std::string& tag = {}) {
  std::vector<Complex> out;
  for (const auto& m : ms.items) {
    if (tag.empty() || m.block == tag) out.push_back(m.value);
  }
  return out;
}

double circular(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

bool within(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

// Table moduli: above 0.01 within 10%, below within a factor of 5.
bool moduli_match(const std::vector<double>& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i] > 0.01) {
      if (!within(got[i], want[i], 0.10)) return false;
    } else if (got[i] > 5.0 * want[i] || got[i] < want[i] / 5.0) {
      return false;
    }
  }
  return true;
}

std::string list(const std::vector<double>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "}";
}

struct ChainSet {
  double input, alpha, g, eps, period;
  std::vector<double> cpg, transverse;
};

const std::vector<ChainSet>& chain_sets() {
  static const std::vector<ChainSet> s{
      {2.0, -5.0, 2.0, 0.1, 5.783, {1.0, 0.470, 0.470, 0.396, 0.0368, 1.58e-6}, {0.546, 0.00315}},
      {2.0, -5.0, 2.0, 0.5, 4.612, {1.0, 0.0989, 0.0989, 0.0428, 0.0428, 0.0000538}, {0.0898, 0.0110}},
      {4.0, -3.0, 2.0, 0.2, 3.146, {1.0, 0.526, 0.526, 0.419, 0.0578, 0.00178}, {0.151, 0.151}},
      {2.0, -8.0, 3.0, 0.8, 4.373, {1.0, 0.0294, 0.0294, 0.0138, 0.00215, 0.00215}, {0.026, 0.0146}},
  };
  return s;
}

RateParams chain_params(const ChainSet& s) {
  RateParams p;
  p.epsilon = s.eps;
  p.g = s.g;
  p.input = {s.input};
  p.symbols = {{"alpha", s.alpha}};
  p.time_scale = TimeScale::fast;
  return p;
}

bool criterion1() {
  Check c;
  const BuiltinNetwork net = builtin("chain7");
  int set = 0;
  for (const ChainSet& s : chain_sets()) {
    ++set;
    const auto t0 = Clock::now();
    const RateSystem sys(net.network, chain_params(s));
    const PeriodicOrbit orbit = orbit_of(sys);
    const MultiplierSet ms = split_multipliers(monodromy(orbit, sys), *net.lift);
    const double elapsed = seconds_since(t0);
    const auto cpg = oracle::sorted_moduli(values(ms, "cpg"));
    const auto tr = oracle::sorted_moduli(values(ms, "transverse:1"));
    const std::string tag = "set " + std::to_string(set) + ": ";
    c.expect(within(orbit.period(), s.period, 0.005),
             tag + "period " + num(orbit.period()) + " vs " + num(s.period));
    c.expect(moduli_match(cpg, s.cpg), tag + "CPG moduli " + list(cpg) + " vs " + list(s.cpg));
    c.expect(moduli_match(tr, s.transverse),
             tag + "transverse moduli " + list(tr) + " vs " + list(s.transverse));
    c.expect(elapsed < 60.0, tag + "runtime " + num(elapsed) + " s");
  }
  return c.ok;
}

bool criterion2() {
  Check c;
  const double periods[] = {6.646, 4.991, 5.257, 5.368};
  const double dominant[] = {0.00172, 0.00685, 0.00522, 0.00470};
  for (std::size_t i = 0; i < 4; ++i) {
    const Gait& g = gaits()[i];
    const RateSystem sys(biped4(), strong(g));
    const PeriodicOrbit orbit = orbit_of(sys);
    MultiplierSet ms = multipliers(monodromy(orbit, sys));
    int near_one = 0;
    for (const auto& m : ms.items) near_one += std::abs(m.value - 1.0) < 0.02;
    const auto tr = multipliers(transverse_monodromy_1node(orbit, sys, 1), "transverse:1");
    const double dom = tr.items.front().modulus();
    for (const auto& m : tr.items) ms.items.push_back(m);
    ms.sort();
    c.expect(within(orbit.period(), periods[i], 0.005),
             g.name + ": period " + num(orbit.period()) + " vs " + num(periods[i]));
    c.expect(within(dom, dominant[i], 0.15),
             g.name + ": dominant transverse " + num(dom) + " vs " + num(dominant[i]));
    c.expect(near_one == 1, g.name + ": " + std::to_string(near_one) + " CPG multiplier(s) near 1");
    c.expect(stability_verdict(ms) == Verdict::stable,
             g.name + ": verdict " + to_string(stability_verdict(ms)));
  }
  return c.ok;
}

bool criterion3() {
  Check c;
  const double dominant[] = {0.0184, 0.0281, 0.0182, 0.0205};
  const bool complex_pair[] = {false, false, true, true};
  for (std::size_t i = 0; i < 4; ++i) {
    const Gait& g = gaits()[i];
    const RateSystem sys(biped4(), strong(g));
    const PeriodicOrbit orbit = orbit_of(sys);
    const auto tr = multipliers(transverse_monodromy_2node(orbit, sys, {1, 3}, g.beta));
    const Complex top = tr.items.front().value;
    const bool is_complex = std::abs(top.imag()) > 1e-9 * std::abs(top);
    c.expect(within(std::abs(top), dominant[i], 0.15),
             g.name + ": dominant transverse " + num(std::abs(top)) + " vs " + num(dominant[i]));
    c.expect(is_complex == complex_pair[i],
             g.name + ": dominant is " + (is_complex ? "a complex pair" : "real"));
  }
  return c.ok;
}

bool criterion4() {
  Check c;
  for (const Gait& g : gaits()) {
    const PeriodicOrbit orbit = orbit_of(RateSystem(biped4(), weak(g)));
    const PhasePattern p = phase_shifts(orbit, 4);
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, circular(p.shifts[i], g.shifts[i]));
    const std::string label = to_string(classify_gait(p));
    c.expect(label == g.name && worst < 0.02,
             g.name + ": classified " + label + ", phase error " + num(worst));
  }
  const BuiltinNetwork net = builtin("chain7");
  int set = 0;
  for (const ChainSet& s : chain_sets()) {
    ++set;
    const RateSystem sys(net.network, chain_params(s));
    const PeriodicOrbit orbit = orbit_of(sys);
    const PhasePattern p = phase_shifts(orbit, 7);
    // Node i lags node 1 by (i - 1)/3 of a period.
    double worst = 0.0;
    for (int i = 0; i < 7; ++i) {
      worst = std::max(worst, circular(p.shifts[static_cast<std::size_t>(i)], (i % 3) / 3.0));
    }
    IntegratorConfig cfg;
    cfg.step = sys.default_step();
    const State x = settle(random_initial_state(sys.dim(), 1), sys, cfg.step, 300.0);
    const auto sync = synchrony_check(integrate(x, sys, cfg, 0.0, 5.0 * orbit.period()),
                                      *net.coloring, 1e-5);
    const std::string tag = "chain7 set " + std::to_string(set) + ": ";
    c.expect(worst < 0.02, tag + "phase error " + num(worst));
    c.expect(sync.max_defect < 1e-5, tag + "synchrony defect " + num(sync.max_defect));
  }
  return c.ok;
}

std::vector<std::pair<std::string, RateSystem>> computed_systems() {
  std::vector<std::pair<std::string, RateSystem>> out;
  for (const Gait& g : gaits()) {
    out.emplace_back(g.name, RateSystem(biped4(), strong(g)));
    out.emplace_back(g.name + " (weak)", RateSystem(biped4(), weak(g)));
  }
  int set = 0;
  for (const ChainSet& s : chain_sets()) {
    out.emplace_back("chain7 set " + std::to_string(++set), RateSystem(chain7(), chain_params(s)));
  }
  out.emplace_back("biped-ff(2) hop", RateSystem(biped_ff(2).network, strong(gaits()[0])));
  return out;
}

bool criterion5() {
  Check c;
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 8; ++n) {
    const oracle::Matrix j = oracle::random_matrix(n, rng, 0.5);
    const double period = 2.0;
    std::vector<State> samples(256, State::Zero(n));
    const PeriodicOrbit still(period, samples, samples, 0.0, 1e-3);
    const auto got = values(multipliers(monodromy(still, LinearSystem(j))));
    Eigen::EigenSolver<oracle::Matrix> es(oracle::expm(j * period));
    std::vector<Complex> want(es.eigenvalues().begin(), es.eigenvalues().end());
    const double d = oracle::multiset_distance(got, want);
    c.expect(d < 1e-8, "LTI dim " + std::to_string(n) + ": distance " + num(d));
  }
  for (auto& [name, sys] : computed_systems()) {
    const PeriodicOrbit orbit = orbit_of(sys);
    double integral = 0.0;
    for (const State& s : orbit.samples()) {
      const auto jfd = oracle::fd_jacobian(
          [&](const oracle::Vector& v) {
            State d;
            sys.rhs(0.0, v, d);
            return d;
          },
          s);
      integral += jfd.trace() * orbit.spacing();
    }
    Complex prod = 1.0;
    for (const Complex& z : values(multipliers(monodromy(orbit, sys)))) prod *= z;
    const double expected = std::exp(integral);
    const double rel = std::abs(prod - expected) / expected;
    c.expect(rel < 1e-6, name + ": Liouville relative error " + num(rel));
  }
  return c.ok;
}

bool criterion6() {
  Check c;
  for (int modules : {1, 2}) {
    const Lift lift = biped_ff(modules);
    for (const Gait& g : gaits()) {
      const RateParams p = strong(g);
      const RateSystem full(lift.network, p);
      const RateSystem cpg(biped4(), p);
      const PeriodicOrbit orbit = orbit_of(full);
      const PeriodicOrbit base = orbit_of(cpg);
      const auto mono = monodromy(orbit, full);
      std::vector<Complex> expected = values(multipliers(monodromy(base, cpg)));
      std::vector<std::vector<double>> per_module;
      for (std::size_t k = 0; k < lift.structure.modules.size(); ++k) {
        const int node = lift.structure.counterparts[k].front();
        const auto tr = values(multipliers(transverse_monodromy_1node(base, cpg, node)));
        expected.insert(expected.end(), tr.begin(), tr.end());
      }
      const auto got = oracle::sorted_moduli(eig(mono.matrix));
      const double gap = oracle::max_relative_gap(got, oracle::sorted_moduli(expected));
      const std::string tag = "biped-ff(" + std::to_string(modules) + ") " + g.name + ": ";
      c.expect(gap < 0.01, tag + "full vs CPG + transverse gap " + num(gap));
      if (modules == 2) {
        const auto ms = split_multipliers(mono, lift.structure);
        const double spread = oracle::max_relative_gap(oracle::sorted_moduli(values(ms, "transverse:1")),
                                                       oracle::sorted_moduli(values(ms, "transverse:2")));
        c.expect(spread < 0.01, tag + "module 2 vs module 1 gap " + num(spread));
      }
    }
  }
  return c.ok;
}

bool criterion7() {
  Check c;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sym(-1.0, 1.0), eps(0.3, 0.9), g(1.0, 2.0), in(0.7, 1.4);
  int accepted = 0, failures = 0, attempts = 0;
  while (accepted < 50 && attempts < 500) {
    ++attempts;
    const RateParams p = biped_params(sym(rng), sym(rng), sym(rng), eps(rng), g(rng), in(rng));
    const RateSystem sys(biped4(), p);
    std::optional<PeriodicOrbit> orbit;
    try {
      orbit.emplace(orbit_of(sys));
    } catch (const Error&) {
      continue;
    }
    ++accepted;
    for (int node = 1; node <= 4; ++node) {
      for (const auto& e : transverse_eigs_1node(*orbit, sys, node)) {
        failures += !(e.trace < 0.0 && e.det > 0.0);
      }
    }
  }
  c.expect(accepted == 50, std::to_string(accepted) + " oscillating parameter sets");
  c.expect(failures == 0, "trace < 0 and det > 0 at every sample (" + std::to_string(failures) + " violations)");

  auto [lo, hi] = floquet_bound_interval(0.6);
  c.expect(std::abs(lo + 0.596872) < 1e-4 && std::abs(hi - 2.59687) < 1e-4,
           "floquet_bound_interval(0.6) = (" + num(lo) + ", " + num(hi) + ")");
  std::tie(lo, hi) = floquet_bound_interval(1e-10);
  c.expect(std::abs(lo - (1.0 - std::sqrt(3.0))) < 1e-4 && std::abs(hi - (1.0 + std::sqrt(3.0))) < 1e-4,
           "floquet_bound_interval(0+) = (" + num(lo) + ", " + num(hi) + ")");
  std::tie(lo, hi) = liap2_interval(0.5);
  c.expect(std::abs(lo + 0.828427) < 1e-4 && std::abs(hi - 4.82843) < 1e-4,
           "liap2_interval(0.5) = (" + num(lo) + ", " + num(hi) + ")");

  EtaBounds d2;
  d2.d = 2.0;
  c.expect(check_liap1(1.4, d2).holds, "liap1 holds at g = 1.4 with D = 2");
  c.expect(!check_liap1(1.8, d2).holds, "liap1 fails at g = 1.8 with D = 2");

  const std::map<std::string, double> bounds{{"hop", 1.52}, {"jump", 28.95}, {"run", 5.25}, {"walk", 58.67}};
  for (const Gait& gt : gaits()) {
    const RateSystem sys(biped4(), weak(gt));
    const auto ab = activity_g_bound(orbit_of(sys), sys, 1);
    c.expect(within(ab.g_bound, bounds.at(gt.name), 0.05),
             gt.name + ": g bound " + num(ab.g_bound) + " vs " + num(bounds.at(gt.name)));
  }
  return c.ok;
}

// eps J of a laterally coupled pair, assembled here from the model equations.
double min_det(const std::vector<double>& e1, const std::vector<double>& e2, double eps, double g, double h) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < e1.size(); ++k) {
    oracle::Matrix m = oracle::Matrix::Zero(4, 4);
    // E rows: -u + G'(.) (h u_other - g v)
    m(0, 0) = -1.0;
    m(0, 1) = h * e1[k];
    m(0, 2) = -g * e1[k];
    m(1, 1) = -1.0;
    m(1, 0) = h * e2[k];
    m(1, 3) = -g * e2[k];
    // H rows scaled by eps: eps (u - v)
    m(2, 0) = eps;
    m(2, 2) = -eps;
    m(3, 1) = eps;
    m(3, 3) = -eps;
    worst = std::min(worst, oracle::lu_det(m));
  }
  return worst;
}

bool criterion8() {
  Check c;
  for (const Gait& gt : gaits()) {
    const RateParams p = strong(gt);
    const RateSystem sys(biped4(), p);
    const PeriodicOrbit orbit = orbit_of(sys);
    const auto e1 = eta_series(orbit, sys, 1);
    const auto e3 = eta_series(orbit, sys, 3);
    const double boundary = lateral_margin(orbit, sys, {1, 3}, 0.0).inputs.at("boundary");
    const auto f = [&](double h) { return min_det(e1, e3, p.epsilon, p.g, h); };
    const bool flips = f(0.0) > 0.0 && f(3.0 * boundary) < 0.0;
    const double flip = flips ? oracle::bisect(f, 0.0, 3.0 * boundary) : 0.0;
    c.expect(flips && within(flip, boundary, 0.01),
             gt.name + ": sign flip at |h| = " + num(flip) + ", boundary " + num(boundary));
  }
  return c.ok;
}

bool criterion9() {
  Check c;
  const auto t0 = Clock::now();
  for (const auto& r : props::run_all()) {
    c.expect(r.ok, r.name + " (" + std::to_string(r.cases) + " cases)" +
                       (r.ok ? std::string() : ": " + r.detail));
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 120.0, "runtime " + num(elapsed) + " s");
  return c.ok;
}

struct Criterion {
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"chain7 table reproduction", criterion1},
      {"biped 1-node transverse table", criterion2},
      {"biped 2-node transverse table", criterion3},
      {"gait classification and chain synchrony", criterion4},
      {"monodromy oracles", criterion5},
      {"lift decomposition", criterion6},
      {"analytic conditions", criterion7},
      {"lateral boundary", criterion8},
      {"property suite", criterion9},
  };
  std::vector<int> selected;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(all.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], all.size());
      return 2;
    }
    selected.push_back(n);
  } else {
    for (int n = 1; n <= static_cast<int>(all.size()); ++n) selected.push_back(n);
  }
  bool ok = true;
  for (int n : selected) {
    const Criterion& cr = all[static_cast<std::size_t>(n - 1)];
    bool pass = false;
    try {
      pass = cr.run();
    } catch (const std::exception& e) {
      std::printf("  error: %s\n", e.what());
    }
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", n, cr.title);
    std::fflush(stdout);
    ok = ok && pass;
  }
  return ok ? 0 : 1;
}
