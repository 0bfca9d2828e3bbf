#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gaitlift/builtins.hpp"
#include "gaitlift/floquet.hpp"
#include "gaitlift/integrator.hpp"
#include "gaitlift/io.hpp"
#include "gaitlift/rate_model.hpp"
#include "oracles.hpp"

namespace props {

using namespace gaitlift;

namespace {

void fail(Result& r, const std::string& what) {
  if (r.ok) r.detail = what;
  r.ok = false;
}

RateParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RateParams p;
  p.epsilon = 0.2 + 0.8 * (u(rng) + 1.0) / 2.0;
  p.g = 2.0 * (u(rng) + 1.0) / 2.0 + 0.2;
  p.input = {1.0 + 0.5 * u(rng)};
  p.symbols = {{"alpha", u(rng)}, {"beta", u(rng)}, {"gamma", u(rng)}};
  return p;
}

State random_state(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  State x(dim);
  for (int i = 0; i < dim; ++i) x(i) = u(rng);
  return x;
}

Network permuted(const Network& net, const std::vector<int>& sigma) {
  std::vector<Arrow> arrows;
  for (Arrow a : net.arrows()) {
    a.from = sigma[static_cast<std::size_t>(a.from - 1)];
    a.to = sigma[static_cast<std::size_t>(a.to - 1)];
    arrows.push_back(a);
  }
  return Network(net.nodes(), std::move(arrows), net.name());
}

}  // namespace

Network random_cpg(std::mt19937_64& rng, int max_nodes, bool lateral) {
  const int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
  std::vector<Node> nodes;
  for (int i = 1; i <= n; ++i) nodes.push_back({i, rng() % 4 == 0 ? "alt" : "std"});
  std::vector<Arrow> arrows;
  if (lateral) {
    arrows.push_back({2, 1, "lateral", Weight::named("beta")});
    arrows.push_back({1, 2, "lateral", Weight::named("beta")});
  }
  static const char* kTypes[] = {"p", "q"};
  static const char* kSymbols[] = {"alpha", "gamma"};
  for (int head = 1; head <= n; ++head) {
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int j = 0; j < k; ++j) {
      int tail = std::uniform_int_distribution<int>(1, n - 1)(rng);
      if (tail >= head) ++tail;
      const Weight w = rng() % 3 == 0 ? Weight::numeric(rng() % 2 ? 0.7 : -0.4)
                                      : Weight::named(kSymbols[rng() % 2]);
      arrows.push_back({tail, head, kTypes[rng() % 2], w});
    }
  }
  return Network(std::move(nodes), std::move(arrows), "random");
}

Result balanced_lifts(std::uint64_t seed, int count) {
  Result r{"balanced lift invariants"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < count && r.ok; ++c, ++r.cases) {
    const bool lateral = rng() % 2 == 0;
    LiftSpec spec;
    spec.cpg = random_cpg(rng, 6, lateral);
    spec.kind = lateral ? ModuleKind::two_node_lateral : ModuleKind::single_node;
    spec.n_modules = static_cast<int>(rng() % 5);
    if (lateral) spec.lateral_pairs = {{1, 2}};
    const Lift lift = feedforward_lift(spec);
    std::ostringstream tag;
    tag << "case " << c << " (n=" << spec.cpg.size() << ", modules=" << spec.n_modules
        << (lateral ? ", lateral" : "") << "): ";

    if (!is_balanced(lift.network, lift.coloring)) {
      fail(r, tag.str() + "lift colouring not balanced");
      break;
    }
    const auto [q, map] = quotient(lift.network, lift.coloring);
    if (!(q == spec.cpg) && !find_isomorphism(q, spec.cpg)) {
      fail(r, tag.str() + "quotient is not the CPG");
    }
    if (!check_fibration(lift.network, q, map)) fail(r, tag.str() + "quotient map is not a fibration");
    if (spec.n_modules == 0 && !(lift.network == spec.cpg)) {
      fail(r, tag.str() + "zero modules changed the network");
    }

    // The synchrony subspace is flow-invariant.
    const RateParams p = random_params(rng);
    const RateSystem cpg(spec.cpg, p);
    const RateSystem full(lift.network, p);
    const State x = random_state(cpg.dim(), rng);
    const int n = cpg.nodes(), big = full.nodes();
    State y(full.dim());
    for (int v = 1; v <= big; ++v) {
      const int c0 = lift.coloring.colour(v);
      y(v - 1) = x(c0 - 1);
      y(big + v - 1) = x(n + c0 - 1);
    }
    State dx(cpg.dim()), dy(full.dim());
    cpg.rhs(0.0, x, dx);
    full.rhs(0.0, y, dy);
    for (int v = 1; v <= big; ++v) {
      const int c0 = lift.coloring.colour(v);
      if (std::abs(dy(v - 1) - dx(c0 - 1)) > 1e-12 ||
          std::abs(dy(big + v - 1) - dx(n + c0 - 1)) > 1e-12) {
        fail(r, tag.str() + "vector field leaves the synchrony subspace");
        break;
      }
    }
  }
  return r;
}

Result fibration_round_trips() {
  Result r{"fibration round trips"};
  {
    const auto five = builtin("five-node");
    const auto [q, map] = quotient(five.network, *five.coloring);
    ++r.cases;
    if (!find_isomorphism(q, biped4())) fail(r, "five-node quotient is not biped4");
    if (!check_fibration(five.network, biped4(), {"five-node", "biped4", {1, 2, 3, 4, 1}})) {
      fail(r, "five-node -> biped4 map rejected");
    }
    if (check_fibration(five.network, biped4(), {"five-node", "biped4", {1, 2, 3, 4, 2}})) {
      fail(r, "five-node map with 5 -> 2 accepted");
    }
  }
  {
    const auto chain = builtin("chain7");
    const auto [q, map] = quotient(chain.network, *chain.coloring);
    ++r.cases;
    if (!find_isomorphism(q, ring3())) fail(r, "chain7 quotient is not ring3");
    if (!check_fibration(chain.network, q, map)) fail(r, "chain7 quotient map rejected");
  }
  for (const std::string name : {"chain7", "ring3", "biped4", "five-node", "biped-ff(2)",
                                  "biped-lateral(2)"}) {
    ++r.cases;
    const Network net = builtin(name).network;
    if (!(network_from_json(network_to_json(net)) == net)) fail(r, name + ": JSON round trip");
    std::vector<int> id(static_cast<std::size_t>(net.size()));
    std::iota(id.begin(), id.end(), 1);
    if (!check_fibration(net, net, {name, name, id})) fail(r, name + ": identity map rejected");
    const auto [q, map] = quotient(net, Coloring::trivial(net.size()));
    if (!(q == net)) fail(r, name + ": trivial quotient differs");
  }
  return r;
}

Result jacobian_finite_difference(std::uint64_t seed, int count) {
  Result r{"Jacobian vs finite differences"};
  std::mt19937_64 rng(seed);
  const Network nets[] = {biped4(), chain7(), five_node(), biped_lateral(2).network};
  for (int c = 0; c < count && r.ok; ++c, ++r.cases) {
    const Network& net = nets[static_cast<std::size_t>(c) % std::size(nets)];
    RateParams p = random_params(rng);
    if (rng() % 2) p.time_scale = TimeScale::fast;
    const RateSystem sys(net, p);
    const State x = random_state(sys.dim(), rng);
    Matrix j;
    sys.jacobian(0.0, x, j);
    const Matrix jfd = oracle::fd_jacobian(
        [&](const oracle::Vector& v) {
          State d(sys.dim());
          sys.rhs(0.0, v, d);
          return d;
        },
        x);
    const double err = (j - jfd).cwiseAbs().maxCoeff() / std::max(1.0, j.cwiseAbs().maxCoeff());
    if (err > 1e-6) fail(r, net.name() + ": relative error " + std::to_string(err));
  }
  return r;
}

Result rk4_order() {
  Result r{"RK4 order"};
  RateParams p;
  p.epsilon = 0.67;
  p.g = 1.8;
  p.input = {1.1};
  p.symbols = {{"alpha", 0.5}, {"beta", 0.6}, {"gamma", 0.8}};
  const RateSystem sys(biped4(), p);
  State x0(8);
  x0 << 0.1, 0.7, 0.3, 0.9, 0.2, 0.4, 0.6, 0.8;
  IntegratorConfig cfg;
  cfg.step = 1e-4;
  const State ref = flow(x0, sys, cfg, 0.0, 2.0);
  auto err = [&](double h) {
    cfg.step = h;
    return (flow(x0, sys, cfg, 0.0, 2.0) - ref).cwiseAbs().maxCoeff();
  };
  for (double h : {0.04, 0.02}) {
    ++r.cases;
    const double ratio = err(h) / err(h / 2.0);
    if (ratio < 12.0 || ratio > 20.0) {
      fail(r, "error ratio " + std::to_string(ratio) + " at h=" + std::to_string(h));
    }
  }
  return r;
}

Result conjugate_pairs(std::uint64_t seed, int count) {
  Result r{"conjugate-pair symmetry"};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < count && r.ok; ++c, ++r.cases) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const Matrix m = oracle::random_matrix(n, rng);
    const auto ev = eig(m);
    std::vector<oracle::Complex> conj;
    for (const auto& z : ev) conj.push_back(std::conj(z));
    if (oracle::multiset_distance(ev, conj) > 1e-10) fail(r, "unpaired eigenvalue");
    for (std::size_t i = 1; i < ev.size(); ++i) {
      if (std::abs(ev[i]) > std::abs(ev[i - 1]) * (1.0 + 1e-14)) fail(r, "not sorted by modulus");
    }
    const double d = oracle::lu_det(m);
    oracle::Complex prod = 1.0;
    for (const auto& z : ev) prod *= z;
    if (std::abs(prod - d) > 1e-8 * std::max(1.0, std::abs(d))) fail(r, "product differs from det");
  }
  return r;
}

Result automorphism_equivariance(std::uint64_t seed, int count) {
  Result r{"biped4 automorphism equivariance"};
  std::mt19937_64 rng(seed);
  const Network net = biped4();
  std::vector<std::vector<int>> autos;
  std::vector<int> sigma{1, 2, 3, 4};
  do {
    if (permuted(net, sigma) == net) autos.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  if (autos.size() != 4) fail(r, std::to_string(autos.size()) + " automorphisms, expected 4");

  for (int c = 0; c < count && r.ok; ++c) {
    const RateSystem sys(net, random_params(rng));
    const State x = random_state(8, rng);
    State dx(8);
    sys.rhs(0.0, x, dx);
    for (const auto& s : autos) {
      ++r.cases;
      State px(8), pdx(8);
      for (int i = 0; i < 4; ++i) {
        const int to = s[static_cast<std::size_t>(i)] - 1;
        px(to) = x(i);
        px(4 + to) = x(4 + i);
        pdx(to) = dx(i);
        pdx(4 + to) = dx(4 + i);
      }
      State dpx(8);
      sys.rhs(0.0, px, dpx);
      if ((dpx - pdx).cwiseAbs().maxCoeff() > 1e-13) fail(r, "rhs not equivariant");
    }
  }
  return r;
}

std::vector<Result> run_all(std::uint64_t seed) {
  return {balanced_lifts(seed, 300),          fibration_round_trips(),
          jacobian_finite_difference(seed + 1, 100), rk4_order(),
          conjugate_pairs(seed + 2, 300),     automorphism_equivariance(seed + 3, 25)};
}

}  // namespace props
