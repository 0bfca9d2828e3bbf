#include "gaitlift/builtins.hpp"

#include <regex>

#include "gaitlift/error.hpp"

namespace gaitlift {

namespace {

const Weight kAlpha = Weight::named("alpha");
const Weight kBeta = Weight::named("beta");
const Weight kGamma = Weight::named("gamma");

Arrow chain_arrow(int from, int to) { return {from, to, "std", kAlpha}; }

// Per-head inputs (diagonal, lateral, medial) of the biped CPG.
struct BipedInputs {
  int head, diag, lateral, medial;
};

std::vector<Arrow> biped_arrows(const std::vector<BipedInputs>& rows) {
  std::vector<Arrow> arrows;
  for (const auto& r : rows) {
    arrows.push_back({r.diag, r.head, "diag", kAlpha});
    arrows.push_back({r.lateral, r.head, "lateral", kBeta});
    arrows.push_back({r.medial, r.head, "medial", kGamma});
  }
  return arrows;
}

}  // namespace

Network ring3() {
  return Network::with_nodes(3, {chain_arrow(3, 1), chain_arrow(1, 2), chain_arrow(2, 3)}, "ring3");
}

Network chain7() {
  std::vector<Arrow> arrows{chain_arrow(3, 1)};
  for (int i = 2; i <= 7; ++i) arrows.push_back(chain_arrow(i - 1, i));
  return Network::with_nodes(7, std::move(arrows), "chain7");
}

Network biped4() {
  return Network::with_nodes(4,
                             biped_arrows({{1, 4, 3, 2}, {2, 3, 4, 1}, {3, 2, 1, 4}, {4, 1, 2, 3}}),
                             "biped4");
}

std::vector<std::pair<int, int>> biped_lateral_pairs() { return {{1, 3}, {2, 4}}; }

Network five_node() {
  // Nodes 1 and 5 both read diag from 4, lateral from 3, medial from 2; the
  // remaining heads read their biped4 inputs with node 1 or 5 standing in for
  // the merged class.
  return Network::with_nodes(
      5, biped_arrows({{1, 4, 3, 2}, {5, 4, 3, 2}, {2, 3, 4, 1}, {3, 2, 1, 4}, {4, 5, 2, 3}}),
      "five-node");
}

Lift biped_ff(int n_modules) {
  LiftSpec spec;
  spec.cpg = biped4();
  spec.kind = ModuleKind::single_node;
  spec.n_modules = n_modules;
  return feedforward_lift(spec);
}

Lift biped_lateral(int n_modules) {
  LiftSpec spec;
  spec.cpg = biped4();
  spec.kind = ModuleKind::two_node_lateral;
  spec.n_modules = n_modules;
  spec.lateral_pairs = biped_lateral_pairs();
  return feedforward_lift(spec);
}

BuiltinNetwork builtin(const std::string& name) {
  if (name == "chain7") {
    LiftSpec spec;
    spec.cpg = ring3();
    spec.n_modules = 4;
    return {chain7(), Coloring::from_clusters({{1, 4, 7}, {2, 5}, {3, 6}}),
            feedforward_lift(spec).structure};
  }
  if (name == "ring3") return {ring3(), Coloring::trivial(3), std::nullopt};
  if (name == "biped4") return {biped4(), Coloring::trivial(4), std::nullopt};
  if (name == "five-node") {
    return {five_node(), Coloring::from_clusters({{1, 5}, {2}, {3}, {4}}), std::nullopt};
  }
  static const std::regex lift_re(R"((biped-ff|biped-lateral)(?:\((\d+)\))?)");
  std::smatch m;
  if (std::regex_match(name, m, lift_re)) {
    const int k = m[2].matched ? std::stoi(m[2].str()) : 1;
    Lift lift = m[1] == "biped-ff" ? biped_ff(k) : biped_lateral(k);
    return {std::move(lift.network), std::move(lift.coloring), std::move(lift.structure)};
  }
  throw UnknownNetwork("'" + name + "' (known: chain7, ring3, biped4, five-node, biped-ff(k), "
                       "biped-lateral(k))");
}

std::vector<std::string> builtin_names() {
  return {"chain7", "ring3", "biped4", "five-node", "biped-ff(k)", "biped-lateral(k)"};
}

}  // namespace gaitlift
