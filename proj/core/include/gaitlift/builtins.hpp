#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaitlift/network.hpp"

namespace gaitlift {

/// A catalogued network together with its natural colouring and, for lifts,
/// the module layout.
struct BuiltinNetwork {
  Network network;
  std::optional<Coloring> coloring;
  std::optional<LiftStructure> lift;
};

/// 3-node ring 3 -> 1 -> 2 -> 3, one arrow type with weight "alpha".
Network ring3();

/// Ring3 continued by four feedforward nodes: node i > 1 reads node i-1 and
/// node 1 reads node 3.
Network chain7();

/// The Z2 x Z2 biped CPG: every node receives one diagonal ("alpha"), one
/// lateral ("beta") and one medial ("gamma") input.
Network biped4();

/// Lateral pairs of biped4 used by two-node modules.
std::vector<std::pair<int, int>> biped_lateral_pairs();

/// Asymmetric 5-node network whose clusters {1,5},{2},{3},{4} project onto
/// biped4; 2->5, 3->5 and 4->1 are its only unidirectional arrows.
Network five_node();

Lift biped_ff(int n_modules);
Lift biped_lateral(int n_modules);

/// Accepts chain7, ring3, biped4, five-node, biped-ff(k) and
/// biped-lateral(k) (k defaults to 1). Throws UnknownNetwork.
BuiltinNetwork builtin(const std::string& name);

std::vector<std::string> builtin_names();

}  // namespace gaitlift
