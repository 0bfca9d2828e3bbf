#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gaitlift {

/// Coupling strength carried by an arrow. Either a literal number or a
/// parameter name ("alpha", "beta", ...) resolved when a rate system is built.
struct Weight {
  std::string symbol;
  double value = 0.0;

  static Weight numeric(double v) { return Weight{{}, v}; }
  static Weight named(std::string name) { return Weight{std::move(name), 0.0}; }

  bool is_symbolic() const { return !symbol.empty(); }
  std::string to_string() const;

  friend bool operator==(const Weight& a, const Weight& b) {
    if (a.is_symbolic() || b.is_symbolic()) return a.symbol == b.symbol;
    return a.value == b.value;
  }
  friend bool operator<(const Weight& a, const Weight& b);
};

struct Node {
  int id = 0;
  std::string type = "std";
};

struct Arrow {
  int from = 0;
  int to = 0;
  std::string type = "std";
  Weight weight = Weight::numeric(1.0);
};

/// Typed directed multigraph. Node ids are 1..size() in order; arrows are
/// kept in insertion order and may repeat between the same pair of nodes.
class Network {
 public:
  Network() = default;
  Network(std::vector<Node> nodes, std::vector<Arrow> arrows, std::string name = {});

  /// Convenience: n nodes of a single type.
  static Network with_nodes(int n, std::vector<Arrow> arrows, std::string name = {},
                            const std::string& node_type = "std");

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id - 1)); }

  /// Indices into arrows() of the arrows whose head is `id`.
  const std::vector<std::size_t>& inputs(int id) const {
    return inputs_.at(static_cast<std::size_t>(id - 1));
  }

  /// Node-id-preserving equality: same node types and same arrow multisets.
  friend bool operator==(const Network& a, const Network& b);

 private:
  std::vector<Node> nodes_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> inputs_;
  std::string name_;
};

/// Total node colouring with colours 1..num_colours().
class Coloring {
 public:
  Coloring() = default;
  /// `colours[i]` is the colour of node i+1.
  explicit Coloring(std::vector<int> colours);
  /// Each inner list is one colour class; classes are numbered in order.
  static Coloring from_clusters(const std::vector<std::vector<int>>& clusters);
  static Coloring trivial(int n);

  int size() const { return static_cast<int>(colours_.size()); }
  int num_colours() const { return num_colours_; }
  int colour(int node_id) const { return colours_.at(static_cast<std::size_t>(node_id - 1)); }
  const std::vector<int>& colours() const { return colours_; }
  std::vector<std::vector<int>> clusters() const;

 private:
  std::vector<int> colours_;
  int num_colours_ = 0;
};

/// Node map between two networks; image[i] is the target of source node i+1.
struct NodeMap {
  std::string source;
  std::string target;
  std::vector<int> image;

  int operator()(int node_id) const { return image.at(static_cast<std::size_t>(node_id - 1)); }
};

enum class ModuleKind { single_node, two_node_lateral };

struct LiftSpec {
  Network cpg;
  ModuleKind kind = ModuleKind::single_node;
  int n_modules = 0;
  /// two_node_lateral only: the CPG node pairs joined by lateral arrows.
  /// Module k replicates pair (k-1) mod size.
  std::vector<std::pair<int, int>> lateral_pairs;
  /// Arrow type that marks the within-module partner input.
  std::string lateral_type = "lateral";
  /// Weight of the within-module lateral arrows; defaults to the CPG's.
  std::optional<Weight> lateral_strength;
};

/// Layout of a lift: which nodes form each module and which CPG node each
/// module node is synchronous with.
struct LiftStructure {
  int cpg_size = 0;
  ModuleKind kind = ModuleKind::single_node;
  std::vector<std::vector<int>> modules;
  std::vector<std::vector<int>> counterparts;
};

struct Lift {
  Network network;
  Coloring coloring;
  LiftStructure structure;
};

bool is_balanced(const Network& net, const Coloring& col);

/// One node per colour; throws NotBalanced when the colouring is not balanced.
std::pair<Network, NodeMap> quotient(const Network& net, const Coloring& col);

bool check_fibration(const Network& src, const Network& dst, const NodeMap& map);

Lift feedforward_lift(const LiftSpec& spec);

/// Brute-force isomorphism search; returns the node permutation (image of
/// node i+1 in `b`) if one exists. Limited to networks of at most 10 nodes.
std::optional<std::vector<int>> find_isomorphism(const Network& a, const Network& b);

}  // namespace gaitlift
