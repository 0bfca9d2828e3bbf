#include "gaitlift/network.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <tuple>

#include "gaitlift/error.hpp"

namespace gaitlift {

std::string Weight::to_string() const {
  if (is_symbolic()) return symbol;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

bool operator<(const Weight& a, const Weight& b) {
  if (a.is_symbolic() != b.is_symbolic()) return a.is_symbolic() < b.is_symbolic();
  if (a.is_symbolic()) return a.symbol < b.symbol;
  return a.value < b.value;
}

Network::Network(std::vector<Node> nodes, std::vector<Arrow> arrows, std::string name)
    : nodes_(std::move(nodes)), arrows_(std::move(arrows)), name_(std::move(name)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != static_cast<int>(i + 1)) {
      throw InvalidNetwork("node ids must be contiguous from 1 (found " +
                           std::to_string(nodes_[i].id) + " at position " +
                           std::to_string(i + 1) + ")");
    }
  }
  inputs_.assign(nodes_.size(), {});
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    const Arrow& a = arrows_[k];
    if (a.from < 1 || a.from > size() || a.to < 1 || a.to > size()) {
      throw InvalidNetwork("arrow " + std::to_string(a.from) + "->" + std::to_string(a.to) +
                           " references a missing node");
    }
    inputs_[static_cast<std::size_t>(a.to - 1)].push_back(k);
  }
}

Network Network::with_nodes(int n, std::vector<Arrow> arrows, std::string name,
                            const std::string& node_type) {
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) nodes.push_back({i, node_type});
  return Network(std::move(nodes), std::move(arrows), std::move(name));
}

namespace {

using ArrowKey = std::tuple<int, int, std::string, std::string, double>;

ArrowKey key_of(const Arrow& a, int from, int to) {
  return {from, to, a.type, a.weight.symbol, a.weight.is_symbolic() ? 0.0 : a.weight.value};
}

std::vector<ArrowKey> arrow_keys(const Network& net, const std::vector<int>* perm = nullptr) {
  std::vector<ArrowKey> keys;
  keys.reserve(net.arrows().size());
  for (const Arrow& a : net.arrows()) {
    int from = perm ? (*perm)[static_cast<std::size_t>(a.from - 1)] : a.from;
    int to = perm ? (*perm)[static_cast<std::size_t>(a.to - 1)] : a.to;
    keys.push_back(key_of(a, from, to));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

// Input multiset of a node with tails relabelled through `label`.
using InputKey = std::tuple<std::string, std::string, double, int>;

template <class Label>
std::vector<InputKey> input_signature(const Network& net, int node, Label&& label) {
  std::vector<InputKey> sig;
  for (std::size_t k : net.inputs(node)) {
    const Arrow& a = net.arrows()[k];
    sig.emplace_back(a.type, a.weight.symbol, a.weight.is_symbolic() ? 0.0 : a.weight.value,
                     label(a.from));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

void require_covers(const Network& net, const Coloring& col) {
  if (col.size() != net.size()) {
    throw InvalidColoring("colouring has " + std::to_string(col.size()) +
                          " entries for a network of " + std::to_string(net.size()) + " nodes");
  }
}

}  // namespace

bool operator==(const Network& a, const Network& b) {
  if (a.size() != b.size()) return false;
  for (int i = 1; i <= a.size(); ++i) {
    if (a.node(i).type != b.node(i).type) return false;
  }
  return arrow_keys(a) == arrow_keys(b);
}

Coloring::Coloring(std::vector<int> colours) : colours_(std::move(colours)) {
  if (colours_.empty()) return;
  num_colours_ = *std::max_element(colours_.begin(), colours_.end());
  std::vector<bool> used(static_cast<std::size_t>(std::max(num_colours_, 0)) + 1, false);
  for (int c : colours_) {
    if (c < 1) throw InvalidColoring("colour ids must be positive");
    used[static_cast<std::size_t>(c)] = true;
  }
  for (int c = 1; c <= num_colours_; ++c) {
    if (!used[static_cast<std::size_t>(c)]) {
      throw InvalidColoring("colour ids must be contiguous from 1; colour " +
                            std::to_string(c) + " is unused");
    }
  }
}

Coloring Coloring::from_clusters(const std::vector<std::vector<int>>& clusters) {
  int n = 0;
  for (const auto& cl : clusters) {
    for (int v : cl) n = std::max(n, v);
  }
  std::vector<int> colours(static_cast<std::size_t>(n), 0);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (int v : clusters[c]) {
      if (v < 1) throw InvalidColoring("node ids must be positive");
      auto& slot = colours[static_cast<std::size_t>(v - 1)];
      if (slot != 0) throw InvalidColoring("node " + std::to_string(v) + " has two colours");
      slot = static_cast<int>(c + 1);
    }
  }
  for (std::size_t i = 0; i < colours.size(); ++i) {
    if (colours[i] == 0) throw InvalidColoring("node " + std::to_string(i + 1) + " has no colour");
  }
  return Coloring(std::move(colours));
}

Coloring Coloring::trivial(int n) {
  std::vector<int> colours(static_cast<std::size_t>(n));
  std::iota(colours.begin(), colours.end(), 1);
  return Coloring(std::move(colours));
}

std::vector<std::vector<int>> Coloring::clusters() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_colours_));
  for (std::size_t i = 0; i < colours_.size(); ++i) {
    out[static_cast<std::size_t>(colours_[i] - 1)].push_back(static_cast<int>(i + 1));
  }
  return out;
}

bool is_balanced(const Network& net, const Coloring& col) {
  require_covers(net, col);
  auto colour_of = [&](int v) { return col.colour(v); };
  std::map<int, std::pair<std::string, std::vector<InputKey>>> reference;
  for (int v = 1; v <= net.size(); ++v) {
    auto sig = input_signature(net, v, colour_of);
    auto [it, fresh] = reference.try_emplace(col.colour(v), net.node(v).type, sig);
    if (!fresh && (it->second.first != net.node(v).type || it->second.second != sig)) {
      return false;
    }
  }
  return true;
}

std::pair<Network, NodeMap> quotient(const Network& net, const Coloring& col) {
  if (!is_balanced(net, col)) throw NotBalanced("colouring is not balanced");
  const auto clusters = col.clusters();
  std::vector<Node> nodes;
  std::vector<Arrow> arrows;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const int rep = clusters[c].front();
    const int qid = static_cast<int>(c + 1);
    nodes.push_back({qid, net.node(rep).type});
    for (std::size_t k : net.inputs(rep)) {
      Arrow a = net.arrows()[k];
      a.from = col.colour(a.from);
      a.to = qid;
      arrows.push_back(std::move(a));
    }
  }
  std::string qname = net.name().empty() ? std::string("quotient") : net.name() + "/quotient";
  NodeMap proj{net.name(), qname, col.colours()};
  return {Network(std::move(nodes), std::move(arrows), std::move(qname)), std::move(proj)};
}

bool check_fibration(const Network& src, const Network& dst, const NodeMap& map) {
  if (static_cast<int>(map.image.size()) != src.size()) return false;
  for (int v : map.image) {
    if (v < 1 || v > dst.size()) return false;
  }
  auto via_map = [&](int v) { return map(v); };
  auto identity = [](int v) { return v; };
  for (int v = 1; v <= src.size(); ++v) {
    const int w = map(v);
    if (src.node(v).type != dst.node(w).type) return false;
    if (input_signature(src, v, via_map) != input_signature(dst, w, identity)) return false;
  }
  return true;
}

Lift feedforward_lift(const LiftSpec& spec) {
  const Network& cpg = spec.cpg;
  const int n = cpg.size();
  if (spec.n_modules < 0) throw InvalidNetwork("n_modules must be non-negative");
  if (spec.kind == ModuleKind::single_node && spec.lateral_strength) {
    throw InvalidNetwork("single-node modules carry no lateral strength");
  }

  std::vector<Node> nodes = cpg.nodes();
  std::vector<Arrow> arrows = cpg.arrows();
  std::vector<int> counterpart(static_cast<std::size_t>(n));
  std::iota(counterpart.begin(), counterpart.end(), 1);
  // latest[c-1]: the most recently added node synchronous with CPG node c.
  std::vector<int> latest = counterpart;

  LiftStructure structure;
  structure.cpg_size = n;
  structure.kind = spec.kind;

  auto add_node = [&](int id, int cpg_node) {
    if (static_cast<int>(nodes.size()) < id) nodes.resize(static_cast<std::size_t>(id));
    nodes[static_cast<std::size_t>(id - 1)] = {id, cpg.node(cpg_node).type};
    if (static_cast<int>(counterpart.size()) < id) counterpart.resize(static_cast<std::size_t>(id));
    counterpart[static_cast<std::size_t>(id - 1)] = cpg_node;
  };

  if (spec.kind == ModuleKind::single_node) {
    if (n == 0 && spec.n_modules > 0) throw InvalidNetwork("cannot lift an empty CPG");
    for (int k = 1; k <= spec.n_modules; ++k) {
      const int id = n + k;
      const int c = (k - 1) % n + 1;
      add_node(id, c);
      for (std::size_t ai : cpg.inputs(c)) {
        Arrow a = cpg.arrows()[ai];
        a.from = latest[static_cast<std::size_t>(a.from - 1)];
        a.to = id;
        arrows.push_back(std::move(a));
      }
      latest[static_cast<std::size_t>(c - 1)] = id;
      structure.modules.push_back({id});
      structure.counterparts.push_back({c});
    }
  } else {
    if (spec.n_modules > 0 && spec.lateral_pairs.empty()) {
      throw InvalidNetwork("two-node lateral lift needs at least one lateral pair");
    }
    auto has_lateral = [&](int from, int to) {
      for (std::size_t ai : cpg.inputs(to)) {
        const Arrow& a = cpg.arrows()[ai];
        if (a.from == from && a.type == spec.lateral_type) return true;
      }
      return false;
    };
    for (auto [a, b] : spec.lateral_pairs) {
      if (a < 1 || a > n || b < 1 || b > n || a == b || !has_lateral(a, b) ||
          !has_lateral(b, a)) {
        throw InvalidNetwork("pair (" + std::to_string(a) + "," + std::to_string(b) +
                             ") is not joined by " + spec.lateral_type + " arrows both ways");
      }
    }
    const int m = spec.n_modules;
    const int npairs = static_cast<int>(spec.lateral_pairs.size());
    for (int k = 1; k <= m; ++k) {
      const auto [ca, cb] = spec.lateral_pairs[static_cast<std::size_t>((k - 1) % npairs)];
      const int p = n + k;
      const int q = n + m + k;
      add_node(p, ca);
      add_node(q, cb);
      auto wire = [&](int self, int self_cpg, int partner, int partner_cpg) {
        for (std::size_t ai : cpg.inputs(self_cpg)) {
          Arrow a = cpg.arrows()[ai];
          if (a.type == spec.lateral_type && a.from == partner_cpg) {
            a.from = partner;
            if (spec.lateral_strength) a.weight = *spec.lateral_strength;
          } else {
            a.from = latest[static_cast<std::size_t>(a.from - 1)];
          }
          a.to = self;
          arrows.push_back(std::move(a));
        }
      };
      wire(p, ca, q, cb);
      wire(q, cb, p, ca);
      latest[static_cast<std::size_t>(ca - 1)] = p;
      latest[static_cast<std::size_t>(cb - 1)] = q;
      structure.modules.push_back({p, q});
      structure.counterparts.push_back({ca, cb});
    }
  }

  std::string name = cpg.name();
  if (spec.n_modules > 0) {
    name += (spec.kind == ModuleKind::single_node ? "-ff(" : "-lateral(") +
            std::to_string(spec.n_modules) + ")";
  }
  Network net(std::move(nodes), std::move(arrows), std::move(name));
  return {std::move(net), Coloring(std::move(counterpart)), std::move(structure)};
}

std::optional<std::vector<int>> find_isomorphism(const Network& a, const Network& b) {
  if (a.size() != b.size() || a.arrows().size() != b.arrows().size()) return std::nullopt;
  const int n = a.size();
  if (n > 10) throw InvalidNetwork("isomorphism search is limited to 10 nodes");

  // Cheap per-node invariant used for pruning.
  auto profile = [](const Network& net, int v) {
    std::vector<std::string> in, out;
    for (const Arrow& ar : net.arrows()) {
      if (ar.to == v) in.push_back(ar.type + "/" + ar.weight.to_string());
      if (ar.from == v) out.push_back(ar.type + "/" + ar.weight.to_string());
    }
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    return std::make_tuple(net.node(v).type, in, out);
  };
  std::vector<decltype(profile(a, 1))> pa, pb;
  for (int v = 1; v <= n; ++v) {
    pa.push_back(profile(a, v));
    pb.push_back(profile(b, v));
  }

  const auto target = arrow_keys(b);
  std::vector<int> perm(static_cast<std::size_t>(n), 0);
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);

  auto search = [&](auto&& self, int v) -> bool {
    if (v > n) return arrow_keys(a, &perm) == target;
    for (int w = 1; w <= n; ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      if (pa[static_cast<std::size_t>(v - 1)] != pb[static_cast<std::size_t>(w - 1)]) continue;
      used[static_cast<std::size_t>(w)] = true;
      perm[static_cast<std::size_t>(v - 1)] = w;
      if (self(self, v + 1)) return true;
      used[static_cast<std::size_t>(w)] = false;
    }
    return false;
  };
  if (search(search, 1)) return perm;
  return std::nullopt;
}

}  // namespace gaitlift
