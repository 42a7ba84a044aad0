#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace dcag {

/// Symbolic node identifier ("B1", "X13", "G0").
using NodeId = std::string;

/// True iff id matches [A-Za-z][A-Za-z0-9_]* (non-empty).
bool is_valid_node_id(const NodeId& id);

/// Binary security state of a node: state 1 is the attack event,
/// state 2 the benign event. Risk values are stored for AtRisk only;
/// the benign value is always the clamped complement.
enum class StateIndex : int { AtRisk = 1, Benign = 2 };

/// x_{n,2} = clamp(1 - x_{n,1}, 0, 1).
double complement(double risk_value);

/// Attack scenario acting as a risk source. The level is a severity
/// scalar, not a probability: values above 1 are allowed and enter
/// influence terms linearly (downstream node values are clamped).
struct RootNode {
  NodeId id;
  double level = 0.0;
};

enum class NodeKind { Exploit, ExtendedExploit };

/// Exploit node: the risk state of an asset. total_intensity is r_n,
/// the sum of the causal intensities of all incoming edges.
struct ValueNode {
  NodeId id;
  NodeKind kind = NodeKind::Exploit;
  double total_intensity = 0.0;
};

enum class GatewayKind {
  ConditionalSum,  // later parents weighted by earlier parents' benign complements
  PlainSum,        // clamped sum of parent risks
};

/// Key of one A_{g,k;p,j} entry: (gateway state k, parent id, parent state j).
struct GatewayProbKey {
  StateIndex gate_state;
  NodeId parent;
  StateIndex parent_state;
  auto operator<=>(const GatewayProbKey&) const = default;
};

/// Logic gateway combining parent risks as a pure expression.
/// PlainSum ignores probs; ConditionalSum needs an entry for every
/// (state, parent, parent-state) its expression references.
struct Gateway {
  NodeId id;
  GatewayKind kind = GatewayKind::PlainSum;
  std::vector<NodeId> parents;           // ordered; roots, nodes or gateways
  std::map<GatewayProbKey, double> probs;
};

enum class EdgeKind {
  SameSlice,       // solid arrow: src's value at the current slice
  GatedCrossSlice, // dashed: gated by the destination's previous benign state
  SelfLoop,        // dotted: risk persisting from slice t-1
};

/// Causal influence src -> dst. cond_prob is the risk-transmitting
/// entry a_{dst,1;src,1}; intensity is r_{dst;src}.
struct Edge {
  NodeId src;
  NodeId dst;  // always a value node
  EdgeKind kind = EdgeKind::SameSlice;
  double cond_prob = 0.0;
  double intensity = 0.0;
};

/// The directed causal attack graph. Immutable by convention after
/// construction; all simulation state lives outside it, so a single
/// instance can be shared across concurrent runs.
struct Dcag {
  std::vector<RootNode> roots;
  std::vector<ValueNode> nodes;
  std::vector<Gateway> gateways;
  std::vector<Edge> edges;
  std::vector<NodeId> system_nodes;  // nodes averaged for overall system risk

  const RootNode* find_root(const NodeId& id) const;
  const ValueNode* find_node(const NodeId& id) const;
  const Gateway* find_gateway(const NodeId& id) const;
};

/// F_{n,1;src,1} = (r_{n;src} / r_n) * a_{n,1;src,1}.
/// Throws StructuralError if edge.dst is not a declared value node.
double weighted_attack_factor(const Dcag& graph, const Edge& edge);

}  // namespace dcag
