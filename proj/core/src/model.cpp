#include "dcag/model.hpp"

#include <algorithm>
#include <cctype>

#include "dcag/errors.hpp"

namespace dcag {

bool is_valid_node_id(const NodeId& id) {
  if (id.empty() || !std::isalpha(static_cast<unsigned char>(id.front()))) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

double complement(double risk_value) {
  double b = 1.0 - risk_value;
  if (b < 0.0) return 0.0;
  if (b > 1.0) return 1.0;
  return b;
}

const RootNode* Dcag::find_root(const NodeId& id) const {
  for (const auto& r : roots)
    if (r.id == id) return &r;
  return nullptr;
}

const ValueNode* Dcag::find_node(const NodeId& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const Gateway* Dcag::find_gateway(const NodeId& id) const {
  for (const auto& g : gateways)
    if (g.id == id) return &g;
  return nullptr;
}

double weighted_attack_factor(const Dcag& graph, const Edge& edge) {
  const ValueNode* dst = graph.find_node(edge.dst);
  if (!dst) throw StructuralError("weighted_attack_factor: unknown destination node '" + edge.dst + "'");
  return (edge.intensity / dst->total_intensity) * edge.cond_prob;
}

}  // namespace dcag
