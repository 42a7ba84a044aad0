#include "dcag/validate.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace dcag {
namespace {

constexpr double kIntensitySumTolerance = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

enum class IdKind { Root, Node, Gateway };

// Depth-first cycle check over gateway -> gateway parent references.
bool gateway_cycle_from(const Dcag& g, const NodeId& start, std::set<NodeId>& done,
                        std::set<NodeId>& path) {
  if (path.count(start)) return true;
  if (done.count(start)) return false;
  path.insert(start);
  if (const Gateway* gw = g.find_gateway(start)) {
    for (const auto& p : gw->parents) {
      if (g.find_gateway(p) && gateway_cycle_from(g, p, done, path)) return true;
    }
  }
  path.erase(start);
  done.insert(start);
  return false;
}

}  // namespace

ValidationReport validate(const Dcag& graph) {
  ValidationReport report;
  auto add = [&report](const std::string& subject, const std::string& message) {
    report.violations.push_back({subject, message});
  };

  std::map<NodeId, IdKind> ids;
  auto declare = [&](const NodeId& id, IdKind kind, const char* what) {
    if (!is_valid_node_id(id))
      add(id, std::string(what) + " id is not a valid identifier");
    if (ids.count(id))
      add(id, "duplicate id");
    else
      ids.emplace(id, kind);
  };

  for (const auto& r : graph.roots) declare(r.id, IdKind::Root, "root");
  for (const auto& n : graph.nodes) declare(n.id, IdKind::Node, "node");
  for (const auto& g : graph.gateways) declare(g.id, IdKind::Gateway, "gateway");

  for (const auto& r : graph.roots) {
    if (!(r.level >= 0.0) || !std::isfinite(r.level))
      add(r.id, "root level must be a finite nonnegative real, got " + fmt(r.level));
  }

  // Incoming intensity per node, accumulated from the edge list.
  std::map<NodeId, double> incoming_sum;
  std::map<NodeId, int> incoming_count;
  for (const auto& e : graph.edges) {
    const std::string subject = e.src + "->" + e.dst;
    auto src_it = ids.find(e.src);
    if (src_it == ids.end()) add(subject, "unresolved edge source '" + e.src + "'");
    auto dst_it = ids.find(e.dst);
    if (dst_it == ids.end()) {
      add(subject, "unresolved edge destination '" + e.dst + "'");
    } else if (dst_it->second != IdKind::Node) {
      add(subject, "edge destination must be a value node");
    } else {
      incoming_sum[e.dst] += e.intensity;
      incoming_count[e.dst] += 1;
    }
    if (!(e.cond_prob >= 0.0 && e.cond_prob <= 1.0))
      add(subject, "probability out of range: cond_prob = " + fmt(e.cond_prob));
    if (!(e.intensity >= 0.0) || !std::isfinite(e.intensity))
      add(subject, "intensity must be a finite nonnegative real, got " + fmt(e.intensity));
    if (e.kind == EdgeKind::SelfLoop && e.src != e.dst)
      add(subject, "SelfLoop edge requires src = dst");
    if (e.kind != EdgeKind::SelfLoop && e.src == e.dst)
      add(subject, "non-self edge requires src != dst");
  }

  for (const auto& n : graph.nodes) {
    if (!(n.total_intensity > 0.0))
      add(n.id, "total_intensity must be positive, got " + fmt(n.total_intensity));
    if (incoming_count[n.id] == 0) {
      add(n.id, "value node has no incoming edge");
    } else if (std::fabs(incoming_sum[n.id] - n.total_intensity) > kIntensitySumTolerance) {
      add(n.id, "intensity sum mismatch: incoming edges sum to " + fmt(incoming_sum[n.id]) +
                    " but total_intensity is " + fmt(n.total_intensity));
    }
  }

  for (const auto& g : graph.gateways) {
    if (g.parents.empty()) add(g.id, "gateway has no parents");
    for (const auto& p : g.parents) {
      if (!ids.count(p)) add(g.id, "unresolved gateway parent '" + p + "'");
    }
    for (const auto& [key, prob] : g.probs) {
      if (!(prob >= 0.0 && prob <= 1.0))
        add(g.id, "probability out of range: A(" + std::to_string(static_cast<int>(key.gate_state)) +
                      ";" + key.parent + "," + std::to_string(static_cast<int>(key.parent_state)) +
                      ") = " + fmt(prob));
    }
    if (g.kind == GatewayKind::ConditionalSum) {
      // The csum expression reads A(g,1;p,1) for every parent and
      // A(g,2;p,1) for every parent but the last.
      for (std::size_t i = 0; i < g.parents.size(); ++i) {
        if (!g.probs.count({StateIndex::AtRisk, g.parents[i], StateIndex::AtRisk}))
          add(g.id, "missing probability entry A(1;" + g.parents[i] + ",1)");
        if (i + 1 < g.parents.size() && !g.probs.count({StateIndex::Benign, g.parents[i], StateIndex::AtRisk}))
          add(g.id, "missing probability entry A(2;" + g.parents[i] + ",1)");
      }
    }
  }

  {
    std::set<NodeId> done, path;
    for (const auto& g : graph.gateways) {
      if (gateway_cycle_from(graph, g.id, done, path)) {
        add(g.id, "gateway-to-gateway references form a cycle");
        break;
      }
    }
  }

  for (const auto& s : graph.system_nodes) {
    auto it = ids.find(s);
    if (it == ids.end() || it->second != IdKind::Node)
      add(s, "system node is not a declared value node");
  }

  return report;
}

}  // namespace dcag
