#include <algorithm>
#include <map>
#include <set>

#include "dcag/attack_graph.hpp"
#include "dcag/errors.hpp"

namespace dcag {
namespace {

double lookup(const std::map<std::string, double>& table, const std::string& tag,
              const char* what) {
  auto it = table.find(tag);
  if (it == table.end())
    throw ConversionError(std::string("conversion: no ") + what + " policy entry for tag '" +
                          tag + "'");
  return it->second;
}

}  // namespace

Dcag convert(const AttackGraph& ag, const ConversionPolicy& policy) {
  std::set<NodeId> asset_ids;
  for (const auto& a : ag.assets)
    if (!asset_ids.insert(a.id).second)
      throw ConversionError("conversion: duplicate asset id '" + a.id + "'");
  std::set<std::string> type_tags;
  for (const auto& t : ag.attack_types) type_tags.insert(t.tag);
  for (const auto& a : ag.assets)
    for (const auto& tag : a.exposures)
      if (!type_tags.count(tag))
        throw ConversionError("conversion: exposure tag '" + tag + "' is not a declared attack type");
  for (const auto& l : ag.links)
    if (!asset_ids.count(l.src) || !asset_ids.count(l.dst))
      throw ConversionError("conversion: link endpoint does not resolve: " + l.src + " -> " + l.dst);

  Dcag out;

  // Step 1: attack types become the root nodes, never vulnerabilities.
  for (const auto& t : ag.attack_types) out.roots.push_back({t.tag, t.level});

  // Step 2: one value node per asset; links become same-slice edges
  // (step 4 assigns each edge's conditional probability by tag).
  for (const auto& a : ag.assets) out.nodes.push_back({a.id, NodeKind::Exploit, 0.0});
  for (const auto& l : ag.links)
    out.edges.push_back({l.src, l.dst, EdgeKind::SameSlice,
                         lookup(policy.default_cond_prob, l.protocol, "cond_prob"), 1.0});

  // Step 3: temporal correlation, one self-loop per node.
  for (const auto& a : ag.assets)
    out.edges.push_back({a.id, a.id, EdgeKind::SelfLoop, policy.default_self_persistence, 1.0});

  // Step 4 (root edges): gated influence per exposure.
  for (const auto& a : ag.assets)
    for (const auto& tag : a.exposures)
      out.edges.push_back({tag, a.id, EdgeKind::GatedCrossSlice,
                           lookup(policy.default_cond_prob, tag, "cond_prob"),
                           lookup(policy.default_intensity, tag, "intensity")});

  // Step 5: sources sharing an identical non-empty target set form a
  // combinational causality; the grouped direct edges are replaced by a
  // ConditionalSum gateway feeding the shared targets.
  std::map<NodeId, std::set<NodeId>> targets_of;
  for (const auto& l : ag.links) targets_of[l.src].insert(l.dst);
  std::map<std::set<NodeId>, std::vector<NodeId>> groups;
  for (const auto& a : ag.assets) {
    auto it = targets_of.find(a.id);
    if (it != targets_of.end() && !it->second.empty()) groups[it->second].push_back(a.id);
  }
  int next_gateway = 0;
  for (auto& group : groups) {
    const std::set<NodeId>& target_set = group.first;
    std::vector<NodeId>& members = group.second;
    if (static_cast<int>(members.size()) < policy.gateway_threshold) continue;
    std::sort(members.begin(), members.end());

    double prob_sum = 0.0;
    int prob_count = 0;
    auto grouped = [&](const Edge& e) {
      return e.kind == EdgeKind::SameSlice &&
             std::find(members.begin(), members.end(), e.src) != members.end() &&
             target_set.count(e.dst);
    };
    for (const auto& e : out.edges)
      if (grouped(e)) {
        prob_sum += e.cond_prob;
        ++prob_count;
      }
    double prob = prob_count ? prob_sum / prob_count : 0.0;

    std::erase_if(out.edges, grouped);

    Gateway g;
    g.id = "G" + std::to_string(next_gateway++);
    g.kind = GatewayKind::ConditionalSum;
    g.parents = members;
    for (const auto& p : members) {
      g.probs[{StateIndex::AtRisk, p, StateIndex::AtRisk}] = prob;
      g.probs[{StateIndex::Benign, p, StateIndex::AtRisk}] = prob;
    }
    for (const auto& t : target_set)
      out.edges.push_back({g.id, t, EdgeKind::GatedCrossSlice, prob, 1.0});
    out.gateways.push_back(std::move(g));
  }

  // Totals derive from whatever edges each node ended up with.
  std::map<NodeId, double> sums;
  for (const auto& e : out.edges) sums[e.dst] += e.intensity;
  for (auto& n : out.nodes) n.total_intensity = sums[n.id];

  return out;
}

}  // namespace dcag
