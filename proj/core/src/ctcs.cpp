#include "dcag/ctcs.hpp"

#include <algorithm>
#include <optional>

#include "dcag/errors.hpp"

namespace dcag::ctcs {
namespace {

using params::kCbiSafety;
using params::kCentralInner;
using params::kCentralMalware;
using params::kCentralNetwork;
using params::kDeviceLink;
using params::kGatewayProb;
using params::kSelfPersistence;
using params::kSignalSecurity;
using params::kTracksideMalware;
using params::kTracksideWireless;

struct Influence {
  NodeId src;
  EdgeKind kind;
  double prob;
};

}  // namespace

Scenario build_ctcs(const CtcsOptions& opts) {
  Scenario scenario;
  Dcag& g = scenario.graph;

  for (const auto& id : {"B1", "B2", "B3", "B4"}) {
    double level = 0.0;
    if (auto it = opts.root_levels.find(id); it != opts.root_levels.end()) level = it->second;
    g.roots.push_back({id, level});
  }

  const double cbi = opts.cbi_functional_safety ? kCbiSafety : kDeviceLink;

  // Incoming influences per node, the malware-root edge first. The
  // designated malware intensity takes its share and the remaining
  // intensity is split equally over the other edges, self-loop included.
  // X5 has no designated malware intensity; all its edges share equally.
  auto add_node = [&g](const NodeId& id, std::optional<double> malware_share,
                       const std::vector<Influence>& influences) {
    std::vector<Edge> edges;
    double share;
    if (malware_share) {
      share = (1.0 - *malware_share) / static_cast<double>(influences.size());  // + self - 1
    } else {
      share = 1.0 / static_cast<double>(influences.size() + 1);
    }
    for (std::size_t i = 0; i < influences.size(); ++i) {
      const Influence& inf = influences[i];
      double w = (malware_share && i == 0) ? *malware_share : share;
      edges.push_back({inf.src, id, inf.kind, inf.prob, w});
    }
    edges.push_back({id, id, EdgeKind::SelfLoop, kSelfPersistence, share});
    double total = 0.0;
    for (const auto& e : edges) total += e.intensity;
    g.nodes.push_back({id, NodeKind::Exploit, total});
    for (auto& e : edges) g.edges.push_back(std::move(e));
  };

  // Central (IT) subsystem.
  add_node("X13", 0.75, {{"B1", EdgeKind::GatedCrossSlice, kCentralMalware},
                         {"B2", EdgeKind::GatedCrossSlice, kCentralNetwork}});
  add_node("X15", 0.75, {{"B1", EdgeKind::GatedCrossSlice, kCentralMalware},
                         {"B2", EdgeKind::GatedCrossSlice, kCentralNetwork}});
  add_node("X11", 0.5, {{"B1", EdgeKind::GatedCrossSlice, kCentralMalware},
                        {"X14", EdgeKind::SameSlice, kCentralInner},
                        {"G0", EdgeKind::GatedCrossSlice, kGatewayProb}});
  add_node("X14", 0.4, {{"B1", EdgeKind::GatedCrossSlice, kCentralMalware},
                        {"X12", EdgeKind::SameSlice, kCentralInner},
                        {"X11", EdgeKind::SameSlice, kCentralInner},
                        {"G0", EdgeKind::GatedCrossSlice, kGatewayProb}});
  add_node("X12", 0.75, {{"B1", EdgeKind::GatedCrossSlice, kCentralMalware},
                         {"X14", EdgeKind::SameSlice, kCentralInner}});

  // Trackside (OT) subsystem. X5<->X7 run over two channels: the plain
  // device link and the signal-security protocol.
  add_node("X7", 0.4, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                       {"X5", EdgeKind::SameSlice, kSignalSecurity},
                       {"X5", EdgeKind::SameSlice, kDeviceLink},
                       {"X17", EdgeKind::SameSlice, kDeviceLink}});
  add_node("X5", std::nullopt, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                                {"X6", EdgeKind::SameSlice, cbi},
                                {"X7", EdgeKind::SameSlice, kSignalSecurity},
                                {"X7", EdgeKind::SameSlice, kDeviceLink},
                                {"X11", EdgeKind::GatedCrossSlice, kDeviceLink}});
  add_node("X16", 0.75, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                         {"G4", EdgeKind::GatedCrossSlice, kGatewayProb}});
  add_node("X6", 0.5, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                       {"X8", EdgeKind::SameSlice, cbi},
                       {"X5", EdgeKind::SameSlice, cbi}});
  add_node("X18", 0.5, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                        {"X9", EdgeKind::SameSlice, kDeviceLink},
                        {"X4", EdgeKind::SameSlice, kDeviceLink},
                        {"B4", EdgeKind::GatedCrossSlice, kTracksideWireless}});
  add_node("X17", 0.5, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                        {"X7", EdgeKind::SameSlice, kDeviceLink},
                        {"X11", EdgeKind::GatedCrossSlice, kDeviceLink}});
  add_node("X4", 0.75, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                        {"X18", EdgeKind::SameSlice, kDeviceLink}});
  add_node("X8", 0.75, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                        {"X6", EdgeKind::SameSlice, cbi}});
  add_node("X9", 0.5, {{"B3", EdgeKind::GatedCrossSlice, kTracksideMalware},
                       {"X18", EdgeKind::SameSlice, kDeviceLink},
                       {"B4", EdgeKind::GatedCrossSlice, kTracksideWireless}});

  auto uniform_csum = [](const NodeId& id, std::vector<NodeId> parents, double prob) {
    Gateway gw;
    gw.id = id;
    gw.kind = GatewayKind::ConditionalSum;
    gw.parents = std::move(parents);
    for (const auto& p : gw.parents) {
      gw.probs[{StateIndex::AtRisk, p, StateIndex::AtRisk}] = prob;
      gw.probs[{StateIndex::Benign, p, StateIndex::AtRisk}] = prob;
    }
    return gw;
  };
  g.gateways.push_back(uniform_csum("G0", {"X13", "X15"}, kGatewayProb));
  g.gateways.push_back({"G1", GatewayKind::PlainSum, opts.g1_inputs, {}});
  g.gateways.push_back({"G2", GatewayKind::PlainSum, opts.g2_inputs, {}});
  g.gateways.push_back(uniform_csum("G4", {"G1", "G2"}, kGatewayProb));

  g.system_nodes = {"X9", "X18", "X4", "X8", "X6", "X5", "X17", "X7", "X16"};

  scenario.config.iterations = 120;
  scenario.config.inner_tolerance = 1e-12;
  scenario.config.inner_max_iters = 10000;
  return scenario;
}

std::pair<Trajectory, Trajectory> experiment_cbi(int iterations) {
  CtcsOptions with;
  with.cbi_functional_safety = true;
  CtcsOptions without;
  without.cbi_functional_safety = false;
  Scenario a = build_ctcs(with);
  Scenario b = build_ctcs(without);
  a.config.iterations = iterations;
  b.config.iterations = iterations;
  return {run(a), run(b)};
}

std::vector<std::pair<NodeId, double>> experiment_component_ranking(int iterations) {
  Scenario s = build_ctcs();
  s.config.iterations = iterations;
  Trajectory traj = run(s);
  const SliceState& last = traj.states.back();
  std::vector<std::pair<NodeId, double>> ranking(last.values.begin(), last.values.end());
  std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranking;
}

NodeId attack_root(AttackKind kind) {
  switch (kind) {
    case AttackKind::Wireless: return "B4";
    case AttackKind::Network: return "B2";
    case AttackKind::MalwareOt: return "B3";
    case AttackKind::MalwareIt: return "B1";
  }
  throw Error("unknown attack kind");
}

std::vector<std::pair<double, double>> experiment_attack_levels(AttackKind kind, int level_from,
                                                                int level_to, int iterations) {
  Scenario s = build_ctcs();
  std::vector<double> levels;
  for (int l = level_from; l <= level_to; ++l) levels.push_back(static_cast<double>(l));
  return sweep(s, attack_root(kind), levels, iterations);
}

}  // namespace dcag::ctcs
