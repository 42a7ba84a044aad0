#include <algorithm>
#include <sstream>

#include "dcag/dot.hpp"

namespace dcag {
namespace {

const char* edge_style(EdgeKind k) {
  switch (k) {
    case EdgeKind::SameSlice: return "solid";
    case EdgeKind::GatedCrossSlice: return "dashed";
    case EdgeKind::SelfLoop: return "dotted";
  }
  return "solid";
}

}  // namespace

std::string render_dot(const Dcag& graph) {
  if (graph.roots.empty() && graph.nodes.empty() && graph.gateways.empty() &&
      graph.edges.empty())
    return "digraph dcag { }\n";

  std::ostringstream out;
  out << "digraph dcag {\n";

  auto ids_of = [](const auto& items) {
    std::vector<NodeId> ids;
    ids.reserve(items.size());
    for (const auto& x : items) ids.push_back(x.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  for (const auto& id : ids_of(graph.roots)) out << "  " << id << " [shape=box];\n";
  for (const auto& id : ids_of(graph.nodes)) out << "  " << id << " [shape=ellipse];\n";
  for (const auto& id : ids_of(graph.gateways)) out << "  " << id << " [shape=diamond];\n";

  auto edges = graph.edges;
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tuple(a.src, a.dst, static_cast<int>(a.kind), a.cond_prob, a.intensity) <
           std::tuple(b.src, b.dst, static_cast<int>(b.kind), b.cond_prob, b.intensity);
  });
  for (const auto& e : edges)
    out << "  " << e.src << " -> " << e.dst << " [style=" << edge_style(e.kind) << "];\n";

  // Parent links into gateways, drawn distinctly from causal edges.
  std::vector<std::pair<NodeId, NodeId>> glinks;
  for (const auto& g : graph.gateways)
    for (const auto& p : g.parents) glinks.emplace_back(p, g.id);
  std::sort(glinks.begin(), glinks.end());
  for (const auto& [p, g] : glinks)
    out << "  " << p << " -> " << g << " [style=solid, color=gray];\n";

  out << "}\n";
  return out.str();
}

}  // namespace dcag
