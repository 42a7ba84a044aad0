#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dcag/scenario.hpp"

namespace dcag {
namespace {

// Up to 12 significant digits, shortest form ("2", "0.001", "1e-12").
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

bool edge_less(const Edge& a, const Edge& b) {
  auto key = [](const Edge& e) {
    return std::tuple(e.src, e.dst, static_cast<int>(e.kind), e.cond_prob, e.intensity);
  };
  return key(a) < key(b);
}

const char* kind_word(EdgeKind k) {
  switch (k) {
    case EdgeKind::SameSlice: return "same";
    case EdgeKind::GatedCrossSlice: return "gated";
    case EdgeKind::SelfLoop: return "self";
  }
  return "same";
}

bool num_eq(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;

  auto roots = s.graph.roots;
  std::sort(roots.begin(), roots.end(), [](auto& a, auto& b) { return a.id < b.id; });
  for (const auto& r : roots) out << "root " << r.id << " level " << num(r.level) << "\n";

  auto nodes = s.graph.nodes;
  std::sort(nodes.begin(), nodes.end(), [](auto& a, auto& b) { return a.id < b.id; });
  for (const auto& n : nodes)
    out << "node " << n.id << " intensity " << num(n.total_intensity) << "\n";

  auto gateways = s.graph.gateways;
  std::sort(gateways.begin(), gateways.end(), [](auto& a, auto& b) { return a.id < b.id; });
  for (const auto& g : gateways) {
    out << "gateway " << g.id << " "
        << (g.kind == GatewayKind::ConditionalSum ? "csum" : "sum") << "(";
    for (std::size_t i = 0; i < g.parents.size(); ++i)
      out << (i ? ", " : "") << g.parents[i];
    out << ")";
    if (g.kind == GatewayKind::ConditionalSum && !g.parents.empty()) {
      // The grammar expresses only uniform probabilities.
      auto it = g.probs.find({StateIndex::AtRisk, g.parents.front(), StateIndex::AtRisk});
      if (it != g.probs.end()) out << " prob " << num(it->second);
    }
    out << "\n";
  }

  auto edges = s.graph.edges;
  std::sort(edges.begin(), edges.end(), edge_less);
  for (const auto& e : edges)
    out << "edge " << e.src << " -> " << e.dst << " kind " << kind_word(e.kind) << " prob "
        << num(e.cond_prob) << " intensity " << num(e.intensity) << "\n";

  out << "simulate iterations " << s.config.iterations;
  if (!s.graph.system_nodes.empty()) {
    auto sys = s.graph.system_nodes;
    std::sort(sys.begin(), sys.end());
    out << " system (";
    for (std::size_t i = 0; i < sys.size(); ++i) out << (i ? ", " : "") << sys[i];
    out << ")";
  }
  out << " tolerance " << num(s.config.inner_tolerance);
  out << " inner_max " << s.config.inner_max_iters << "\n";
  return out.str();
}

bool structural_equals(const Scenario& a, const Scenario& b) {
  auto ra = a.graph.roots, rb = b.graph.roots;
  auto by_id = [](auto& x, auto& y) { return x.id < y.id; };
  std::sort(ra.begin(), ra.end(), by_id);
  std::sort(rb.begin(), rb.end(), by_id);
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i)
    if (ra[i].id != rb[i].id || !num_eq(ra[i].level, rb[i].level)) return false;

  auto na = a.graph.nodes, nb = b.graph.nodes;
  std::sort(na.begin(), na.end(), by_id);
  std::sort(nb.begin(), nb.end(), by_id);
  if (na.size() != nb.size()) return false;
  for (std::size_t i = 0; i < na.size(); ++i)
    if (na[i].id != nb[i].id || !num_eq(na[i].total_intensity, nb[i].total_intensity))
      return false;

  auto ga = a.graph.gateways, gb = b.graph.gateways;
  std::sort(ga.begin(), ga.end(), by_id);
  std::sort(gb.begin(), gb.end(), by_id);
  if (ga.size() != gb.size()) return false;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    if (ga[i].id != gb[i].id || ga[i].kind != gb[i].kind || ga[i].parents != gb[i].parents)
      return false;
    if (ga[i].kind == GatewayKind::ConditionalSum) {
      if (ga[i].probs.size() != gb[i].probs.size()) return false;
      auto it = gb[i].probs.begin();
      for (const auto& [key, prob] : ga[i].probs) {
        if (key != it->first || !num_eq(prob, it->second)) return false;
        ++it;
      }
    }
  }

  auto ea = a.graph.edges, eb = b.graph.edges;
  std::sort(ea.begin(), ea.end(), edge_less);
  std::sort(eb.begin(), eb.end(), edge_less);
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].src != eb[i].src || ea[i].dst != eb[i].dst || ea[i].kind != eb[i].kind)
      return false;
    if (!num_eq(ea[i].cond_prob, eb[i].cond_prob) || !num_eq(ea[i].intensity, eb[i].intensity))
      return false;
  }

  auto sa = a.graph.system_nodes, sb = b.graph.system_nodes;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;

  return a.config.iterations == b.config.iterations &&
         a.config.inner_max_iters == b.config.inner_max_iters &&
         num_eq(a.config.inner_tolerance, b.config.inner_tolerance);
}

}  // namespace dcag
