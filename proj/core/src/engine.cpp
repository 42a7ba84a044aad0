#include "dcag/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include "dcag/errors.hpp"

namespace dcag {
namespace {

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

double gateway_prob(const Gateway& g, StateIndex gate_state, const NodeId& parent,
                    StateIndex parent_state) {
  auto it = g.probs.find({gate_state, parent, parent_state});
  if (it == g.probs.end())
    throw EvaluationError("gateway " + g.id + ": missing probability entry A(" +
                          std::to_string(static_cast<int>(gate_state)) + ";" + parent + "," +
                          std::to_string(static_cast<int>(parent_state)) + ")");
  return it->second;
}

// Gateway expressions combine risk states; parent inputs are clamped to
// [0,1] at the boundary so that root severity levels above 1 cannot turn
// a benign complement negative.
double eval_gateway_with(const Gateway& g, const std::function<double(const NodeId&)>& value) {
  if (g.kind == GatewayKind::PlainSum) {
    double sum = 0.0;
    for (const auto& p : g.parents) sum += clamp01(value(p));
    return clamp01(sum);
  }
  // Conditional sum: each parent's risk contribution is weighted by the
  // benign complements of all earlier parents.
  double acc = 0.0;
  double prefix = 1.0;
  for (std::size_t i = 0; i < g.parents.size(); ++i) {
    const NodeId& p = g.parents[i];
    double x = clamp01(value(p));
    acc += prefix * gateway_prob(g, StateIndex::AtRisk, p, StateIndex::AtRisk) * x;
    if (i + 1 < g.parents.size())
      prefix *= gateway_prob(g, StateIndex::Benign, p, StateIndex::AtRisk) * (1.0 - x);
  }
  return clamp01(acc);
}

// Gateways ordered so that gateway parents come first.
std::vector<const Gateway*> gateway_topo_order(const Dcag& graph) {
  std::vector<const Gateway*> order;
  std::set<NodeId> placed;
  std::set<NodeId> visiting;
  std::function<void(const Gateway&)> visit = [&](const Gateway& g) {
    if (placed.count(g.id)) return;
    if (!visiting.insert(g.id).second)
      throw EvaluationError("gateway-to-gateway references form a cycle at " + g.id);
    for (const auto& p : g.parents)
      if (const Gateway* pg = graph.find_gateway(p)) visit(*pg);
    visiting.erase(g.id);
    placed.insert(g.id);
    order.push_back(&g);
  };
  for (const auto& g : graph.gateways) visit(g);
  return order;
}

}  // namespace

double eval_gateway(const Gateway& g, const std::map<NodeId, double>& values) {
  return eval_gateway_with(g, [&](const NodeId& p) {
    auto it = values.find(p);
    if (it == values.end())
      throw EvaluationError("gateway " + g.id + ": no value for parent " + p);
    return it->second;
  });
}

std::map<NodeId, double> static_marginal(const Dcag& graph,
                                         const std::map<NodeId, double>& root_probs) {
  // Dependency edges: node <- sources of its non-self edges,
  // gateway <- its parents. Kahn's algorithm over nodes and gateways.
  std::map<NodeId, std::vector<NodeId>> dependents;
  std::map<NodeId, int> pending;
  for (const auto& n : graph.nodes) pending[n.id] = 0;
  for (const auto& g : graph.gateways) pending[g.id] = 0;
  auto depend = [&](const NodeId& on, const NodeId& who) {
    if (pending.count(on)) {  // root values are fixed inputs
      dependents[on].push_back(who);
      pending[who] += 1;
    }
  };
  for (const auto& e : graph.edges)
    if (e.kind != EdgeKind::SelfLoop) depend(e.src, e.dst);
  for (const auto& g : graph.gateways)
    for (const auto& p : g.parents) depend(p, g.id);

  std::deque<NodeId> ready;
  for (const auto& [id, count] : pending)
    if (count == 0) ready.push_back(id);

  std::map<NodeId, double> values;
  for (const auto& r : graph.roots) {
    auto it = root_probs.find(r.id);
    values[r.id] = it == root_probs.end() ? 0.0 : it->second;
  }

  std::map<NodeId, std::vector<const Edge*>> incoming;
  for (const auto& e : graph.edges)
    if (e.kind != EdgeKind::SelfLoop) incoming[e.dst].push_back(&e);

  std::size_t done = 0;
  while (!ready.empty()) {
    NodeId id = ready.front();
    ready.pop_front();
    ++done;
    if (const ValueNode* node = graph.find_node(id)) {
      double sum = 0.0;
      for (const Edge* e : incoming[id])
        sum += (e->intensity / node->total_intensity) * e->cond_prob * values.at(e->src);
      values[id] = sum;
    } else if (const Gateway* g = graph.find_gateway(id)) {
      values[id] = eval_gateway(*g, values);
    }
    for (const auto& next : dependents[id])
      if (--pending[next] == 0) ready.push_back(next);
  }
  if (done != pending.size())
    throw EvaluationError("static inference requires acyclic slice");

  std::map<NodeId, double> result;
  for (const auto& n : graph.nodes) result[n.id] = values.at(n.id);
  return result;
}

SliceState step(const Dcag& graph, const SliceState& prev, const SimConfig& cfg) {
  for (const auto& n : graph.nodes)
    if (!prev.values.count(n.id))
      throw EvaluationError("step: previous slice has no value for " + n.id);

  struct InfluenceTerm {
    EdgeKind kind;
    const NodeId* src;
    double weight;        // (r_{n;src} / r_n) * a
    bool src_is_root;
    double root_level;    // when src_is_root
    bool src_is_gateway;
  };
  std::vector<std::vector<InfluenceTerm>> terms(graph.nodes.size());
  std::map<NodeId, std::size_t> node_index;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) node_index[graph.nodes[i].id] = i;
  for (const auto& e : graph.edges) {
    auto it = node_index.find(e.dst);
    if (it == node_index.end())
      throw StructuralError("step: edge destination is not a value node: " + e.dst);
    const ValueNode& dst = graph.nodes[it->second];
    InfluenceTerm t;
    t.kind = e.kind;
    t.src = &e.src;
    t.weight = (e.intensity / dst.total_intensity) * e.cond_prob;
    const RootNode* root = graph.find_root(e.src);
    t.src_is_root = root != nullptr;
    t.root_level = root ? root->level : 0.0;
    t.src_is_gateway = graph.find_gateway(e.src) != nullptr;
    terms[it->second].push_back(t);
  }
  const auto gw_order = gateway_topo_order(graph);

  std::map<NodeId, double> cur = prev.values;
  std::map<NodeId, double> gw_values;
  double delta = 0.0;
  for (int sweep = 0; sweep < cfg.inner_max_iters; ++sweep) {
    for (const Gateway* g : gw_order) {
      gw_values[g->id] = eval_gateway_with(*g, [&](const NodeId& p) -> double {
        if (const RootNode* r = graph.find_root(p)) return r->level;
        if (auto it = gw_values.find(p); it != gw_values.end() && graph.find_gateway(p))
          return it->second;
        auto it = cur.find(p);
        if (it == cur.end())
          throw EvaluationError("gateway " + g->id + ": no value for parent " + p);
        return it->second;
      });
    }

    std::map<NodeId, double> next = cur;
    delta = 0.0;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      const NodeId& id = graph.nodes[i].id;
      double x_prev = prev.values.at(id);
      double sum = 0.0;
      for (const InfluenceTerm& t : terms[i]) {
        switch (t.kind) {
          case EdgeKind::SameSlice: {
            double v = t.src_is_root ? t.root_level
                       : t.src_is_gateway ? gw_values.at(*t.src)
                                          : cur.at(*t.src);
            sum += t.weight * v;
            break;
          }
          case EdgeKind::GatedCrossSlice: {
            double v = t.src_is_root ? t.root_level
                       : t.src_is_gateway ? gw_values.at(*t.src)
                                          : cur.at(*t.src);
            sum += t.weight * (1.0 - x_prev) * v;
            break;
          }
          case EdgeKind::SelfLoop:
            sum += t.weight * x_prev;
            break;
        }
      }
      double v = clamp01(sum);
      delta = std::max(delta, std::fabs(v - cur.at(id)));
      next[id] = v;
    }
    cur = std::move(next);
    if (delta < cfg.inner_tolerance) {
      SliceState out;
      out.t = prev.t + 1;
      out.values = std::move(cur);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "inner fixed point did not converge: residual " << delta << " after "
      << cfg.inner_max_iters << " iterations";
  throw ConvergenceError(msg.str(), delta, cfg.inner_max_iters);
}

double system_risk(const SliceState& state, const std::vector<NodeId>& system_nodes) {
  if (system_nodes.empty()) throw EvaluationError("system_risk: empty system-node list");
  double sum = 0.0;
  for (const auto& id : system_nodes) {
    auto it = state.values.find(id);
    if (it == state.values.end())
      throw EvaluationError("system_risk: no value for " + id);
    sum += it->second;
  }
  return sum / static_cast<double>(system_nodes.size());
}

Trajectory run(const Scenario& scenario) {
  Trajectory traj;
  SliceState state;
  state.t = 0;
  for (const auto& n : scenario.graph.nodes) {
    auto it = scenario.config.initial_state.find(n.id);
    state.values[n.id] = it == scenario.config.initial_state.end() ? 0.0 : clamp01(it->second);
  }
  auto record = [&](const SliceState& st) {
    traj.states.push_back(st);
    traj.system_risk.push_back(
        scenario.graph.system_nodes.empty() ? 0.0 : system_risk(st, scenario.graph.system_nodes));
  };
  record(state);
  for (int t = 0; t < scenario.config.iterations; ++t) {
    state = step(scenario.graph, state, scenario.config);
    record(state);
  }
  return traj;
}

std::vector<std::pair<double, double>> sweep(const Scenario& scenario, const NodeId& root,
                                             const std::vector<double>& levels, int iterations) {
  if (!scenario.graph.find_root(root))
    throw StructuralError("sweep: unknown root '" + root + "'");

  auto run_level = [&scenario, &root, iterations](double level) {
    Scenario s = scenario;
    for (auto& r : s.graph.roots)
      if (r.id == root) r.level = level;
    s.config.iterations = iterations;
    Trajectory traj = run(s);
    return traj.system_risk.back();
  };

  // Levels are independent simulations over the shared immutable graph;
  // results are joined in level order.
  std::vector<std::future<double>> futures;
  futures.reserve(levels.size());
  for (double level : levels)
    futures.push_back(std::async(std::launch::async, run_level, level));
  std::vector<std::pair<double, double>> table;
  table.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i)
    table.emplace_back(levels[i], futures[i].get());
  return table;
}

}  // namespace dcag
