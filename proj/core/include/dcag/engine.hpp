#pragma once

#include <map>
#include <vector>

#include "dcag/model.hpp"
#include "dcag/scenario.hpp"

namespace dcag {

/// Per-time-slice vector of node risk values, all in [0,1].
struct SliceState {
  int t = 0;
  std::map<NodeId, double> values;
};

/// Ordered slice states (t = 0..N) plus the derived system-risk series.
struct Trajectory {
  std::vector<SliceState> states;
  std::vector<double> system_risk;  // one entry per slice; 0 when no system nodes
};

/// Evaluate one gateway from the given values (parents must be present;
/// throws EvaluationError otherwise). PlainSum returns clamp(sum x_i).
/// ConditionalSum over ordered parents p1..pm returns
///   clamp( sum_i [ prod_{j<i} A(g,2;pj,1) * (1 - x_pj) ] * A(g,1;pi,1) * x_pi )
/// which reduces to the two-parent G0 expression.
double eval_gateway(const Gateway& g, const std::map<NodeId, double>& values);

/// Static single-slice marginals under linear conditional semantics:
/// topological
/// evaluation of x_n = sum_i (r_{n;i}/r_n) * a_i * v_i over SameSlice and
/// GatedCrossSlice edges (self-loops are temporal and ignored), gateways
/// evaluated inline. Roots missing from the assignment count as 0.
/// Throws EvaluationError if the slice restricted to those edges is cyclic.
std::map<NodeId, double> static_marginal(const Dcag& graph,
                                         const std::map<NodeId, double>& root_probs);

/// Advance one time slice. Each incoming edge of node n contributes
///   SameSlice(p):       (r/r_n) * a * x_p^t
///   GatedCrossSlice(s): (r/r_n) * (1 - x_n^{t-1}) * a * v_s
///   SelfLoop:           (r/r_n) * a * x_n^{t-1}
/// where v_s is a root level, a gateway value at t, or another node's
/// x_s^t. Same-slice cycles make the slice a simultaneous system; it is
/// solved by Jacobi fixed-point iteration initialized at the previous
/// slice, with gateways re-evaluated from the current iterate each sweep
/// and node sums clamped to [0,1]. Throws ConvergenceError (with residual
/// and iteration count) if cfg.inner_max_iters is exhausted.
SliceState step(const Dcag& graph, const SliceState& prev, const SimConfig& cfg);

/// Arithmetic mean of the listed nodes' values. Throws EvaluationError
/// on an empty list or a missing node.
double system_risk(const SliceState& state, const std::vector<NodeId>& system_nodes);

/// Slice 0 is cfg.initial_state (unlisted nodes 0); applies step
/// cfg.iterations times, recording system risk per slice.
Trajectory run(const Scenario& scenario);

/// Independent simulations with the root's level overridden per entry;
/// rows ordered as given. Throws StructuralError for an unknown root.
std::vector<std::pair<double, double>> sweep(const Scenario& scenario, const NodeId& root,
                                             const std::vector<double>& levels, int iterations);

}  // namespace dcag
