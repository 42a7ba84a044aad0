#pragma once

#include <string>
#include <vector>

#include "dcag/model.hpp"

namespace dcag {

/// One violated invariant. subject names the offending node/edge.
struct Violation {
  std::string subject;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Structural validation. Read-only and idempotent: violations are
/// data, not failures, and two calls return identical reports.
///
/// Checked invariants:
///  - ids well-formed and unique across roots, nodes and gateways
///  - root levels >= 0 and finite
///  - node total_intensity > 0 and equal to the incoming intensity sum
///    within 1e-9; every node has at least one incoming edge
///  - edge endpoints resolve, dst is a value node, cond_prob in [0,1],
///    intensity >= 0, SelfLoop iff src == dst
///  - gateway parents non-empty and resolving, prob entries in [0,1],
///    ConditionalSum entries complete, gateway-to-gateway links acyclic
///  - system_nodes are declared value nodes
ValidationReport validate(const Dcag& graph);

}  // namespace dcag
