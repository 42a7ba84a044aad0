#pragma once

#include <map>
#include <string>
#include <variant>

#include "dcag/model.hpp"

namespace dcag {

/// Simulation configuration attached to a scenario.
struct SimConfig {
  int iterations = 1;                      // outer time slices, >= 1
  double inner_tolerance = 1e-12;          // within-slice fixed-point tolerance
  int inner_max_iters = 10000;             // within-slice iteration cap
  std::map<NodeId, double> initial_state;  // nodes not listed start at 0
};

/// A graph plus its simulation configuration. Parsed scenarios always
/// carry a graph that validates cleanly.
struct Scenario {
  Dcag graph;
  SimConfig config;
};

/// Parse failure with 1-based source position.
struct ParseError {
  int line = 1;
  int column = 1;
  std::string message;
  std::string snippet;  // offending text
};

using ParseResult = std::variant<Scenario, ParseError>;

/// Parse scenario-language text (.dcag files). On success the returned
/// graph validates cleanly; unknown identifiers, duplicate declarations
/// and out-of-range numbers are ParseErrors, never silent defaults.
ParseResult parse_scenario(const std::string& source);

/// Canonical scenario text: declarations sorted by (kind, id), root
/// lines first, numbers with up to 12 significant digits. Parsing the
/// output reproduces a structurally equal scenario.
std::string render_scenario(const Scenario& s);

/// Structural equality as used by the round-trip property: ids, kinds
/// and shapes exact; numeric fields within |a-b| <= 1e-9 * max(1,|a|,|b|)
/// (canonical rendering keeps 12 significant digits).
bool structural_equals(const Scenario& a, const Scenario& b);

}  // namespace dcag
