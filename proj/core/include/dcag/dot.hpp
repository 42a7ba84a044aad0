#pragma once

#include <string>

#include "dcag/model.hpp"

namespace dcag {

/// Graphviz DOT export. Roots are boxes, value nodes ellipses, gateways
/// diamonds; SameSlice edges solid, GatedCrossSlice dashed, SelfLoop
/// dotted. Gateway parent links are drawn solid gray. Output is
/// deterministic (sorted ids).
std::string render_dot(const Dcag& graph);

}  // namespace dcag
