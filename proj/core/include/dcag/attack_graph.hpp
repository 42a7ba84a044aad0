#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcag/model.hpp"

namespace dcag {

/// Plain attack-graph input: assets with their exposure tags, directed
/// communication links, and the attack types present in the scenario.
struct AttackAsset {
  NodeId id;
  std::vector<std::string> exposures;  // attack-type tags
};

struct AttackLink {
  NodeId src;
  NodeId dst;
  std::string protocol;
};

struct AttackType {
  std::string tag;  // becomes the root-node id
  double level = 1.0;
};

struct AttackGraph {
  std::vector<AttackAsset> assets;
  std::vector<AttackLink> links;
  std::vector<AttackType> attack_types;
};

/// Numeric choices for the conversion. cond_prob is keyed by attack-type
/// or protocol tag; intensity by attack-type tag (link, self-loop and
/// gateway edges carry intensity 1).
struct ConversionPolicy {
  double default_self_persistence = 0.9;
  std::map<std::string, double> default_cond_prob;
  std::map<std::string, double> default_intensity;
  int gateway_threshold = 2;  // min shared-source count to insert a gateway
};

/// Convert an attack graph to a DCAG via the five conversion steps:
/// (1) one root per attack type, (2) one value node per asset with
/// same-slice edges from the links, (3) a self-loop per node, (4) edge
/// probabilities from the policy by tag, (5) a ConditionalSum gateway
/// for every group of >= gateway_threshold sources sharing an identical
/// non-empty target set (the grouped direct edges are replaced by gated
/// edges from the gateway). Deterministic; output validates cleanly.
/// Throws ConversionError naming any tag missing from the policy.
Dcag convert(const AttackGraph& ag, const ConversionPolicy& policy);

}  // namespace dcag
