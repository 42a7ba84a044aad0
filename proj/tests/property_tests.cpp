#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dcag/csv.hpp"
#include "dcag/ctcs.hpp"
#include "dcag/engine.hpp"
#include "dcag/scenario.hpp"
#include "dcag/validate.hpp"
#include "enumeration.hpp"
#include "naive_ctcs.hpp"
#include "support/generators.hpp"

using namespace dcag;
using dcag::testing::pick;
using dcag::testing::random_acyclic_dcag;
using dcag::testing::random_scenario;
using dcag::testing::uniform;

TEST_CASE("complement is an involution on [0,1]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i <= 100; ++i) {
    double x = i / 100.0;
    CHECK(complement(complement(x)) == doctest::Approx(x).epsilon(1e-15));
  }
  for (int i = 0; i < 100; ++i) {
    double x = uniform(rng, 0.0, 1.0);
    CHECK(complement(complement(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("generated scenarios validate cleanly") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    Scenario s = random_scenario(rng);
    ValidationReport report = validate(s.graph);
    if (!report.ok()) {
      INFO("case " << i << ": " << report.violations[0].subject << ": "
                   << report.violations[0].message);
      REQUIRE(false);
    }
  }
}

TEST_CASE("parse after render is the identity up to structural equality") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    Scenario s = random_scenario(rng);
    std::string text = render_scenario(s);
    auto parsed = parse_scenario(text);
    if (auto* err = std::get_if<ParseError>(&parsed)) {
      INFO("case " << i << " at " << err->line << ":" << err->column << ": " << err->message
                   << "\n" << text);
      REQUIRE(false);
    }
    CHECK(structural_equals(s, std::get<Scenario>(parsed)));
  }
}

TEST_CASE("parse errors point inside the source") {
  const char* bad[] = {
      "root\n",
      "root B1 level\n",
      "node X1 intensity 1\nedge X1 -> X1 kind self prob 0.5 intensity 1\nedge X1 -> Y kind same prob 0.1 intensity 0\n",
      "gateway G0 csum()\n",
      "edge A -> B kind maybe prob 0.5 intensity 1\n",
      "simulate iterations -3\n",
      "root B1 level 1 %\n",
  };
  for (const char* src : bad) {
    auto parsed = parse_scenario(src);
    REQUIRE(std::holds_alternative<ParseError>(parsed));
    const ParseError& e = std::get<ParseError>(parsed);
    int lines = 1;
    for (const char* p = src; *p; ++p)
      if (*p == '\n') ++lines;
    CHECK(e.line >= 1);
    CHECK(e.line <= lines);
    CHECK(e.column >= 1);
  }
}

TEST_CASE("weighted attack factors are convex in the intensity weights") {
  // With a common conditional probability the weighted factors sum to
  // at most that probability.
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    Dcag g;
    g.roots.push_back({"R", 1.0});
    int n_edges = pick(rng, 1, 6);
    double a = uniform(rng, 0.0, 1.0);
    double total = 0.0;
    std::vector<Edge> edges;
    for (int k = 0; k < n_edges; ++k) {
      double w = uniform(rng, 0.01, 2.0);
      total += w;
      edges.push_back({"R", "N", EdgeKind::SameSlice, a, w});
    }
    g.nodes.push_back({"N", NodeKind::Exploit, total});
    double sum = 0.0;
    for (const auto& e : edges) {
      g.edges.push_back(e);
      sum += weighted_attack_factor(g, e);
    }
    CHECK(sum <= a + 1e-12);
  }
}

TEST_CASE("static marginals equal brute-force enumeration") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 60; ++i) {
    Dcag g = random_acyclic_dcag(rng, 10);
    std::map<NodeId, double> probs;
    for (const auto& r : g.roots) probs[r.id] = uniform(rng, 0.0, 1.0);
    auto fast = static_marginal(g, probs);
    auto slow = oracle::enumerate_marginal(g, probs);
    for (const auto& [id, v] : fast) {
      CHECK(std::fabs(v - slow.marginals.at(id)) < 1e-12);
    }
  }
}

TEST_CASE("enumeration outcome probabilities sum to one") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 20; ++i) {
    Dcag g = random_acyclic_dcag(rng, 8);
    std::map<NodeId, double> probs;
    for (const auto& r : g.roots) probs[r.id] = uniform(rng, 0.0, 1.0);
    auto result = oracle::enumerate_marginal(g, probs);
    CHECK(result.outcome_count == (1LL << (g.roots.size() + g.nodes.size())));
    CHECK(std::fabs(result.total_probability - 1.0) < 1e-12);
    for (const auto& r : g.roots)
      CHECK(result.marginals.at(r.id) == doctest::Approx(probs.at(r.id)).epsilon(1e-12));
    for (const auto& [id, m] : result.marginals) {
      CHECK(m >= -1e-12);
      CHECK(m <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("enumeration handles the deterministic corner cases") {
  Dcag g;
  g.roots.push_back({"R", 0.0});
  g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
  g.edges.push_back({"R", "N", EdgeKind::SameSlice, 0.7, 1.0});

  SUBCASE("deterministic parent") {
    auto r = oracle::enumerate_marginal(g, {{"R", 1.0}});
    CHECK(r.marginals.at("N") == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(r.outcome_count == 4);
  }
  SUBCASE("silent root") {
    auto r = oracle::enumerate_marginal(g, {{"R", 0.0}});
    CHECK(r.marginals.at("N") == 0.0);
    CHECK(r.marginals.at("R") == 0.0);
  }
  SUBCASE("size bound") {
    Dcag big;
    for (int i = 0; i < 21; ++i) {
      NodeId id = "N" + std::to_string(i);
      big.nodes.push_back({id, NodeKind::Exploit, 1.0});
      big.edges.push_back({id, id, EdgeKind::SelfLoop, 0.5, 1.0});
    }
    CHECK_THROWS(oracle::enumerate_marginal(big, {}));
  }
}

TEST_CASE("transcribed equations reproduce the worked values") {
  oracle::CtcsParams params;
  std::map<std::string, double> zero;
  for (int i = 4; i <= 18; ++i)
    if (i != 10) zero["X" + std::to_string(i)] = 0.0;

  SUBCASE("zero state with zero roots stays zero") {
    oracle::CtcsParams silent = params;
    silent.b1 = silent.b2 = silent.b3 = silent.b4 = 0.0;
    auto next = oracle::naive_step(zero, silent);
    for (const auto& [id, v] : next) CHECK(v == 0.0);
  }
  SUBCASE("X13 first step") {
    auto next = oracle::naive_step(zero, params);
    CHECK(next.at("X13") == doctest::Approx(0.0015125).epsilon(1e-12));
  }
}

TEST_CASE("step clamps every node into [0,1]") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 100; ++i) {
    Scenario s = random_scenario(rng);
    SliceState prev;
    prev.t = 0;
    for (const auto& n : s.graph.nodes) prev.values[n.id] = uniform(rng, 0.0, 1.0);
    SliceState next = step(s.graph, prev, s.config);
    for (const auto& [id, v] : next.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("zero roots and zero state form a fixed point") {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 50; ++i) {
    Scenario s = random_scenario(rng);
    for (auto& r : s.graph.roots) r.level = 0.0;
    SliceState state;
    state.t = 0;
    for (const auto& n : s.graph.nodes) state.values[n.id] = 0.0;
    for (int t = 0; t < 3; ++t) {
      state = step(s.graph, state, s.config);
      for (const auto& [id, v] : state.values) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("raising a root level never lowers a node at t=1") {
  std::mt19937_64 rng(91);
  for (int i = 0; i < 50; ++i) {
    Scenario s = random_scenario(rng);
    if (s.graph.roots.empty()) continue;
    SliceState zero;
    zero.t = 0;
    for (const auto& n : s.graph.nodes) zero.values[n.id] = 0.0;
    SliceState base = step(s.graph, zero, s.config);

    Scenario raised = s;
    auto& root = raised.graph.roots[static_cast<std::size_t>(
        pick(rng, 0, static_cast<int>(raised.graph.roots.size()) - 1))];
    root.level += uniform(rng, 0.1, 2.0);
    SliceState up = step(raised.graph, zero, raised.config);
    for (const auto& [id, v] : base.values) CHECK(up.values.at(id) >= v - 10.0 * s.config.inner_tolerance);
  }
}

TEST_CASE("generic step matches the transcribed equations on the case study") {
  std::mt19937_64 rng(101);
  for (bool cbi : {false, true}) {
    ctcs::CtcsOptions opt;
    opt.cbi_functional_safety = cbi;
    Scenario s = ctcs::build_ctcs(opt);
    oracle::CtcsParams params;
    params.cbi_functional_safety = cbi;
    for (int i = 0; i < 200; ++i) {
      SliceState prev;
      prev.t = 0;
      std::map<std::string, double> prev_map;
      for (const auto& n : s.graph.nodes) {
        double v = uniform(rng, 0.0, 1.0);
        prev.values[n.id] = v;
        prev_map[n.id] = v;
      }
      SliceState fast = step(s.graph, prev, s.config);
      auto slow = oracle::naive_step(prev_map, params);
      for (const auto& [id, v] : fast.values)
        CHECK(std::fabs(v - slow.at(id)) < 1e-12);
    }
  }
}

TEST_CASE("trajectories are deterministic and csv output is stable") {
  std::mt19937_64 rng(111);
  Scenario s = random_scenario(rng);
  s.config.iterations = 10;
  Trajectory a = run(s);
  Trajectory b = run(s);
  CHECK(write_trajectory_csv(a) == write_trajectory_csv(b));
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) CHECK(a.states[i].values == b.states[i].values);
}
