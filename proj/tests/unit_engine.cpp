#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "dcag/engine.hpp"
#include "dcag/errors.hpp"
#include "dcag/scenario.hpp"

using namespace dcag;

namespace {

Gateway uniform_csum(const NodeId& id, std::vector<NodeId> parents, double prob) {
  Gateway g;
  g.id = id;
  g.kind = GatewayKind::ConditionalSum;
  g.parents = std::move(parents);
  for (const auto& p : g.parents) {
    g.probs[{StateIndex::AtRisk, p, StateIndex::AtRisk}] = prob;
    g.probs[{StateIndex::Benign, p, StateIndex::AtRisk}] = prob;
  }
  return g;
}

}  // namespace

TEST_CASE("gateway evaluation") {
  Gateway g0 = uniform_csum("G0", {"X13", "X15"}, 0.01);

  SUBCASE("conditional sum, zero inputs") {
    CHECK(eval_gateway(g0, {{"X13", 0.0}, {"X15", 0.0}}) == 0.0);
  }
  SUBCASE("conditional sum, both parents at risk") {
    // First term 0.01*1; the second is killed by the benign complement.
    CHECK(eval_gateway(g0, {{"X13", 1.0}, {"X15", 1.0}}) == doctest::Approx(0.01).epsilon(1e-12));
  }
  SUBCASE("conditional sum, only the second parent at risk") {
    double v = eval_gateway(g0, {{"X13", 0.0}, {"X15", 1.0}});
    CHECK(v == doctest::Approx(0.01 * 0.01).epsilon(1e-12));
  }
  SUBCASE("plain sum") {
    Gateway g1{"G1", GatewayKind::PlainSum, {"A", "B"}, {}};
    CHECK(eval_gateway(g1, {{"A", 0.2}, {"B", 0.3}}) == doctest::Approx(0.5));
    CHECK(eval_gateway(g1, {{"A", 0.8}, {"B", 0.9}}) == 1.0);  // clamped
  }
  SUBCASE("missing parent value") {
    CHECK_THROWS_AS(eval_gateway(g0, {{"X13", 0.5}}), EvaluationError);
  }
}

TEST_CASE("static marginal") {
  SUBCASE("single parent") {
    Dcag g;
    g.roots.push_back({"R", 0.0});
    g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
    g.edges.push_back({"R", "N", EdgeKind::SameSlice, 0.5, 1.0});
    auto m = static_marginal(g, {{"R", 0.6}});
    CHECK(m.at("N") == doctest::Approx(0.3).epsilon(1e-12));
  }
  SUBCASE("two parents, one vanishing term") {
    Dcag g;
    g.roots.push_back({"R1", 0.0});
    g.roots.push_back({"R2", 0.0});
    g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
    g.edges.push_back({"R1", "N", EdgeKind::SameSlice, 1.0, 0.5});
    g.edges.push_back({"R2", "N", EdgeKind::SameSlice, 0.0, 0.5});
    auto m = static_marginal(g, {{"R1", 1.0}, {"R2", 1.0}});
    CHECK(m.at("N") == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("chained evaluation in topological order") {
    Dcag g;
    g.roots.push_back({"R", 0.0});
    g.nodes.push_back({"A", NodeKind::Exploit, 1.0});
    g.nodes.push_back({"B", NodeKind::Exploit, 1.0});
    g.edges.push_back({"R", "A", EdgeKind::SameSlice, 0.5, 1.0});
    g.edges.push_back({"A", "B", EdgeKind::SameSlice, 0.5, 1.0});
    auto m = static_marginal(g, {{"R", 1.0}});
    CHECK(m.at("B") == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("missing root defaults to zero") {
    Dcag g;
    g.roots.push_back({"R", 0.0});
    g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
    g.edges.push_back({"R", "N", EdgeKind::SameSlice, 1.0, 1.0});
    CHECK(static_marginal(g, {}).at("N") == 0.0);
  }
  SUBCASE("cyclic slice is an error") {
    Dcag g;
    g.nodes.push_back({"A", NodeKind::Exploit, 1.0});
    g.nodes.push_back({"B", NodeKind::Exploit, 1.0});
    g.edges.push_back({"A", "B", EdgeKind::SameSlice, 0.5, 1.0});
    g.edges.push_back({"B", "A", EdgeKind::SameSlice, 0.5, 1.0});
    CHECK_THROWS_WITH_AS(static_marginal(g, {}), "static inference requires acyclic slice",
                         EvaluationError);
  }
}

TEST_CASE("step") {
  SimConfig cfg;

  SUBCASE("zero everything stays zero") {
    Dcag g;
    g.roots.push_back({"R", 0.0});
    g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
    g.edges.push_back({"R", "N", EdgeKind::GatedCrossSlice, 0.5, 0.5});
    g.edges.push_back({"N", "N", EdgeKind::SelfLoop, 0.9, 0.5});
    SliceState prev{0, {{"N", 0.0}}};
    SliceState next = step(g, prev, cfg);
    CHECK(next.t == 1);
    CHECK(next.values.at("N") == 0.0);
  }

  SUBCASE("isolated self-loop") {
    Dcag g;
    g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
    g.edges.push_back({"N", "N", EdgeKind::SelfLoop, 0.9, 1.0});
    SliceState prev{0, {{"N", 1.0}}};
    CHECK(step(g, prev, cfg).values.at("N") == doctest::Approx(0.9).epsilon(1e-12));
  }

  SUBCASE("X13 first step with the case-study parameters") {
    Dcag g;
    g.roots.push_back({"B1", 2.0});
    g.roots.push_back({"B2", 1.0});
    g.nodes.push_back({"X13", NodeKind::Exploit, 1.0});
    g.edges.push_back({"B1", "X13", EdgeKind::GatedCrossSlice, 0.001, 0.75});
    g.edges.push_back({"B2", "X13", EdgeKind::GatedCrossSlice, 0.0001, 0.125});
    g.edges.push_back({"X13", "X13", EdgeKind::SelfLoop, 0.9, 0.125});
    SliceState prev{0, {{"X13", 0.0}}};
    CHECK(step(g, prev, cfg).values.at("X13") ==
          doctest::Approx(0.0015125).epsilon(1e-12));
  }

  SUBCASE("missing previous value") {
    Dcag g;
    g.nodes.push_back({"N", NodeKind::Exploit, 1.0});
    g.edges.push_back({"N", "N", EdgeKind::SelfLoop, 0.9, 1.0});
    SliceState prev{0, {}};
    CHECK_THROWS_AS(step(g, prev, cfg), EvaluationError);
  }

  SUBCASE("non-contracting slice is detected, not looped") {
    Dcag g;
    g.nodes.push_back({"A", NodeKind::Exploit, 1.0});
    g.nodes.push_back({"B", NodeKind::Exploit, 1.0});
    g.edges.push_back({"A", "B", EdgeKind::SameSlice, 1.0, 1.0});
    g.edges.push_back({"B", "A", EdgeKind::SameSlice, 1.0, 1.0});
    SliceState prev{0, {{"A", 0.3}, {"B", 0.9}}};
    SimConfig tight;
    tight.inner_max_iters = 50;
    try {
      step(g, prev, tight);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.iterations == 50);
      CHECK(e.residual > 0.0);
      CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
  }
}

TEST_CASE("run") {
  Scenario s;
  s.graph.roots.push_back({"R", 0.0});
  s.graph.nodes.push_back({"N", NodeKind::Exploit, 1.0});
  s.graph.edges.push_back({"R", "N", EdgeKind::GatedCrossSlice, 0.5, 0.5});
  s.graph.edges.push_back({"N", "N", EdgeKind::SelfLoop, 0.9, 0.5});
  s.graph.system_nodes.push_back("N");

  SUBCASE("zero iterations keeps only the initial slice") {
    Scenario z = s;
    z.config.iterations = 0;
    Trajectory traj = run(z);
    CHECK(traj.states.size() == 1);
    CHECK(traj.states[0].t == 0);
    CHECK(traj.system_risk.size() == 1);
  }

  SUBCASE("zero roots give a flat zero trajectory") {
    Scenario z = s;
    z.config.iterations = 7;
    Trajectory traj = run(z);
    for (const auto& st : traj.states) CHECK(st.values.at("N") == 0.0);
    for (double sr : traj.system_risk) CHECK(sr == 0.0);
  }

  SUBCASE("initial state seeds slice zero") {
    Scenario z = s;
    z.config.iterations = 1;
    z.config.initial_state["N"] = 0.5;
    Trajectory traj = run(z);
    CHECK(traj.states[0].values.at("N") == 0.5);
    // 0.5*0.5*0.5*(1-0.5) gated + 0.5*0.9*0.5 self
    CHECK(traj.states[1].values.at("N") ==
          doctest::Approx(0.5 * 0.9 * 0.5).epsilon(1e-12));
  }

  SUBCASE("deterministic to the bit") {
    Scenario z = s;
    z.graph.roots[0].level = 1.5;
    z.config.iterations = 25;
    Trajectory a = run(z);
    Trajectory b = run(z);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i)
      for (const auto& [id, v] : a.states[i].values) {
        double w = b.states[i].values.at(id);
        CHECK(std::memcmp(&v, &w, sizeof v) == 0);
      }
  }
}

TEST_CASE("system risk") {
  SliceState st{0, {}};
  std::vector<NodeId> nine;
  for (int i = 0; i < 9; ++i) {
    NodeId id = "N" + std::to_string(i);
    st.values[id] = 0.5;
    nine.push_back(id);
  }
  CHECK(system_risk(st, nine) == doctest::Approx(0.5));

  SliceState two{0, {{"A", 0.0}, {"B", 1.0}}};
  CHECK(system_risk(two, {"A", "B"}) == doctest::Approx(0.5));

  CHECK_THROWS_AS(system_risk(two, {}), EvaluationError);
  CHECK_THROWS_AS(system_risk(two, {"missing"}), EvaluationError);
}

TEST_CASE("sweep") {
  Scenario s;
  s.graph.roots.push_back({"R", 1.0});
  s.graph.nodes.push_back({"N", NodeKind::Exploit, 1.0});
  s.graph.edges.push_back({"R", "N", EdgeKind::GatedCrossSlice, 0.5, 0.5});
  s.graph.edges.push_back({"N", "N", EdgeKind::SelfLoop, 0.9, 0.5});
  s.graph.system_nodes.push_back("N");
  s.config.iterations = 5;

  SUBCASE("empty level list") {
    CHECK(sweep(s, "R", {}, 5).empty());
  }
  SUBCASE("sweeping the default level reproduces the plain run") {
    auto table = sweep(s, "R", {1.0}, 5);
    REQUIRE(table.size() == 1);
    CHECK(table[0].first == 1.0);
    CHECK(table[0].second == run(s).system_risk.back());
  }
  SUBCASE("rows ordered as given") {
    auto table = sweep(s, "R", {2.0, 1.0, 3.0}, 5);
    REQUIRE(table.size() == 3);
    CHECK(table[0].first == 2.0);
    CHECK(table[1].first == 1.0);
    CHECK(table[2].first == 3.0);
    CHECK(table[0].second > table[1].second);
    CHECK(table[2].second > table[0].second);
  }
  SUBCASE("unknown root") {
    CHECK_THROWS_AS(sweep(s, "nope", {1.0}, 5), StructuralError);
  }
}
