#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dcag/csv.hpp"
#include "dcag/ctcs.hpp"
#include "dcag/dot.hpp"
#include "dcag/engine.hpp"
#include "dcag/errors.hpp"
#include "dcag/scenario.hpp"

namespace {

// Exit codes: 0 success, 1 validation/parse failure, 2 runtime or
// convergence failure, 3 usage error.
constexpr int kOk = 0;
constexpr int kParseFailure = 1;
constexpr int kRuntimeFailure = 2;
constexpr int kUsageError = 3;

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

// Loads and parses a scenario; on failure prints the diagnostic and
// stores the exit code.
std::optional<dcag::Scenario> load_scenario(const std::string& path, int& code) {
  auto text = slurp(path);
  if (!text) {
    std::cerr << "error: cannot read '" << path << "'\n";
    code = kUsageError;
    return std::nullopt;
  }
  auto parsed = dcag::parse_scenario(*text);
  if (auto* err = std::get_if<dcag::ParseError>(&parsed)) {
    std::cerr << path << ":" << err->line << ":" << err->column << ": " << err->message
              << (err->snippet.empty() ? "" : " near '" + err->snippet + "'") << "\n";
    code = kParseFailure;
    return std::nullopt;
  }
  return std::get<dcag::Scenario>(std::move(parsed));
}

bool parse_level_range(const std::string& text, int& from, int& to) {
  auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    from = std::stoi(text.substr(0, dots));
    to = std::stoi(text.substr(dots + 2));
  } catch (const std::exception&) {
    return false;
  }
  return from <= to;
}

int cmd_validate(const std::string& path) {
  int code = kOk;
  if (!load_scenario(path, code)) return code;
  return kOk;
}

int cmd_run(const std::string& path, std::optional<int> iterations, const std::string& out_csv,
            const std::string& out_dot) {
  int code = kOk;
  auto scenario = load_scenario(path, code);
  if (!scenario) return code;
  if (iterations) scenario->config.iterations = *iterations;
  try {
    dcag::Trajectory traj = dcag::run(*scenario);
    if (!spill(out_csv, dcag::write_trajectory_csv(traj))) {
      std::cerr << "error: cannot write '" << out_csv << "'\n";
      return kRuntimeFailure;
    }
    if (!out_dot.empty() && !spill(out_dot, dcag::render_dot(scenario->graph))) {
      std::cerr << "error: cannot write '" << out_dot << "'\n";
      return kRuntimeFailure;
    }
    std::cout << fixed9(traj.system_risk.back()) << "\n";
  } catch (const dcag::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  } catch (const dcag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kOk;
}

int cmd_sweep(const std::string& path, const std::string& root, const std::string& levels,
              int iterations, const std::string& out_csv) {
  int code = kOk;
  auto scenario = load_scenario(path, code);
  if (!scenario) return code;
  int from = 0, to = 0;
  if (!parse_level_range(levels, from, to)) {
    std::cerr << "error: --levels expects A..B with A <= B, got '" << levels << "'\n";
    return kUsageError;
  }
  if (!scenario->graph.find_root(root)) {
    std::cerr << "error: unknown root '" << root << "'\n";
    return kUsageError;
  }
  std::vector<double> level_values;
  for (int l = from; l <= to; ++l) level_values.push_back(l);
  try {
    auto table = dcag::sweep(*scenario, root, level_values, iterations);
    std::ostringstream csv;
    csv << "level,system_risk\n";
    for (const auto& [level, risk] : table) csv << level << "," << fixed9(risk) << "\n";
    if (!spill(out_csv, csv.str())) {
      std::cerr << "error: cannot write '" << out_csv << "'\n";
      return kRuntimeFailure;
    }
    std::cout << "root=" << root << " levels=" << from << ".." << to
              << " final=" << fixed9(table.back().second) << "\n";
  } catch (const dcag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kOk;
}

int cmd_ctcs(const std::string& experiment, int iterations, const std::string& attack,
             const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  try {
    if (experiment == "cbi") {
      auto [with_cbi, without_cbi] = dcag::ctcs::experiment_cbi(iterations);
      spill(out_dir + "/cbi_with.csv", dcag::write_trajectory_csv(with_cbi));
      spill(out_dir + "/cbi_without.csv", dcag::write_trajectory_csv(without_cbi));
      std::cout << "experiment=cbi iterations=" << iterations
                << " final_with=" << fixed9(with_cbi.system_risk.back())
                << " final_without=" << fixed9(without_cbi.system_risk.back()) << "\n";
      return kOk;
    }
    if (experiment == "ranking") {
      auto ranking = dcag::ctcs::experiment_component_ranking(iterations);
      std::ostringstream csv, order;
      csv << "node,risk\n";
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        csv << ranking[i].first << "," << fixed9(ranking[i].second) << "\n";
        order << (i ? ">" : "") << ranking[i].first;
      }
      spill(out_dir + "/ranking.csv", csv.str());
      std::cout << "experiment=ranking iterations=" << iterations << " order=" << order.str()
                << "\n";
      return kOk;
    }
    if (experiment == "levels") {
      dcag::ctcs::AttackKind kind;
      if (attack == "wireless") {
        kind = dcag::ctcs::AttackKind::Wireless;
      } else if (attack == "network") {
        kind = dcag::ctcs::AttackKind::Network;
      } else if (attack == "malware_ot") {
        kind = dcag::ctcs::AttackKind::MalwareOt;
      } else if (attack == "malware_it") {
        kind = dcag::ctcs::AttackKind::MalwareIt;
      } else {
        std::cerr << "error: unknown attack '" << attack
                  << "' (expected wireless|network|malware_ot|malware_it)\n";
        return kUsageError;
      }
      auto table = dcag::ctcs::experiment_attack_levels(kind, 1, 10, iterations);
      std::ostringstream csv;
      csv << "level,system_risk\n";
      for (const auto& [level, risk] : table) csv << level << "," << fixed9(risk) << "\n";
      spill(out_dir + "/levels_" + attack + ".csv", csv.str());
      std::cout << "experiment=levels attack=" << attack
                << " root=" << dcag::ctcs::attack_root(kind)
                << " level1=" << fixed9(table.front().second)
                << " level10=" << fixed9(table.back().second) << "\n";
      return kOk;
    }
    std::cerr << "error: unknown experiment '" << experiment << "'\n";
    return kUsageError;
  } catch (const dcag::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  } catch (const dcag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic causal attack graph toolkit"};
  app.require_subcommand(1);

  std::string path, out_csv, out_dot, root, levels = "1..10", attack, out_dir = ".";
  std::optional<int> run_iterations;
  int iterations = 120;
  std::string experiment;

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("path", path)->required();

  auto* run = app.add_subcommand("run", "Simulate a scenario and write the trajectory CSV");
  run->add_option("path", path)->required();
  run->add_option("--iterations", run_iterations, "Override the scenario's iteration count");
  run->add_option("--out", out_csv, "Trajectory CSV path")->required();
  run->add_option("--dot", out_dot, "Also write a Graphviz DOT file");

  auto* sweep = app.add_subcommand("sweep", "Sweep a root level and write level,system_risk CSV");
  sweep->add_option("path", path)->required();
  sweep->add_option("--root", root)->required();
  sweep->add_option("--levels", levels, "Range A..B (default 1..10)");
  sweep->add_option("--iterations", iterations, "Iterations per level (default 120)");
  sweep->add_option("--out", out_csv)->required();

  auto* ctcs = app.add_subcommand("ctcs", "Run a CTCS-3 case-study experiment");
  ctcs->add_option("--experiment", experiment, "cbi | ranking | levels")->required();
  ctcs->add_option("--iterations", iterations,
                   "Iterations (default 120; ranking uses 10 unless set)");
  ctcs->add_option("--attack", attack, "wireless | network | malware_ot | malware_it");
  ctcs->add_option("--out", out_dir, "Output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsageError;
  }

  if (validate->parsed()) return cmd_validate(path);
  if (run->parsed()) return cmd_run(path, run_iterations, out_csv, out_dot);
  if (sweep->parsed()) return cmd_sweep(path, root, levels, iterations, out_csv);
  if (ctcs->parsed()) {
    bool iterations_given = ctcs->count("--iterations") > 0;
    int iters = iterations_given ? iterations : (experiment == "ranking" ? 10 : 120);
    return cmd_ctcs(experiment, iters, attack, out_dir);
  }
  return kUsageError;
}
