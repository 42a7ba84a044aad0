// Regenerates the bundled CTCS-3 scenario files from the builder.
// Usage: ctcs_scenario_gen <output-dir>

#include <fstream>
#include <iostream>

#include "dcag/ctcs.hpp"
#include "dcag/scenario.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: ctcs_scenario_gen <output-dir>\n";
    return 2;
  }
  const std::string dir = argv[1];

  dcag::ctcs::CtcsOptions defaults;
  dcag::ctcs::CtcsOptions cbi;
  cbi.cbi_functional_safety = true;

  struct Item {
    const char* name;
    dcag::ctcs::CtcsOptions opts;
  } items[] = {{"ctcs3_default.dcag", defaults}, {"ctcs3_cbi.dcag", cbi}};

  for (const auto& item : items) {
    std::ofstream out(dir + "/" + item.name, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << dir << "/" << item.name << "\n";
      return 1;
    }
    out << dcag::render_scenario(dcag::ctcs::build_ctcs(item.opts));
  }
  return 0;
}
