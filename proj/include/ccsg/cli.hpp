#pragma once

#include <string>

namespace ccsg {

struct RunConfig {
  std::string command;
  int coclass = 0;
  int prime = 5;
  int generators = 1;
  int max_order = 0;
  int horizon = -1;
  int max_defect = 4;
  int max_period = 4;
  int degree_bound = 2;
  std::string graph_path;
  std::string census_path;
  std::string out_path;
  std::string dot_path;
  unsigned workers = 0;

  void validate() const;  // throws BadParameter
};

// Exit codes: 0 ok, 1 invalid config, 2 computation error, 3 verification
// failure.
int cmd_census(const RunConfig& cfg);
int cmd_graph(const RunConfig& cfg);
int cmd_analyze(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_export(const RunConfig& cfg);

int run_cli(int argc, char** argv);

}  // namespace ccsg
