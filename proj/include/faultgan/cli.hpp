#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace faultgan {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitEmpty = 3;

// Everything needed to reproduce a run. The circuit is carried as canonical
// netlist text so that run.json replays without the original file.
struct RunConfig {
  std::string command;
  std::string netlist_path;
  std::string circuit;
  std::string faults;
  std::optional<double> epsilon;
  std::vector<double> grid;
  std::size_t trials = 2000;
  std::optional<std::uint64_t> seed;
  std::string mode = "fault-compare";
  std::string out_dir;
  double tau = 0.05;
  std::size_t min_samples = 200;
  int bins = 64;
  std::uint64_t max_iterations = 1'000'000;
  bool memoize = false;
  unsigned workers = 1;
  std::string label;
  std::vector<std::pair<std::string, std::string>> runs;  // dataset: label -> faults
  bool global_norm = false;
  int canvas = 512;
  int exhaustive = 0;  // spectrum: enumerate all 2^N agreement patterns
  bool energies = false;
  std::string input_sweep;
};

// JSON echo written as run.json (output directory and worker count omitted).
std::string run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const std::string& text);

// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace faultgan
