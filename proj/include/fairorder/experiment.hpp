#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairorder/batchorder.hpp"
#include "fairorder/metrics.hpp"
#include "fairorder/netsim.hpp"

namespace fairorder {

/// Sweep controls shared by all presets. Negative or empty values keep the
/// preset's defaults.
struct PresetOptions {
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int trials = -1;             // per grid point
    int points_per_decade = -1;  // logarithmic axes (default 20)
    int linear_points = -1;      // linear axes (default 11)
    std::vector<int> n_values;   // committee sizes to sweep
    bool svg = true;
    int threads = 1;
};

const std::vector<std::string>& preset_names();

/// Execute a named preset and emit per-trial CSVs, a summary CSV and
/// optional SVG charts under options.out_dir. Throws on unknown preset or
/// unwritable output.
void run_preset(const std::string& name, const PresetOptions& options);

struct SingleRunOptions {
    std::string out_dir = "out";
    std::vector<BatchScheme> schemes = {BatchScheme::ranked_pairs()};
};

/// One simulation: dump transactions, local orderings, the delivery log,
/// the dependency tournament as DOT, and the final ordering per scheme.
void run_single(const SimConfig& config, const SingleRunOptions& options);

/// Sectioned key=value config format ([sim] block, optional [attack] block).
SimConfig load_config_file(const std::string& path);
std::string to_config_text(const SimConfig& config);

/// Per-trial seed used by every preset: derived from the master seed, a
/// stream tag, the grid point and the trial index.
std::uint64_t trial_seed(std::uint64_t master, const std::string& tag, int point,
                         int trial);

}  // namespace fairorder
