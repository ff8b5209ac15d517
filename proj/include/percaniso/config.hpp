#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "percaniso/lattice.hpp"

namespace percaniso {

// Parameter sweep along one direction axis.
struct GridSpec {
    int axis = 1;
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    std::vector<double> values() const;
};

struct ExperimentConfig {
    std::string experiment;
    Params params;
    BoxLimits limits{100000, 64};
    std::int64_t trials = 1000;
    std::uint64_t master_seed = 0;
    std::optional<GridSpec> grid;
    double c1 = 1.8;
    std::string output_path;           // defaults to "<experiment>.csv"
    std::int64_t cutoff = 50;          // pmf / coupling-law bucket cutoff
    std::vector<std::int64_t> box_sizes{64};  // L values (crossing, pc-bisect)
    double tolerance = 5e-3;           // pc-bisect
    int workers = 0;                   // 0 = all cores
};

// Line-oriented key=value format; '#' starts a comment; vector-valued keys
// (p, L) repeat, one entry per line, in order. Unknown keys are errors and
// come with a nearest-key suggestion. Throws Error with the offending line
// number on any problem.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace percaniso
