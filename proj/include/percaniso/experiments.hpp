#pragma once

#include <ostream>

#include "percaniso/config.hpp"

namespace percaniso {

// Dispatches the named experiment, writing a CSV results table (and, for
// grid experiments, a sibling SVG plot) to cfg.output_path. Output is
// deterministic given the config. Returns 0 on success, 1 when
// coupling-verify finds an invariant violation. Progress notes go to log
// when given.
int run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace percaniso
