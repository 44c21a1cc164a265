#pragma once

#include <optional>
#include <string>

#include "qgs/config.hpp"

namespace qgs {

struct RunOverrides {
    std::optional<uint64_t> seed;
    std::optional<std::string> out_dir;
    bool quiet = false;
};

/// Deterministic solver run: writes diagnostics.csv, snapshots and the
/// resolved config under the output directory.  Returns the process exit
/// code (0 ok, 2 config error, 3 numerical failure).
int run_experiment(const ExperimentConfig& cfg, const RunOverrides& ov);

/// Particle simulation: writes paths.csv, drift_estimate.csv, phase/action
/// summary and the resolved config.  Same exit-code contract.
int run_simulation(const ExperimentConfig& cfg, const RunOverrides& ov);

/// Named invariant suite (cocycle | lemma | generator | formulation |
/// integrability); prints the per-check table.  Exit 0 iff all pass,
/// 2 for an unknown suite name.
int run_verify(const std::string& suite, bool quiet);

}  // namespace qgs
