#pragma once

#include <optional>
#include <string>

#include "qgs/qgs_solver.hpp"

namespace qgs {

/// Run configuration, sectioned key = value text:
///
///   grid     { n = 64 }
///   time     { dt = 1e-3, steps = 1000 }          # or tau = ...
///   physics  { beta = 1, a = 1, nu = 0, sigma_mode = none|constant|spectral,
///              sigma = 0, m = 0, r = 3 }
///   noise    { model = none|kolmogorov|two_fields, m = 1, r = 3, nu = 0 }
///   ensemble { particles = 10000, seed = 1 }
///   init     { type = rossby|random|snapshot, k1 = 1, k2 = 2, eps = 1e-3,
///              seed = 1, kmax = 5, amplitude = 0.1, file = ... }
///   output   { dir = out, snapshot_every = 0, format = csv }
///
/// Unknown sections or keys are rejected by name.  Every run echoes the
/// fully resolved configuration next to its outputs; the echo parses back
/// to an identical configuration.
struct ExperimentConfig {
    SolverConfig solver;  // grid + time + physics
    double tau = 0.0;

    NoiseSpec noise;

    int particles = 0;
    uint64_t seed = 1;

    enum class InitType { Rossby, Random, Snapshot } init_type = InitType::Rossby;
    int init_k1 = 1, init_k2 = 2;
    double init_eps = 1e-3;
    uint64_t init_seed = 1;
    int init_kmax = 5;
    double init_amplitude = 0.1;
    std::string init_file;

    std::string out_dir = "out";
    int snapshot_every = 0;  // 0 = only initial/final
    std::string format = "csv";

    /// Initial stream function per the init section.
    SpectralField initial_stream() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Serialized form that parse_config maps back to the same configuration.
std::string resolved_config(const ExperimentConfig& cfg);

/// Deterministic random band-limited zero-mean stream function with modes
/// |k|_inf <= kmax, scaled so the velocity has the requested energy norm.
SpectralField random_stream(int n, int kmax, double target_norm, uint64_t seed);

}  // namespace qgs
