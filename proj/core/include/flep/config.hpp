#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flep/coefficients.hpp"
#include "flep/grid.hpp"
#include "flep/sweep.hpp"

namespace flep {

struct SolverConfig {
    double tol = 1e-7;          // EL residual target for minimizations
    double ground_tol = 1e-13;  // Petviashvili fixed-point tolerance
    int max_steps = 400000;
    double tau = 0.0;  // 0 -> automatic policy
    std::uint64_t seed = 0;
};

struct OutputConfig {
    std::string directory = ".";
};

struct ExperimentConfig {
    int d = 2;
    double s = 0.5;
    Grid grid;         // minimization / sweep grid
    Grid ground_grid;  // ground-state grid (defaults to grid if absent)
    PotentialSpec potential;
    WeightSpec weight;
    SolverConfig solver;
    SweepSettings sweep;
    OutputConfig output;
    std::uint64_t hash = 0;  // FNV-1a of the canonical JSON dump
};

/// Parse and fully validate a config file. All violations are collected and
/// reported together: schema problems by JSON path, assumption violations by
/// their (V1)...(M2) names.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& json_text);

std::uint64_t config_hash(const std::string& canonical_json);

/// Canonical JSON dump of the parsed config (sorted keys, fixed layout).
std::string canonical_dump(const ExperimentConfig& cfg);

SweepInputs sweep_inputs(const ExperimentConfig& cfg);

}  // namespace flep
