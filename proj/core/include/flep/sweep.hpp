#pragma once
#include <cstdint>
#include <vector>

#include "flep/asymptotics.hpp"
#include "flep/coefficients.hpp"
#include "flep/ground_state.hpp"
#include "flep/minimizer.hpp"

namespace flep {

struct SweepSettings {
    int k_min = 3;
    int k_max = 9;
    int workers = 4;
    double el_tol = 1e-7;
    int max_steps = 400000;
    std::uint64_t seed = 0;
    bool keep_fields = false;  // retain minimizer fields in the report rows
};

struct SweepInputs {
    int d = 2;
    double s = 0.5;
    Grid sweep_grid;
    Grid ground_grid;
    PotentialSpec potential;
    WeightSpec weight;
    SweepSettings settings;
    GroundStateOptions ground_opts;
};

struct SweepRow {
    int k = 0;
    double a = 0.0;
    double I1 = 0.0;
    double I1_pred = 0.0;
    double epsilon = 0.0;
    double eps_pred = 0.0;
    double lambda_a = 0.0;
    double eps2s_lambda = 0.0;
    Point z_bar{};
    double profile_err = 0.0;
    bool resolved = false;
    double el_residual = 0.0;
    int steps = 0;
    // Eq.-4.140-style decomposition of I1, for diagnostics
    double term_gn = 0.0, term_a = 0.0, term_m = 0.0, term_V = 0.0;
    Field u;  // empty unless settings.keep_fields
};

struct SweepReport {
    std::vector<SweepRow> rows;
    PowerLawFit energy_fit;  // log I1 vs log(a*-a), resolved rows
    PowerLawFit eps_fit;     // log eps vs log(a*-a), resolved rows
    double energy_slope_pred = 0.0;  // l/(l+2s)
    double eps_slope_pred = 0.0;     // 1/(l+2s)
    TheoryConstants theory;
    GroundState ground;
    int resolved_count = 0;
};

/// a_k = a*(1 - 2^{-k}) for k in [k_min, k_max]: solve the ground state,
/// minimize each row (warm-started along contiguous chains split across
/// workers), fit the power laws over resolved rows, and attach the theory
/// comparison. Deterministic for fixed inputs including worker count.
SweepReport run_sweep(const SweepInputs& in);

}  // namespace flep
