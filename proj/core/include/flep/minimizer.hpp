#pragma once
#include <cstdint>
#include <optional>

#include "flep/fractional.hpp"
#include "flep/grid.hpp"

namespace flep {

/// Terms of J_a(u) = kinetic + potential - a d/(d+2s) * interaction with
/// kinetic = int |(-Lap)^{s/2}u|^2, potential = int V u^2,
/// interaction = int m |u|^{4s/d+2}.
struct EnergyBreakdown {
    double kinetic = 0.0;
    double potential = 0.0;
    double interaction = 0.0;
    double total = 0.0;
};

EnergyBreakdown energy(const Field& u, const Field& V, const Field& m, double a, double s);

struct MinimizeContext {
    const Field* V = nullptr;
    const Field* m = nullptr;
    double a = 0.0;
    double s = 0.5;
    double mass = 1.0;  // lambda, the L^2 constraint
};

struct MinimizeOptions {
    double tau = 0.0;      // 0 -> 0.1 / kinetic(u0)
    double tol = 1e-7;     // Euler-Lagrange residual target
    int max_steps = 400000;
    std::uint64_t seed = 0;
    bool enforce_monotone = true;
};

struct MinimizerResult {
    Field u;           // normalized, nonnegative
    double a = 0.0;
    double s = 0.0;
    double mass = 0.0;
    EnergyBreakdown energy;  // energy.total is I_lambda(a)
    double lambda_a = 0.0;   // Lagrange multiplier (Eq. lambda_a scale, EL has lambda_a/2)
    double epsilon = 0.0;    // kinetic^{-1/(2s)}
    Point z_bar{};           // concentration point
    double el_residual = 0.0;
    int steps = 0;
    bool resolved = false;   // epsilon >= 4h
};

/// Projected (normalized) semi-implicit gradient flow on the mass sphere:
///   u <- (Id + tau (-Lap)^s)^{-1}[u + tau(-V u + a m u^{1+4s/d} + shift u)]
/// followed by renormalization to the prescribed mass and |.|. Step halving
/// keeps the energy monotone; a drop below -10 sup(V) lambda - 10 aborts
/// with "energy unbounded" (the a > a* regime).
MinimizerResult gradient_flow_minimize(const Field& u0, const MinimizeContext& ctx,
                                       const MinimizeOptions& opts = {});

/// Same flow with mass lambda in (0,1]; lambda = 1 is gradient_flow_minimize.
MinimizerResult minimize_with_mass(double lambda, const Field& u0, const MinimizeContext& ctx,
                                   const MinimizeOptions& opts = {});

/// Multiplier by the closed formula
///   lambda_a = [2 J_a(u) - a 4s/(d+2s) int m|u|^{4s/d+2}] / lambda
/// from the stored breakdown, cross-checked against the Rayleigh projection
/// of the EL equation recomputed from the field. A mismatch beyond 1e-4
/// means the result is not a critical point.
double lagrange_multiplier(const MinimizerResult& r, const Field& V, const Field& m);

/// Interpolated argmax of |u| (sub-grid, 3-point parabola per axis); the
/// concentration point z_bar of the blow-up analysis. Flat fields error.
Point concentration_point(const Field& u);

}  // namespace flep
