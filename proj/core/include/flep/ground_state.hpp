#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flep/fractional.hpp"
#include "flep/grid.hpp"

namespace flep {

struct GroundStateOptions {
    double tol = 1e-13;      // fixed-point sup tolerance (relative)
    int max_iter = 20000;
    std::uint64_t seed = 0;
    enum class Init { gaussian, plateau } init = Init::gaussian;
    // Companion solve at companion_scale * L (same h) to extrapolate the
    // L^{-(d+2s)} periodic-truncation bias out of the free-space integrals.
    bool certify = true;
    double companion_scale = 1.5;
};

/// Converged ground state of (-Lap)^s U + U = U^{1+4s/d}, recentered at the
/// origin and symmetrized per axis. Carries both the raw grid integrals and
/// the box-extrapolated free-space estimates used for certification.
struct GroundState {
    Field U;
    int d = 0;
    double s = 0.0;

    // grid integrals on U's own box
    double mass = 0.0;         // int U^2
    double kinetic = 0.0;      // int |(-Lap)^{s/2} U|^2
    double interaction = 0.0;  // int U^{2+4s/d}

    // free-space estimates (equal to the grid values when certify=false or s=1)
    double mass_fs = 0.0;
    double kinetic_fs = 0.0;
    double interaction_fs = 0.0;

    double a_star = 0.0;  // mass_fs^{2s/d}, Eq. a* = ||U||_2^{4s/d}
    double pohozaev_residual = 0.0;
    double mass_identity_residual = 0.0;
    int iterations = 0;
    double final_residual = 0.0;  // sup |(-Lap)^s U + U - U^{1+4s/d}| / sup U
    double stabilizer_gap = 0.0;  // |M - 1| at the last iteration
};

GroundState solve_ground_state(int d, double s, const Grid& grid,
                               const GroundStateOptions& opts = {});

struct IdentityResiduals {
    double pohozaev_residual;
    double mass_identity_residual;
};

/// Residuals of the Pohozaev and mass identities from the certified
/// free-space integral estimates stored in g.
IdentityResiduals check_identities(const GroundState& g);

/// Same residual formulas evaluated from plain grid integrals of an
/// arbitrary field (for synthetic-field checks; no extrapolation).
IdentityResiduals check_identities(const Field& u, double s);

/// Gagliardo-Nirenberg quotient
///   Q(u) = (d+2s)/(d a*) ||(-Lap)^{s/2}u||_2^2 ||u||_2^{4s/d} / ||u||_{4s/d+2}^{4s/d+2},
/// >= 1 with equality exactly at U (up to scaling/translation).
double gn_quotient(const Field& u, double s, double a_star);

/// Quotient of the ground state itself from its certified integrals.
double gn_quotient(const GroundState& g);

struct GammaMoments {
    double gamma1;  // int |x|^{l+2s} U^{4s/d+2}
    double gamma2;  // int |x|^l U^2
    bool truncation_ok;     // outer-shell (r > 0.4 L) share < 1% for both
    double outer_share1, outer_share2;
};

/// Moment constants of Eq. Gamma_1/Gamma_2 for a given l. Enforces the
/// integrability window l + 2s < d + 8s + 8s^2/d and l < d + 4s.
GammaMoments gamma_moments(const GroundState& g, double l);

struct DecayFit {
    double fitted_exponent;   // slope of log U vs log r on the window
    double window_lo, window_hi;
    double c_lower, c_upper;  // bounds with the theoretical exponent d+2s
    bool algebraic;           // false when |slope| grows with the window (s=1)
    double fit_residual;
};

/// Tail decay fit on the shell r in [0.25 L, 0.40 L]. Nearest periodic
/// images are subtracted self-consistently before fitting, otherwise the
/// wrap-around of the algebraic tail biases the slope.
DecayFit decay_fit(const GroundState& g);

}  // namespace flep
