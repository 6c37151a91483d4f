#pragma once
#include <span>
#include <vector>

#include "flep/coefficients.hpp"
#include "flep/ground_state.hpp"

namespace flep {

enum class GammaCase { q_dominant, p_dominant, balanced };

/// Constants of the blow-up laws: l = min(q-2s, p), the three-branch gamma,
/// the moment constants Gamma_1/Gamma_2 at this l, and the coefficient
/// limits C0, C_bar.
struct TheoryConstants {
    int d = 0;
    double s = 0.0;
    double l = 0.0;
    GammaCase kase = GammaCase::q_dominant;
    double gamma = 0.0;
    double gamma1 = 0.0;  // int |x|^{l+2s} U^{4s/d+2}
    double gamma2 = 0.0;  // int |x|^l U^2
    double C0 = 0.0;
    double C_bar = 0.0;
    double a_star = 0.0;
};

TheoryConstants make_theory_constants(const GroundState& gs, const PotentialSpec& vspec,
                                      const WeightSpec& wspec);

/// Leading-order energy law
///   I_pred = (l+2s)/l (l gamma / 2s)^{2s/(l+2s)} a*^{-(d+l)/(l+2s)}
///            ((d+2s)/(2s) (a*-a))^{l/(l+2s)}.
double predicted_energy(double a, const TheoryConstants& tc);

/// Three-case blow-up scale law for epsilon = kinetic^{-1/(2s)}.
double predicted_epsilon(double a, const TheoryConstants& tc);

/// Closed-form optimal dilation of the trial family per case.
double optimal_trial_scale(double a, const TheoryConstants& tc);

struct TrialBound {
    double total;           // J_a(u_t)
    double term_scale;      // ~ (d/2s) (a*-a)/a* t^{2s}
    double term_weight;     // a d/(d+2s) int (1-m)|u_t|^{4s/d+2}
    double term_potential;  // int V |u_t|^2
};

/// Energy of the trial family u_t = t^{d/2} U(t(x-x0)) / ||U||_2, evaluated
/// by change of variables on the ground-state grid with the closed-form
/// coefficients. Precomputes the U powers once; bound() is cheap per t.
class TrialFamily {
  public:
    TrialFamily(const GroundState& gs, const PotentialSpec& vspec, const WeightSpec& wspec);
    TrialBound bound(double a, double t) const;
    double max_scale() const { return t_max_; }

  private:
    const GroundState* gs_;
    PotentialSpec vspec_;
    WeightSpec wspec_;
    std::vector<double> radius_, u2_, up2_;  // grid radii and U^2, U^{2+4s/d}
    double hd_ = 0.0;
    double t_max_ = 0.0;
};

TrialBound trial_energy_bound(double a, double t, const GroundState& gs,
                              const PotentialSpec& vspec, const WeightSpec& wspec);

struct PowerLawFit {
    double slope = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
};

/// Least squares of log y against log x. Requires >= 4 strictly positive pairs.
PowerLawFit fit_powerlaw(std::span<const double> xs, std::span<const double> ys);

}  // namespace flep
