#pragma once
#include <string>
#include <vector>

#include "flep/grid.hpp"

namespace flep {

/// Closed-form trapping potential
///   V(x) = v_inf * [1 - (1 + c |x-x0|^p)^(-beta/p)],
/// so V(x0) = 0, 0 <= V < v_inf, V -> v_inf at infinity, the local limit
/// V/|x-x0|^p -> C0 = v_inf*beta*c/p, and the tail obeys
/// V - v_inf ~ -v_inf c^{-beta/p} |x|^{-beta}.
struct PotentialSpec {
    double v_inf = 1.0;
    Point x0{0.0, 0.0};
    double p = 2.0;       // local exponent, in (0, d+4s)
    double beta = 0.5;    // tail exponent, in (0, 2s)
    double c = 1.0;       // scale; tail margin requires v_inf * c^{-beta/p} > 1

    double at_radius(double r) const {
        return v_inf * (1.0 - std::pow(1.0 + c * std::pow(r, p), -beta / p));
    }
    double C0() const { return v_inf * beta * c / p; }
    void validate(int d, double s) const;
};

/// Closed-form interaction weight
///   m(x) = m_inf + (1 - m_inf) / (1 + c2 |x-x0|^q),
/// so m(x0) = 1, m_inf < m <= 1, and (1-m)/|x-x0|^q -> C_bar = (1-m_inf)*c2.
struct WeightSpec {
    double m_inf = 0.5;
    Point x0{0.0, 0.0};
    double q = 2.0;   // in (2s, d + 8s + 8s^2/d)
    double c2 = 1.0;

    double at_radius(double r) const {
        return m_inf + (1.0 - m_inf) / (1.0 + c2 * std::pow(r, q));
    }
    double C_bar() const { return (1.0 - m_inf) * c2; }
    void validate(int d, double s) const;
};

/// Sample the closed forms on a grid with minimal-image radial distance.
/// x0 must lie in the central half of the box to keep wrap distortion out
/// of the local-exponent window.
Field realize_potential(const PotentialSpec& spec, const Grid& g);
Field realize_weight(const WeightSpec& spec, const Grid& g);

struct AssumptionCheck {
    std::string name;  // "(V1)" ... "(M2)", "l"
    bool pass;
    double measured;
    double expected;
    std::string detail;
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;
    double measured_p = 0.0, measured_q = 0.0;
    double measured_C0 = 0.0, measured_C_bar = 0.0;
    double l = 0.0;  // min(q - 2s, p)
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Numerical verification of (V1)-(V4), (M1)-(M2) on realized fields:
/// local exponents by log-log fit on r in [2h, 16h], C0/C_bar by Richardson
/// at r = 4h, 8h, tail inequality on the ring r in [0.35L, 0.45L], and the
/// argmin V = argmax m = x0 coincidence.
ValidationReport validate_assumptions(const Field& V, const Field& m,
                                      const PotentialSpec& vspec, const WeightSpec& wspec,
                                      int d, double s);

}  // namespace flep
