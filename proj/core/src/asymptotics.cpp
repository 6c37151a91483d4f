#include "flep/asymptotics.hpp"

#include <cmath>

namespace flep {

TheoryConstants make_theory_constants(const GroundState& gs, const PotentialSpec& vspec,
                                      const WeightSpec& wspec) {
    vspec.validate(gs.d, gs.s);
    wspec.validate(gs.d, gs.s);
    TheoryConstants tc;
    tc.d = gs.d;
    tc.s = gs.s;
    tc.C0 = vspec.C0();
    tc.C_bar = wspec.C_bar();
    tc.a_star = gs.a_star;
    double qm2s = wspec.q - 2.0 * gs.s;
    tc.l = std::min(qm2s, vspec.p);
    if (std::abs(vspec.p - qm2s) <= 1e-12)
        tc.kase = GammaCase::balanced;
    else if (qm2s < vspec.p)
        tc.kase = GammaCase::q_dominant;
    else
        tc.kase = GammaCase::p_dominant;

    GammaMoments gm = gamma_moments(gs, tc.l);
    tc.gamma1 = gm.gamma1;
    tc.gamma2 = gm.gamma2;

    const double d = gs.d, s = gs.s, l = tc.l;
    double base = d / (d + 2.0 * s);
    switch (tc.kase) {
        case GammaCase::q_dominant:
            tc.gamma = std::pow(base, (l + 2.0 * s) / (2.0 * s)) * tc.C_bar * tc.gamma1;
            break;
        case GammaCase::p_dominant:
            tc.gamma = std::pow(base, l / (2.0 * s)) * tc.C0 * tc.gamma2;
            break;
        case GammaCase::balanced:
            tc.gamma = std::pow(base, (l + 2.0 * s) / (2.0 * s)) * tc.C_bar * tc.gamma1 +
                       std::pow(base, l / (2.0 * s)) * tc.C0 * tc.gamma2;
            break;
    }
    check_numeric(tc.gamma > 0.0, "theory constants: gamma must be positive");
    return tc;
}

double predicted_energy(double a, const TheoryConstants& tc) {
    require(a < tc.a_star, "predicted_energy: requires a < a*");
    const double l = tc.l, s = tc.s, d = tc.d;
    return (l + 2.0 * s) / l * std::pow(l * tc.gamma / (2.0 * s), 2.0 * s / (l + 2.0 * s)) *
           std::pow(tc.a_star, -(d + l) / (l + 2.0 * s)) *
           std::pow((d + 2.0 * s) / (2.0 * s) * (tc.a_star - a), l / (l + 2.0 * s));
}

double predicted_epsilon(double a, const TheoryConstants& tc) {
    require(a < tc.a_star, "predicted_epsilon: requires a < a*");
    const double l = tc.l, s = tc.s, d = tc.d;
    const double common = std::pow(2.0 * s / d, 1.0 / (2.0 * s)) *
                          std::pow(tc.a_star, (d - 2.0 * s) / (2.0 * s * (l + 2.0 * s))) *
                          std::pow(tc.a_star - a, 1.0 / (l + 2.0 * s));
    switch (tc.kase) {
        case GammaCase::q_dominant:
            return std::pow((d + 2.0 * s) / (l * tc.C_bar * tc.gamma1), 1.0 / (l + 2.0 * s)) *
                   common;
        case GammaCase::p_dominant:
            return std::pow(d / (l * tc.C0 * tc.gamma2), 1.0 / (l + 2.0 * s)) * common;
        case GammaCase::balanced:
        default:
            return std::pow(l * tc.C_bar * tc.gamma1 / (d + 2.0 * s) +
                                l * tc.C0 * tc.gamma2 / d,
                            -1.0 / (l + 2.0 * s)) *
                   common;
    }
}

double optimal_trial_scale(double a, const TheoryConstants& tc) {
    require(a < tc.a_star, "optimal_trial_scale: requires a < a*");
    const double l = tc.l, s = tc.s, d = tc.d;
    const double denom = (tc.a_star - a) * std::pow(tc.a_star, (d - 2.0 * s) / (2.0 * s));
    switch (tc.kase) {
        case GammaCase::q_dominant:
            return std::pow(l * tc.C_bar * tc.gamma1 / ((d + 2.0 * s) * denom),
                            1.0 / (l + 2.0 * s));
        case GammaCase::p_dominant:
            return std::pow(l * tc.C0 * tc.gamma2 / (d * denom), 1.0 / (l + 2.0 * s));
        case GammaCase::balanced:
        default:
            return std::pow(l * tc.C_bar * tc.gamma1 / ((d + 2.0 * s) * denom) +
                                l * tc.C0 * tc.gamma2 / (d * denom),
                            1.0 / (l + 2.0 * s));
    }
}

TrialFamily::TrialFamily(const GroundState& gs, const PotentialSpec& vspec,
                         const WeightSpec& wspec)
    : gs_(&gs), vspec_(vspec), wspec_(wspec) {
    const Grid& g = gs.U.grid();
    const double p = 4.0 * gs.s / g.d;
    radius_.resize(gs.U.size());
    u2_.resize(gs.U.size());
    up2_.resize(gs.U.size());
    for (std::size_t i = 0; i < gs.U.size(); ++i) {
        Point pt = gs.U.point(i);
        radius_[i] = g.d == 1 ? std::abs(pt.x) : std::hypot(pt.x, pt.y);
        double u = gs.U[i];
        u2_[i] = u * u;
        up2_[i] = std::pow(u, 2.0 + p);
    }
    hd_ = std::pow(g.h(), g.d);
    t_max_ = 0.5 / g.h();
}

TrialBound TrialFamily::bound(double a, double t) const {
    require(t > 0.0, "trial: t must be positive");
    require(t <= t_max_, "trial under-resolved: core width 1/t below two grid cells");
    const GroundState& gs = *gs_;
    const double d = gs.d, s = gs.s;
    const double cN = d / (d + 2.0 * s);
    const double t2s = std::pow(t, 2.0 * s);

    double Jm = 0.0, Pv = 0.0;
    for (std::size_t i = 0; i < radius_.size(); ++i) {
        double rt = radius_[i] / t;
        Jm += wspec_.at_radius(rt) * up2_[i];
        Pv += vspec_.at_radius(rt) * u2_[i];
    }
    Jm *= hd_;
    Pv *= hd_;

    TrialBound b{};
    // scale term from the certified free-space integrals: at a = a* it is the
    // (tiny) Pohozaev defect times t^{2s}
    b.term_scale = t2s / gs.mass_fs *
                   (gs.kinetic_fs - a * cN * gs.interaction_fs /
                                        std::pow(gs.mass_fs, 2.0 * s / d));
    // weight deficit and potential terms from grid integrals (consistent pair)
    b.term_weight = a * cN * t2s * (gs.interaction - Jm) /
                    std::pow(gs.mass, 1.0 + 2.0 * s / d);
    b.term_potential = Pv / gs.mass;
    b.total = b.term_scale + b.term_weight + b.term_potential;
    return b;
}

TrialBound trial_energy_bound(double a, double t, const GroundState& gs,
                              const PotentialSpec& vspec, const WeightSpec& wspec) {
    return TrialFamily(gs, vspec, wspec).bound(a, t);
}

PowerLawFit fit_powerlaw(std::span<const double> xs, std::span<const double> ys) {
    require(xs.size() == ys.size(), "fit_powerlaw: size mismatch");
    require(xs.size() >= 4, "fit_powerlaw: need at least 4 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = int(xs.size());
    for (int i = 0; i < n; ++i) {
        require(xs[i] > 0.0 && ys[i] > 0.0, "fit_powerlaw: data must be positive");
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    check_numeric(std::abs(denom) > 1e-300, "fit_powerlaw: degenerate abscissae");
    PowerLawFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - f.slope * sx) / n;
    f.prefactor = std::exp(intercept);
    double ss_res = 0.0, ss_tot = 0.0, ybar = sy / n;
    for (int i = 0; i < n; ++i) {
        double ly = std::log(ys[i]);
        double e = ly - (f.slope * std::log(xs[i]) + intercept);
        ss_res += e * e;
        ss_tot += (ly - ybar) * (ly - ybar);
    }
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace flep
