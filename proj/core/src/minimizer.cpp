#include "flep/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flep {

EnergyBreakdown energy(const Field& u, const Field& V, const Field& m, double a, double s) {
    require(u.grid() == V.grid() && u.grid() == m.grid(), "energy: grid mismatch");
    check_numeric(u.finite(), "non-finite field");
    const int d = u.grid().d;
    const double p = 4.0 * s / d;
    const double hd = std::pow(u.grid().h(), d);
    EnergyBreakdown e;
    e.kinetic = dirichlet_energy(u, FractionalOrder::make(s));
    double pot = 0.0, inter = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double ui = u[i];
        pot += V[i] * ui * ui;
        inter += m[i] * std::pow(std::abs(ui), 2.0 + p);
    }
    e.potential = pot * hd;
    e.interaction = inter * hd;
    e.total = e.kinetic + e.potential - a * d / (d + 2.0 * s) * e.interaction;
    return e;
}

Point concentration_point(const Field& u) {
    check_numeric(u.finite(), "non-finite field");
    double mx = 0.0, mean = 0.0;
    for (double v : u.values()) {
        mx = std::max(mx, std::abs(v));
        mean += v;
    }
    mean = std::abs(mean) / double(u.size());
    check_numeric(mx > 0.0 && mx - mean > 1e-12 * mx, "no concentration: field is flat");
    return interpolated_peak(u);
}

namespace {

struct FlowState {
    Field u;
    EnergyBreakdown e;
    double lambda;  // multiplier estimate, Rayleigh
};

double rayleigh_multiplier(const EnergyBreakdown& e, double a, double mass) {
    return 2.0 * (e.kinetic + e.potential - a * e.interaction) / mass;
}

}  // namespace

MinimizerResult minimize_with_mass(double lambda, const Field& u0, const MinimizeContext& ctx,
                                   const MinimizeOptions& opts) {
    require(lambda > 0.0 && lambda <= 1.0, "minimize: mass must lie in (0,1]");
    require(ctx.V && ctx.m, "minimize: V and m required");
    require(u0.grid() == ctx.V->grid() && u0.grid() == ctx.m->grid(),
            "minimize: grid mismatch");
    require(ctx.a > 0.0, "minimize: a must be positive");
    check_numeric(u0.finite(), "non-finite field");

    const Grid& g = u0.grid();
    const int d = g.d;
    const double s = ctx.s;
    const double p = 4.0 * s / d;
    const double hd = std::pow(g.h(), d);
    const Field& V = *ctx.V;
    const Field& m = *ctx.m;

    double v_sup = 0.0;
    for (double v : V.values()) v_sup = std::max(v_sup, v);
    const double dive_floor = -10.0 * v_sup * lambda - 10.0;

    Fourier& ws = fourier_for(g);
    const Multiplier& mult = multiplier_for(g, s);

    auto renorm = [&](Field& u) {
        double ms = 0.0;
        for (double v : u.values()) ms += v * v;
        ms *= hd;
        check_numeric(ms > 1e-300, "minimize: field collapsed to zero");
        double c = std::sqrt(lambda / ms);
        for (double& v : u.values()) v = std::abs(v) * c;
    };

    auto eval = [&](const Field& u) {
        EnergyBreakdown e;
        Spectrum sp = ws.forward(u);
        e.kinetic = dirichlet_energy(sp, s);
        double pot = 0.0, inter = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double ui = u[i];
            pot += V[i] * ui * ui;
            inter += m[i] * std::pow(ui, 2.0 + p);
        }
        e.potential = pot * hd;
        e.interaction = inter * hd;
        e.total = e.kinetic + e.potential - ctx.a * d / (d + 2.0 * s) * e.interaction;
        return e;
    };

    // EL residual ||(-Lap)^s u + V u - (lam/2) u - a m u^{1+p}||_2 over the
    // combined magnitude of its terms
    auto el_residual = [&](const Field& u, double lam) {
        Spectrum sp = ws.forward(u);
        for (std::size_t i = 0; i < sp.c.size(); ++i) sp.c[i] *= mult.values()[i];
        Field Lu = ws.inverse(sp);
        double rn = 0.0, nL = 0.0, nV = 0.0, nlam = 0.0, nnl = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            double ui = u[i];
            double tL = Lu[i], tV = V[i] * ui, tlam = 0.5 * lam * ui,
                   tnl = ctx.a * m[i] * std::pow(ui, 1.0 + p);
            double r = tL + tV - tlam - tnl;
            rn += r * r;
            nL += tL * tL;
            nV += tV * tV;
            nlam += tlam * tlam;
            nnl += tnl * tnl;
        }
        double scale = std::sqrt(nL) + std::sqrt(nV) + std::sqrt(nlam) + std::sqrt(nnl);
        return scale > 0.0 ? std::sqrt(rn) / scale : 0.0;
    };

    FlowState st;
    st.u = u0;
    renorm(st.u);
    st.e = eval(st.u);
    st.lambda = rayleigh_multiplier(st.e, ctx.a, lambda);

    double tau0 = opts.tau > 0.0 ? opts.tau : 0.1 / std::max(st.e.kinetic, 1e-6);
    double tau = tau0;
    const double tau_hard_max = 1000.0 * tau0;

    Field rhs(g), cand(g);
    Spectrum sp;
    int step = 0;
    int check_interval = 20;
    double res = 1e300;
    std::vector<double> drop_hist;

    for (; step < opts.max_steps; ++step) {
        double shift = 0.5 * st.lambda;
        // keep the explicit shifted term contraction-safe
        if (tau * std::abs(shift) > 0.9) tau = 0.9 / std::abs(shift);
        for (std::size_t i = 0; i < st.u.size(); ++i) {
            double ui = st.u[i];
            rhs[i] = ui + tau * (-V[i] * ui + ctx.a * m[i] * std::pow(ui, 1.0 + p) +
                                 shift * ui);
        }
        ws.forward(rhs, sp);
        for (std::size_t i = 0; i < sp.c.size(); ++i)
            sp.c[i] /= (1.0 + tau * mult.values()[i]);
        ws.inverse(sp, cand);
        renorm(cand);
        EnergyBreakdown en = eval(cand);

        if (opts.enforce_monotone && en.total > st.e.total + 1e-12 * std::abs(st.e.total)) {
            tau *= 0.5;
            if (tau < 1e-12 * tau0) break;  // stalled; convergence check decides below
            continue;
        }
        double drop = st.e.total - en.total;
        st.u = cand;
        st.e = en;
        st.lambda = rayleigh_multiplier(st.e, ctx.a, lambda);

        if (st.e.total < dive_floor)
            throw NumericalError(
                "energy unbounded: J fell below -10 sup(V) lambda - 10, the "
                "a > a* regime (Theorem of nonexistence)");

        // in the unbounded regime the energy keeps falling; let tau grow
        // faster so the dive reaches the detector quickly
        bool diving = st.e.total < -1.0 - v_sup * lambda;
        tau = std::min(diving ? tau * 1.3 : tau * 1.05, diving ? tau_hard_max : 10.0 * tau0);

        drop_hist.push_back(drop);
        if (drop_hist.size() > 8) drop_hist.erase(drop_hist.begin());
        bool flat = drop < 1e-13 * std::max(std::abs(st.e.total), 1e-2);
        if (flat || --check_interval <= 0) {
            res = el_residual(st.u, st.lambda);
            if (res <= opts.tol) break;
            check_interval = flat ? 10 : 50;
        }
    }

    if (res > opts.tol) {
        res = el_residual(st.u, st.lambda);
        if (res > opts.tol) {
            std::ostringstream msg;
            msg << "max steps: flow stalled after " << step
                << " steps with EL residual " << res << "; recent energy drops:";
            for (double d0 : drop_hist) msg << " " << d0;
            throw NumericalError(msg.str());
        }
    }

    MinimizerResult out;
    out.u = std::move(st.u);
    out.a = ctx.a;
    out.s = s;
    out.mass = lambda;
    out.energy = st.e;
    out.lambda_a = st.lambda;
    out.epsilon = std::pow(st.e.kinetic, -1.0 / (2.0 * s));
    out.z_bar = concentration_point(out.u);
    out.el_residual = res;
    out.steps = step;
    out.resolved = out.epsilon >= 4.0 * g.h();
    return out;
}

MinimizerResult gradient_flow_minimize(const Field& u0, const MinimizeContext& ctx,
                                       const MinimizeOptions& opts) {
    return minimize_with_mass(ctx.mass, u0, ctx, opts);
}

double lagrange_multiplier(const MinimizerResult& r, const Field& V, const Field& m) {
    const int d = r.u.grid().d;
    const double s = r.s;
    // closed formula from the stored breakdown
    double lam_formula =
        (2.0 * r.energy.total - r.a * 4.0 * s / (d + 2.0 * s) * r.energy.interaction) /
        r.mass;
    // Rayleigh projection of the EL equation with fresh integrals of u
    EnergyBreakdown e = energy(r.u, V, m, r.a, s);
    double lam_proj = 2.0 * (e.kinetic + e.potential - r.a * e.interaction) / r.mass;
    double scale = std::max({std::abs(lam_formula), std::abs(lam_proj), 1e-12});
    check_numeric(std::abs(lam_formula - lam_proj) <= 1e-4 * scale,
                  "not a critical point: multiplier formula and EL projection disagree");
    return lam_formula;
}

}  // namespace flep
