#include "flep/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "flep/profile.hpp"

namespace flep {

namespace {

// limit-profile ansatz at scale eps centered at x0
Field ansatz(const LimitProfile& w, const Grid& g, const Point& x0, double eps) {
    Field u(g);
    for (std::size_t i = 0; i < u.size(); ++i) {
        Point p = u.point(i);
        double dx = g.wrap(p.x, x0.x);
        double r = g.d == 1 ? std::abs(dx) : std::hypot(dx, g.wrap(p.y, x0.y));
        u[i] = w.value(r, eps);
    }
    return u;
}

}  // namespace

SweepReport run_sweep(const SweepInputs& in) {
    require(in.settings.k_min >= 1 && in.settings.k_max >= in.settings.k_min,
            "sweep: bad k range");
    in.potential.validate(in.d, in.s);
    in.weight.validate(in.d, in.s);

    SweepReport rep;
    rep.ground = solve_ground_state(in.d, in.s, in.ground_grid, in.ground_opts);
    rep.theory = make_theory_constants(rep.ground, in.potential, in.weight);
    const TheoryConstants& tc = rep.theory;
    rep.energy_slope_pred = tc.l / (tc.l + 2.0 * in.s);
    rep.eps_slope_pred = 1.0 / (tc.l + 2.0 * in.s);

    const Field V = realize_potential(in.potential, in.sweep_grid);
    const Field m = realize_weight(in.weight, in.sweep_grid);
    const LimitProfile limit(rep.ground);

    const int k_min = in.settings.k_min, k_max = in.settings.k_max;
    const int nrows = k_max - k_min + 1;
    rep.rows.resize(nrows);

    int workers = std::max(1, std::min(in.settings.workers, nrows));
    // contiguous warm-start chains, one per worker
    std::vector<std::pair<int, int>> chains;
    int base = nrows / workers, extra = nrows % workers;
    int start = k_min;
    for (int w = 0; w < workers; ++w) {
        int len = base + (w < extra ? 1 : 0);
        if (len == 0) continue;
        chains.push_back({start, start + len - 1});
        start += len;
    }

    auto run_chain = [&](int klo, int khi) {
        Field warm;
        double warm_eps = 0.0;
        for (int k = klo; k <= khi; ++k) {
            double a = tc.a_star * (1.0 - std::pow(2.0, -double(k)));
            double eps_pred = predicted_epsilon(a, tc);
            Field init;
            if (warm.size() == 0) {
                init = ansatz(limit, in.sweep_grid, in.potential.x0, eps_pred);
            } else {
                double ratio = eps_pred / warm_eps;  // < 1: sharpen
                Point center = concentration_point(warm);
                init = resample_scaled(warm, center, 1.0 / ratio);
            }
            MinimizeContext ctx{&V, &m, a, in.s, 1.0};
            MinimizeOptions mo;
            mo.tol = in.settings.el_tol;
            mo.max_steps = in.settings.max_steps;
            mo.tau = 0.3 * std::pow(eps_pred, 2.0 * in.s);
            MinimizerResult res = gradient_flow_minimize(init, ctx, mo);

            SweepRow& row = rep.rows[k - k_min];
            row.k = k;
            row.a = a;
            row.I1 = res.energy.total;
            row.I1_pred = predicted_energy(a, tc);
            row.epsilon = res.epsilon;
            row.eps_pred = eps_pred;
            row.lambda_a = res.lambda_a;
            row.eps2s_lambda = std::pow(res.epsilon, 2.0 * in.s) * res.lambda_a;
            row.z_bar = res.z_bar;
            row.el_residual = res.el_residual;
            row.steps = res.steps;
            row.resolved = res.resolved;

            ProfileDistance pd = profile_distance(res.u, limit, res.epsilon, res.z_bar);
            row.profile_err = pd.err;

            // decomposition I1 = T_gn + T_a + T_m + T_V
            const double cN = in.d / (in.d + 2.0 * in.s);
            double inter0 = lp_norm_p(res.u, 2.0 + 4.0 * in.s / in.d);
            row.term_gn = res.energy.kinetic - tc.a_star * cN * inter0;
            row.term_a = (tc.a_star - a) * cN * inter0;
            row.term_m = a * cN * (inter0 - res.energy.interaction);
            row.term_V = res.energy.potential;

            if (in.settings.keep_fields) row.u = res.u;
            warm = std::move(res.u);
            warm_eps = res.epsilon;
        }
    };

    if (chains.size() == 1) {
        run_chain(chains[0].first, chains[0].second);
    } else {
        std::vector<std::future<void>> futs;
        for (auto [lo, hi] : chains)
            futs.push_back(std::async(std::launch::async, run_chain, lo, hi));
        for (auto& f : futs) f.get();  // rethrows worker exceptions
    }

    std::vector<double> xs, ei, ee;
    for (const SweepRow& r : rep.rows) {
        if (!r.resolved) continue;
        xs.push_back(tc.a_star - r.a);
        ei.push_back(r.I1);
        ee.push_back(r.epsilon);
        ++rep.resolved_count;
    }
    if (rep.resolved_count < 4)
        throw NumericalError("insufficient resolution for fit: fewer than 4 resolved rows");
    rep.energy_fit = fit_powerlaw(xs, ei);
    rep.eps_fit = fit_powerlaw(xs, ee);
    return rep;
}

}  // namespace flep
