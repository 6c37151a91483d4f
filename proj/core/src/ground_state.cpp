#include "flep/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flep {

namespace {

double sup_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

Field initial_guess(const Grid& g, GroundStateOptions::Init kind, std::uint64_t seed) {
    Field u = Field::sample(g, [&](double x, double y) {
        double r2 = x * x + y * y;
        if (kind == GroundStateOptions::Init::gaussian) return std::exp(-0.5 * r2);
        return 1.0 / (1.0 + r2 * r2 / 16.0);
    });
    if (seed != 0) {
        // deterministic low-mode jitter so distinct seeds take distinct paths
        std::uint64_t z = seed;
        auto next = [&z]() {
            z += 0x9e3779b97f4a7c15ull;
            std::uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            return double((x ^ (x >> 31)) >> 11) * 0x1.0p-53;
        };
        double a1 = 0.01 * next(), a2 = 0.01 * next();
        const double w = 2.0 * M_PI / g.L;
        for (std::size_t i = 0; i < u.size(); ++i) {
            Point p = u.point(i);
            u[i] *= 1.0 + a1 * std::cos(w * p.x) + a2 * std::cos(w * p.y);
        }
    }
    return u;
}

struct RawSolve {
    Field U;
    int iterations;
    double stabilizer_gap;
    double final_residual;
    double mass, kinetic, interaction;
};

// Petviashvili fixed point of U = M^gamma (Id + (-Lap)^s)^{-1} U^{1+4s/d},
// M = <U,(Id+(-Lap)^s)U> / int U^{2+4s/d}, gamma = (d+4s)/(4s).
RawSolve petviashvili(int d, double s, const Grid& g, const GroundStateOptions& opts) {
    const double p = 4.0 * s / d;
    const double gamma_P = (d + 4.0 * s) / (4.0 * s);
    Fourier& ws = fourier_for(g);
    const Multiplier& mult = multiplier_for(g, s);
    const double hd = std::pow(g.h(), g.d);

    Field U = initial_guess(g, opts.init, opts.seed);
    Spectrum sp, nsp;
    Field LU(g), Np(g);
    std::vector<double> history;
    double Mgap = 1.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        ws.forward(U, sp);
        nsp = sp;
        for (std::size_t i = 0; i < nsp.c.size(); ++i) nsp.c[i] *= mult.values()[i];
        ws.inverse(nsp, LU);

        double mass = 0.0, kin = 0.0, inter = 0.0;
        for (std::size_t i = 0; i < U.size(); ++i) {
            double u = U[i];
            mass += u * u;
            kin += u * LU[i];
            Np[i] = std::pow(std::abs(u), 1.0 + p);
            inter += u * Np[i];
        }
        mass *= hd;
        kin *= hd;
        inter *= hd;
        check_numeric(std::isfinite(inter) && inter > 1e-300,
                      "trivial fixed point (ground-state iteration collapsed to zero)");

        double M = (mass + kin) / inter;
        Mgap = std::abs(M - 1.0);
        double factor = std::pow(M, gamma_P);

        ws.forward(Np, nsp);
        for (std::size_t i = 0; i < nsp.c.size(); ++i)
            nsp.c[i] *= factor / (1.0 + mult.values()[i]);
        Field Unew(g);
        ws.inverse(nsp, Unew);

        double diff = 0.0, supn = 0.0;
        for (std::size_t i = 0; i < U.size(); ++i) {
            Unew[i] = std::abs(Unew[i]);
            diff = std::max(diff, std::abs(Unew[i] - U[i]));
            supn = std::max(supn, Unew[i]);
        }
        U = Unew;
        double rel = diff / supn;
        history.push_back(rel);
        if (rel < opts.tol && Mgap < 1e-11) break;
    }
    if (it >= opts.max_iter) {
        std::ostringstream msg;
        msg << "ground-state iteration did not converge in " << opts.max_iter
            << " steps; last deltas:";
        for (std::size_t i = history.size() > 5 ? history.size() - 5 : 0; i < history.size(); ++i)
            msg << " " << history[i];
        throw NumericalError(msg.str());
    }

    RawSolve out{std::move(U), it + 1, Mgap, 0.0, 0.0, 0.0, 0.0};
    return out;
}

// Shift the peak to the origin (integer roll + sub-grid Fourier shift), then
// make the field even per axis. Reflection j -> n-j maps the grid to itself.
void recenter_and_symmetrize(Field& U) {
    const Grid& g = U.grid();
    const int n = g.n;
    Point peak = interpolated_peak(U);
    int n2 = n / 2;

    auto roll_index = [&](double coord) {
        int j = int(std::lround((coord + 0.5 * g.L) / g.h()));
        return ((j % n) + n) % n;
    };
    int si = roll_index(peak.x);
    int sj = g.d == 2 ? roll_index(peak.y) : 0;
    Field rolled(g);
    if (g.d == 1) {
        for (int i = 0; i < n; ++i) rolled[i] = U[std::size_t((i + si - n2 + 2 * n) % n)];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rolled[std::size_t(i) * n + j] =
                    U[std::size_t((i + si - n2 + 2 * n) % n) * n + (j + sj - n2 + 2 * n) % n];
    }
    double fx = peak.x - g.coord(si);
    double fy = g.d == 2 ? peak.y - g.coord(sj) : 0.0;
    U = fourier_shift(rolled, Point{-fx, -fy});

    Field sym(g);
    if (g.d == 1) {
        for (int i = 0; i < n; ++i)
            sym[i] = 0.5 * (U[i] + U[std::size_t((n - i) % n)]);
    } else {
        for (int i = 0; i < n; ++i) {
            int ir = (n - i) % n;
            for (int j = 0; j < n; ++j) {
                int jr = (n - j) % n;
                sym[std::size_t(i) * n + j] =
                    0.25 * (U[std::size_t(i) * n + j] + U[std::size_t(ir) * n + j] +
                            U[std::size_t(i) * n + jr] + U[std::size_t(ir) * n + jr]);
            }
        }
    }
    for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = std::abs(sym[i]);
    U = std::move(sym);
}

void compute_integrals(RawSolve& r, double s) {
    const Grid& g = r.U.grid();
    const double p = 4.0 * s / g.d;
    r.mass = lp_norm_p(r.U, 2.0);
    r.kinetic = dirichlet_energy(r.U, FractionalOrder::make(s));
    r.interaction = lp_norm_p(r.U, 2.0 + p);

    Field LU = apply_fractional_laplacian(r.U, FractionalOrder::make(s));
    double res = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < r.U.size(); ++i) {
        double u = r.U[i];
        res = std::max(res, std::abs(LU[i] + u - std::pow(u, 1.0 + p)));
        sup = std::max(sup, u);
    }
    r.final_residual = res / sup;
}

RawSolve solve_one(int d, double s, const Grid& g, const GroundStateOptions& opts) {
    RawSolve r = petviashvili(d, s, g, opts);
    recenter_and_symmetrize(r.U);
    compute_integrals(r, s);
    return r;
}

}  // namespace

GroundState solve_ground_state(int d, double s, const Grid& grid,
                               const GroundStateOptions& opts) {
    require(d == grid.d, "ground state: dimension does not match grid");
    FractionalOrder::make(s);
    require(grid.L >= 20.0, "ground state: box must satisfy L >= 20");
    require(opts.tol >= 1e-15, "ground state: tol too small");

    RawSolve main = solve_one(d, s, grid, opts);

    GroundState g;
    g.U = std::move(main.U);
    g.d = d;
    g.s = s;
    g.mass = main.mass;
    g.kinetic = main.kinetic;
    g.interaction = main.interaction;
    g.iterations = main.iterations;
    g.final_residual = main.final_residual;
    g.stabilizer_gap = main.stabilizer_gap;

    g.mass_fs = g.mass;
    g.kinetic_fs = g.kinetic;
    g.interaction_fs = g.interaction;

    if (opts.certify && s < 1.0) {
        // companion box at the same spacing; the leading truncation bias of
        // each integral scales like L^{-(d+2s)}
        double scale = opts.companion_scale;
        int n2 = int(std::lround(grid.n * scale));
        if ((n2 & (n2 - 1)) != 0) {
            scale = 2.0;
            n2 = 2 * grid.n;
        }
        Grid g2 = Grid::make(d, n2, grid.L * scale);
        RawSolve comp = solve_one(d, s, g2, opts);
        double theta = d + 2.0 * s;
        double w = 1.0 / (std::pow(scale, theta) - 1.0);
        auto extrap = [&](double f1, double f2) {
            if (std::abs(f2 - f1) < 1e-11 * std::abs(f2)) return f2;
            return f2 + (f2 - f1) * w;
        };
        g.mass_fs = extrap(main.mass, comp.mass);
        g.kinetic_fs = extrap(main.kinetic, comp.kinetic);
        g.interaction_fs = extrap(main.interaction, comp.interaction);
    }

    g.a_star = std::pow(g.mass_fs, 2.0 * s / d);
    auto ids = check_identities(g);
    g.pohozaev_residual = ids.pohozaev_residual;
    g.mass_identity_residual = ids.mass_identity_residual;
    return g;
}

IdentityResiduals check_identities(const GroundState& g) {
    const double d = g.d, s = g.s;
    double poho = std::abs(g.kinetic_fs / g.interaction_fs - d / (d + 2.0 * s)) *
                  (d + 2.0 * s) / d;
    double mid = std::abs(g.mass_fs / g.interaction_fs - 2.0 * s / (d + 2.0 * s)) *
                 (d + 2.0 * s) / (2.0 * s);
    return {poho, mid};
}

IdentityResiduals check_identities(const Field& u, double s) {
    const double d = u.grid().d;
    double kin = dirichlet_energy(u, FractionalOrder::make(s));
    double mass = lp_norm_p(u, 2.0);
    double inter = lp_norm_p(u, 2.0 + 4.0 * s / d);
    double poho = std::abs(kin / inter - d / (d + 2.0 * s)) * (d + 2.0 * s) / d;
    double mid = std::abs(mass / inter - 2.0 * s / (d + 2.0 * s)) * (d + 2.0 * s) / (2.0 * s);
    return {poho, mid};
}

double gn_quotient(const Field& u, double s, double a_star) {
    const double d = u.grid().d;
    double mass = lp_norm_p(u, 2.0);
    require(mass > 1e-300, "gn_quotient: zero field");
    double kin = dirichlet_energy(u, FractionalOrder::make(s));
    double inter = lp_norm_p(u, 2.0 + 4.0 * s / d);
    return (d + 2.0 * s) / (d * a_star) * kin * std::pow(mass, 2.0 * s / d) / inter;
}

double gn_quotient(const GroundState& g) {
    const double d = g.d, s = g.s;
    return (d + 2.0 * s) / (d * g.a_star) * g.kinetic_fs *
           std::pow(g.mass_fs, 2.0 * s / d) / g.interaction_fs;
}

GammaMoments gamma_moments(const GroundState& g, double l) {
    const double d = g.d, s = g.s;
    require(l > 0.0, "gamma_moments: l must be positive");
    require(l + 2.0 * s < d + 8.0 * s + 8.0 * s * s / d,
            "moment diverges: l + 2s must be below d + 8s + 8s^2/d");
    require(l < d + 4.0 * s, "moment diverges: l must be below d + 4s");
    const double p = 4.0 * s / d;
    Point origin{0.0, 0.0};
    GammaMoments out{};
    out.gamma1 = moment(g.U, origin, l + 2.0 * s, 2.0 + p);
    out.gamma2 = moment(g.U, origin, l, 2.0);
    double rcut = 0.4 * g.U.grid().L;
    out.outer_share1 = moment_outer(g.U, origin, l + 2.0 * s, 2.0 + p, rcut) / out.gamma1;
    out.outer_share2 = moment_outer(g.U, origin, l, 2.0, rcut) / out.gamma2;
    out.truncation_ok = out.outer_share1 < 0.01 && out.outer_share2 < 0.01;
    return out;
}

namespace {

struct Sample {
    double r;
    double u;
};

// nearest-image model sum_{nonzero offsets} |x + nL|^{-m}
double image_sum(const Point& x, int d, double L, double m) {
    double acc = 0.0;
    if (d == 1) {
        for (int n = -2; n <= 2; ++n) {
            if (n == 0) continue;
            acc += std::pow(std::abs(x.x + n * L), -m);
        }
    } else {
        for (int nx = -1; nx <= 1; ++nx)
            for (int ny = -1; ny <= 1; ++ny) {
                if (nx == 0 && ny == 0) continue;
                double dx = x.x + nx * L, dy = x.y + ny * L;
                acc += std::pow(dx * dx + dy * dy, -0.5 * m);
            }
    }
    return acc;
}

struct LogFit {
    double slope, intercept, residual;
};

LogFit fit_loglog(const std::vector<double>& r, const std::vector<double>& u) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (u[i] <= 0.0) continue;
        double lx = std::log(r[i]), ly = std::log(u[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    check_numeric(n >= 3, "decay fit: too few positive samples");
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (u[i] <= 0.0) continue;
        double e = std::log(u[i]) - slope * std::log(r[i]) - intercept;
        rss += e * e;
    }
    return {slope, intercept, std::sqrt(rss / n)};
}

}  // namespace

DecayFit decay_fit(const GroundState& g) {
    const Grid& grid = g.U.grid();
    const double L = grid.L;
    const double lo = 0.25 * L, hi = 0.40 * L;

    std::vector<Sample> raw;
    for (std::size_t i = 0; i < g.U.size(); ++i) {
        Point p = g.U.point(i);
        double r = grid.d == 1 ? std::abs(p.x) : std::hypot(p.x, p.y);
        if (r >= lo && r <= hi && g.U[i] > 0.0) raw.push_back({r, g.U[i]});
    }
    int nshell = int((hi - lo) / (2.0 * grid.h()));
    nshell = std::min(nshell, 24);
    require(nshell >= 8, "decay fit: window under-resolved (fewer than 8 shells)");

    // shell-average with per-sample image subtraction, iterated to
    // self-consistency; the raw periodic field flattens toward the box edge
    double c_img = 0.0, m_img = grid.d + 2.0 * g.s;
    LogFit fit{};
    std::vector<double> shell_r, shell_u;
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> sum_r(nshell, 0.0), sum_u(nshell, 0.0);
        std::vector<int> cnt(nshell, 0);
        for (std::size_t i = 0; i < g.U.size(); ++i) {
            Point p = g.U.point(i);
            double r = grid.d == 1 ? std::abs(p.x) : std::hypot(p.x, p.y);
            if (r < lo || r > hi) continue;
            double u = g.U[i];
            if (c_img > 0.0) {
                double corr = c_img * image_sum(p, grid.d, L, m_img);
                u -= std::min(corr, 0.9 * u);
            }
            int b = std::min(nshell - 1, int((r - lo) / (hi - lo) * nshell));
            sum_r[b] += r;
            sum_u[b] += u;
            cnt[b]++;
        }
        shell_r.clear();
        shell_u.clear();
        for (int b = 0; b < nshell; ++b) {
            if (cnt[b] == 0) continue;
            shell_r.push_back(sum_r[b] / cnt[b]);
            shell_u.push_back(sum_u[b] / cnt[b]);
        }
        fit = fit_loglog(shell_r, shell_u);
        m_img = std::min(std::abs(fit.slope), 12.0);
        c_img = std::exp(fit.intercept);
    }

    // compare half-window slopes to spot super-algebraic (s=1) decay
    std::size_t half = shell_r.size() / 2;
    std::vector<double> r1(shell_r.begin(), shell_r.begin() + half),
        u1(shell_u.begin(), shell_u.begin() + half),
        r2(shell_r.begin() + half, shell_r.end()), u2(shell_u.begin() + half, shell_u.end());
    LogFit flo = fit_loglog(r1, u1), fhi = fit_loglog(r2, u2);
    bool algebraic = std::abs(fhi.slope) <= 1.25 * std::abs(flo.slope);

    DecayFit out{};
    out.fitted_exponent = fit.slope;
    out.window_lo = lo;
    out.window_hi = hi;
    out.algebraic = algebraic;
    out.fit_residual = fit.residual;

    // two-sided bound constants with the theoretical exponent d + 2s
    double mth = grid.d + 2.0 * g.s;
    double clo = 1e300, chi = 0.0;
    for (std::size_t i = 0; i < shell_r.size(); ++i) {
        double c = shell_u[i] * (1.0 + std::pow(shell_r[i], mth));
        clo = std::min(clo, c);
        chi = std::max(chi, c);
    }
    out.c_lower = clo;
    out.c_upper = chi;
    return out;
}

}  // namespace flep
