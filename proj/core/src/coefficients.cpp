#include "flep/coefficients.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace flep {

void PotentialSpec::validate(int d, double s) const {
    require(v_inf > 0.0, "(V2): v_inf must be positive");
    require(p > 0.0 && p < d + 4.0 * s,
            "(V4): p must lie in (0, d+4s)");
    require(beta > 0.0 && beta < 2.0 * s, "(V2): beta must lie in (0,2s)");
    require(c > 0.0, "potential: c must be positive");
    require(v_inf * std::pow(c, -beta / p) > 1.0,
            "(V2): tail margin v_inf * c^(-beta/p) > 1 violated");
}

void WeightSpec::validate(int d, double s) const {
    require(m_inf > 0.0 && m_inf < 1.0, "(M1): m_inf must lie in (0,1)");
    require(q > 2.0 * s && q < d + 8.0 * s + 8.0 * s * s / d,
            "(M2): q must lie in (2s, d+8s+8s^2/d), see the moment "
            "integrability window");
    require(c2 > 0.0, "weight: c2 must be positive");
}

namespace {
void require_central(const Point& x0, const Grid& g) {
    for (int ax = 0; ax < g.d; ++ax)
        require(std::abs(x0[ax]) <= 0.25 * g.L,
                "coefficient center x0 must lie in the central half of the box");
}

double min_image_radius(const Grid& g, const Point& p, const Point& x0) {
    double dx = g.wrap(p.x, x0.x);
    if (g.d == 1) return std::abs(dx);
    double dy = g.wrap(p.y, x0.y);
    return std::hypot(dx, dy);
}
}  // namespace

Field realize_potential(const PotentialSpec& spec, const Grid& g) {
    require_central(spec.x0, g);
    Field V(g);
    for (std::size_t i = 0; i < V.size(); ++i)
        V[i] = spec.at_radius(min_image_radius(g, V.point(i), spec.x0));
    return V;
}

Field realize_weight(const WeightSpec& spec, const Grid& g) {
    require_central(spec.x0, g);
    Field m(g);
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = spec.at_radius(min_image_radius(g, m.point(i), spec.x0));
    return m;
}

namespace {

// log-log slope of f(r) over r in [2h, 16h] sampled at dyadic radii
double local_exponent(const std::function<double(double)>& f, double h) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double r = 2.0 * h; r <= 16.0 * h * 1.0001; r *= std::sqrt(2.0)) {
        double v = f(r);
        if (v <= 0.0) continue;
        double lx = std::log(r), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    check_numeric(n >= 3, "local exponent fit: too few samples");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Richardson limit of f(r)/r^p at r -> 0 from r = 4h, 8h; the family's
// first correction is O(r^p) so extrapolate with that exponent.
double richardson_limit(const std::function<double(double)>& f, double p, double h) {
    double f1 = f(4.0 * h) / std::pow(4.0 * h, p);
    double f2 = f(8.0 * h) / std::pow(8.0 * h, p);
    return f1 + (f1 - f2) / (std::pow(2.0, p) - 1.0);
}

}  // namespace

ValidationReport validate_assumptions(const Field& V, const Field& m,
                                      const PotentialSpec& vspec, const WeightSpec& wspec,
                                      int d, double s) {
    require(V.grid() == m.grid(), "validate: V and m must share a grid");
    const Grid& g = V.grid();
    const double h = g.h();
    ValidationReport rep;
    auto add = [&](const std::string& name, bool pass, double meas, double exp,
                   const std::string& detail) {
        rep.checks.push_back({name, pass, meas, exp, detail});
    };

    // (V1): V(x0) = inf V = 0 at the grid point
    std::size_t argmin = 0, argmax_m = 0;
    double vmin = 1e300, vmax = -1e300, mmax = -1e300;
    for (std::size_t i = 0; i < V.size(); ++i) {
        if (V[i] < vmin) {
            vmin = V[i];
            argmin = i;
        }
        vmax = std::max(vmax, V[i]);
        if (m[i] > mmax) {
            mmax = m[i];
            argmax_m = i;
        }
    }
    add("(V1)", vmin <= 1e-12 * vspec.v_inf, vmin, 0.0, "inf V = V(x0) = 0");

    // (V2): bounds and tail inequality on the far ring
    bool tail_ok = vspec.beta > 0.0 && vspec.beta < 2.0 * s;
    double worst_margin = 1e300;
    for (std::size_t i = 0; i < V.size(); ++i) {
        Point p = V.point(i);
        double r = min_image_radius(g, p, vspec.x0);
        if (r < 0.35 * g.L || r > 0.45 * g.L) continue;
        double margin = (vspec.v_inf - V[i]) - std::pow(r, -vspec.beta);
        worst_margin = std::min(worst_margin, margin);
        if (margin <= 0.0) tail_ok = false;
    }
    add("(V2)", tail_ok && vmax < vspec.v_inf, worst_margin, 0.0,
        "V - v_inf < -|x|^-beta on r in [0.35L, 0.45L], sup V < v_inf");

    // (V3): argmin V and argmax m coincide at x0
    Point pv = V.point(argmin), pm = m.point(argmax_m);
    bool same = std::abs(g.wrap(pv.x, pm.x)) < 0.5 * h &&
                (g.d == 1 || std::abs(g.wrap(pv.y, pm.y)) < 0.5 * h);
    bool at_x0 = std::abs(g.wrap(pv.x, vspec.x0.x)) < 0.5 * h &&
                 (g.d == 1 || std::abs(g.wrap(pv.y, vspec.x0.y)) < 0.5 * h);
    add("(V3)", same && at_x0, 0.0, 0.0, "argmin V = argmax m = x0");

    // (V4): local exponent and C0
    auto vr = [&](double r) { return vspec.at_radius(r); };
    double pfit = local_exponent(vr, h);
    rep.measured_p = pfit;
    add("(V4):exponent", std::abs(pfit - vspec.p) <= 0.02 * vspec.p, pfit, vspec.p,
        "log-log fit of V near x0 on [2h,16h]");
    rep.measured_C0 = richardson_limit(vr, vspec.p, h);
    add("(V4):C0", std::abs(rep.measured_C0 - vspec.C0()) <= 0.01 * vspec.C0(),
        rep.measured_C0, vspec.C0(), "Richardson limit of V/r^p");

    // (M1): range and the 2s-order flatness at x0 (automatic since q > 2s)
    bool m_range = true;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!(m[i] > wspec.m_inf && m[i] <= 1.0 + 1e-15)) m_range = false;
    double flat = (1.0 - wspec.at_radius(4.0 * h)) / std::pow(4.0 * h, 2.0 * s);
    add("(M1)", m_range && mmax >= 1.0 - 1e-12 && flat < 1.0, flat, 0.0,
        "m_inf < m <= 1, m(x0) = 1, (1-m)/r^{2s} -> 0");

    // (M2): local exponent and C_bar
    auto mr = [&](double r) { return 1.0 - wspec.at_radius(r); };
    double qfit = local_exponent(mr, h);
    rep.measured_q = qfit;
    add("(M2):exponent", std::abs(qfit - wspec.q) <= 0.02 * wspec.q, qfit, wspec.q,
        "log-log fit of 1-m near x0 on [2h,16h]");
    rep.measured_C_bar = richardson_limit(mr, wspec.q, h);
    add("(M2):C_bar", std::abs(rep.measured_C_bar - wspec.C_bar()) <= 0.01 * wspec.C_bar(),
        rep.measured_C_bar, wspec.C_bar(), "Richardson limit of (1-m)/r^q");

    rep.l = std::min(wspec.q - 2.0 * s, vspec.p);
    add("l", rep.l > 0.0, rep.l, 0.0, "l = min(q-2s, p) > 0");
    return rep;
}

}  // namespace flep
