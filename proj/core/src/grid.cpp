#include "flep/grid.hpp"

#include <algorithm>
#include <cmath>

namespace flep {

double integrate(const Field& f) {
    check_numeric(f.finite(), "non-finite field");
    double acc = 0.0;
    for (double v : f.values()) acc += v;
    return acc * std::pow(f.grid().h(), f.grid().d);
}

double lp_norm_p(const Field& f, double r) {
    require(r >= 1.0, "lp_norm_p: exponent must be >= 1");
    check_numeric(f.finite(), "non-finite field");
    double acc = 0.0;
    if (r == 2.0) {
        for (double v : f.values()) acc += v * v;
    } else {
        for (double v : f.values()) acc += std::pow(std::abs(v), r);
    }
    return acc * std::pow(f.grid().h(), f.grid().d);
}

static double moment_impl(const Field& f, const Point& center, double r, double pw,
                          double r_min) {
    require(r >= 0.0, "moment: radial exponent must be >= 0");
    require(pw >= 1.0, "moment: field power must be >= 1");
    const Grid& g = f.grid();
    require(g.inside(center), "moment: center outside box");
    check_numeric(f.finite(), "non-finite field");
    // same sample powers as lp_norm_p so the r=0 moment matches it bit for bit
    auto fpow = [pw](double v) { return pw == 2.0 ? v * v : std::pow(std::abs(v), pw); };
    auto rpow = [r](double dist) { return r == 0.0 ? 1.0 : std::pow(dist, r); };
    double acc = 0.0;
    const int n = g.n;
    if (g.d == 1) {
        for (int i = 0; i < n; ++i) {
            double dist = std::abs(g.wrap(g.coord(i), center.x));
            if (dist <= r_min) continue;
            acc += rpow(dist) * fpow(f[i]);
        }
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            double dx = g.wrap(g.coord(i), center.x);
            for (int j = 0; j < n; ++j, ++idx) {
                double dy = g.wrap(g.coord(j), center.y);
                double dist = std::sqrt(dx * dx + dy * dy);
                if (dist <= r_min) continue;
                acc += rpow(dist) * fpow(f[idx]);
            }
        }
    }
    return acc * std::pow(g.h(), g.d);
}

double moment(const Field& f, const Point& center, double r, double pw) {
    return moment_impl(f, center, r, pw, -1.0);
}

Point interpolated_peak(const Field& f) {
    check_numeric(f.finite(), "non-finite field");
    const Grid& g = f.grid();
    const int n = g.n;
    std::size_t best = 0;
    double fmax = -1.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = std::abs(f[i]);
        if (v > fmax) {
            fmax = v;
            best = i;
        }
    }
    auto refine = [&](double fm, double f0, double fp) {
        double denom = fm - 2.0 * f0 + fp;
        if (denom == 0.0) return 0.0;
        double delta = 0.5 * (fm - fp) / denom;
        return std::clamp(delta, -0.5, 0.5) * g.h();
    };
    Point p{};
    if (g.d == 1) {
        int i = int(best);
        double fm = std::abs(f[(i + n - 1) % n]), f0 = std::abs(f[i]),
               fp = std::abs(f[(i + 1) % n]);
        p.x = g.coord(i) + refine(fm, f0, fp);
    } else {
        int i = int(best) / n, j = int(best) % n;
        auto at = [&](int a, int b) {
            return std::abs(f[std::size_t((a + n) % n) * n + (b + n) % n]);
        };
        p.x = g.coord(i) + refine(at(i - 1, j), at(i, j), at(i + 1, j));
        p.y = g.coord(j) + refine(at(i, j - 1), at(i, j), at(i, j + 1));
    }
    return p;
}

double moment_outer(const Field& f, const Point& center, double r, double pw, double r_min) {
    return moment_impl(f, center, r, pw, r_min);
}

}  // namespace flep
