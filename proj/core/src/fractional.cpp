#include "flep/fractional.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace flep {

Multiplier::Multiplier(const Grid& g, double s) : grid_(g), s_(s) {
    const auto& k2 = fourier_for(g).k_squared();
    v_.resize(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i)
        v_[i] = (k2[i] == 0.0) ? 0.0 : std::pow(k2[i], s);
}

const Multiplier& multiplier_for(const Grid& g, double s) {
    thread_local std::map<std::tuple<int, int, double, double>, Multiplier> cache;
    auto key = std::make_tuple(g.d, g.n, g.L, s);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, Multiplier(g, s)).first;
    return it->second;
}

Field apply_fractional_laplacian(const Field& f, FractionalOrder s) {
    check_numeric(f.finite(), "non-finite field");
    Fourier& ws = fourier_for(f.grid());
    const Multiplier& m = multiplier_for(f.grid(), s.s);
    Spectrum sp = ws.forward(f);
    for (std::size_t i = 0; i < sp.c.size(); ++i) sp.c[i] *= m.values()[i];
    return ws.inverse(sp);
}

double dirichlet_energy(const Spectrum& fhat, double s) {
    const Multiplier& m = multiplier_for(fhat.grid, s);
    double acc = 0.0;
    for (std::size_t i = 0; i < fhat.c.size(); ++i)
        acc += fhat.weight(i) * m.values()[i] * std::norm(fhat.c[i]);
    return acc / std::pow(fhat.grid.L, fhat.grid.d);
}

double dirichlet_energy(const Field& f, FractionalOrder s) {
    check_numeric(f.finite(), "non-finite field");
    Fourier& ws = fourier_for(f.grid());
    return dirichlet_energy(ws.forward(f), s.s);
}

Field resolvent_apply(const Field& f, FractionalOrder s, double tau) {
    require(tau > 0.0, "resolvent: tau must be positive");
    check_numeric(f.finite(), "non-finite field");
    Fourier& ws = fourier_for(f.grid());
    const Multiplier& m = multiplier_for(f.grid(), s.s);
    Spectrum sp = ws.forward(f);
    for (std::size_t i = 0; i < sp.c.size(); ++i) sp.c[i] /= (1.0 + tau * m.values()[i]);
    return ws.inverse(sp);
}

Field fourier_shift(const Field& f, const Point& delta) {
    check_numeric(f.finite(), "non-finite field");
    const Grid& g = f.grid();
    Fourier& ws = fourier_for(g);
    Spectrum sp = ws.forward(f);
    const int n = g.n;
    const int nc = n / 2 + 1;
    const double dk = 2.0 * M_PI / g.L;
    // phase e^{-i k delta} per axis; Nyquist gets cos(k delta) to stay real
    auto phase1 = [&](int j, double del) -> std::complex<double> {
        if (j == n / 2) return {std::cos(dk * (n / 2) * del), 0.0};
        int jj = (j < n / 2) ? j : j - n;
        double arg = -dk * jj * del;
        return {std::cos(arg), std::sin(arg)};
    };
    if (g.d == 1) {
        for (int j = 0; j < nc; ++j) sp.c[j] *= phase1(j, delta.x);
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> px = phase1(i, delta.x);
            for (int j = 0; j < nc; ++j, ++idx) sp.c[idx] *= px * phase1(j, delta.y);
        }
    }
    return ws.inverse(sp);
}

}  // namespace flep
