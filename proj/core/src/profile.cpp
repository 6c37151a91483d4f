#include "flep/profile.hpp"

#include <algorithm>
#include <cmath>

namespace flep {

namespace {

// 4-point periodic Lagrange interpolation on a uniform axis
inline double lagrange4(double fm1, double f0, double f1, double f2, double t) {
    // t in [0,1) between f0 and f1
    double a = -t * (t - 1.0) * (t - 2.0) / 6.0;
    double b = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    double c = -(t + 1.0) * t * (t - 2.0) / 2.0;
    double d = (t + 1.0) * t * (t - 1.0) / 6.0;
    return a * fm1 + b * f0 + c * f1 + d * f2;
}

// zero-pad an r2c spectrum from grid n to grid nf = up*n (Nyquist dropped)
Spectrum zero_pad(const Spectrum& s, const Grid& fine) {
    const int n = s.grid.n, nf = fine.n;
    const int nc = n / 2 + 1, ncf = nf / 2 + 1;
    Spectrum out;
    out.grid = fine;
    out.c.assign(fine.d == 1 ? std::size_t(ncf) : std::size_t(nf) * ncf, {0.0, 0.0});
    if (fine.d == 1) {
        for (int j = 0; j < n / 2; ++j) out.c[j] = s.c[j];
    } else {
        for (int i = 0; i < n; ++i) {
            if (i == n / 2) continue;
            int ii = (i < n / 2) ? i : i + (nf - n);
            for (int j = 0; j < n / 2; ++j)
                out.c[std::size_t(ii) * ncf + j] = s.c[std::size_t(i) * nc + j];
        }
    }
    return out;
}

}  // namespace

FieldInterpolant::FieldInterpolant(const Field& f, int upsample) {
    require(upsample >= 2 && (upsample & (upsample - 1)) == 0,
            "interpolant: upsample must be a power of two >= 2");
    const Grid& g = f.grid();
    Grid fine = Grid::make(g.d, g.n * upsample, g.L);
    Spectrum s = fourier_for(g).forward(f);
    Spectrum sf = zero_pad(s, fine);
    fine_ = fourier_for(fine).inverse(sf);
}

double FieldInterpolant::operator()(const Point& x) const {
    const Grid& g = fine_.grid();
    const int n = g.n;
    auto axis = [&](double c) {
        double u = (c + 0.5 * g.L) / g.h();
        double fl = std::floor(u);
        int j = int(fl);
        return std::pair<int, double>{((j % n) + n) % n, u - fl};
    };
    auto [i0, tx] = axis(x.x);
    if (g.d == 1) {
        auto at = [&](int j) { return fine_[std::size_t((j + 2 * n) % n)]; };
        return lagrange4(at(i0 - 1), at(i0), at(i0 + 1), at(i0 + 2), tx);
    }
    auto [j0, ty] = axis(x.y);
    auto at = [&](int i, int j) {
        return fine_[std::size_t((i + 2 * n) % n) * n + (j + 2 * n) % n];
    };
    double rows[4];
    for (int di = -1; di <= 2; ++di)
        rows[di + 1] = lagrange4(at(i0 + di, j0 - 1), at(i0 + di, j0), at(i0 + di, j0 + 1),
                                 at(i0 + di, j0 + 2), ty);
    return lagrange4(rows[0], rows[1], rows[2], rows[3], tx);
}

Field resample_scaled(const Field& u, const Point& center, double scale) {
    require(scale > 0.0, "resample: scale must be positive");
    const Grid& g = u.grid();
    FieldInterpolant interp(u);
    Field out(g);
    const double amp = std::pow(scale, 0.5 * g.d);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Point x = out.point(i);
        Point y{center.x + scale * g.wrap(x.x, center.x),
                g.d == 2 ? center.y + scale * g.wrap(x.y, center.y) : 0.0};
        // points mapped outside the box wrap periodically; for concentrated
        // fields the tail there is negligible
        out[i] = amp * interp(y);
    }
    return out;
}

RadialProfile::RadialProfile(const Field& f, double tail_exponent) {
    const Grid& g = f.grid();
    const int n = g.n;
    const int up = 8;
    Grid line = Grid::make(1, n, g.L);
    Field slice(line);
    if (g.d == 1) {
        for (int i = 0; i < n; ++i) slice[i] = f[i];
    } else {
        for (int i = 0; i < n; ++i) slice[i] = f[std::size_t(i) * n + n / 2];
    }
    Grid fine = Grid::make(1, n * up, g.L);
    Spectrum s = fourier_for(line).forward(slice);
    Field dense = fourier_for(fine).inverse(zero_pad(s, fine));

    // fold to r >= 0 about the origin sample (index nf/2)
    const int nf = fine.n;
    const int half = nf / 2;
    dr_ = fine.h();
    v_.resize(half);
    for (int i = 0; i < half; ++i)
        v_[i] = 0.5 * (dense[std::size_t(half + i)] +
                       dense[std::size_t(half - i)]);
    rcut_ = 0.47 * g.L;
    tail_m_ = tail_exponent;
    double vc = (*this)(rcut_ * 0.999);
    tail_c_ = std::max(vc, 0.0) * std::pow(rcut_, tail_m_);
}

double RadialProfile::operator()(double r) const {
    if (r >= rcut_) return tail_c_ * std::pow(r, -tail_m_);
    double u = r / dr_;
    int j = int(std::floor(u));
    double t = u - j;
    auto at = [&](int i) {
        if (i < 0) i = -i;  // even profile
        if (i >= int(v_.size())) i = int(v_.size()) - 1;
        return v_[i];
    };
    return lagrange4(at(j - 1), at(j), at(j + 1), at(j + 2), t);
}

LimitProfile::LimitProfile(const GroundState& gs) : d_(gs.d) {
    const double s = gs.s, d = gs.d;
    beta_ = std::pow(2.0 * s / d, 1.0 / (2.0 * s));
    amp_ = std::pow(2.0 * s / d, d / (4.0 * s)) / std::sqrt(gs.mass_fs);
    prof_ = RadialProfile(gs.U, d + 2.0 * s);
}

double LimitProfile::value(double r, double eps) const {
    return std::pow(eps, -0.5 * d_) * amp_ * prof_(beta_ * r / eps);
}

namespace {

double distance_at(const Field& u, const LimitProfile& w, double eps, const Point& c) {
    const Grid& g = u.grid();
    double acc = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        Point p = u.point(i);
        double dx = g.wrap(p.x, c.x);
        double r = g.d == 1 ? std::abs(dx) : std::hypot(dx, g.wrap(p.y, c.y));
        double diff = u[i] - w.value(r, eps);
        acc += diff * diff;
        nrm += u[i] * u[i];
    }
    return std::sqrt(acc / nrm);
}

}  // namespace

ProfileDistance profile_distance(const Field& u, const LimitProfile& w, double eps,
                                 const Point& z_guess) {
    const Grid& g = u.grid();
    Point c = z_guess;
    double delta = g.h();
    double best = distance_at(u, w, eps, c);
    // coordinate-wise parabolic refinement of the center
    for (int round = 0; round < 6; ++round) {
        for (int ax = 0; ax < g.d; ++ax) {
            Point cm = c, cp = c;
            cm[ax] -= delta;
            cp[ax] += delta;
            double fm = distance_at(u, w, eps, cm);
            double fp = distance_at(u, w, eps, cp);
            double denom = fm - 2.0 * best + fp;
            if (fm < best && fm <= fp) {
                c = cm;
                best = fm;
            } else if (fp < best) {
                c = cp;
                best = fp;
            } else if (denom > 0.0) {
                double step = 0.5 * (fm - fp) / denom * delta;
                Point cn = c;
                cn[ax] += std::clamp(step, -delta, delta);
                double fn = distance_at(u, w, eps, cn);
                if (fn < best) {
                    c = cn;
                    best = fn;
                }
            }
        }
        delta *= 0.5;
    }
    return {best, c};
}

}  // namespace flep
