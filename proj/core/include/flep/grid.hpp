#pragma once
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "flep/errors.hpp"

namespace flep {

// Point in the box; y component ignored for d=1.
struct Point {
    double x = 0.0;
    double y = 0.0;
    double operator[](int axis) const { return axis == 0 ? x : y; }
    double& operator[](int axis) { return axis == 0 ? x : y; }
};

/// Uniform periodic grid on [-L/2, L/2)^d, d in {1,2}, n a power of two.
/// Axis coordinate of index j is -L/2 + j*h. Row-major layout, axis 0 slowest.
struct Grid {
    int d = 1;
    int n = 0;
    double L = 0.0;

    static Grid make(int d, int n, double L) {
        require(d == 1 || d == 2, "grid: d must be 1 or 2");
        require(n >= 16 && (n & (n - 1)) == 0, "grid: n must be a power of two >= 16");
        require(L > 0.0 && std::isfinite(L), "grid: L must be positive and finite");
        return Grid{d, n, L};
    }

    double h() const { return L / n; }
    std::size_t size() const { return d == 1 ? std::size_t(n) : std::size_t(n) * n; }
    double coord(int j) const { return -0.5 * L + j * h(); }

    // Signed minimal-image displacement of coordinate x from c on the torus.
    double wrap(double x, double c) const {
        double dx = x - c;
        dx -= L * std::round(dx / L);
        return dx;
    }

    bool inside(const Point& p) const {
        for (int ax = 0; ax < d; ++ax)
            if (p[ax] < -0.5 * L || p[ax] >= 0.5 * L) return false;
        return true;
    }

    bool operator==(const Grid&) const = default;
};

/// Real scalar field sampled on a Grid. Values are plain samples; all
/// integrals use the periodic rectangle rule, h^d * sum.
class Field {
  public:
    Field() = default;
    explicit Field(const Grid& g) : grid_(g), v_(g.size(), 0.0) {}
    Field(const Grid& g, std::vector<double> values) : grid_(g), v_(std::move(values)) {
        require(v_.size() == g.size(), "field: value count does not match grid");
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }
    std::span<const double> values() const { return v_; }
    std::span<double> values() { return v_; }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    std::size_t index(int i0, int i1 = 0) const {
        return grid_.d == 1 ? std::size_t(i0) : std::size_t(i0) * grid_.n + i1;
    }

    // Coordinates of flat index i.
    Point point(std::size_t i) const {
        if (grid_.d == 1) return {grid_.coord(int(i)), 0.0};
        return {grid_.coord(int(i / grid_.n)), grid_.coord(int(i % grid_.n))};
    }

    template <class F>
    static Field sample(const Grid& g, F f) {
        Field out(g);
        if (g.d == 1) {
            for (int i = 0; i < g.n; ++i) out.v_[i] = f(g.coord(i), 0.0);
        } else {
            std::size_t idx = 0;
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i);
                for (int j = 0; j < g.n; ++j) out.v_[idx++] = f(x, g.coord(j));
            }
        }
        return out;
    }

    bool finite() const {
        for (double v : v_)
            if (!std::isfinite(v)) return false;
        return true;
    }

  private:
    Grid grid_;
    std::vector<double> v_;
};

/// h^d * sum of samples (periodic rectangle rule).
double integrate(const Field& f);

/// Location of the maximum of |f|, refined per axis by a 3-point parabola
/// (sub-grid accuracy O(h^2)). Ties resolve to the lexicographically
/// smallest index because the scan keeps the first strict maximum.
Point interpolated_peak(const Field& f);

/// int |f|^r dx (no root taken). Requires r >= 1.
double lp_norm_p(const Field& f, double r);

/// int |x - center|^r |f|^pow dx with minimal-image distance.
double moment(const Field& f, const Point& center, double r, double pow);

/// Same but only over the shell |x - center| > r_min (truncation diagnostics).
double moment_outer(const Field& f, const Point& center, double r, double pow, double r_min);

}  // namespace flep
