#pragma once
#include <vector>

#include "flep/fft.hpp"
#include "flep/grid.hpp"

namespace flep {

/// Fractional order s in (0,1]; s=1 is the classical Laplacian.
struct FractionalOrder {
    double s;
    static FractionalOrder make(double s) {
        require(s > 0.0 && s <= 1.0, "fractional order s must lie in (0,1]");
        return {s};
    }
};

/// Fourier symbol |k|^{2s} tabulated on the r2c slots of a grid.
/// Value at k=0 is 0; the Nyquist mode enters through |k| (even symbol,
/// no sign ambiguity).
class Multiplier {
  public:
    Multiplier() = default;
    Multiplier(const Grid& g, double s);
    const Grid& grid() const { return grid_; }
    double s() const { return s_; }
    const std::vector<double>& values() const { return v_; }

  private:
    Grid grid_;
    double s_ = 0.0;
    std::vector<double> v_;
};

const Multiplier& multiplier_for(const Grid& g, double s);

/// (-Lap)^s f via the Fourier multiplier |k|^{2s}.
Field apply_fractional_laplacian(const Field& f, FractionalOrder s);

/// int |(-Lap)^{s/2} f|^2 dx, computed as the Parseval sum
/// (1/L^d) sum_k |k|^{2s} |fhat(k)|^2.
double dirichlet_energy(const Field& f, FractionalOrder s);
double dirichlet_energy(const Spectrum& fhat, double s);

/// (Id + tau (-Lap)^s)^{-1} f, the semi-implicit resolvent.
Field resolvent_apply(const Field& f, FractionalOrder s, double tau);

/// Translate f by delta (sub-grid shifts allowed) via Fourier phase.
/// The Nyquist mode is scaled by cos(k delta) to keep the output real.
Field fourier_shift(const Field& f, const Point& delta);

}  // namespace flep
