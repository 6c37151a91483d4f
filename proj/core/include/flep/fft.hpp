#pragma once
#include <complex>
#include <memory>
#include <vector>

#include "flep/grid.hpp"

namespace flep {

/// Half-complex spectrum of a real field. Coefficients approximate the
/// continuum Fourier transform: chat(k) = h^d * DFT, k on (2pi/L) Z^d
/// aliased to [-n/2, n/2). r2c layout: last axis holds n/2+1 entries;
/// slots with 0 < k_last < n/2 represent a conjugate pair.
struct Spectrum {
    Grid grid;
    std::vector<std::complex<double>> c;

    std::size_t slots() const { return c.size(); }
    // Multiplicity of slot j for Parseval-type sums (1 or 2).
    double weight(std::size_t j) const;
};

/// FFTW-backed transforms for one grid. Owns plans and buffers; not
/// thread-safe — use one Fourier per worker. Plan creation is serialized
/// internally (FFTW planner is global). Plans use FFTW_ESTIMATE so results
/// are reproducible across runs.
class Fourier {
  public:
    explicit Fourier(const Grid& g);
    ~Fourier();
    Fourier(const Fourier&) = delete;
    Fourier& operator=(const Fourier&) = delete;

    const Grid& grid() const { return grid_; }

    void forward(const Field& f, Spectrum& out);
    void inverse(const Spectrum& s, Field& out);

    Spectrum forward(const Field& f);
    Field inverse(const Spectrum& s);

    // Wavenumber of spectrum slot j along each axis (aliased, Nyquist -> +n/2
    // magnitude; sign is irrelevant for the even multipliers used here).
    const std::vector<double>& k_squared() const { return k2_; }

  private:
    Grid grid_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<double> k2_;
};

/// Per-thread cache of Fourier workspaces keyed by grid, for the free
/// functions that need a transform without carrying a workspace around.
Fourier& fourier_for(const Grid& g);

}  // namespace flep
