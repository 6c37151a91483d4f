#include "flep/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace flep {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

double Spectrum::weight(std::size_t j) const {
    const int n = grid.n;
    const int nc = n / 2 + 1;
    int jlast = int(j % nc);
    return (jlast == 0 || jlast == n / 2) ? 1.0 : 2.0;
}

struct Fourier::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    std::size_t nreal = 0, ncplx = 0;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real) fftw_free(real);
        if (cplx) fftw_free(cplx);
    }
};

Fourier::Fourier(const Grid& g) : grid_(g), impl_(new Impl) {
    const int n = g.n;
    const int nc = n / 2 + 1;
    impl_->nreal = g.size();
    impl_->ncplx = (g.d == 1) ? std::size_t(nc) : std::size_t(n) * nc;
    impl_->real = fftw_alloc_real(impl_->nreal);
    impl_->cplx = fftw_alloc_complex(impl_->ncplx);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (g.d == 1) {
            impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->real, impl_->cplx, FFTW_ESTIMATE);
            impl_->bwd = fftw_plan_dft_c2r_1d(n, impl_->cplx, impl_->real, FFTW_ESTIMATE);
        } else {
            impl_->fwd = fftw_plan_dft_r2c_2d(n, n, impl_->real, impl_->cplx, FFTW_ESTIMATE);
            impl_->bwd = fftw_plan_dft_c2r_2d(n, n, impl_->cplx, impl_->real, FFTW_ESTIMATE);
        }
    }
    check_numeric(impl_->fwd && impl_->bwd, "fftw plan creation failed");

    // |k|^2 per r2c slot
    k2_.resize(impl_->ncplx);
    const double dk = 2.0 * M_PI / g.L;
    auto axis_k = [&](int j) {
        int jj = (j <= n / 2) ? j : j - n;
        return dk * jj;
    };
    if (g.d == 1) {
        for (int j = 0; j < nc; ++j) k2_[j] = axis_k(j) * axis_k(j);
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            double kx = axis_k(i);
            for (int j = 0; j < nc; ++j, ++idx) {
                double ky = axis_k(j);
                k2_[idx] = kx * kx + ky * ky;
            }
        }
    }
}

Fourier::~Fourier() = default;

void Fourier::forward(const Field& f, Spectrum& out) {
    require(f.grid() == grid_, "fourier: grid mismatch");
    const double scale = std::pow(grid_.h(), grid_.d);
    for (std::size_t i = 0; i < impl_->nreal; ++i) impl_->real[i] = f[i];
    fftw_execute(impl_->fwd);
    out.grid = grid_;
    out.c.resize(impl_->ncplx);
    for (std::size_t i = 0; i < impl_->ncplx; ++i)
        out.c[i] = std::complex<double>(impl_->cplx[i][0] * scale, impl_->cplx[i][1] * scale);
}

void Fourier::inverse(const Spectrum& s, Field& out) {
    require(s.grid == grid_, "fourier: grid mismatch");
    require(s.c.size() == impl_->ncplx, "fourier: bad spectrum size");
    const double scale = 1.0 / std::pow(grid_.L, grid_.d);
    for (std::size_t i = 0; i < impl_->ncplx; ++i) {
        impl_->cplx[i][0] = s.c[i].real();
        impl_->cplx[i][1] = s.c[i].imag();
    }
    fftw_execute(impl_->bwd);
    if (out.grid() != grid_) out = Field(grid_);
    for (std::size_t i = 0; i < impl_->nreal; ++i) out[i] = impl_->real[i] * scale;
}

Spectrum Fourier::forward(const Field& f) {
    Spectrum s;
    forward(f, s);
    return s;
}

Field Fourier::inverse(const Spectrum& s) {
    Field f(grid_);
    inverse(s, f);
    return f;
}

Fourier& fourier_for(const Grid& g) {
    thread_local std::map<std::tuple<int, int, double>, std::unique_ptr<Fourier>> cache;
    auto key = std::make_tuple(g.d, g.n, g.L);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<Fourier>(g)).first;
    return *it->second;
}

}  // namespace flep
