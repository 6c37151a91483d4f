#pragma once
#include <vector>

#include "flep/fft.hpp"
#include "flep/grid.hpp"
#include "flep/ground_state.hpp"

namespace flep {

/// Periodic evaluator of a field at arbitrary points: zero-padded spectral
/// upsampling onto a fine grid, then 4-point Lagrange interpolation. The
/// Nyquist plane is dropped (machine-level content for resolved fields).
class FieldInterpolant {
  public:
    explicit FieldInterpolant(const Field& f, int upsample = 4);
    double operator()(const Point& x) const;
    const Grid& fine_grid() const { return fine_.grid(); }

  private:
    Field fine_;
};

/// w(x) = scale^{d/2} * u(center + scale * (x - center)), evaluated on the
/// same grid. Used to warm-start the next sweep row from the previous
/// minimizer with the predicted concentration-scale ratio.
Field resample_scaled(const Field& u, const Point& center, double scale);

/// Dense radial profile of a radial field centered at the origin: the axis
/// slice is spectrally upsampled 8x, folded to r >= 0, and extended beyond
/// the box by an algebraic tail c r^{-m} matched at the cut radius.
class RadialProfile {
  public:
    RadialProfile() = default;
    RadialProfile(const Field& f, double tail_exponent);
    double operator()(double r) const;
    double cut_radius() const { return rcut_; }

  private:
    std::vector<double> v_;  // samples at r = i*dr
    double dr_ = 0.0;
    double rcut_ = 0.0;
    double tail_c_ = 0.0;
    double tail_m_ = 0.0;
};

/// The blow-up limit profile
///   w(x) = (2s/d)^{d/4s} U((2s/d)^{1/2s} x) / ||U||_2
/// built from the stored ground state by spectral dilation; value(r, eps)
/// evaluates eps^{-d/2} w(r/eps), the model for the minimizer near a*.
class LimitProfile {
  public:
    explicit LimitProfile(const GroundState& gs);
    double value(double r, double eps) const;
    int d() const { return d_; }

  private:
    RadialProfile prof_;
    double beta_ = 0.0;
    double amp_ = 0.0;
    int d_ = 0;
};

struct ProfileDistance {
    double err;     // relative L2 distance at the optimal center
    Point center;   // optimal center (z_bar - eps z0 of the limit statement)
};

/// min over translations of || u - eps^{-d/2} w((. - c)/eps) ||_2 / ||u||_2,
/// the Eq.-style rescaled-profile convergence error. Starts at z_guess.
ProfileDistance profile_distance(const Field& u, const LimitProfile& w, double eps,
                                 const Point& z_guess);

}  // namespace flep
