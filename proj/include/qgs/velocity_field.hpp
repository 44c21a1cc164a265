#pragma once

#include "qgs/spectral_field.hpp"

namespace qgs {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Divergence-free field u = grad_perp(psi) + (c1, c2).
///
/// The stream function is kept zero-mean; the constant (harmonic) part is
/// carried separately, so divergence-freeness holds by construction.
class VelocityField {
  public:
    VelocityField() = default;
    explicit VelocityField(int n) : stream_(n) {}
    VelocityField(SpectralField stream, Vec2 harmonic = {});

    int resolution() const { return stream_.resolution(); }
    const SpectralField& stream() const { return stream_; }
    SpectralField& stream() { return stream_; }
    Vec2 harmonic() const { return harmonic_; }
    void set_harmonic(Vec2 c) { harmonic_ = c; }

    /// Collocation samples of (u1, u2) = (-d2 psi + c1, d1 psi + c2).
    std::pair<Grid, Grid> velocity_grids() const;

    VelocityField& operator+=(const VelocityField& o);
    VelocityField& operator-=(const VelocityField& o);
    VelocityField& operator*=(double s);
    friend VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
    friend VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
    friend VelocityField operator*(double s, VelocityField a) { return a *= s; }

  private:
    SpectralField stream_;
    Vec2 harmonic_;
};

/// u = grad_perp(psi) = (-d2 psi, d1 psi); the mean of psi is dropped.
VelocityField grad_perp(const SpectralField& psi);

/// Hodge projection of a raw grid vector field onto its divergence-free
/// part: per mode v - k (k.v)/|k|^2, the k = 0 mode becoming the harmonic part.
VelocityField leray_project(const Grid& v1, const Grid& v2);

/// L2 pairing int <u, v> dtheta     (exact via Parseval).
double l2_inner(const VelocityField& u, const VelocityField& v);

/// 0.5 * l2_inner(u, u).
double kinetic_energy(const VelocityField& u);

/// P((X.grad) Y), dealiased: the flat-torus covariant derivative on
/// divergence-free fields.
VelocityField covariant_derivative(const VelocityField& X, const VelocityField& Y);

/// P((X.grad) Y + (grad X)^T Y), dealiased: co-adjoint ad*_X Y for the
/// right-invariant L2 metric.
VelocityField coadjoint_velocity(const VelocityField& X, const VelocityField& Y);

/// P((X.grad) Y - (Y.grad) X), dealiased: the vector-field bracket.
VelocityField velocity_bracket(const VelocityField& X, const VelocityField& Y);

/// P((X.grad)(X.grad) u): second directional derivative taken pointwise,
/// projected once at the end.  No dealiasing (linear in u); callers keep
/// |modes(u)|_inf + 2 |X-band| below n/2.
VelocityField second_directional_derivative(const VelocityField& X, const VelocityField& u);

/// Sup norm of the spectral divergence of raw grid components (diagnostic).
double divergence_sup(const Grid& v1, const Grid& v2);

}  // namespace qgs
