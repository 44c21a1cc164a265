#include "qgs/velocity_field.hpp"

#include <cmath>

#include "qgs/errors.hpp"

namespace qgs {

VelocityField::VelocityField(SpectralField stream, Vec2 harmonic)
    : stream_(std::move(stream)), harmonic_(harmonic) {
    stream_.zero_mean();
}

std::pair<Grid, Grid> VelocityField::velocity_grids() const {
    Grid u1 = (-1.0 * stream_.derivative(2)).to_grid();
    Grid u2 = stream_.derivative(1).to_grid();
    for (size_t i = 0; i < u1.size(); ++i) {
        u1.data()[i] += harmonic_.x1;
        u2.data()[i] += harmonic_.x2;
    }
    return {std::move(u1), std::move(u2)};
}

VelocityField& VelocityField::operator+=(const VelocityField& o) {
    stream_ += o.stream_;
    harmonic_.x1 += o.harmonic_.x1;
    harmonic_.x2 += o.harmonic_.x2;
    return *this;
}

VelocityField& VelocityField::operator-=(const VelocityField& o) {
    stream_ -= o.stream_;
    harmonic_.x1 -= o.harmonic_.x1;
    harmonic_.x2 -= o.harmonic_.x2;
    return *this;
}

VelocityField& VelocityField::operator*=(double s) {
    stream_ *= s;
    harmonic_.x1 *= s;
    harmonic_.x2 *= s;
    return *this;
}

VelocityField grad_perp(const SpectralField& psi) {
    return VelocityField(psi, {0.0, 0.0});
}

VelocityField leray_project(const Grid& v1, const Grid& v2) {
    if (v1.resolution() != v2.resolution())
        throw ConfigError("leray_project: component grids differ in resolution");
    SpectralField f1 = SpectralField::from_grid(v1);
    SpectralField f2 = SpectralField::from_grid(v2);
    const int n = f1.resolution();

    // Vorticity of the projected field equals the vorticity of the input
    // (the projection only removes a gradient), so recover the stream
    // function from zeta = i k1 v2 - i k2 v1, psi = -zeta / |k|^2.
    SpectralField psi(n);
    psi.for_each_mode([&](int k1, int k2, Complex& c) {
        int k2sq = k1 * k1 + k2 * k2;
        if (k2sq == 0) return;
        Complex zeta = Complex(0, k1) * f2.at(k1, k2) - Complex(0, k2) * f1.at(k1, k2);
        c = -zeta / static_cast<double>(k2sq);
    });
    Vec2 harmonic{f1.at(0, 0).real(), f2.at(0, 0).real()};
    return VelocityField(std::move(psi), harmonic);
}

double l2_inner(const VelocityField& u, const VelocityField& v) {
    if (u.resolution() != v.resolution())
        throw ConfigError("l2_inner: resolution mismatch");
    double acc = 0.0;
    u.stream().for_each_mode([&](int k1, int k2, const Complex& cu) {
        acc += (k1 * k1 + k2 * k2) * (cu * std::conj(v.stream().at(k1, k2))).real();
    });
    Vec2 cu = u.harmonic(), cv = v.harmonic();
    return kDomainArea * (acc + cu.x1 * cv.x1 + cu.x2 * cv.x2);
}

double kinetic_energy(const VelocityField& u) { return 0.5 * l2_inner(u, u); }

namespace {

struct GradGrids {
    Grid d1x1, d2x1, d1x2, d2x2;  // partial_j of component i of the stream part
};

GradGrids gradients(const VelocityField& Y) {
    const SpectralField& psi = Y.stream();
    SpectralField y1 = -1.0 * psi.derivative(2);
    SpectralField y2 = psi.derivative(1);
    return {y1.derivative(1).to_grid(), y1.derivative(2).to_grid(),
            y2.derivative(1).to_grid(), y2.derivative(2).to_grid()};
}

VelocityField project_and_dealias(const Grid& w1, const Grid& w2) {
    VelocityField out = leray_project(w1, w2);
    out.stream().dealias();
    return out;
}

}  // namespace

VelocityField covariant_derivative(const VelocityField& X, const VelocityField& Y) {
    if (X.resolution() != Y.resolution())
        throw ConfigError("covariant_derivative: resolution mismatch");
    auto [x1, x2] = X.velocity_grids();
    GradGrids dY = gradients(Y);
    const int n = X.resolution();
    Grid w1(n), w2(n);
    for (size_t i = 0; i < w1.size(); ++i) {
        w1.data()[i] = x1.data()[i] * dY.d1x1.data()[i] + x2.data()[i] * dY.d2x1.data()[i];
        w2.data()[i] = x1.data()[i] * dY.d1x2.data()[i] + x2.data()[i] * dY.d2x2.data()[i];
    }
    return project_and_dealias(w1, w2);
}

VelocityField coadjoint_velocity(const VelocityField& X, const VelocityField& Y) {
    if (X.resolution() != Y.resolution())
        throw ConfigError("coadjoint_velocity: resolution mismatch");
    auto [x1, x2] = X.velocity_grids();
    auto [y1, y2] = Y.velocity_grids();
    GradGrids dY = gradients(Y);
    GradGrids dX = gradients(X);
    const int n = X.resolution();
    Grid w1(n), w2(n);
    for (size_t i = 0; i < w1.size(); ++i) {
        double adv1 = x1.data()[i] * dY.d1x1.data()[i] + x2.data()[i] * dY.d2x1.data()[i];
        double adv2 = x1.data()[i] * dY.d1x2.data()[i] + x2.data()[i] * dY.d2x2.data()[i];
        // ((grad X)^T Y)_j = Y_i d_j X_i
        double gt1 = y1.data()[i] * dX.d1x1.data()[i] + y2.data()[i] * dX.d1x2.data()[i];
        double gt2 = y1.data()[i] * dX.d2x1.data()[i] + y2.data()[i] * dX.d2x2.data()[i];
        w1.data()[i] = adv1 + gt1;
        w2.data()[i] = adv2 + gt2;
    }
    return project_and_dealias(w1, w2);
}

VelocityField velocity_bracket(const VelocityField& X, const VelocityField& Y) {
    if (X.resolution() != Y.resolution())
        throw ConfigError("velocity_bracket: resolution mismatch");
    auto [x1, x2] = X.velocity_grids();
    auto [y1, y2] = Y.velocity_grids();
    GradGrids dY = gradients(Y);
    GradGrids dX = gradients(X);
    const int n = X.resolution();
    Grid w1(n), w2(n);
    for (size_t i = 0; i < w1.size(); ++i) {
        w1.data()[i] = x1.data()[i] * dY.d1x1.data()[i] + x2.data()[i] * dY.d2x1.data()[i] -
                       y1.data()[i] * dX.d1x1.data()[i] - y2.data()[i] * dX.d2x1.data()[i];
        w2.data()[i] = x1.data()[i] * dY.d1x2.data()[i] + x2.data()[i] * dY.d2x2.data()[i] -
                       y1.data()[i] * dX.d1x2.data()[i] - y2.data()[i] * dX.d2x2.data()[i];
    }
    return project_and_dealias(w1, w2);
}

VelocityField second_directional_derivative(const VelocityField& X, const VelocityField& u) {
    if (X.resolution() != u.resolution())
        throw ConfigError("second_directional_derivative: resolution mismatch");
    auto [x1, x2] = X.velocity_grids();
    const int n = X.resolution();

    // First pass: g = (X.grad) u on the grid, component by component.
    GradGrids du = gradients(u);
    Grid g1(n), g2(n);
    for (size_t i = 0; i < g1.size(); ++i) {
        g1.data()[i] = x1.data()[i] * du.d1x1.data()[i] + x2.data()[i] * du.d2x1.data()[i];
        g2.data()[i] = x1.data()[i] * du.d1x2.data()[i] + x2.data()[i] * du.d2x2.data()[i];
    }

    // Second pass needs the gradients of g, taken spectrally without truncation.
    SpectralField G1 = SpectralField::from_grid(g1);
    SpectralField G2 = SpectralField::from_grid(g2);
    Grid d1g1 = G1.derivative(1).to_grid(), d2g1 = G1.derivative(2).to_grid();
    Grid d1g2 = G2.derivative(1).to_grid(), d2g2 = G2.derivative(2).to_grid();
    Grid w1(n), w2(n);
    for (size_t i = 0; i < w1.size(); ++i) {
        w1.data()[i] = x1.data()[i] * d1g1.data()[i] + x2.data()[i] * d2g1.data()[i];
        w2.data()[i] = x1.data()[i] * d1g2.data()[i] + x2.data()[i] * d2g2.data()[i];
    }
    return leray_project(w1, w2);
}

double divergence_sup(const Grid& v1, const Grid& v2) {
    SpectralField f1 = SpectralField::from_grid(v1);
    SpectralField f2 = SpectralField::from_grid(v2);
    SpectralField div = f1.derivative(1) + f2.derivative(2);
    Grid g = div.to_grid();
    double m = 0.0;
    for (size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(g.data()[i]));
    return m;
}

}  // namespace qgs
