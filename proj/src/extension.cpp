#include "qgs/extension.hpp"

#include <cmath>

#include "qgs/errors.hpp"

namespace qgs {

double ext_inner(const ExtendedElement& x, const ExtendedElement& y) {
    return l2_inner(x.u, y.u) + x.a * y.a;
}

VelocityField basis_field(const BasisFieldSpec& spec, int n) {
    if (spec.k.is_zero()) throw ConfigError("basis_field: k = 0 is not a basis direction");
    const double lam = lambda_decay(spec.k, spec.r);
    SpectralField psi(n);
    // A_k: psi = -lambda sin(k.theta);  B_k: psi = +lambda cos(k.theta).
    if (spec.kind == BasisKind::A) {
        psi.at(spec.k.k1, spec.k.k2) = Complex(0.0, 0.5 * lam);
        psi.at(-spec.k.k1, -spec.k.k2) = Complex(0.0, -0.5 * lam);
    } else {
        psi.at(spec.k.k1, spec.k.k2) = Complex(0.5 * lam, 0.0);
        psi.at(-spec.k.k1, -spec.k.k2) = Complex(0.5 * lam, 0.0);
    }
    return VelocityField(std::move(psi));
}

double roger_cocycle(const VelocityField& u, const VelocityField& v, CocycleParams p) {
    if (u.resolution() != v.resolution())
        throw ConfigError("roger_cocycle: resolution mismatch");
    // omega = beta int psi_u d1(psi_v) = beta N sum_k psi_u(k) conj(i k1 psi_v(k)).
    double acc = 0.0;
    u.stream().for_each_mode([&](int k1, int k2, const Complex& cu) {
        (void)k2;
        acc += (cu * std::conj(Complex(0.0, k1) * v.stream().at(k1, k2))).real();
    });
    return p.beta * kDomainArea * acc;
}

double roger_cocycle_quadrature(const VelocityField& u, const VelocityField& v,
                                CocycleParams p) {
    if (u.resolution() != v.resolution())
        throw ConfigError("roger_cocycle: resolution mismatch");
    Grid psi_u = u.stream().to_grid();
    Grid v2 = v.stream().derivative(1).to_grid();
    const int n = u.resolution();
    // Compensated sum: the antisymmetry tolerance (1e-12) sits close to
    // the raw accumulation error of n^2 terms.
    double sum = 0.0, comp = 0.0;
    for (size_t i = 0; i < psi_u.size(); ++i) {
        double term = psi_u.data()[i] * v2.data()[i] - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    const double cell = (kTwoPi / n) * (kTwoPi / n);
    return p.beta * cell * sum;
}

VelocityField t_operator(const VelocityField& u, CocycleParams p) {
    SpectralField psi(u.resolution());
    u.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
        int k2sq = k1 * k1 + k2 * k2;
        if (k2sq == 0) return;
        psi.at(k1, k2) = Complex(0.0, -p.beta * k1 / static_cast<double>(k2sq)) * c;
    });
    return VelocityField(std::move(psi));
}

ExtendedElement ext_bracket(const ExtendedElement& x, const ExtendedElement& y,
                            CocycleParams p) {
    return {velocity_bracket(x.u, y.u), roger_cocycle(x.u, y.u, p)};
}

ExtendedElement coad(const ExtendedElement& x, const ExtendedElement& y, CocycleParams p) {
    VelocityField g = coadjoint_velocity(x.u, y.u);
    if (y.a != 0.0) g -= y.a * t_operator(x.u, p);
    return {std::move(g), 0.0};
}

ExtendedElement ext_covariant_derivative(const ExtendedElement& x, const ExtendedElement& y,
                                         CocycleParams p) {
    VelocityField g = covariant_derivative(x.u, y.u);
    if (y.a != 0.0) g -= (0.5 * y.a) * t_operator(x.u, p);
    if (x.a != 0.0) g -= (0.5 * x.a) * t_operator(y.u, p);
    return {std::move(g), 0.5 * roger_cocycle(x.u, y.u, p)};
}

ExtendedElement correction_khat(const ExtendedElement& u_hat, const ExtendedElement& x_hat,
                                CocycleParams p) {
    if (x_hat.a != 0.0)
        throw ConfigError("correction_khat: noise direction must have zero central part");
    VelocityField geo = covariant_derivative(x_hat.u, x_hat.u);
    double scale = std::sqrt(std::max(l2_inner(x_hat.u, x_hat.u), 1.0));
    if (std::sqrt(l2_inner(geo, geo)) > 1e-10 * scale)
        throw ConfigError("correction_khat: basis field not geodesic (nabla_X X != 0)");
    VelocityField g = second_directional_derivative(x_hat.u, u_hat.u);
    double w = roger_cocycle(u_hat.u, x_hat.u, p);
    if (w != 0.0) g += w * t_operator(x_hat.u, p);
    g *= 0.5;
    return {std::move(g), 0.0};
}

double viscosity_coefficient(int m, double r) {
    double nu = 0.0;
    for (const WaveIndex& k : half_lattice(m)) {
        double lam = lambda_decay(k, r);
        nu += lam * lam * k.k1 * k.k1;
    }
    return 0.5 * nu;
}

double damping_multiplier(WaveIndex k, int m, double r, CocycleParams p) {
    if (k.is_zero() || k.l1() > m) return 0.0;
    double lam = lambda_decay(k, r);
    return -p.beta * p.beta * 0.5 * kDomainArea * lam * lam * k.k1 * k.k1 / k.l2sq();
}

VelocityField damping_sum(const VelocityField& u, int m, double r, CocycleParams p) {
    double outside = u.stream().max_abs_outside_l1(m);
    if (outside > 1e-12)
        throw ConfigError(
            "damping_sum: input has modes with |k|_1 > m, the truncated sum is incomplete");
    SpectralField psi(u.resolution());
    u.stream().for_each_mode([&](int k1, int k2, const Complex& c) {
        psi.at(k1, k2) = damping_multiplier({k1, k2}, m, r, p) * c;
    });
    return VelocityField(std::move(psi));
}

VelocityField damping_sum_idealized(const VelocityField& u, CocycleParams p) {
    VelocityField out = u;
    out *= -p.beta * p.beta * kDomainArea;
    return out;
}

}  // namespace qgs
