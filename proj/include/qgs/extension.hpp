#pragma once

#include <vector>

#include "qgs/lattice.hpp"
#include "qgs/velocity_field.hpp"

namespace qgs {

/// Element of the extended algebra g x_omega R: a divergence-free field
/// plus the real central coordinate.  The extended metric is
/// <<(X,a),(Y,b)>> = <<X,Y>> + a b.
struct ExtendedElement {
    VelocityField u;
    double a = 0.0;
};

double ext_inner(const ExtendedElement& x, const ExtendedElement& y);

/// Parameters of the cocycle one-form alpha = beta * theta_2.
struct CocycleParams {
    double beta = 1.0;
};

enum class BasisKind { A, B };

/// One Kolmogorov noise direction: A_k = -lambda grad_perp(sin k.theta),
/// B_k = lambda grad_perp(cos k.theta), lambda = (|k1|+|k2|)^(-r).
struct BasisFieldSpec {
    BasisKind kind = BasisKind::A;
    WaveIndex k;
    double r = 3.0;
};

VelocityField basis_field(const BasisFieldSpec& spec, int n);

/// Roger cocycle omega_alpha(u, v) = int psi_u * beta * v2 dtheta, where v2
/// is the second component of the Hamiltonian part of v.  Harmonic parts
/// contribute zero.  Closed-form spectral sum.
double roger_cocycle(const VelocityField& u, const VelocityField& v, CocycleParams p);

/// Same value by grid quadrature (the independent evaluation path; the two
/// must agree to 1e-10).
double roger_cocycle_quadrature(const VelocityField& u, const VelocityField& v,
                                CocycleParams p);

/// Metric representative T of the cocycle: <<Tu, v>> = omega(u, v) for all v.
/// On stream functions T is the Fourier multiplier -i beta k1 / |k|^2
/// (equivalently Delta psi_T = beta d1 psi_u).  T extends by zero on
/// harmonic parts; the input is expected to have none.
VelocityField t_operator(const VelocityField& u, CocycleParams p);

/// [(u,a),(v,b)] = ([u,v], omega(u,v)).
ExtendedElement ext_bracket(const ExtendedElement& x, const ExtendedElement& y,
                            CocycleParams p);

/// ad*-hat_{(X,a)} (Y,b) = (ad*_X Y - b T X, 0).
ExtendedElement coad(const ExtendedElement& x, const ExtendedElement& y, CocycleParams p);

/// nabla-hat_{(X,a)}(Y,b) = (nabla_X Y - (b TX + a TY)/2, omega(X,Y)/2).
ExtendedElement ext_covariant_derivative(const ExtendedElement& x, const ExtendedElement& y,
                                         CocycleParams p);

/// Correction term for a geodesic noise direction x_hat = (X, 0) with
/// nabla_X X = 0:  K-hat(u_hat, x_hat) = ( (nabla_X nabla_X u
/// + omega(u,X) T X)/2 , 0 ).  Throws if X fails the geodesic check or
/// carries a central part.
ExtendedElement correction_khat(const ExtendedElement& u_hat, const ExtendedElement& x_hat,
                                CocycleParams p);

/// nu(m, r) = 1/2 sum_{half lattice, |k|_1 <= m} lambda(|k|_1)^2 k1^2.
/// With this value the grid identity sum_k (A_k A_k f + B_k B_k f) = 2 nu
/// Delta f holds exactly on the chosen half-lattice.
double viscosity_coefficient(int m, double r);

/// Fourier multiplier of the damping sum on stream functions:
/// D(k) = -beta^2 (N/2) lambda(|k|_1)^2 k1^2 / |k|^2 for |k|_1 <= m, else 0.
/// Validated against the term-by-term quadrature oracle.
double damping_multiplier(WaveIndex k, int m, double r, CocycleParams p);

/// S(u) = sum_{half lattice, |k|_1 <= m} [omega(u,A_k) T A_k + omega(u,B_k) T B_k],
/// evaluated as the diagonal multiplier D(k).  Throws if u carries modes
/// with |k|_1 > m (the finite sum would be incomplete for them).
VelocityField damping_sum(const VelocityField& u, int m, double r, CocycleParams p);

/// The idealized constant-coefficient form -beta^2 N u (= -2 sigma u).
VelocityField damping_sum_idealized(const VelocityField& u, CocycleParams p);

}  // namespace qgs
