#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgs {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;  // measured statistic (usually a max residual)
    double tol = 0.0;
    std::string note;
};

/// Antisymmetry, cocycle identity, harmonic conventions, and the agreement
/// of the quadrature and spectral evaluation paths of omega_alpha.
std::vector<CheckResult> verify_cocycle(int n = 64, int pairs = 50, uint64_t seed = 11);

/// Operator-T adjoint identity and the structure of the damping sum:
/// T maps the A/B pair to each other with opposite-sign coefficients, the
/// sum is Fourier-diagonal symmetric negative semi-definite, and the
/// quadrature-assembled multipliers match the closed form D(k).
std::vector<CheckResult> verify_lemma(int n = 64, int pairs = 100, uint64_t seed = 23);

/// Grid identity sum(A_k A_k f + B_k B_k f) = 2 nu Delta f on |k|_1 <= 4,
/// its Monte Carlo counterpart for both noise models, the Heun vs
/// Euler-Maruyama cross-check and the Brownian variance of the two-field model.
std::vector<CheckResult> verify_generator(int mc_particles = 100000, uint64_t seed = 37);

/// Vorticity form vs abstract form: pointwise right-hand sides, marched
/// trajectories, the Rossby wave, inviscid conservation, and the
/// no-friction two-field variant.
std::vector<CheckResult> verify_formulation(uint64_t seed = 53);

/// Appendix integral criterion: step families, s-independence, rejection of
/// non-closed forms, insensitivity to exact forms.
std::vector<CheckResult> verify_integrability(uint64_t seed = 71);

/// Pretty table; returns true iff every check passed.
bool print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace qgs
