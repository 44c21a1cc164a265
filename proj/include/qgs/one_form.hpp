#pragma once

#include <string>
#include <vector>

#include "qgs/spectral_field.hpp"

namespace qgs {

/// gamma = (f + c1) theta_1 + (g + c2) theta_2 on T^2; closed iff
/// d2 f = d1 g (the constant parts are always closed).
struct OneForm {
    SpectralField f;
    SpectralField g;
    double c1 = 0.0;
    double c2 = 0.0;

    /// L2 norm of d2 f - d1 g.
    double closedness_residual() const;
    bool closed(double tol = 1e-12) const { return closedness_residual() <= tol; }
};

/// Line integral over N = {(t, s0)}: int_0^{2pi} (f(t, s0) + c1) dt, by
/// spectral interpolation (theta_2 pulls back to zero on N).
double integrate_over_N(const OneForm& gamma, double s0);

/// int_{T^2} alpha ^ gamma for alpha = -alpha_coeff * theta_2 with the
/// theta_1 ^ theta_2 orientation positive, i.e. alpha_coeff * N * (mean f + c1).
/// With alpha_coeff = 1/(2pi) this reproduces the two constant values 2*pi
/// (gamma = theta_1) and 0 (gamma = theta_2); the coefficient is signed so
/// both readings of the one-form's sign are testable.
double wedge_integral(double alpha_coeff, const OneForm& gamma);

struct CohomologyCheck {
    std::string gamma_id;
    double closed_residual = 0.0;
    bool rejected = false;  // gamma not closed
    double line_integral = 0.0;
    double wedge = 0.0;
    double abs_diff = 0.0;
    double s_independence = 0.0;  // max |h(s) - h(s0)| over sampled s
    bool pass = false;
};

/// Integral criterion for cohomologous cocycles, per closed gamma:
/// |int_N gamma - int alpha ^ gamma| < tol, plus the invariance of
/// h(s) = int f(t, s) dt over n_s_samples values of s.
std::vector<CohomologyCheck> check_cohomologous(
    const std::vector<std::pair<std::string, OneForm>>& gamma_family, double alpha_coeff,
    double s0, double tol = 1e-10, int n_s_samples = 8);

/// JSON-lines report of the checks.
std::string cohomology_report_json(const std::vector<CohomologyCheck>& checks);

/// The closed one-forms exercised by the integrability suite: the constant
/// forms, k(t) theta_1, a mixed single-mode closed form, an exact form and
/// a random closed combination.
std::vector<std::pair<std::string, OneForm>> standard_gamma_family(int n, uint64_t seed);

}  // namespace qgs
