#include "qgs/one_form.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "qgs/config.hpp"
#include "qgs/errors.hpp"

#include "json.hpp"

namespace qgs {

double OneForm::closedness_residual() const {
    if (f.resolution() != g.resolution())
        throw ConfigError("one-form: component resolutions differ");
    SpectralField d = f.derivative(2) - g.derivative(1);
    return std::sqrt(std::max(0.0, integral_product(d, d)));
}

double integrate_over_N(const OneForm& gamma, double s0) {
    // Integrating over t kills every k1 != 0 mode; what survives is
    // 2 pi sum_{k2} f_hat(0, k2) e^{i k2 s0} plus the constant part.
    const int n = gamma.f.resolution();
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        int k2 = i < (n + 1) / 2 ? i : i - n;
        acc += gamma.f.at(0, k2) *
               std::complex<double>(std::cos(k2 * s0), std::sin(k2 * s0));
    }
    return kTwoPi * (acc.real() + gamma.c1);
}

double wedge_integral(double alpha_coeff, const OneForm& gamma) {
    return alpha_coeff * kDomainArea * (gamma.f.mean() + gamma.c1);
}

std::vector<CohomologyCheck> check_cohomologous(
    const std::vector<std::pair<std::string, OneForm>>& gamma_family, double alpha_coeff,
    double s0, double tol, int n_s_samples) {
    std::vector<CohomologyCheck> out;
    out.reserve(gamma_family.size());
    for (const auto& [id, gamma] : gamma_family) {
        CohomologyCheck c;
        c.gamma_id = id;
        c.closed_residual = gamma.closedness_residual();
        if (c.closed_residual > 1e-12) {
            c.rejected = true;
            c.pass = false;
            out.push_back(std::move(c));
            continue;
        }
        c.line_integral = integrate_over_N(gamma, s0);
        c.wedge = wedge_integral(alpha_coeff, gamma);
        c.abs_diff = std::abs(c.line_integral - c.wedge);
        for (int j = 0; j < n_s_samples; ++j) {
            double s = kTwoPi * j / n_s_samples;
            c.s_independence = std::max(
                c.s_independence, std::abs(integrate_over_N(gamma, s) - c.line_integral));
        }
        c.pass = c.abs_diff < tol && c.s_independence < tol;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::pair<std::string, OneForm>> standard_gamma_family(int n, uint64_t seed) {
    auto mode = [&](int k1, int k2, bool cosine) {
        SpectralField f(n);
        f.at(k1, k2) = cosine ? Complex(0.5, 0) : Complex(0, -0.5);
        f.at(-k1, -k2) = cosine ? Complex(0.5, 0) : Complex(0, 0.5);
        return f;
    };
    std::vector<std::pair<std::string, OneForm>> family;
    family.emplace_back("theta1", OneForm{SpectralField(n), SpectralField(n), 1.0, 0.0});
    family.emplace_back("theta2", OneForm{SpectralField(n), SpectralField(n), 0.0, 1.0});
    family.emplace_back("3theta1+5theta2",
                        OneForm{SpectralField(n), SpectralField(n), 3.0, 5.0});
    family.emplace_back("k(t)theta1", OneForm{mode(1, 0, false), SpectralField(n), 2.0, 0.0});
    family.emplace_back("cos(t+s)(theta1+theta2)",
                        OneForm{mode(1, 1, true), mode(1, 1, true), 0.0, 0.0});
    {
        SpectralField phi = random_stream(n, 7, 1.0, seed);
        family.emplace_back("d(phi) exact",
                            OneForm{phi.derivative(1), phi.derivative(2), 0.0, 0.0});
    }
    {
        SpectralField phi = random_stream(n, 9, 2.0, seed + 1);
        family.emplace_back("mixed closed",
                            OneForm{phi.derivative(1), phi.derivative(2), -1.5, 0.75});
    }
    return family;
}

std::string cohomology_report_json(const std::vector<CohomologyCheck>& checks) {
    std::ostringstream os;
    for (const CohomologyCheck& c : checks) {
        nlohmann::json j;
        j["gamma_id"] = c.gamma_id;
        j["closed_residual"] = c.closed_residual;
        if (c.rejected) {
            j["rejected"] = true;
        } else {
            j["line_integral"] = c.line_integral;
            j["wedge_integral"] = c.wedge;
            j["abs_diff"] = c.abs_diff;
            j["s_independence"] = c.s_independence;
        }
        j["pass"] = c.pass;
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace qgs
