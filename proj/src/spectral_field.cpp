#include "qgs/spectral_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "qgs/errors.hpp"

namespace qgs {

namespace {

// One forward/backward plan pair per resolution.  Plan creation is not
// thread-safe in FFTW; execution via fftw_execute_dft is.  Plans are created
// FFTW_UNALIGNED so they run on any caller buffer.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Complex> buf(static_cast<size_t>(n) * n);
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_BACKWARD, flags);
    return cache.emplace(n, p).first->second;
}

void check_resolution(int n) {
    if (n < 8 || n % 2 != 0)
        throw ConfigError("grid resolution must be even and >= 8, got " + std::to_string(n));
}

}  // namespace

SpectralField::SpectralField(int n) : n_(n), c_(static_cast<size_t>(n) * n, Complex(0, 0)) {
    check_resolution(n);
}

Complex& SpectralField::at(int k1, int k2) {
    int i1 = (k1 % n_ + n_) % n_;
    int i2 = (k2 % n_ + n_) % n_;
    return c_[static_cast<size_t>(i1) * n_ + i2];
}

const Complex& SpectralField::at(int k1, int k2) const {
    int i1 = (k1 % n_ + n_) % n_;
    int i2 = (k2 % n_ + n_) % n_;
    return c_[static_cast<size_t>(i1) * n_ + i2];
}

SpectralField SpectralField::from_grid(const Grid& g) {
    SpectralField f(g.resolution());
    const int n = f.n_;
    for (size_t i = 0; i < g.size(); ++i) f.c_[i] = Complex(g.data()[i], 0.0);
    fftw_execute_dft(plans_for(n).fwd, reinterpret_cast<fftw_complex*>(f.c_.data()),
                     reinterpret_cast<fftw_complex*>(f.c_.data()));
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (auto& c : f.c_) c *= scale;
    return f;
}

Grid SpectralField::to_grid() const {
    std::vector<Complex> buf = c_;
    fftw_execute_dft(plans_for(n_).bwd, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    Grid g(n_);
    for (size_t i = 0; i < buf.size(); ++i) g.data()[i] = buf[i].real();
    return g;
}

SpectralField SpectralField::derivative(int axis) const {
    SpectralField out(n_);
    const int nyq = -n_ / 2;
    for_each_mode([&](int k1, int k2, const Complex& c) {
        if (k1 == nyq || k2 == nyq) return;
        double k = axis == 1 ? k1 : k2;
        out.at(k1, k2) = Complex(0.0, k) * c;
    });
    return out;
}

SpectralField SpectralField::laplacian() const {
    SpectralField out(n_);
    for_each_mode([&](int k1, int k2, const Complex& c) {
        out.at(k1, k2) = -static_cast<double>(k1 * k1 + k2 * k2) * c;
    });
    return out;
}

SpectralField SpectralField::inv_laplacian() const {
    if (std::abs(mean()) > 1e-12)
        throw ConfigError("inv_laplacian: input has nonzero mean, not invertible");
    SpectralField out(n_);
    for_each_mode([&](int k1, int k2, const Complex& c) {
        int k2sq = k1 * k1 + k2 * k2;
        if (k2sq > 0) out.at(k1, k2) = c / static_cast<double>(-k2sq);
    });
    return out;
}

SpectralField& SpectralField::dealias() {
    const int cut = dealias_cutoff();
    for_each_mode([&](int k1, int k2, Complex& c) {
        if (std::abs(k1) > cut || std::abs(k2) > cut) c = Complex(0, 0);
    });
    return *this;
}

SpectralField& SpectralField::enforce_hermitian() {
    SpectralField tmp = *this;
    for_each_mode([&](int k1, int k2, Complex& c) {
        c = 0.5 * (c + std::conj(tmp.at(-k1, -k2)));
    });
    return *this;
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
}

double SpectralField::max_abs_outside_l1(int m) const {
    double worst = 0.0;
    for_each_mode([&](int k1, int k2, const Complex& c) {
        if (std::abs(k1) + std::abs(k2) > m) worst = std::max(worst, std::abs(c));
    });
    return worst;
}

bool SpectralField::finite() const {
    for (const auto& c : c_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (o.n_ != n_) throw ConfigError("resolution mismatch in field sum");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (o.n_ != n_) throw ConfigError("resolution mismatch in field difference");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : c_) c *= s;
    return *this;
}

double integral_product(const SpectralField& f, const SpectralField& g) {
    if (f.resolution() != g.resolution())
        throw ConfigError("resolution mismatch in integral_product");
    double acc = 0.0;
    f.for_each_mode([&](int k1, int k2, const Complex& cf) {
        acc += (cf * std::conj(g.at(k1, k2))).real();
    });
    return kDomainArea * acc;
}

SpectralField poisson_bracket(const SpectralField& f, const SpectralField& g, bool dealias) {
    if (f.resolution() != g.resolution())
        throw ConfigError("resolution mismatch in poisson_bracket");
    Grid f1 = f.derivative(1).to_grid();
    Grid f2 = f.derivative(2).to_grid();
    Grid g1 = g.derivative(1).to_grid();
    Grid g2 = g.derivative(2).to_grid();
    Grid prod(f.resolution());
    for (size_t i = 0; i < prod.size(); ++i)
        prod.data()[i] = f1.data()[i] * g2.data()[i] - f2.data()[i] * g1.data()[i];
    SpectralField out = SpectralField::from_grid(prod);
    if (dealias) out.dealias();
    return out;
}

}  // namespace qgs
