#pragma once

#include <complex>
#include <vector>

#include "qgs/lattice.hpp"

namespace qgs {

using Complex = std::complex<double>;

/// Real scalar samples on the n x n collocation grid, theta_j = 2*pi*j/n.
/// First index runs along theta_1.
class Grid {
  public:
    Grid() = default;
    explicit Grid(int n) : n_(n), v_(static_cast<size_t>(n) * n, 0.0) {}

    int resolution() const { return n_; }
    double& operator()(int i1, int i2) { return v_[static_cast<size_t>(i1) * n_ + i2]; }
    double operator()(int i1, int i2) const { return v_[static_cast<size_t>(i1) * n_ + i2]; }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    size_t size() const { return v_.size(); }

    double theta1(int i1) const { return kTwoPi * i1 / n_; }
    double theta2(int i2) const { return kTwoPi * i2 / n_; }

  private:
    int n_ = 0;
    std::vector<double> v_;
};

/// Truncated Fourier representation of a real scalar on T^2.
///
/// Coefficients are stored in FFT layout (wavenumber k = i for i < n/2,
/// i - n otherwise) and normalized so that f(theta) = sum_k c(k) e^{i k.theta}.
/// Real fields keep Hermitian symmetry c(-k) = conj(c(k)); the k = 0 slot is
/// the mean.  Products of fields are never formed here -- callers go through
/// the grid and re-apply the 2/3-rule cutoff kept by dealias_cutoff().
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(int n);

    static SpectralField from_grid(const Grid& g);
    Grid to_grid() const;

    int resolution() const { return n_; }
    int dealias_cutoff() const { return (n_ - 1) / 3; }

    /// Coefficient access by wavenumber; indices wrap mod n.
    Complex& at(int k1, int k2);
    const Complex& at(int k1, int k2) const;

    double mean() const { return c_[0].real(); }
    void set_mean(double m) { c_[0] = Complex(m, 0.0); }
    SpectralField& zero_mean() { c_[0] = Complex(0.0, 0.0); return *this; }

    /// d/d(theta_axis), axis in {1,2}.  Nyquist row/column is zeroed.
    SpectralField derivative(int axis) const;
    SpectralField laplacian() const;
    /// Inverse Laplacian on zero-mean fields; throws ConfigError otherwise.
    SpectralField inv_laplacian() const;

    /// Zero every mode with max(|k1|,|k2|) > dealias_cutoff().
    SpectralField& dealias();
    /// Symmetrize to c(-k) = conj(c(k)) (cheap fix-up after hand assembly).
    SpectralField& enforce_hermitian();

    double max_abs_coeff() const;
    /// Largest |c(k)| among modes with |k|_1 > m (band-membership check).
    double max_abs_outside_l1(int m) const;
    bool finite() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    /// f(k1, k2, coeff&) over all stored modes.
    template <typename F>
    void for_each_mode(F&& f) {
        for (int i1 = 0; i1 < n_; ++i1)
            for (int i2 = 0; i2 < n_; ++i2)
                f(wavenumber(i1), wavenumber(i2), c_[static_cast<size_t>(i1) * n_ + i2]);
    }
    template <typename F>
    void for_each_mode(F&& f) const {
        for (int i1 = 0; i1 < n_; ++i1)
            for (int i2 = 0; i2 < n_; ++i2)
                f(wavenumber(i1), wavenumber(i2), c_[static_cast<size_t>(i1) * n_ + i2]);
    }

    int wavenumber(int index) const { return index < (n_ + 1) / 2 ? index : index - n_; }

  private:
    int n_ = 0;
    std::vector<Complex> c_;
};

/// Parseval value of int f g dtheta (both fields real).
double integral_product(const SpectralField& f, const SpectralField& g);

/// {f,g} = d1(f) d2(g) - d2(f) d1(g), computed pseudo-spectrally; the
/// product is dealiased unless dealias = false.
SpectralField poisson_bracket(const SpectralField& f, const SpectralField& g,
                              bool dealias = true);

/// Grid of f evaluated from a closure theta -> value (test/setup helper).
template <typename F>
Grid sample_grid(int n, F&& f) {
    Grid g(n);
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) g(i1, i2) = f(g.theta1(i1), g.theta2(i2));
    return g;
}

}  // namespace qgs
