#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

namespace qgs {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
// Area of the periodic box [0,2pi)^2; every quadrature carries this factor.
inline constexpr double kDomainArea = kTwoPi * kTwoPi;

/// Integer wave vector on the dual lattice of T^2 = [0,2pi)^2.
///
/// Two norms are in play and must not be mixed up: the l1 norm
/// |k1|+|k2| is the argument of the noise amplitude lambda, while all
/// Laplacian / dispersion multipliers use the squared l2 norm k1^2+k2^2.
struct WaveIndex {
    int k1 = 0;
    int k2 = 0;

    int l1() const { return std::abs(k1) + std::abs(k2); }
    int l2sq() const { return k1 * k1 + k2 * k2; }
    bool is_zero() const { return k1 == 0 && k2 == 0; }

    friend bool operator==(const WaveIndex&, const WaveIndex&) = default;
};

/// lambda(|k|_1) = (|k1|+|k2|)^(-r), the spectral decay of the noise basis.
inline double lambda_decay(WaveIndex k, double r) {
    return std::pow(static_cast<double>(k.l1()), -r);
}

/// Half lattice {k1 > 0} u {k1 = 0, k2 > 0} restricted to |k|_1 <= m,
/// enumerated in a fixed (k1 asc, k2 asc) order.  Since A_{-k} = -A_k and
/// B_{-k} = B_k, one representative per +-k pair enumerates every distinct
/// noise direction exactly once.
inline std::vector<WaveIndex> half_lattice(int m) {
    std::vector<WaveIndex> out;
    for (int k2 = 1; k2 <= m; ++k2) out.push_back({0, k2});
    for (int k1 = 1; k1 <= m; ++k1)
        for (int k2 = -(m - k1); k2 <= m - k1; ++k2) out.push_back({k1, k2});
    return out;
}

/// True for the representative of each +-k pair (the snapshot file and all
/// lattice sums use the same convention, with (0,0) belonging to the k1=0 side).
inline bool in_half_lattice(int k1, int k2) {
    return k1 > 0 || (k1 == 0 && k2 >= 0);
}

}  // namespace qgs
