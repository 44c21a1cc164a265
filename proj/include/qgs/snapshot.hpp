#pragma once

#include <iosfwd>
#include <string>

#include "qgs/velocity_field.hpp"

namespace qgs {

/// Spectral snapshot, text format:
///
///   QGS-SPEC v1 n=<n> t=<time>
///   k1,k2,re,im          (one line per stored half-lattice mode,
///                         k1 > 0, or k1 = 0 and k2 >= 0)
///   H,c1,c2              (harmonic part)
///
/// All decimals are written with 17 significant digits so a read-back
/// reproduces the doubles bit-exactly.
void write_snapshot(std::ostream& os, const SpectralField& f, Vec2 harmonic, double t);
void write_snapshot_file(const std::string& path, const SpectralField& f, Vec2 harmonic,
                         double t);
void write_snapshot_file(const std::string& path, const VelocityField& u, double t);

struct Snapshot {
    SpectralField field;
    Vec2 harmonic;
    double t = 0.0;

    VelocityField velocity() const { return VelocityField(field, harmonic); }
};

Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

}  // namespace qgs
