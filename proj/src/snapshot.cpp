#include "qgs/snapshot.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qgs/errors.hpp"
#include "qgs/lattice.hpp"

namespace qgs {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f, Vec2 harmonic, double t) {
    const int n = f.resolution();
    os << "QGS-SPEC v1 n=" << n << " t=" << fmt17(t) << "\n";
    // Half-lattice over the non-Nyquist mode range, fixed order.
    const int kmax = n / 2 - 1;
    for (int k1 = 0; k1 <= kmax; ++k1) {
        int k2lo = (k1 == 0) ? 0 : -kmax;
        for (int k2 = k2lo; k2 <= kmax; ++k2) {
            const Complex& c = f.at(k1, k2);
            os << k1 << ',' << k2 << ',' << fmt17(c.real()) << ',' << fmt17(c.imag()) << "\n";
        }
    }
    os << "H," << fmt17(harmonic.x1) << ',' << fmt17(harmonic.x2) << "\n";
}

void write_snapshot_file(const std::string& path, const SpectralField& f, Vec2 harmonic,
                         double t) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open snapshot file for writing: " + path);
    write_snapshot(os, f, harmonic, t);
}

void write_snapshot_file(const std::string& path, const VelocityField& u, double t) {
    write_snapshot_file(path, u.stream(), u.harmonic(), t);
}

Snapshot read_snapshot(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ConfigError("snapshot: empty stream");
    int n = 0;
    double t = 0.0;
    if (std::sscanf(header.c_str(), "QGS-SPEC v1 n=%d t=%lf", &n, &t) != 2)
        throw ConfigError("snapshot: bad header line: " + header);

    Snapshot snap{SpectralField(n), {}, t};
    std::string line;
    bool saw_harmonic = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == 'H') {
            double c1 = 0, c2 = 0;
            if (std::sscanf(line.c_str(), "H,%lf,%lf", &c1, &c2) != 2)
                throw ConfigError("snapshot: bad harmonic line: " + line);
            snap.harmonic = {c1, c2};
            saw_harmonic = true;
            continue;
        }
        int k1 = 0, k2 = 0;
        double re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &k1, &k2, &re, &im) != 4)
            throw ConfigError("snapshot: bad mode line: " + line);
        if (!in_half_lattice(k1, k2))
            throw ConfigError("snapshot: mode outside stored half-lattice: " + line);
        snap.field.at(k1, k2) = Complex(re, im);
        if (!(k1 == 0 && k2 == 0)) snap.field.at(-k1, -k2) = Complex(re, -im);
    }
    if (!saw_harmonic) throw ConfigError("snapshot: missing harmonic line");
    return snap;
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open snapshot file: " + path);
    return read_snapshot(is);
}

}  // namespace qgs
