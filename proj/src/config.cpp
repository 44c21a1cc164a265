#include "qgs/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qgs/errors.hpp"
#include "qgs/philox.hpp"
#include "qgs/snapshot.hpp"

namespace qgs {

namespace {

struct RawConfig {
    // section -> key -> value, with insertion order kept per section
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    size_t i = 0;
    auto skip_ws = [&](bool stop_at_newline = false) {
        while (i < text.size()) {
            char c = text[i];
            if (c == '#') {
                while (i < text.size() && text[i] != '\n') ++i;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (stop_at_newline && c == '\n') return;
                ++i;
            } else {
                return;
            }
        }
    };
    auto ident = [&]() {
        size_t b = i;
        while (i < text.size() && ident_char(text[i])) ++i;
        if (i == b) throw ConfigError("config: expected identifier near offset " +
                                      std::to_string(b));
        return text.substr(b, i - b);
    };

    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        std::string section = ident();
        skip_ws();
        if (i >= text.size() || text[i] != '{')
            throw ConfigError("config: expected '{' after section '" + section + "'");
        ++i;
        auto& entries = raw.sections[section];
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            if (i >= text.size()) throw ConfigError("config: unterminated section '" + section + "'");
            if (text[i] == '}') { ++i; break; }
            std::string key = ident();
            skip_ws();
            if (i >= text.size() || text[i] != '=')
                throw ConfigError("config: expected '=' after key '" + section + "." + key + "'");
            ++i;
            skip_ws();
            size_t b = i;
            while (i < text.size() && text[i] != ',' && text[i] != '}' && text[i] != '\n' &&
                   text[i] != '#')
                ++i;
            std::string value = text.substr(b, i - b);
            while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back())))
                value.pop_back();
            if (value.empty())
                throw ConfigError("config: empty value for '" + section + "." + key + "'");
            entries.emplace_back(key, value);
        }
    }
    return raw;
}

class SectionReader {
  public:
    SectionReader(const RawConfig& raw, const std::string& name) : name_(name) {
        auto it = raw.sections.find(name);
        if (it != raw.sections.end())
            for (const auto& [k, v] : it->second) {
                if (values_.count(k))
                    throw ConfigError("config: duplicate key '" + name + "." + k + "'");
                values_[k] = v;
            }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        std::string v = it->second;
        values_.erase(it);
        return v;
    }

    double take_double(const std::string& key, std::optional<double> def = std::nullopt) {
        auto v = take(key);
        if (!v) {
            if (def) return *def;
            throw ConfigError("config: missing required key '" + name_ + "." + key + "'");
        }
        char* end = nullptr;
        double x = std::strtod(v->c_str(), &end);
        if (end == v->c_str() || *end != '\0')
            throw ConfigError("config: bad number for '" + name_ + "." + key + "': " + *v);
        return x;
    }

    long take_int(const std::string& key, std::optional<long> def = std::nullopt) {
        auto v = take(key);
        if (!v) {
            if (def) return *def;
            throw ConfigError("config: missing required key '" + name_ + "." + key + "'");
        }
        char* end = nullptr;
        long x = std::strtol(v->c_str(), &end, 10);
        if (end == v->c_str() || *end != '\0')
            throw ConfigError("config: bad integer for '" + name_ + "." + key + "': " + *v);
        return x;
    }

    uint64_t take_u64(const std::string& key, uint64_t def) {
        auto v = take(key);
        if (!v) return def;
        char* end = nullptr;
        unsigned long long x = std::strtoull(v->c_str(), &end, 10);
        if (end == v->c_str() || *end != '\0')
            throw ConfigError("config: bad integer for '" + name_ + "." + key + "': " + *v);
        return x;
    }

    void finish() {
        if (!values_.empty())
            throw ConfigError("config: unknown key '" + name_ + "." + values_.begin()->first +
                              "'");
    }

  private:
    std::string name_;
    std::map<std::string, std::string> values_;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    RawConfig raw = tokenize(text);
    static const std::vector<std::string> known = {"grid", "time",     "physics", "noise",
                                                   "ensemble", "init", "output"};
    for (const auto& [name, _] : raw.sections) {
        bool ok = false;
        for (const auto& k : known) ok = ok || k == name;
        if (!ok) throw ConfigError("config: unknown section '" + name + "'");
    }

    ExperimentConfig cfg;

    SectionReader grid(raw, "grid");
    cfg.solver.n = static_cast<int>(grid.take_int("n"));
    if (cfg.solver.n < 8 || cfg.solver.n % 2 != 0)
        throw ConfigError("config: grid.n must be even and >= 8");
    grid.finish();

    SectionReader time(raw, "time");
    cfg.solver.dt = time.take_double("dt");
    if (cfg.solver.dt <= 0) throw ConfigError("config: time.dt must be positive");
    auto steps = time.take("steps");
    auto tau = time.take("tau");
    if (steps) {
        cfg.solver.steps = std::atoi(steps->c_str());
        if (tau && std::abs(std::atof(tau->c_str()) - cfg.solver.steps * cfg.solver.dt) >
                       1e-9 * cfg.solver.dt)
            throw ConfigError("config: time.tau disagrees with time.steps * time.dt");
    } else if (tau) {
        cfg.solver.steps =
            static_cast<int>(std::llround(std::atof(tau->c_str()) / cfg.solver.dt));
    } else {
        throw ConfigError("config: missing required key 'time.steps' (or 'time.tau')");
    }
    if (cfg.solver.steps < 0) throw ConfigError("config: negative step count");
    cfg.tau = cfg.solver.dt * cfg.solver.steps;
    time.finish();

    SectionReader phys(raw, "physics");
    cfg.solver.beta = phys.take_double("beta", 1.0);
    cfg.solver.a = phys.take_double("a", 1.0);
    cfg.solver.nu = phys.take_double("nu", 0.0);
    auto smode_given = phys.take("sigma_mode");
    std::string smode = smode_given.value_or("none");
    if (smode == "none")
        cfg.solver.sigma_mode = SigmaMode::None;
    else if (smode == "constant")
        cfg.solver.sigma_mode = SigmaMode::Constant;
    else if (smode == "spectral")
        cfg.solver.sigma_mode = SigmaMode::Spectral;
    else
        throw ConfigError("config: physics.sigma_mode must be none|constant|spectral");
    cfg.solver.sigma = phys.take_double("sigma", 0.0);
    auto phys_m = phys.take("m");
    auto phys_r = phys.take("r");
    cfg.solver.m = phys_m ? std::atoi(phys_m->c_str()) : 0;
    cfg.solver.r = phys_r ? std::atof(phys_r->c_str()) : 3.0;
    if (cfg.solver.m < 0) throw ConfigError("config: physics.m must be >= 0");
    if (cfg.solver.r < 3.0) throw ConfigError("config: physics.r must be >= 3");
    phys.finish();

    SectionReader noise(raw, "noise");
    std::string model = noise.take("model").value_or("none");
    if (model == "none")
        cfg.noise.kind = NoiseSpec::Kind::None;
    else if (model == "kolmogorov")
        cfg.noise.kind = NoiseSpec::Kind::Kolmogorov;
    else if (model == "two_fields")
        cfg.noise.kind = NoiseSpec::Kind::TwoFields;
    else
        throw ConfigError("config: noise.model must be none|kolmogorov|two_fields");
    cfg.noise.m = static_cast<int>(noise.take_int("m", 1));
    cfg.noise.r = noise.take_double("r", 3.0);
    cfg.noise.nu = noise.take_double("nu", 0.0);
    if (cfg.noise.m < 0) throw ConfigError("config: noise.m must be >= 0");
    if (cfg.noise.r < 3.0) throw ConfigError("config: noise.r must be >= 3");
    if (cfg.noise.kind == NoiseSpec::Kind::TwoFields && cfg.noise.nu < 0.0)
        throw ConfigError("config: noise.nu must be >= 0");
    noise.finish();

    // Unless stated, the drag follows the simulated noise model: the basis
    // noise produces the spectral damping sum, the two-field model none.
    if (!smode_given && cfg.noise.kind == NoiseSpec::Kind::Kolmogorov) {
        cfg.solver.sigma_mode = SigmaMode::Spectral;
        if (!phys_m) cfg.solver.m = cfg.noise.m;
        if (!phys_r) cfg.solver.r = cfg.noise.r;
    }

    SectionReader ens(raw, "ensemble");
    cfg.particles = static_cast<int>(ens.take_int("particles", 0));
    cfg.seed = ens.take_u64("seed", 1);
    ens.finish();

    SectionReader init(raw, "init");
    std::string itype = init.take("type").value_or("rossby");
    if (itype == "rossby")
        cfg.init_type = ExperimentConfig::InitType::Rossby;
    else if (itype == "random")
        cfg.init_type = ExperimentConfig::InitType::Random;
    else if (itype == "snapshot")
        cfg.init_type = ExperimentConfig::InitType::Snapshot;
    else
        throw ConfigError("config: init.type must be rossby|random|snapshot");
    cfg.init_k1 = static_cast<int>(init.take_int("k1", 1));
    cfg.init_k2 = static_cast<int>(init.take_int("k2", 2));
    cfg.init_eps = init.take_double("eps", 1e-3);
    cfg.init_seed = init.take_u64("seed", 1);
    cfg.init_kmax = static_cast<int>(init.take_int("kmax", 5));
    cfg.init_amplitude = init.take_double("amplitude", 0.1);
    cfg.init_file = init.take("file").value_or("");
    if (cfg.init_type == ExperimentConfig::InitType::Snapshot && cfg.init_file.empty())
        throw ConfigError("config: init.file required for init.type = snapshot");
    init.finish();

    SectionReader output(raw, "output");
    cfg.out_dir = output.take("dir").value_or("out");
    cfg.snapshot_every = static_cast<int>(output.take_int("snapshot_every", 0));
    cfg.format = output.take("format").value_or("csv");
    if (cfg.format != "csv")
        throw ConfigError("config: output.format supports only csv");
    output.finish();

    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return parse_config(os.str());
}

std::string resolved_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "grid { n = " << cfg.solver.n << " }\n";
    os << "time { dt = " << fmt17(cfg.solver.dt) << ", steps = " << cfg.solver.steps << " }\n";
    const char* smode = cfg.solver.sigma_mode == SigmaMode::None       ? "none"
                        : cfg.solver.sigma_mode == SigmaMode::Constant ? "constant"
                                                                       : "spectral";
    os << "physics { beta = " << fmt17(cfg.solver.beta) << ", a = " << fmt17(cfg.solver.a)
       << ", nu = " << fmt17(cfg.solver.nu) << ", sigma_mode = " << smode
       << ", sigma = " << fmt17(cfg.solver.sigma) << ", m = " << cfg.solver.m
       << ", r = " << fmt17(cfg.solver.r) << " }\n";
    const char* model = cfg.noise.kind == NoiseSpec::Kind::None         ? "none"
                        : cfg.noise.kind == NoiseSpec::Kind::Kolmogorov ? "kolmogorov"
                                                                        : "two_fields";
    os << "noise { model = " << model << ", m = " << cfg.noise.m
       << ", r = " << fmt17(cfg.noise.r) << ", nu = " << fmt17(cfg.noise.nu) << " }\n";
    os << "ensemble { particles = " << cfg.particles << ", seed = " << cfg.seed << " }\n";
    const char* itype = cfg.init_type == ExperimentConfig::InitType::Rossby   ? "rossby"
                        : cfg.init_type == ExperimentConfig::InitType::Random ? "random"
                                                                              : "snapshot";
    os << "init { type = " << itype << ", k1 = " << cfg.init_k1 << ", k2 = " << cfg.init_k2
       << ", eps = " << fmt17(cfg.init_eps) << ", seed = " << cfg.init_seed
       << ", kmax = " << cfg.init_kmax << ", amplitude = " << fmt17(cfg.init_amplitude);
    if (!cfg.init_file.empty()) os << ", file = " << cfg.init_file;
    os << " }\n";
    os << "output { dir = " << cfg.out_dir << ", snapshot_every = " << cfg.snapshot_every
       << ", format = " << cfg.format << " }\n";
    return os.str();
}

SpectralField ExperimentConfig::initial_stream() const {
    switch (init_type) {
        case InitType::Rossby: {
            SpectralField psi(solver.n);
            psi.at(init_k1, init_k2) = Complex(0.5 * init_eps, 0.0);
            psi.at(-init_k1, -init_k2) = Complex(0.5 * init_eps, 0.0);
            return psi;
        }
        case InitType::Random:
            return random_stream(solver.n, init_kmax, init_amplitude, init_seed);
        case InitType::Snapshot: {
            Snapshot snap = read_snapshot_file(init_file);
            if (snap.field.resolution() != solver.n)
                throw ConfigError("init snapshot resolution differs from grid.n");
            SpectralField psi = snap.field;
            psi.zero_mean();
            return psi;
        }
    }
    throw ConfigError("unreachable init type");
}

SpectralField random_stream(int n, int kmax, double target_norm, uint64_t seed) {
    SpectralField psi(n);
    uint32_t slot = 0;
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -kmax); k2 <= kmax; ++k2) {
            auto z = philox_normal2(seed, 0x5eedu, static_cast<uint32_t>(k1 + 1024),
                                    slot++ + static_cast<uint32_t>(k2 + 1024) * 4096u);
            Complex c(z[0], z[1]);
            psi.at(k1, k2) = 0.5 * c;
            psi.at(-k1, -k2) = 0.5 * std::conj(c);
        }
    }
    VelocityField u(psi);
    double norm = std::sqrt(l2_inner(u, u));
    if (norm > 0) psi *= target_norm / norm;
    return psi;
}

}  // namespace qgs
