#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qgs/config.hpp"
#include "qgs/errors.hpp"
#include "qgs/experiment.hpp"

using namespace qgs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path temp_dir(const std::string& tag) {
    fs::path d = fs::temp_directory_path() / ("qgs_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(QGS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

const char* kRossbyCfg = R"(# Rossby wave, inviscid
grid     { n = 64 }
time     { dt = 1e-3, steps = 200 }
physics  { beta = 1, a = 1, nu = 0, sigma_mode = none }
init     { type = rossby, k1 = 1, k2 = 2, eps = 1e-3 }
output   { dir = OUTDIR, snapshot_every = 100 }
)";

}  // namespace

TEST_CASE("config parses sections, keys and comments") {
    ExperimentConfig cfg = parse_config(R"(
grid { n = 32 }
time { dt = 0.01, tau = 1.0 }   # steps resolved from tau
physics { beta = 0.5, a = 2, nu = 1e-4, sigma_mode = spectral, m = 3, r = 4 }
noise { model = kolmogorov, m = 2, r = 3.5 }
ensemble { particles = 1234, seed = 99 }
output { dir = somewhere }
)");
    CHECK(cfg.solver.n == 32);
    CHECK(cfg.solver.steps == 100);
    CHECK(cfg.tau == doctest::Approx(1.0));
    CHECK(cfg.solver.sigma_mode == SigmaMode::Spectral);
    CHECK(cfg.solver.m == 3);
    CHECK(cfg.noise.kind == NoiseSpec::Kind::Kolmogorov);
    CHECK(cfg.noise.r == 3.5);
    CHECK(cfg.particles == 1234);
    CHECK(cfg.seed == 99);
    CHECK(cfg.out_dir == "somewhere");
}

TEST_CASE("unknown keys and sections are rejected by name") {
    CHECK_THROWS_WITH_AS((void)parse_config("grid { n = 32, banana = 1 }\ntime { dt = 1e-3, steps = 1 }"),
                         doctest::Contains("grid.banana"), ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("grid { n = 32 }\nwhatever { x = 1 }\ntime { dt = 1e-3, steps = 1 }"),
                         doctest::Contains("whatever"), ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("time { dt = 1e-3, steps = 1 }"),
                         doctest::Contains("grid.n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("grid { n = 33 }\ntime { dt = 1e-3, steps = 1 }"),
                    ConfigError);
    CHECK_THROWS_WITH_AS(
        (void)parse_config("grid { n = 32, n = 64 }\ntime { dt = 1e-3, steps = 1 }"),
        doctest::Contains("duplicate"), ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("grid { n = 32 }\ntime { dt = 1e-3, steps = 10, "
                                            "tau = 5 }"),
                         doctest::Contains("tau"), ConfigError);
    CHECK_THROWS_WITH_AS((void)parse_config("grid { n = 32 }\ntime { dt = 1e-3, steps = 1 }\n"
                                            "noise { model = kolmogorov, r = 2 }"),
                         doctest::Contains("r must be >= 3"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("grid { n = 64 }\ntime { dt = 1e-3, steps = 1 }\n"
                                       "physics { sigma_mode = wild }"),
                    ConfigError);
}

TEST_CASE("resolved config echo parses back to the same configuration") {
    ExperimentConfig cfg = parse_config(R"(
grid { n = 64 }
time { dt = 2.5e-3, steps = 7 }
physics { beta = 0.3333333333333333, a = 1, nu = 1e-5, sigma_mode = constant, sigma = 0.125 }
noise { model = two_fields, nu = 0.07 }
ensemble { particles = 10, seed = 987654321 }
init { type = random, seed = 5, kmax = 4, amplitude = 0.25 }
output { dir = echo_me, snapshot_every = 3 }
)");
    std::string echo1 = resolved_config(cfg);
    ExperimentConfig cfg2 = parse_config(echo1);
    std::string echo2 = resolved_config(cfg2);
    CHECK(echo1 == echo2);
    CHECK(cfg2.solver.dt == cfg.solver.dt);
    CHECK(cfg2.solver.sigma == cfg.solver.sigma);
    CHECK(cfg2.noise.nu == cfg.noise.nu);
    CHECK(cfg2.init_amplitude == cfg.init_amplitude);
}

TEST_CASE("sigma_mode defaults follow the noise model") {
    ExperimentConfig kol = parse_config(
        "grid { n = 32 }\ntime { dt = 1e-3, steps = 1 }\n"
        "noise { model = kolmogorov, m = 2, r = 3 }");
    CHECK(kol.solver.sigma_mode == SigmaMode::Spectral);
    CHECK(kol.solver.m == 2);

    ExperimentConfig two = parse_config(
        "grid { n = 32 }\ntime { dt = 1e-3, steps = 1 }\n"
        "noise { model = two_fields, nu = 0.1 }");
    CHECK(two.solver.sigma_mode == SigmaMode::None);

    // an explicit sigma_mode always wins
    ExperimentConfig expl = parse_config(
        "grid { n = 32 }\ntime { dt = 1e-3, steps = 1 }\n"
        "physics { sigma_mode = none }\n"
        "noise { model = kolmogorov, m = 2, r = 3 }");
    CHECK(expl.solver.sigma_mode == SigmaMode::None);
}

TEST_CASE("initial stream variants") {
    ExperimentConfig cfg = parse_config(
        "grid { n = 32 }\ntime { dt = 1e-3, steps = 1 }\n"
        "init { type = rossby, k1 = 2, k2 = 1, eps = 0.5 }");
    SpectralField psi = cfg.initial_stream();
    CHECK(psi.at(2, 1).real() == doctest::Approx(0.25));
    CHECK(psi.at(-2, -1).real() == doctest::Approx(0.25));

    ExperimentConfig bad = cfg;
    bad.init_type = ExperimentConfig::InitType::Snapshot;
    bad.init_file = "/nonexistent/file.spec";
    CHECK_THROWS_AS((void)bad.initial_stream(), ConfigError);
}

TEST_CASE("run_experiment writes diagnostics with conserved energy for the Rossby config") {
    fs::path dir = temp_dir("run");
    std::string cfg_text = kRossbyCfg;
    cfg_text.replace(cfg_text.find("OUTDIR"), 6, dir.string());
    ExperimentConfig cfg = parse_config(cfg_text);
    CHECK(run_experiment(cfg, {.seed = {}, .out_dir = {}, .quiet = true}) == 0);

    std::ifstream diag(dir / "diagnostics.csv");
    std::string header;
    std::getline(diag, header);
    CHECK(header == "t,energy,enstrophy,max_vorticity");
    double e_first = -1, e_last = -1;
    std::string line;
    while (std::getline(diag, line)) {
        double t, e;
        CHECK(std::sscanf(line.c_str(), "%lf,%lf", &t, &e) == 2);
        if (e_first < 0) e_first = e;
        e_last = e;
    }
    CHECK(std::abs(e_last - e_first) / e_first < 1e-8);
    CHECK(fs::exists(dir / "resolved.cfg"));
    CHECK(fs::exists(dir / "snapshot_000000.spec"));
    CHECK(fs::exists(dir / "snapshot_000200.spec"));

    // the resolved echo reproduces the run byte-for-byte
    fs::path dir2 = temp_dir("run2");
    ExperimentConfig cfg2 = parse_config(slurp(dir / "resolved.cfg"));
    cfg2.out_dir = dir2.string();
    CHECK(run_experiment(cfg2, {.seed = {}, .out_dir = {}, .quiet = true}) == 0);
    CHECK(slurp(dir / "diagnostics.csv") == slurp(dir2 / "diagnostics.csv"));
}

TEST_CASE("energy decreases strictly with viscosity and spectral drag on") {
    fs::path dir = temp_dir("decay");
    ExperimentConfig cfg = parse_config(
        "grid { n = 64 }\ntime { dt = 1e-3, steps = 100 }\n"
        "physics { beta = 1, a = 1, nu = 1e-3, sigma_mode = spectral, m = 2, r = 3 }\n"
        "init { type = random, seed = 3, kmax = 2, amplitude = 0.2 }\n"
        "output { dir = " +
        dir.string() + " }");
    CHECK(run_experiment(cfg, {.seed = {}, .out_dir = {}, .quiet = true}) == 0);
    std::ifstream diag(dir / "diagnostics.csv");
    std::string line;
    std::getline(diag, line);
    double prev = 1e300;
    bool decreasing = true;
    while (std::getline(diag, line)) {
        double t, e;
        std::sscanf(line.c_str(), "%lf,%lf", &t, &e);
        decreasing = decreasing && e < prev;
        prev = e;
    }
    CHECK(decreasing);
}

TEST_CASE("cli exit codes: 0 ok, 2 config trouble, 3 blow-up") {
    fs::path dir = temp_dir("cli");
    fs::path good = dir / "good.cfg";
    {
        std::string text = kRossbyCfg;
        text.replace(text.find("OUTDIR"), 6, (dir / "out").string());
        std::ofstream(good) << text;
    }
    CHECK(run_cli("run --config " + good.string() + " --quiet") == 0);

    fs::path missing = dir / "missing.cfg";
    std::ofstream(missing) << "time { dt = 1e-3, steps = 1 }\n";
    CHECK(run_cli("run --config " + missing.string()) == 2);
    CHECK(run_cli("run --config " + (dir / "nonexistent.cfg").string()) == 2);

    fs::path blowup = dir / "blowup.cfg";
    std::ofstream(blowup) << "grid { n = 32 }\ntime { dt = 50, steps = 300 }\n"
                          << "physics { beta = 0, a = 0 }\n"
                          << "init { type = random, seed = 2, kmax = 5, amplitude = 40 }\n"
                          << "output { dir = " << (dir / "boom").string() << " }\n";
    CHECK(run_cli("run --config " + blowup.string() + " --quiet") == 3);

    // simulate: zero particles is a config error
    fs::path nopart = dir / "nopart.cfg";
    std::ofstream(nopart) << "grid { n = 32 }\ntime { dt = 1e-3, steps = 5 }\n"
                          << "noise { model = two_fields, nu = 0.1 }\n"
                          << "ensemble { particles = 0, seed = 1 }\n"
                          << "output { dir = " << (dir / "sim").string() << " }\n";
    CHECK(run_cli("simulate --config " + nopart.string()) == 2);

    CHECK(run_cli("verify not_a_suite") == 2);
}

TEST_CASE("simulation outputs are byte-identical across thread counts") {
    fs::path dir = temp_dir("simdet");
    fs::path cfgp = dir / "sim.cfg";
    std::ofstream(cfgp) << "grid { n = 32 }\ntime { dt = 2e-3, steps = 25 }\n"
                        << "physics { a = 0.7 }\n"
                        << "noise { model = kolmogorov, m = 2, r = 3 }\n"
                        << "ensemble { particles = 900, seed = 42 }\n"
                        << "init { type = random, seed = 4, kmax = 3, amplitude = 0.3 }\n"
                        << "output { dir = PLACEHOLDER }\n";

    auto run_with_threads = [&](const std::string& threads, const fs::path& out) {
        std::string cmd = "QGS_THREADS=" + threads + " " + QGS_CLI_PATH +
                          " simulate --config " + cfgp.string() + " --out " + out.string() +
                          " --quiet > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    CHECK(run_with_threads("1", dir / "t1") == 0);
    CHECK(run_with_threads("2", dir / "t2") == 0);
    CHECK(slurp(dir / "t1" / "paths.csv") == slurp(dir / "t2" / "paths.csv"));
    CHECK(slurp(dir / "t1" / "drift_estimate.csv") == slurp(dir / "t2" / "drift_estimate.csv"));
    CHECK(slurp(dir / "t1" / "summary.csv") == slurp(dir / "t2" / "summary.csv"));
    CHECK(!slurp(dir / "t1" / "paths.csv").empty());

    // seed override changes the paths
    std::string cmd = std::string(QGS_CLI_PATH) + " simulate --config " + cfgp.string() +
                      " --out " + (dir / "t3").string() + " --seed 43 --quiet > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(slurp(dir / "t1" / "paths.csv") != slurp(dir / "t3" / "paths.csv"));
}

TEST_CASE("verify subcommand: integrability suite runs clean") {
    CHECK(run_cli("verify integrability --quiet") == 0);
}

TEST_CASE("simulate reports the Brownian displacement variance 2 nu t") {
    fs::path dir = temp_dir("brownian");
    ExperimentConfig cfg = parse_config(
        "grid { n = 32 }\ntime { dt = 5e-3, steps = 100 }\n"
        "physics { a = 1 }\n"
        "noise { model = two_fields, nu = 0.1 }\n"
        "ensemble { particles = 10000, seed = 12 }\n"
        "init { type = rossby, eps = 0 }\n"  // drift = 0
        "output { dir = " +
        dir.string() + " }");
    CHECK(run_simulation(cfg, {.seed = {}, .out_dir = {}, .quiet = true}) == 0);
    std::ifstream sum(dir / "summary.csv");
    std::string header, line;
    std::getline(sum, header);
    std::getline(sum, line);
    double tau, rate, action, v1, v2;
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &tau, &rate, &action, &v1, &v2) ==
          5);
    double expect = 2.0 * 0.1 * 0.5;
    CHECK(std::abs(v1 - expect) / expect < 0.05);
    CHECK(std::abs(v2 - expect) / expect < 0.05);
    CHECK(rate == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("snapshots written by a run restart a new run") {
    fs::path dir = temp_dir("restart");
    std::string text = kRossbyCfg;
    text.replace(text.find("OUTDIR"), 6, (dir / "first").string());
    ExperimentConfig first = parse_config(text);
    CHECK(run_experiment(first, {.seed = {}, .out_dir = {}, .quiet = true}) == 0);

    ExperimentConfig second = parse_config(
        "grid { n = 64 }\ntime { dt = 1e-3, steps = 10 }\n"
        "physics { beta = 1, a = 1 }\n"
        "init { type = snapshot, file = " +
        (dir / "first" / "snapshot_000200.spec").string() + " }\noutput { dir = " +
        (dir / "second").string() + " }");
    CHECK(run_experiment(second, {.seed = {}, .out_dir = {}, .quiet = true}) == 0);

    // the restarted run picks up the same energy (inviscid, conserved)
    auto first_energy = [&](const fs::path& csv, bool last) {
        std::ifstream is(csv);
        std::string line, keep;
        std::getline(is, line);  // header
        double e = -1;
        while (std::getline(is, line)) {
            double t, en;
            std::sscanf(line.c_str(), "%lf,%lf", &t, &en);
            if (e < 0 || last) e = en;
            if (!last) break;
        }
        return e;
    };
    double e_end = first_energy(dir / "first" / "diagnostics.csv", true);
    double e_restart = first_energy(dir / "second" / "diagnostics.csv", false);
    CHECK(e_restart == doctest::Approx(e_end).epsilon(1e-12));
}
