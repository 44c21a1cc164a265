// Command-line driver: deterministic QGS runs, particle simulations and the
// named verification suites.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qgs/errors.hpp"
#include "qgs/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qgs - quasi-geostrophic flows on the 2-torus with a central extension"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite;
    uint64_t seed = 0;
    bool have_seed = false, quiet = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
        cmd->add_option("--seed", seed, "ensemble seed override")
            ->each([&](const std::string&) { have_seed = true; });
        cmd->add_flag("--quiet", quiet, "suppress progress output");
    };

    CLI::App* run = app.add_subcommand("run", "integrate the vorticity equation");
    add_common(run);
    CLI::App* sim = app.add_subcommand("simulate", "run the particle semi-martingale");
    add_common(sim);
    CLI::App* ver = app.add_subcommand("verify", "run a named invariant suite");
    ver->add_option("suite", suite,
                    "cocycle | lemma | generator | formulation | integrability")
        ->required();
    ver->add_flag("--quiet", quiet, "suppress the per-check table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (ver->parsed()) return qgs::run_verify(suite, quiet);

        qgs::ExperimentConfig cfg = qgs::parse_config_file(config_path);
        qgs::RunOverrides ov;
        if (have_seed) ov.seed = seed;
        if (!out_dir.empty()) ov.out_dir = out_dir;
        ov.quiet = quiet;
        return run->parsed() ? qgs::run_experiment(cfg, ov) : qgs::run_simulation(cfg, ov);
    } catch (const qgs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qgs::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
