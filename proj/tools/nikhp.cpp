// nikhp: drives a single experiment described by a JSON config file.
//
//   nikhp <command> --config <path> [--out <dir>] [--precision <bits>]
//                   [--workers <k>] [--seed <u64>]
//
// Exit status: 0 all checks passed, 1 a criterion failed, 2 the config or
// system file did not parse, 3 a solver failure (ill-conditioned linear
// system, non-convergent equilibrium, ...).

#include <cstdint>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "nikhp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Hermite-Pade / Nikishin experiment driver"};
    app.require_subcommand(0, 0);

    std::string command;
    std::string config_path;
    std::string out_dir;
    unsigned precision = 0;
    int workers = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;

    const std::set<std::string> known{"certify", "zeros",  "interlace",
                                      "equilibrium", "weak", "rate",
                                      "ratio",   "connection"};
    app.add_option("command", command, "one of: certify zeros interlace "
                   "equilibrium weak rate ratio connection")
        ->required();
    app.add_option("--config", config_path, "experiment config (nikhp-config/1)")
        ->required();
    app.add_option("--out", out_dir, "artifact directory (overrides config)");
    app.add_option("--precision", precision, "working precision in bits");
    app.add_option("--workers", workers, "solver threads");
    auto* seed_opt =
        app.add_option("--seed", seed, "RNG seed for randomized probes");

    try {
        app.parse(argc, argv);
        seed_set = seed_opt->count() > 0;
        if (!known.count(command))
            throw nikhp::ConfigError("unknown command: " + command);

        nikhp::ExperimentConfig cfg = nikhp::load_config(config_path);
        cfg.command = command;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (precision != 0) cfg.precision = precision;
        if (workers != 0) cfg.workers = workers;
        if (seed_set) cfg.seed = seed;
        return nikhp::run(cfg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const nikhp::ConfigError& e) {
        std::cerr << "nikhp: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nikhp: " << e.what() << "\n";
        return 3;
    }
}
