#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dsfrac/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral fixed-point solver and bound-verification harness for "
                 "the double-scale fractional diffusion equation"};

    std::string config_path;
    std::string command;
    std::string scenario;
    std::string out;
    double eps = 0.0;
    double rho = 1.0;
    double box = 0.0;
    int n = 0;
    std::uint64_t seed = 0;
    bool list_presets = false;

    auto* opt_config = app.add_option("--config", config_path, "key = value config file");
    auto* opt_command = app.add_option(
        "--command", command, "solve | linear | bounds | sweep | sequences | verify");
    auto* opt_scenario = app.add_option("--scenario", scenario, "preset scenario name");
    auto* opt_eps = app.add_option("--eps", eps, "coupling strength (default eps_max/2)");
    auto* opt_rho = app.add_option("--rho", rho, "H2 ball radius, in (0, 1]");
    auto* opt_n = app.add_option("--n", n, "grid points per axis (even, >= 8)");
    auto* opt_box = app.add_option("--box", box, "box side length");
    auto* opt_seed = app.add_option("--seed", seed, "rng seed");
    auto* opt_out = app.add_option("--out", out, "output directory for report and CSVs");
    app.add_flag("--list-scenarios", list_presets, "print the preset scenarios and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& spec : dsfrac::list_scenarios()) {
            std::cout << spec.name << ": " << spec.description << " (s1 = " << spec.s1
                      << ", s2 = " << spec.s2 << ", regime "
                      << dsfrac::regime_name(spec.regime) << ", n = " << spec.n
                      << ", box = " << spec.box_length << ")\n";
        }
        return 0;
    }

    dsfrac::RunConfig cfg;
    try {
        if (opt_config->count()) dsfrac::load_config_file(cfg, config_path);
    } catch (const dsfrac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (opt_command->count()) cfg.command = command;
    if (opt_scenario->count()) cfg.scenario_name = scenario;
    if (opt_eps->count()) cfg.eps = eps;
    if (opt_rho->count()) cfg.rho = rho;
    if (opt_n->count()) cfg.n_override = n;
    if (opt_box->count()) cfg.box_override = box;
    if (opt_seed->count()) cfg.seed = seed;
    if (opt_out->count()) cfg.out_dir = out;

    return dsfrac::execute_command(cfg);
}
