// mcrx: analytical curves, Brownian-dynamics simulation, detectors,
// receiver-model transforms and the verification report.

#include "mcrx/harness/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv)
{
    using namespace mcrx::harness;

    CLI::App app{"Passive/absorbing receiver signals, transforms and Monte Carlo verification"};
    app.require_subcommand(1);

    std::string config;
    std::uint64_t seed = 0;
    std::string out;
    std::size_t realizations = 0;
    unsigned threads = 0;

    const std::pair<const char*, std::pair<Command, const char*>> commands[] = {
        {"analytical", {Command::Analytical, "Evaluate the closed-form curves"}},
        {"simulate", {Command::Simulate, "Run the passive and/or absorbing ensembles"}},
        {"detect", {Command::Detect, "Simulate and apply the energy / absorption-rate detectors"}},
        {"transform", {Command::Transform, "Apply the receiver-model transforms and their inverses"}},
        {"verify", {Command::Verify, "Run every configured task and check the declared tolerances"}},
    };
    std::map<CLI::App*, Command> by_app;
    for (const auto& [name, info] : commands) {
        CLI::App* sub = app.add_subcommand(name, info.second);
        sub->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Master seed (overrides the config)");
        sub->add_option("--out", out, "Output directory (overrides the config)");
        sub->add_option("--realizations", realizations, "Realization count (overrides the config)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--threads", threads, "Worker threads, 0 = one per hardware thread");
        by_app[sub] = info.first;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    Overrides overrides;
    overrides.threads = threads;
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--seed")) overrides.seed = seed;
    if (chosen->count("--out")) overrides.output_dir = out;
    if (chosen->count("--realizations")) overrides.realizations = realizations;

    try {
        return run_experiment(config, by_app.at(chosen), overrides, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
