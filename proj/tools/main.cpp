// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/errors.hpp"
#include "symapprox/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace symapprox;

int main(int argc, char** argv) {
    CLI::App app{"Tabulated approximation of symmetric and anti-symmetric functions"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    Overrides overrides;
    std::uint64_t seed = 0;
    std::string out_dir;
    unsigned threads = 1;
    std::uint64_t cap = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Random seed for sampling and direction search");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* threads_opt = app.add_option("--threads", threads, "Worker threads");
    auto* cap_opt = app.add_option("--cap", cap, "Maximum wedge size to tabulate");
    app.add_option("--config", config_path, "Experiment configuration (JSON)");
    app.add_flag("--no-timing", overrides.no_timing, "Write zero for all wall-time fields");

    auto* build = app.add_subcommand("build", "Build and save a tabulated approximator");
    build->add_option("config", config_path, "Experiment configuration (JSON)");
    auto* verify = app.add_subcommand("verify", "Build, measure and check an approximator; writes report.json/csv");
    verify->add_option("config", config_path, "Experiment configuration (JSON)");
    auto* sweep = app.add_subcommand("sweep", "Error against delta over the configured grid");
    sweep->add_option("config", config_path, "Experiment configuration (JSON)");
    auto* eval = app.add_subcommand("eval", "Evaluate a saved model at one configuration");
    std::string model_path;
    std::string input;
    eval->add_option("model", model_path, "Model file")->required();
    eval->add_option("configuration", input, "\"x,y;x,y\" literal or file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*seed_opt) overrides.seed = seed;
    if (*out_opt) overrides.out = out_dir;
    if (*threads_opt) overrides.threads = threads;
    if (*cap_opt) overrides.cap = cap;

    try {
        if (*eval) return cmd_eval(model_path, input, std::cout);
        if (config_path.empty()) {
            std::cerr << "error: a configuration file is required (--config PATH)\n";
            return kExitUsage;
        }
        ExperimentConfig config = load_config(config_path);
        apply_overrides(config, overrides);
        if (*build) return cmd_build(config, std::cout);
        if (*verify) return cmd_verify(config, std::cout);
        return cmd_sweep(config, std::cout);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.required() > 0) std::cerr << "required cap: " << e.required() << '\n';
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
