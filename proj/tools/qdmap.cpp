#include <algorithm>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdmap/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qdmap: evolve and audit time-local quantum dynamical maps"};
    app.set_version_flag("--version", std::string("qdmap ") + qdmap::kToolVersion);
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string out_dir = ".";
    qdmap::RunOptions opts;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    double tol_div = 0.0;

    auto* run = app.add_subcommand("run", "run scenarios and write <name>.report.json (and <name>.csv)");
    run->add_option("files", files, "scenario files")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = run->add_option("--seed", seed, "seed for randomized analyses (default: scenario, else 42)");
    auto* steps_opt = run->add_option("--steps", steps, "override the number of grid steps");
    auto* tol_opt = run->add_option("--tol-div", tol_div, "override the divisibility tolerance");
    run->add_flag("--csv", opts.csv, "also write the CSV time series");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a scenario file without running it");
    validate->add_option("file", validate_path, "scenario file")->required();

    auto* presets = app.add_subcommand("presets", "list the built-in models");

    CLI11_PARSE(app, argc, argv);

    if (*run) {
        if (*seed_opt)
            opts.seed = seed;
        if (*steps_opt)
            opts.steps = steps;
        if (*tol_opt)
            opts.tol_div = tol_div;
        int code = qdmap::kExitOk;
        for (const auto& f : files) {
            const int c = qdmap::run_file(f, out_dir, opts, std::cerr);
            code = std::max(code, c);
        }
        return code;
    }
    if (*validate)
        return qdmap::validate_file(validate_path, std::cout);
    if (*presets) {
        for (const auto& p : qdmap::preset_table()) {
            std::cout << std::left << std::setw(28) << p.name << p.description << "\n"
                      << std::setw(28) << "" << "params: " << p.params << "\n";
        }
        return qdmap::kExitOk;
    }
    return qdmap::kExitOk;
}
