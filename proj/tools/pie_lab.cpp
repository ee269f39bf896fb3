// Copyright 2026 The pie-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pie-lab: run experiment configs, fit measured datasets, compute D_max.

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pielab/entropy_cert.hpp"
#include "pielab/error.hpp"
#include "pielab/experiment.hpp"
#include "pielab/io.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
    const char *s = std::getenv("PIE_LAB_SEED");
    if (s == nullptr || *s == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') {
        pielab::fail(pielab::Errc::ConfigError, "PIE_LAB_SEED must be a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noisy circuit simulation and extrapolation-based error mitigation"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    int workers = 0;
    auto *run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("--config", config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--workers", workers, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
    run->add_option("--out", out_dir, "Output directory (default: the config's \"output\")");

    std::string input;
    std::string model = "pie";
    double shift = 0.0;
    bool unweighted = false;
    auto *fit = app.add_subcommand("fit", "Fit a lambda,value,std CSV and print FitResult JSON");
    fit->add_option("--input", input, "Dataset CSV")->required();
    fit->add_option("--model", model, "pie|linear|quadratic|exp")
        ->check(CLI::IsMember({"pie", "linear", "quadratic", "exp", "exponential"}));
    fit->add_option("--shift", shift, "Identity component subtracted before fitting");
    fit->add_flag("--unweighted", unweighted, "Ignore the std column");

    std::string ideal_path;
    std::string noisy_path;
    double tol = 1e-9;
    auto *dmax = app.add_subcommand("dmax", "Max-relative entropy between two channels");
    dmax->add_option("--ideal", ideal_path, "Ideal channel JSON")->required();
    dmax->add_option("--noisy", noisy_path, "Noisy channel JSON")->required();
    dmax->add_option("--tol", tol, "Bisection tolerance")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            if (workers > 0) {
                omp_set_num_threads(workers);
            }
            omp_set_max_active_levels(1);
            const auto cfg = pielab::io::read_json(config);
            const std::filesystem::path base = std::filesystem::path(config).parent_path();
            const auto out = pielab::app::run_config(cfg, base, env_seed());
            const std::filesystem::path dir =
                out_dir.empty() ? pielab::app::default_output_dir(cfg, base) : std::filesystem::path(out_dir);
            pielab::app::write_output(out, dir);
            std::cout << "wrote " << out.files.size() << " files to " << dir.string() << "\n";
        } else if (*fit) {
            const auto r = pielab::app::fit_file(input, pielab::model_from_name(model), shift, !unweighted);
            if (r.clamped > 0) {
                std::cerr << "warning: " << r.clamped << " non-positive value(s) set to 1e-6 before the log fit\n";
            }
            std::cout << r.fit.dump(2) << "\n";
        } else if (*dmax) {
            const auto a = pielab::io::channel_from_json(pielab::io::read_json(ideal_path));
            const auto b = pielab::io::channel_from_json(pielab::io::read_json(noisy_path));
            const auto d = pielab::dmax(a, b, tol);
            pielab::io::json j;
            j["s_direct"] = d.s_direct;
            j["d_max_bits"] = d.d_max_bits;
            std::cout << j.dump(2) << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
