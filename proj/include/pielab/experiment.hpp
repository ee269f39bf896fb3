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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "pielab/io.hpp"

namespace pielab::app {

/// Every file a run produces, keyed by path relative to the output directory.
struct RunOutput {
    std::map<std::string, std::string> files;
};

/// Executes one experiment config. Relative paths inside the config resolve
/// against `base_dir`. Output depends only on (config, seed).
RunOutput run_config(const io::json &config, const std::filesystem::path &base_dir,
                     std::optional<std::uint64_t> seed_override = std::nullopt);

/// Loads a config file and runs it with its own directory as base.
RunOutput run_config_file(const std::string &path, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Output directory named by the config ("output"), resolved against `base_dir`.
std::filesystem::path default_output_dir(const io::json &config, const std::filesystem::path &base_dir);

void write_output(const RunOutput &out, const std::filesystem::path &dir);

struct FitFileResult {
    io::json fit;
    int clamped = 0;
};

/// Fits raw measurements from a lambda,value,std CSV.
FitFileResult fit_file(const std::string &path, FitModel model, double trace_shift = 0.0, bool weighted = true);

}  // namespace pielab::app
