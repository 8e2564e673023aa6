// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stochwave/wave_solver.hpp"

namespace stochwave {

//! Study-level settings shared by every harness subcommand.
struct StudySettings {
    std::vector<double> lambda_grid{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> eps_grid{1e-2, 1e-3, 0.0};
    std::size_t n_paths = 200;
    std::uint64_t seed = 42;
    std::size_t workers = 1;
    std::uint64_t path = 0;  //!< path index used by `simulate`
    std::filesystem::path output_dir = ".";
};

struct RunConfig {
    SolverConfig solver;
    StudySettings study;
};

/*!
 * Flat view of a config file: canonical "section.key" -> raw value.
 *
 * The file format is sectioned key=value text:
 *
 *     # comment
 *     [domain] dim=1 n_modes=64
 *     [graph]
 *     kind = "cubic"
 *
 * Several pairs may share a line. Keys outside a section may use the
 * short aliases (graph, sigma, seed, lambda, dt, ...).
 */
class ConfigEntries {
public:
    //! Sets `key` (canonical or alias). \throws ConfigError for unknown keys.
    void set(std::string_view key, std::string_view value);
    bool contains(const std::string& canonical) const { return values_.count(canonical) != 0; }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    //! Canonical key for a section/key pair or alias; empty if unknown.
    static std::string canonical(std::string_view section, std::string_view key);

private:
    std::map<std::string, std::string> values_;
};

ConfigEntries parse_config_text(std::string_view text);
//! \throws IoError if the file cannot be read.
ConfigEntries load_config_file(const std::filesystem::path& path);

//! Builds validated settings; every failure is reported as ConfigError.
RunConfig build_run_config(const ConfigEntries& entries);

std::vector<double> parse_number_list(std::string_view key, std::string_view text);

}  // namespace stochwave
