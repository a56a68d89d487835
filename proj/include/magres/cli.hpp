/**
 * @file cli.hpp
 * @brief Command-line front end: subcommand dispatch, configuration and
 *        JSON or CSV emission.
 *
 * Exit codes: 0 on success with every invariant check passing, 1 when a check
 * fails (JSON diagnostics on the output stream), 2 on a usage error (synopsis
 * on the error stream).  Every document carries the configuration and its
 * FNV-1a hash over the canonical JSON dump.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace magres::cli {

/// Run configuration, read from a JSON object with the same keys.
struct Config {
    double abs_tol = 1e-10;   ///< quadrature absolute tolerance
    double rel_tol = 1e-8;    ///< quadrature relative tolerance
    int m_max = 40;           ///< channel cutoff of full kernels
    int grid_n = 200;         ///< radial grid size of norm computations
    double grid_r_min = 1e-3;
    double grid_r_max = 50.0;
    double R_cut = 10.0;      ///< Stokes-loop radius of gauge checks
    std::uint64_t seed = 12345;
};

/// Parses a JSON config file; unknown keys and non-positive tolerances are
/// usage errors (std::invalid_argument).
Config load_config(const std::string& path);

/// Canonical JSON text of a configuration.
std::string config_json(const Config& c);

/// 64-bit FNV-1a hash of config_json, as 16 hex digits.
std::string config_hash(const Config& c);

/// Runs the command line and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magres::cli
