#pragma once
// Run configuration: the map specification plus command selection and the
// numeric knobs the commands consume.  Text form is line-based `key value...`
// with `#` comments, sharing the four-integer rational grammar of the map
// serialization.

#include <cstdint>
#include <string>
#include <vector>

#include "blaschke2d/blaschke.hpp"
#include "blaschke2d/solver.hpp"

namespace blaschke2d {

struct RunConfig {
    // Map specification (same zero/seed lines the map serialization uses).
    std::vector<GaussianRational> zeros_a, zeros_b, zeros_c, zeros_d;
    GaussianRational seed1{1}, seed2{1};

    std::string command;

    // Iteration / sampling sizes.
    int n_max = 3;       // iterate count for degrees/winding, level count for entropy
    int depth = 3;       // backward steps per preimage-measure sample
    int samples = 200;   // backward orbits, or polyline seed points for entropy
    std::uint64_t seed = 1;

    // Base torus point for preimage-measure, angle coordinates in [0, 1).
    double base_x = 0.0;
    double base_y = 0.0;

    std::string branch_rule = "uniform";  // or "multiplicity-weighted"
    std::string strategy = "auto";        // topdeg/classify: auto|exact-generic|numeric|monomial

    // Zero-modulus threshold under which the small-zero hypothesis of the
    // backward-measure analysis is reported as satisfied.
    double zero_modulus_cap = 0.05;

    // Tolerances feeding the polynomial-system solver.
    double root_residual = 1e-10;
    double joint_residual = 1e-8;
    double dedup_radius = 1e-8;

    std::string out_path;          // empty = stdout ("reproduce-paper": directory)
    std::string format = "json";   // or "csv"

    // Validated construction of the configured map.
    Blaschke2D make_map() const;

    // Solver configuration carrying the tolerance overrides.
    SolverConfig solver() const;
};

// True for the nine dispatchable command names.
bool is_known_command(const std::string& name);

/**
 * Parse and validate a configuration.  Unknown keys, malformed numbers, and
 * duplicate singletons are ParseErrors carrying the line (and column where it
 * adds information); out-of-range parameter values and map-invariant
 * violations (zero outside the disc, singular degree matrix, ...) surface as
 * the corresponding validation error.  The map is built once to validate and
 * discarded.
 */
RunConfig parse_config(const std::string& text);

// Range and map-invariant validation, shared by parse_config and the CLI
// (which re-validates after applying flag overrides).  Configs without any
// zero line are accepted only for reproduce-paper, which supplies its own
// example maps.
void validate_run_config(const RunConfig& cfg);

// Normalized text form: map lines first, then every parameter in a fixed
// order with canonical number rendering.  serialize_config(parse_config(t))
// is idempotent after the first normalization.
std::string serialize_config(const RunConfig& cfg);

}  // namespace blaschke2d
