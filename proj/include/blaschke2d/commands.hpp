#pragma once
// Command dispatch: one CLI command = one library operation, assembled into a
// Report with command echo, exact values as strings, and provenance fields.

#include "blaschke2d/blaschke.hpp"
#include "blaschke2d/config.hpp"
#include "blaschke2d/report.hpp"
#include "blaschke2d/rng.hpp"

namespace blaschke2d {

/**
 * Run cfg.command and return its report.  All commands except
 * reproduce-paper build the configured map first; reproduce-paper constructs
 * its own deterministic example maps, writes one JSON file per reproduced
 * item into cfg.out_path (a directory, created if needed), and returns the
 * index report.  Reports contain no clocks or machine identifiers, so a
 * fixed config and seed always produce identical bytes.
 */
Report run_command(const RunConfig& cfg);

// --- deterministic example maps (shared by reproduce-paper and the tests) ---

// Quintic-by-quadratic family member with degree matrix [[5,2],[2,1]]: five
// copies of one zero in the first factor against doubled zeros, so the
// preimage count (5) falls below the degree growth rate (3 + 2*sqrt(2)).
Blaschke2D example_low_topdeg();

// Symmetric family member with degree matrix [[3,2],[2,3]] whose topological
// degree equals det N = 5: the equal-degrees regime, where backward orbits
// stay on the torus.
Blaschke2D example_equal_degrees();

// Interior Gaussian-rational zero with both parts in [-1/2, 1/2] and
// denominator at most max_den; never zero.
GaussianRational random_interior_zero(SplitMix64& rng, int max_den = 8);

// Map with the given degree matrix and random interior zeros, redrawn until
// the genericity test passes.  Rotations are left at the identity.
Blaschke2D random_generic_map(const DegreeMatrix& N, SplitMix64& rng);

}  // namespace blaschke2d
