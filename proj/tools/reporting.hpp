#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "tensor_input.hpp"

namespace shgeff::cli {

struct ComputeOptions {
    bool oracle = false;          // append brute-force cross-check section
    std::uint64_t seed = 0x5EED;  // multistart random-start seed
    int grid = 0;                 // oracle grid n; 0 = defaults (256 / 512)
    double tol = -1.0;            // solver tolerance; negative = defaults
    std::string pm = "all";      // ooe|eeo|oee|eoo|all
    bool json = false;
};

struct ScanOptions {
    std::string pm = "ooe";
    int n_theta = 181;
    int n_phi = 360;
    std::string out_path;
    bool json = false;
};

struct VerifyOptions {
    std::uint64_t seed = 0x5EED;
    int grid = 0;  // oracle grid n; 0 = defaults
    bool json = false;
};

// Full computation report for one tensor: symmetry class, d_eff1/d_eff2 with
// optimal angles, chi_eff maxima for the requested configurations, largest
// C-eigenvalue with its (x, y) pair and residual, the d_eff <= lambda check,
// optional oracle cross-checks, and reference-claim deltas for class-form
// inputs. Returns the process exit code (0, or 4 if the C-eigenvalue solver
// did not meet its convergence contract).
int cmd_compute(const TensorInput& in, const ComputeOptions& opts, std::ostream& os);

// Writes the chi_eff angle map as CSV and prints a summary with the grid
// argmax. Returns 0.
int cmd_scan(const TensorInput& in, const ScanOptions& opts, std::ostream& os);

// Runs every built-in crystal-class claim over the standard parameter sets,
// labels each CONFIRMED or DISPUTED against the computed value with oracle
// adjudication, and checks internal solver/oracle consistency. DISPUTED
// reference claims are findings, not failures; returns 1 only on internal
// inconsistency, else 0.
int cmd_verify(const VerifyOptions& opts, std::ostream& os);

// Prints the crystal-class registry (parameters, aliases, variants). Returns 0.
int cmd_classes(bool json, std::ostream& os);

}  // namespace shgeff::cli
