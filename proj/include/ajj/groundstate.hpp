#pragma once

#include "ajj/lattice.hpp"
#include "ajj/sparse.hpp"
#include "ajj/state.hpp"

#include <vector>

namespace ajj {

struct EigensolverOptions {
    int max_iterations = 5000;       // Lanczos steps before giving up
    double residual_tol = 1e-8;      // ||Hv - Ev|| <= tol * max(1, |E|)
    std::size_t dense_cutoff = 2000; // dense diagonalization at or below
    double degeneracy_tol = 1e-10;
};

/// k lowest eigenpairs, ascending. Every returned pair satisfies the
/// residual bound. `ground_degenerate` is set when at least two pairs were
/// computed and E1 - E0 < degeneracy_tol; callers that need the flag for
/// k = 1 should request two pairs.
struct SpectrumSlice {
    std::vector<double> eigenvalues;
    std::vector<QuantumState> eigenstates;
    bool ground_degenerate = false;
    double max_residual = 0.0;
    int iterations = 0; // 0 for the dense path
};

/// Dense diagonalization for dim <= dense_cutoff, Lanczos with full
/// reorthogonalization above. Throws numeric_error when the residual bound
/// is not met within max_iterations (the message carries the residual
/// reached).
SpectrumSlice lowest_eigenpairs(const SparseOperator& H, int k,
                                const EigensolverOptions& opts = {});

/// E1 - E0.
double excitation_gap(const SparseOperator& H, const EigensolverOptions& opts = {});

struct GapPoint {
    double theta = 0.0;
    double hopping = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
};

/// One gap per (theta, hopping) pair on the template lattice (its per-site
/// theta and per-bond hopping are overwritten by the scanned values). Grid
/// points are independent and run in parallel; rows come back ordered with
/// theta outermost.
std::vector<GapPoint> gap_scan(const LatticeSpec& base,
                               const std::vector<double>& theta_values,
                               const std::vector<double>& hopping_values,
                               const EigensolverOptions& opts = {});

} // namespace ajj
