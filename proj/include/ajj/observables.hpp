#pragma once

#include "ajj/state.hpp"

#include <Eigen/Dense>

#include <vector>

namespace ajj {

/// <n_i> per site. Entries are non-negative and sum to the particle number.
Eigen::VectorXd density(const QuantumState& state);

/// Single-particle correlation matrix C[i][j] = <b+_i b_j>, computed element
/// by element by applying the sector-preserving two-site hop to the state.
/// Hermitian positive semidefinite with trace N; elements are independent and
/// computed in parallel.
Eigen::MatrixXcd correlations(const QuantumState& state);

/// Population imbalance z = (N_left - N_right) / N with sites [0, split)
/// forming the left part. Lies in [-1, 1].
double imbalance(const QuantumState& state, int split);
double imbalance(const Eigen::VectorXd& density_profile, int split, int particles);

/// Per-sample observables of one time evolution, plus the conservation
/// diagnostics the propagator is expected to maintain.
struct ObservableTimeSeries {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> density;
    std::vector<Eigen::MatrixXcd> correlations; // empty when not recorded
    std::vector<double> imbalance;
    std::vector<double> norm_error;   // | ||psi|| - 1 |
    std::vector<double> energy;       // <psi|H|psi>
    std::vector<double> particle_sum; // sum of the density profile
    int z_split = 0;

    double max_abs_imbalance() const;
    double max_norm_error() const;
    double max_energy_drift() const; // against the first sample
    double max_particle_drift(int particles) const;
};

namespace reference {

/// Serial element-by-element correlation matrix kept as the check against
/// the parallel kernel.
Eigen::MatrixXcd correlations_serial(const QuantumState& state);

} // namespace reference

} // namespace ajj
