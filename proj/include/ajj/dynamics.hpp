#pragma once

#include "ajj/groundstate.hpp"
#include "ajj/lattice.hpp"
#include "ajj/observables.hpp"
#include "ajj/operators.hpp"
#include "ajj/state.hpp"

#include <optional>
#include <vector>

namespace ajj {

enum class ImprintMode { Symmetric, Asymmetric };

/// Phase-imprint specification: which sites receive the phase phi.
struct ImprintSpec {
    ImprintMode mode = ImprintMode::Symmetric;
    double phi = 0.0;
    /// Asymmetric mode: sites [0, split) are imprinted. Ignored (and must be
    /// absent) in symmetric mode.
    std::optional<int> split;
};

/// Sites receiving the phase.
///
/// Symmetric mode imprints region 1 plus the left half of region 2, i.e.
/// sites [0, L1 + floor(L2/2)); it requires a region layout (except for the
/// two-site chain, where {0} is the only symmetric choice) and an even site
/// count - an odd chain admits only asymmetric imprints and is rejected
/// rather than approximated. Asymmetric mode returns [0, split).
std::vector<int> resolve_site_set(int sites, const std::optional<RegionLayout>& layout,
                                  ImprintMode mode, std::optional<int> split);

enum class PropagationMethod { Auto, Dense, Krylov };

struct EvolutionConfig {
    double t_final = 100.0; // units of 1/J
    double dt = 0.05;       // output sampling step
    PropagationMethod method = PropagationMethod::Auto;
    int krylov_dim = 30;
    double tol = 1e-9;                // per-step local error bound (Krylov)
    std::size_t dense_cutoff = 2000;  // Auto: dense at or below
    bool record_correlations = true;
    int z_split = 0; // 0: use sites/2

    void validate() const;
};

/// Exact propagator from one full diagonalization; usable at any real time,
/// which makes it both the sampling engine for small systems and the oracle
/// for the Krylov path.
class DensePropagator {
public:
    DensePropagator(const SparseOperator& H, const QuantumState& psi0);
    QuantumState at(double t) const;

private:
    std::shared_ptr<const FockBasis> basis_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
    Eigen::VectorXcd coeffs_; // eigenbasis coefficients of psi0
};

/// One adaptive Krylov (Lanczos) step: advances psi by tau = min(dt_request,
/// whatever meets the local error bound), possibly via internal substeps.
/// Returns the state at t + dt_request. Throws numeric_error when the bound
/// cannot be met at the minimum step size.
QuantumState krylov_propagate(const SparseOperator& H, const QuantumState& psi,
                              double dt_request, int krylov_dim, double tol);

/// psi(t) = exp(-iHt) psi0 sampled at multiples of dt, with observables
/// recorded per sample. Dense matrix exponential for dim <= dense_cutoff,
/// short-step Krylov propagation above (method Auto).
ObservableTimeSeries evolve(const SparseOperator& H, const QuantumState& psi0,
                            const EvolutionConfig& cfg);

struct QuenchResult {
    ObservableTimeSeries series;
    double ground_energy = 0.0;
    bool ground_degenerate = false;
    std::vector<int> imprint_sites;
};

/// End-to-end protocol: ground state of the lattice, phase imprint, time
/// evolution. Flags a degenerate ground state.
QuenchResult run_quench(const LatticeSpec& spec, const ImprintSpec& imprint,
                        const EvolutionConfig& cfg,
                        const std::optional<RegionLayout>& layout = std::nullopt,
                        const EigensolverOptions& eig = {});

} // namespace ajj
