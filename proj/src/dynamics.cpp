#include "ajj/dynamics.hpp"

#include "ajj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace ajj {

namespace {

constexpr cplx minus_i{0.0, -1.0};

} // namespace

void EvolutionConfig::validate() const {
    if (!(dt > 0.0)) throw config_error("evolution: dt must be positive");
    if (!(t_final >= dt)) throw config_error("evolution: t_final must be >= dt");
    if (krylov_dim < 4) throw config_error("evolution: krylov_dim must be >= 4");
    if (!(tol > 0.0)) throw config_error("evolution: tol must be positive");
}

std::vector<int> resolve_site_set(int sites, const std::optional<RegionLayout>& layout,
                                  ImprintMode mode, std::optional<int> split) {
    if (sites < 2) throw config_error("imprint: need at least two sites");

    if (mode == ImprintMode::Asymmetric) {
        if (!split)
            throw config_error("imprint: asymmetric mode needs an explicit split");
        if (*split < 1 || *split >= sites)
            throw config_error("imprint: split must lie in [1, sites-1]");
        std::vector<int> set(static_cast<std::size_t>(*split));
        for (int i = 0; i < *split; ++i) set[static_cast<std::size_t>(i)] = i;
        return set;
    }

    if (split)
        throw config_error("imprint: symmetric mode derives the site set from the "
                           "region layout; drop the split");
    if (sites % 2 != 0)
        throw config_error("imprint: a chain with an odd number of sites admits "
                           "only the asymmetric imprint");
    if (sites == 2) return {0};
    if (!layout)
        throw config_error("imprint: symmetric mode needs a region layout");
    if (layout->total_sites() != sites)
        throw config_error("imprint: region layout covers " +
                           std::to_string(layout->total_sites()) + " sites, lattice has " +
                           std::to_string(sites));
    const int count = layout->sizes[0] + layout->sizes[1] / 2;
    if (count < 1 || count >= sites)
        throw config_error("imprint: symmetric site set would be empty or cover "
                           "the whole chain");
    std::vector<int> set(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) set[static_cast<std::size_t>(i)] = i;
    return set;
}

DensePropagator::DensePropagator(const SparseOperator& H, const QuantumState& psi0)
    : basis_(H.basis()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.dense());
    if (solver.info() != Eigen::Success)
        throw numeric_error("DensePropagator: diagonalization failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    coeffs_ = eigenvectors_.adjoint() * psi0.amplitudes;
}

QuantumState DensePropagator::at(double t) const {
    Eigen::VectorXcd rotated(coeffs_.size());
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
        rotated[i] = std::polar(1.0, -eigenvalues_[i] * t) * coeffs_[i];
    return {basis_, eigenvectors_ * rotated};
}

namespace {

/// Single Krylov step of size tau built from a fresh Lanczos space around
/// psi. Returns the advanced vector and an a-posteriori local error
/// estimate (the weight leaking past the subspace).
std::pair<Eigen::VectorXcd, double> krylov_step(const SparseOperator& H,
                                                const Eigen::VectorXcd& psi,
                                                double tau, int m_request) {
    const Eigen::Index dim = psi.size();
    const int m_max = static_cast<int>(
        std::min<Eigen::Index>(m_request, dim));
    const double nrm = psi.norm();

    Eigen::MatrixXcd V(dim, m_max);
    V.col(0) = psi / nrm;
    Eigen::VectorXd alpha(m_max), beta(m_max);
    int m = 0;
    double leak = 0.0;
    bool closed = false;

    for (; m < m_max; ++m) {
        Eigen::VectorXcd w = H.apply(V.col(m));
        if (m > 0) w -= beta[m - 1] * V.col(m - 1);
        alpha[m] = std::real(V.col(m).dot(w));
        w -= alpha[m] * V.col(m);
        for (int pass = 0; pass < 2; ++pass)
            w -= V.leftCols(m + 1) * (V.leftCols(m + 1).adjoint() * w);
        const double b = w.norm();
        if (b < 1e-13) {
            closed = true;
            ++m;
            break;
        }
        beta[m] = b;
        if (m + 1 < m_max) V.col(m + 1) = w / b;
    }

    // exp(-i T tau) e1 via the small symmetric tridiagonal
    Eigen::VectorXd d(m), e(std::max(m - 1, 0));
    for (int i = 0; i < m; ++i) d[i] = alpha[i];
    for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(d, e);
    if (tri.info() != Eigen::Success)
        throw numeric_error("krylov_step: tridiagonal eigensolve failed");
    Eigen::VectorXcd u(m);
    for (int i = 0; i < m; ++i) {
        cplx acc{0.0, 0.0};
        for (int k = 0; k < m; ++k)
            acc += tri.eigenvectors()(i, k) *
                   std::polar(1.0, -tri.eigenvalues()[k] * tau) *
                   tri.eigenvectors()(0, k);
        u[i] = acc;
    }
    if (!closed && m == m_max)
        leak = std::abs(beta[m - 1] * u[m - 1]);

    return {nrm * (V.leftCols(m) * u), leak};
}

} // namespace

QuantumState krylov_propagate(const SparseOperator& H, const QuantumState& psi,
                              double dt_request, int krylov_dim, double tol) {
    const double direction = dt_request >= 0.0 ? 1.0 : -1.0;
    double remaining = std::abs(dt_request);
    Eigen::VectorXcd current = psi.amplitudes;
    double tau = remaining;
    const double tau_min = remaining * 1e-12;

    while (remaining > 0.0) {
        tau = std::min(tau, remaining);
        auto [advanced, leak] = krylov_step(H, current, direction * tau, krylov_dim);
        if (leak > tol && tau > tau_min) {
            tau *= 0.5;
            continue;
        }
        if (leak > tol)
            throw numeric_error(
                "krylov_propagate: local error " + std::to_string(leak) +
                " above tolerance at the minimum substep " + std::to_string(tau));
        current = std::move(advanced);
        remaining -= tau;
        if (leak < 0.01 * tol) tau *= 2.0;
    }
    return {psi.basis, std::move(current)};
}

ObservableTimeSeries evolve(const SparseOperator& H, const QuantumState& psi0,
                            const EvolutionConfig& cfg) {
    cfg.validate();
    if (!H.hermitian()) throw config_error("evolve: Hamiltonian must be hermitian");
    if (H.dim() != static_cast<std::size_t>(psi0.amplitudes.size()))
        throw config_error("evolve: state/operator dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw config_error("evolve: initial state must be normalized");

    const bool dense = cfg.method == PropagationMethod::Dense ||
                       (cfg.method == PropagationMethod::Auto &&
                        H.dim() <= cfg.dense_cutoff);

    const int L = H.basis()->sites();
    const int split = cfg.z_split > 0 ? cfg.z_split : L / 2;
    const int particles = H.basis()->particles();
    const std::size_t samples =
        static_cast<std::size_t>(std::floor(cfg.t_final / cfg.dt + 0.5)) + 1;

    ObservableTimeSeries out;
    out.z_split = split;
    out.times.reserve(samples);

    std::optional<DensePropagator> prop;
    if (dense) prop.emplace(H, psi0);

    QuantumState psi = psi0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double t = static_cast<double>(s) * cfg.dt;
        if (dense) {
            psi = prop->at(t);
        } else if (s > 0) {
            psi = krylov_propagate(H, psi, cfg.dt, cfg.krylov_dim, cfg.tol);
        }
        out.times.push_back(t);
        out.norm_error.push_back(std::abs(psi.norm() - 1.0));
        out.energy.push_back(std::real(psi.expectation(H)));
        Eigen::VectorXd profile = density(psi);
        out.particle_sum.push_back(profile.sum());
        out.imbalance.push_back(::ajj::imbalance(profile, split, particles));
        out.density.push_back(std::move(profile));
        if (cfg.record_correlations) out.correlations.push_back(correlations(psi));
    }
    return out;
}

QuenchResult run_quench(const LatticeSpec& spec, const ImprintSpec& imprint,
                        const EvolutionConfig& cfg,
                        const std::optional<RegionLayout>& layout,
                        const EigensolverOptions& eig) {
    spec.validate();
    cfg.validate();

    auto basis = FockBasis::sector(spec.sites, spec.particles);
    const SparseOperator H = build_hamiltonian(spec, basis);

    // two pairs so a degenerate ground state is detected, not silently used
    const int k = H.dim() >= 2 ? 2 : 1;
    const SpectrumSlice spectrum = lowest_eigenpairs(H, k, eig);

    const std::vector<int> sites =
        resolve_site_set(spec.sites, layout, imprint.mode, imprint.split);
    const SparseOperator imprint_op =
        build_imprint_operator(basis, sites, imprint.phi);

    QuantumState psi{basis, imprint_op.apply(spectrum.eigenstates[0].amplitudes)};
    psi.normalize();

    QuenchResult result;
    result.ground_energy = spectrum.eigenvalues[0];
    result.ground_degenerate = spectrum.ground_degenerate;
    result.imprint_sites = sites;
    result.series = evolve(H, psi, cfg);
    return result;
}

} // namespace ajj
