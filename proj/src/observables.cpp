#include "ajj/observables.hpp"

#include "ajj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ajj {

namespace {

/// C[i][j] for one (i, j). The two-site hop b+_i b_j maps |s> to
/// |s - e_j + e_i> with weight sqrt(s_j) sqrt(s_i + 1); contracting with the
/// bra amplitudes gives the matrix element without materializing an operator.
cplx correlation_element(const FockBasis& basis, const Eigen::VectorXcd& amp,
                         int i, int j) {
    const std::size_t dim = basis.size();
    if (i == j) {
        double acc = 0.0;
        for (std::size_t s = 0; s < dim; ++s)
            acc += std::norm(amp[static_cast<Eigen::Index>(s)]) * basis.state(s)[i];
        return {acc, 0.0};
    }
    const int cap =
        basis.kind() == FockBasis::Kind::Truncated ? basis.max_per_site() : -1;
    cplx acc{0.0, 0.0};
    std::vector<int> t(static_cast<std::size_t>(basis.sites()));
    for (std::size_t s = 0; s < dim; ++s) {
        const auto occ = basis.state(s);
        if (occ[j] < 1) continue;
        if (cap >= 0 && occ[i] + 1 > cap) continue;
        std::copy(occ.begin(), occ.end(), t.begin());
        t[j] = occ[j] - 1;
        t[i] = occ[i] + 1;
        if (auto target = basis.find(t)) {
            const double w =
                std::sqrt(double(occ[j])) * std::sqrt(double(occ[i] + 1));
            acc += std::conj(amp[static_cast<Eigen::Index>(*target)]) * w *
                   amp[static_cast<Eigen::Index>(s)];
        }
    }
    return acc;
}

} // namespace

Eigen::VectorXd density(const QuantumState& state) {
    const FockBasis& basis = *state.basis;
    const int L = basis.sites();
    Eigen::VectorXd profile(L);
    // parallel over sites: each entry is an independent serial sum, so the
    // result does not depend on the thread count
#pragma omp parallel for schedule(static)
    for (int i = 0; i < L; ++i) {
        double acc = 0.0;
        for (std::size_t s = 0; s < basis.size(); ++s)
            acc += std::norm(state.amplitudes[static_cast<Eigen::Index>(s)]) *
                   basis.state(s)[i];
        profile[i] = acc;
    }
    return profile;
}

Eigen::MatrixXcd correlations(const QuantumState& state) {
    const FockBasis& basis = *state.basis;
    const int L = basis.sites();
    Eigen::MatrixXcd C(L, L);
    // upper triangle plus diagonal: L(L+1)/2 independent elements
    const int work = L * (L + 1) / 2;
#pragma omp parallel for schedule(dynamic)
    for (int w = 0; w < work; ++w) {
        // unrank w into (i, j) with i <= j
        int i = 0, remaining = w;
        while (remaining >= L - i) {
            remaining -= L - i;
            ++i;
        }
        const int j = i + remaining;
        const cplx c = correlation_element(basis, state.amplitudes, i, j);
        C(i, j) = c;
        if (i != j) C(j, i) = std::conj(c);
    }
    return C;
}

double imbalance(const Eigen::VectorXd& profile, int split, int particles) {
    if (split < 1 || split >= static_cast<int>(profile.size()))
        throw config_error("imbalance: split must lie in [1, sites-1]");
    if (particles < 1) throw config_error("imbalance: need at least one particle");
    const double left = profile.head(split).sum();
    const double right = profile.tail(profile.size() - split).sum();
    return (left - right) / particles;
}

double imbalance(const QuantumState& state, int split) {
    return imbalance(density(state), split, state.basis->particles());
}

double ObservableTimeSeries::max_abs_imbalance() const {
    double m = 0.0;
    for (double z : imbalance) m = std::max(m, std::abs(z));
    return m;
}

double ObservableTimeSeries::max_norm_error() const {
    double m = 0.0;
    for (double e : norm_error) m = std::max(m, e);
    return m;
}

double ObservableTimeSeries::max_energy_drift() const {
    if (energy.empty()) return 0.0;
    double m = 0.0;
    for (double e : energy) m = std::max(m, std::abs(e - energy.front()));
    return m;
}

double ObservableTimeSeries::max_particle_drift(int particles) const {
    double m = 0.0;
    for (double p : particle_sum) m = std::max(m, std::abs(p - particles));
    return m;
}

namespace reference {

Eigen::MatrixXcd correlations_serial(const QuantumState& state) {
    const FockBasis& basis = *state.basis;
    const int L = basis.sites();
    Eigen::MatrixXcd C(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            C(i, j) = correlation_element(basis, state.amplitudes, i, j);
    return C;
}

} // namespace reference

} // namespace ajj
