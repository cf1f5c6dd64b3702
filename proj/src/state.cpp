#include "ajj/state.hpp"

#include "ajj/errors.hpp"

#include <cmath>

namespace ajj {

void QuantumState::normalize() {
    const double n = amplitudes.norm();
    if (n <= 0.0) throw numeric_error("cannot normalize a zero state");
    amplitudes /= n;
}

void QuantumState::fix_global_phase() {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        const double m = std::abs(amplitudes[i]);
        if (m > best_mag + 1e-15) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag <= 0.0) return;
    const cplx pivot = amplitudes[best];
    amplitudes *= std::conj(pivot) / std::abs(pivot);
}

cplx QuantumState::expectation(const SparseOperator& op) const {
    if (op.dim() != static_cast<std::size_t>(amplitudes.size()))
        throw numeric_error("expectation: operator/state dimension mismatch");
    return amplitudes.dot(op.apply(amplitudes));
}

} // namespace ajj
