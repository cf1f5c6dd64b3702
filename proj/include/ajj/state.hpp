#pragma once

#include "ajj/basis.hpp"
#include "ajj/sparse.hpp"

#include <Eigen/Dense>

#include <memory>

namespace ajj {

/// Normalized complex amplitude vector tied to a basis.
struct QuantumState {
    std::shared_ptr<const FockBasis> basis;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }

    void normalize();

    /// Rotate the global phase so the largest-magnitude amplitude is real and
    /// positive (ties broken by lowest index). Makes eigenvectors and the
    /// observables derived from them reproducible across solvers and runs.
    void fix_global_phase();

    cplx expectation(const SparseOperator& op) const;
};

} // namespace ajj
