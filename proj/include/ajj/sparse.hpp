#pragma once

#include "ajj/basis.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ajj {

using cplx = std::complex<double>;

/// Complex sparse matrix in compressed-row layout, tied to a FockBasis.
///
/// Rows are assembled independently, so construction parallelises over row
/// ranges; once built the operator is immutable and shareable. apply() is the
/// OpenMP kernel, apply_serial() the plain loop kept as its reference.
class SparseOperator {
public:
    SparseOperator() = default;
    SparseOperator(std::shared_ptr<const FockBasis> basis,
                   std::vector<std::size_t> row_ptr,
                   std::vector<std::int32_t> col,
                   std::vector<cplx> val,
                   bool hermitian);

    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    std::size_t dim() const { return dim_; }
    std::size_t nonzeros() const { return col_.size(); }
    bool hermitian() const { return hermitian_; }

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const std::int32_t> col() const { return col_; }
    std::span<const cplx> val() const { return val_; }

    /// y = A x, rows distributed over OpenMP threads.
    void apply(std::span<const cplx> x, std::span<cplx> y) const;
    /// Serial reference for apply(); identical arithmetic per row.
    void apply_serial(std::span<const cplx> x, std::span<cplx> y) const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

    /// max_{r,c} |A[r][c] - conj(A[c][r])|, including one-sided entries.
    double adjoint_mismatch() const;

    /// Conjugate transpose.
    SparseOperator adjoint() const;

    Eigen::MatrixXcd dense() const;

    /// Entry lookup (zero when absent). O(log row length).
    cplx coeff(std::size_t row, std::size_t col) const;

private:
    std::shared_ptr<const FockBasis> basis_;
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::int32_t> col_;
    std::vector<cplx> val_;
    bool hermitian_ = false;
};

/// Builder that accumulates entries row by row; each row's entries are sorted
/// and duplicate columns merged at finish(). Not thread-safe; builders are
/// used per worker on disjoint row ranges.
class RowAccumulator {
public:
    explicit RowAccumulator(std::size_t expected = 8) { entries_.reserve(expected); }
    void add(std::size_t col, cplx v) { entries_.emplace_back(col, v); }
    void clear() { entries_.clear(); }
    /// Sorted (col, value) pairs with duplicate columns merged.
    const std::vector<std::pair<std::size_t, cplx>>& finish();

private:
    std::vector<std::pair<std::size_t, cplx>> entries_;
};

} // namespace ajj
