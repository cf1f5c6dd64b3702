#include "ajj/sparse.hpp"

#include "ajj/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ajj {

SparseOperator::SparseOperator(std::shared_ptr<const FockBasis> basis,
                               std::vector<std::size_t> row_ptr,
                               std::vector<std::int32_t> col,
                               std::vector<cplx> val,
                               bool hermitian)
    : basis_(std::move(basis)),
      dim_(basis_ ? basis_->size() : 0),
      row_ptr_(std::move(row_ptr)),
      col_(std::move(col)),
      val_(std::move(val)),
      hermitian_(hermitian) {
    if (row_ptr_.size() != dim_ + 1 || col_.size() != val_.size() ||
        row_ptr_.back() != col_.size())
        throw numeric_error("SparseOperator: inconsistent CSR arrays");
}

void SparseOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw numeric_error("SparseOperator::apply: dimension mismatch");
    const std::int64_t n = static_cast<std::int64_t>(dim_);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            acc += val_[k] * x[col_[k]];
        y[r] = acc;
    }
}

void SparseOperator::apply_serial(std::span<const cplx> x, std::span<cplx> y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw numeric_error("SparseOperator::apply_serial: dimension mismatch");
    for (std::size_t r = 0; r < dim_; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            acc += val_[k] * x[col_[k]];
        y[r] = acc;
    }
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y(x.size());
    apply(std::span<const cplx>(x.data(), static_cast<std::size_t>(x.size())),
          std::span<cplx>(y.data(), static_cast<std::size_t>(y.size())));
    return y;
}

cplx SparseOperator::coeff(std::size_t row, std::size_t column) const {
    const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(column));
    if (it == last || *it != static_cast<std::int32_t>(column)) return {0.0, 0.0};
    return val_[static_cast<std::size_t>(it - col_.begin())];
}

double SparseOperator::adjoint_mismatch() const {
    const std::int64_t n = static_cast<std::int64_t>(dim_);
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::int64_t r = 0; r < n; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const cplx mirror = coeff(col_[k], static_cast<std::size_t>(r));
            worst = std::max(worst, std::abs(val_[k] - std::conj(mirror)));
        }
    }
    return worst;
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<std::size_t> rp(dim_ + 1, 0);
    for (std::int32_t c : col_) ++rp[static_cast<std::size_t>(c) + 1];
    for (std::size_t r = 0; r < dim_; ++r) rp[r + 1] += rp[r];
    std::vector<std::int32_t> col(col_.size());
    std::vector<cplx> val(val_.size());
    std::vector<std::size_t> fill(rp.begin(), rp.end() - 1);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const std::size_t pos = fill[static_cast<std::size_t>(col_[k])]++;
            col[pos] = static_cast<std::int32_t>(r);
            val[pos] = std::conj(val_[k]);
        }
    }
    return SparseOperator(basis_, std::move(rp), std::move(col), std::move(val),
                          hermitian_);
}

Eigen::MatrixXcd SparseOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                                static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            m(static_cast<Eigen::Index>(r), col_[k]) += val_[k];
    return m;
}

const std::vector<std::pair<std::size_t, cplx>>& RowAccumulator::finish() {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries_.size();) {
        std::size_t j = i + 1;
        cplx sum = entries_[i].second;
        while (j < entries_.size() && entries_[j].first == entries_[i].first)
            sum += entries_[j++].second;
        entries_[out++] = {entries_[i].first, sum};
        i = j;
    }
    entries_.resize(out);
    return entries_;
}

} // namespace ajj
