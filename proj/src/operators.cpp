#include "ajj/operators.hpp"

#include "ajj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace ajj {

namespace {

using std::polar;
using std::sqrt;

void check_site(const FockBasis& basis, int site, const char* who) {
    if (site < 0 || site >= basis.sites())
        throw config_error(std::string(who) + ": site " + std::to_string(site) +
                           " out of range for " + std::to_string(basis.sites()) +
                           " sites");
}

/// Assemble a CSR operator by invoking `emit(row, accumulator)` for every
/// row. Two passes: count, then fill. Rows are independent, so both passes
/// distribute over OpenMP threads and write disjoint ranges.
template <typename EmitRow>
SparseOperator assemble(std::shared_ptr<const FockBasis> basis, EmitRow&& emit,
                        bool hermitian) {
    const std::size_t dim = basis->size();
    std::vector<std::size_t> row_ptr(dim + 1, 0);

    const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel
    {
        RowAccumulator acc;
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < n; ++r) {
            acc.clear();
            emit(static_cast<std::size_t>(r), acc);
            row_ptr[r + 1] = acc.finish().size();
        }
    }
    for (std::size_t r = 0; r < dim; ++r) row_ptr[r + 1] += row_ptr[r];

    std::vector<std::int32_t> col(row_ptr[dim]);
    std::vector<cplx> val(row_ptr[dim]);
#pragma omp parallel
    {
        RowAccumulator acc;
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < n; ++r) {
            acc.clear();
            emit(static_cast<std::size_t>(r), acc);
            std::size_t k = row_ptr[r];
            for (const auto& [c, v] : acc.finish()) {
                col[k] = static_cast<std::int32_t>(c);
                val[k] = v;
                ++k;
            }
        }
    }
    return SparseOperator(std::move(basis), std::move(row_ptr), std::move(col),
                          std::move(val), hermitian);
}

} // namespace

SparseOperator build_hamiltonian(const LatticeSpec& spec,
                                 std::shared_ptr<const FockBasis> basis) {
    spec.validate();
    if (basis->sites() != spec.sites)
        throw config_error("build_hamiltonian: basis has " +
                           std::to_string(basis->sites()) + " sites, lattice has " +
                           std::to_string(spec.sites));
    if (basis->kind() == FockBasis::Kind::Sector &&
        basis->particles() != spec.particles)
        throw config_error("build_hamiltonian: basis particle number mismatch");

    const FockBasis& fb = *basis;
    const int L = spec.sites;
    const int nb = spec.bond_count();
    const int cap =
        fb.kind() == FockBasis::Kind::Truncated ? fb.max_per_site() : -1;

    auto emit = [&](std::size_t r, RowAccumulator& acc) {
        const auto occ = fb.state(r);
        double diag = 0.0;
        for (int j = 0; j < L; ++j)
            diag += 0.5 * spec.interaction[j] * occ[j] * (occ[j] - 1);
        acc.add(r, cplx{diag, 0.0}); // diagonal entry kept even when zero

        std::vector<int> t(occ.begin(), occ.end());
        for (int b = 0; b < nb; ++b) {
            const int j = b;
            const int jp = (b + 1) % L;
            const double th = spec.bond_phase_site == BondPhaseSite::Left
                                  ? spec.theta[j]
                                  : spec.theta[jp];
            const double J = spec.hopping[b];
            if (J == 0.0) continue;

            // <r| T |s> with T = -J b+_j b_{j+1} e^{i th n_j}: the column
            // state s has one particle less on j, one more on j+1.
            if (occ[j] >= 1 && (cap < 0 || occ[jp] + 1 <= cap)) {
                t[j] = occ[j] - 1;
                t[jp] = occ[jp] + 1;
                if (auto s = fb.find(t)) {
                    const double amp = -J * sqrt(double(occ[jp] + 1)) * sqrt(double(occ[j]));
                    acc.add(*s, amp * polar(1.0, th * (occ[j] - 1)));
                }
                t[j] = occ[j];
                t[jp] = occ[jp];
            }
            // <r| T+ |s>: column state s has one particle more on j, one
            // less on j+1.
            if (occ[jp] >= 1 && (cap < 0 || occ[j] + 1 <= cap)) {
                t[j] = occ[j] + 1;
                t[jp] = occ[jp] - 1;
                if (auto s = fb.find(t)) {
                    const double amp = -J * sqrt(double(occ[j] + 1)) * sqrt(double(occ[jp]));
                    acc.add(*s, amp * polar(1.0, -th * occ[j]));
                }
                t[j] = occ[j];
                t[jp] = occ[jp];
            }
        }
    };

    SparseOperator H = assemble(basis, emit, true);
    const double mismatch = H.adjoint_mismatch();
    if (mismatch > hermiticity_tolerance)
        throw numeric_error("build_hamiltonian: hermiticity violated by " +
                            std::to_string(mismatch) +
                            " (builder bug, tolerance 1e-12)");
    return H;
}

SparseOperator build_number_operator(std::shared_ptr<const FockBasis> basis,
                                     int site) {
    check_site(*basis, site, "build_number_operator");
    const FockBasis& fb = *basis;
    auto emit = [&fb, site](std::size_t r, RowAccumulator& acc) {
        acc.add(r, cplx{double(fb.state(r)[site]), 0.0});
    };
    return assemble(std::move(basis), emit, true);
}

LadderPair build_boson_ops(std::shared_ptr<const FockBasis> basis, int site) {
    return build_anyon_ops(std::move(basis), site, 0.0);
}

LadderPair build_anyon_ops(std::shared_ptr<const FockBasis> basis, int site,
                           double theta) {
    check_site(*basis, site, "build_anyon_ops");
    if (basis->kind() != FockBasis::Kind::Truncated)
        throw config_error("build_anyon_ops: ladder operators change the particle "
                           "number and need a truncated basis");
    const FockBasis& fb = *basis;

    // Annihilation row r: a|s> = e^{i theta sum_{k<site} s_k} sqrt(s_site)
    // |s - e_site>, so the only column is s = r + e_site. The string sum over
    // k < site is unchanged by the added particle.
    auto emit = [&fb, site, theta](std::size_t r, RowAccumulator& acc) {
        const auto occ = fb.state(r);
        if (occ[site] + 1 > fb.max_per_site()) return;
        std::vector<int> t(occ.begin(), occ.end());
        t[site] = occ[site] + 1;
        if (auto s = fb.find(t)) {
            long string_sum = 0;
            for (int k = 0; k < site; ++k) string_sum += occ[k];
            acc.add(*s, polar(sqrt(double(occ[site] + 1)), theta * double(string_sum)));
        }
    };
    SparseOperator annihilation = assemble(basis, emit, false);
    SparseOperator creation = annihilation.adjoint();
    return {std::move(creation), std::move(annihilation)};
}

SparseOperator build_hop_operator(std::shared_ptr<const FockBasis> basis, int from,
                                  int to) {
    check_site(*basis, from, "build_hop_operator");
    check_site(*basis, to, "build_hop_operator");
    const FockBasis& fb = *basis;
    const int cap = fb.kind() == FockBasis::Kind::Truncated ? fb.max_per_site() : -1;

    auto emit = [&fb, from, to, cap](std::size_t r, RowAccumulator& acc) {
        const auto occ = fb.state(r);
        if (from == to) {
            acc.add(r, cplx{double(occ[from]), 0.0});
            return;
        }
        // <r| b+_to b_from |s> nonzero for s = r - e_to + e_from.
        if (occ[to] < 1) return;
        if (cap >= 0 && occ[from] + 1 > cap) return;
        std::vector<int> t(occ.begin(), occ.end());
        t[to] = occ[to] - 1;
        t[from] = occ[from] + 1;
        if (auto s = fb.find(t))
            acc.add(*s, cplx{sqrt(double(occ[from] + 1)) * sqrt(double(occ[to])), 0.0});
    };
    return assemble(std::move(basis), emit, from == to);
}

SparseOperator build_imprint_operator(std::shared_ptr<const FockBasis> basis,
                                      const std::vector<int>& sites, double phi) {
    if (sites.empty())
        throw config_error("imprint: empty site set produces no relative phase");
    if (static_cast<int>(sites.size()) >= basis->sites())
        throw config_error("imprint: site set covering every site produces only a "
                           "global phase");
    for (int s : sites) check_site(*basis, s, "build_imprint_operator");
    if (!std::isfinite(phi)) throw config_error("imprint: phi must be finite");

    const FockBasis& fb = *basis;
    auto emit = [&fb, &sites, phi](std::size_t r, RowAccumulator& acc) {
        const auto occ = fb.state(r);
        long total = 0;
        for (int s : sites) total += occ[s];
        acc.add(r, polar(1.0, phi * double(total)));
    };
    return assemble(std::move(basis), emit, false);
}

} // namespace ajj
