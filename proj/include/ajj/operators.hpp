#pragma once

#include "ajj/basis.hpp"
#include "ajj/lattice.hpp"
#include "ajj/sparse.hpp"

#include <memory>
#include <vector>

namespace ajj {

/// Sparse Hamiltonian of the density-dependent-hopping Bose-Hubbard chain:
/// for each bond (j, j+1), -J_b * b+_j b_{j+1} exp(i theta_b n_j) plus its
/// hermitian conjugate, and the diagonal sum_j U_j/2 n_j (n_j - 1). The phase
/// operator acts before the hop, so a hop j+1 -> j out of a state with
/// occupations (n_j, n_{j+1}) carries exp(i theta_b n_j) with the pre-hop
/// n_j. The result is verified against its conjugate transpose and flagged
/// hermitian; a mismatch above 1e-12 signals a builder bug and throws.
///
/// Accepts sector bases (physics runs) and truncated bases (where hops that
/// would exceed the cap are dropped; used for conservation-law tests).
SparseOperator build_hamiltonian(const LatticeSpec& spec,
                                 std::shared_ptr<const FockBasis> basis);

/// Diagonal occupation-number operator for one site.
SparseOperator build_number_operator(std::shared_ptr<const FockBasis> basis, int site);

struct LadderPair {
    SparseOperator creation;
    SparseOperator annihilation;
};

/// Standard bosonic ladder operators on a truncated basis: matrix elements
/// sqrt(n+1) and sqrt(n); creation annihilates a state already at the cap.
LadderPair build_boson_ops(std::shared_ptr<const FockBasis> basis, int site);

/// Deformed ladder operators obtained from the bosonic ones by attaching the
/// diagonal string phase exp(i theta sum_{k<site} n_k), evaluated on the
/// incoming state. Creation is the adjoint of annihilation.
LadderPair build_anyon_ops(std::shared_ptr<const FockBasis> basis, int site,
                           double theta);

/// Sector-preserving two-site coherence operator b+_i b_j (number operator
/// when i == j). Building block of the correlation matrix.
SparseOperator build_hop_operator(std::shared_ptr<const FockBasis> basis, int from,
                                  int to);

/// Diagonal unitary exp(i phi * sum_{i in sites} n_i).
SparseOperator build_imprint_operator(std::shared_ptr<const FockBasis> basis,
                                      const std::vector<int>& sites, double phi);

constexpr double hermiticity_tolerance = 1e-12;

} // namespace ajj
