#pragma once

#include "ajj/basis.hpp"
#include "ajj/lattice.hpp"

#include <Eigen/Dense>

#include <memory>

namespace ajj {
namespace reference {

/// Serial dense Hamiltonian builder kept as the independent check on the
/// parallel CSR assembly. Column-oriented: applies every term of the model
/// to each basis state in turn, the textbook way, sharing no code with the
/// row-wise production builder.
Eigen::MatrixXcd build_hamiltonian_dense(const LatticeSpec& spec,
                                         const FockBasis& basis);

/// Plain Bose-Hubbard chain (no statistical phase machinery at all), for the
/// check that the deformed model at theta = 0 reduces to it.
Eigen::MatrixXd build_bose_hubbard_dense(int sites, int particles, double hopping,
                                         double interaction, const FockBasis& basis,
                                         Boundary boundary = Boundary::Open);

} // namespace reference
} // namespace ajj
