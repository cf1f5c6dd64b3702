#include "ajj/reference.hpp"

#include "ajj/errors.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace ajj {
namespace reference {

Eigen::MatrixXcd build_hamiltonian_dense(const LatticeSpec& spec,
                                         const FockBasis& basis) {
    spec.validate();
    const int L = spec.sites;
    const int nb = spec.bond_count();
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    const int cap =
        basis.kind() == FockBasis::Kind::Truncated ? basis.max_per_site() : -1;

    std::vector<int> t(static_cast<std::size_t>(L));
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto occ = basis.state(static_cast<std::size_t>(s));

        double diag = 0.0;
        for (int j = 0; j < L; ++j)
            diag += 0.5 * spec.interaction[j] * occ[j] * (occ[j] - 1);
        H(s, s) += diag;

        for (int b = 0; b < nb; ++b) {
            const int j = b;
            const int jp = (b + 1) % L;
            const double th = spec.bond_phase_site == BondPhaseSite::Left
                                  ? spec.theta[j]
                                  : spec.theta[jp];

            // -J b+_j b_{j+1} e^{i th n_j} acting on |s>
            if (occ[jp] >= 1 && (cap < 0 || occ[j] + 1 <= cap)) {
                std::copy(occ.begin(), occ.end(), t.begin());
                t[jp] = occ[jp] - 1;
                t[j] = occ[j] + 1;
                if (auto target = basis.find(t)) {
                    const double amp = -spec.hopping[b] *
                                       std::sqrt(double(occ[jp])) *
                                       std::sqrt(double(occ[j] + 1));
                    H(static_cast<Eigen::Index>(*target), s) +=
                        amp * std::polar(1.0, th * occ[j]);
                }
            }
            // hermitian conjugate acting on |s>
            if (occ[j] >= 1 && (cap < 0 || occ[jp] + 1 <= cap)) {
                std::copy(occ.begin(), occ.end(), t.begin());
                t[j] = occ[j] - 1;
                t[jp] = occ[jp] + 1;
                if (auto target = basis.find(t)) {
                    const double amp = -spec.hopping[b] *
                                       std::sqrt(double(occ[j])) *
                                       std::sqrt(double(occ[jp] + 1));
                    H(static_cast<Eigen::Index>(*target), s) +=
                        amp * std::polar(1.0, -th * (occ[j] - 1));
                }
            }
        }
    }
    return H;
}

Eigen::MatrixXd build_bose_hubbard_dense(int sites, int particles, double hopping,
                                         double interaction, const FockBasis& basis,
                                         Boundary boundary) {
    if (basis.sites() != sites || basis.particles() != particles)
        throw config_error("build_bose_hubbard_dense: basis mismatch");
    const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    const int nb = boundary == Boundary::Open ? sites - 1 : sites;

    std::vector<int> t(static_cast<std::size_t>(sites));
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto occ = basis.state(static_cast<std::size_t>(s));
        double diag = 0.0;
        for (int j = 0; j < sites; ++j)
            diag += 0.5 * interaction * occ[j] * (occ[j] - 1);
        H(s, s) += diag;
        for (int b = 0; b < nb; ++b) {
            const int j = b;
            const int jp = (b + 1) % sites;
            for (const auto& [from, to] : {std::pair{jp, j}, std::pair{j, jp}}) {
                if (occ[from] < 1) continue;
                std::copy(occ.begin(), occ.end(), t.begin());
                t[from] = occ[from] - 1;
                t[to] = occ[to] + 1;
                const double amp = -hopping * std::sqrt(double(occ[from])) *
                                   std::sqrt(double(occ[to] + 1));
                H(static_cast<Eigen::Index>(basis.index(t)), s) += amp;
            }
        }
    }
    return H;
}

} // namespace reference
} // namespace ajj
