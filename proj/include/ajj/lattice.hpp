#pragma once

#include <array>
#include <optional>
#include <vector>

namespace ajj {

enum class Boundary { Open, Periodic };

/// Which site's statistical phase a bond (j, j+1) picks up. The model ties
/// the phase operator to the left site; the right-site variant is kept for
/// sensitivity checks across region boundaries, where the convention is a
/// genuine choice.
enum class BondPhaseSite { Left, Right };

/// Full problem definition: per-site statistical phase and interaction,
/// per-bond hopping, boundary condition, particle number.
struct LatticeSpec {
    int sites = 0;
    int particles = 0;
    std::vector<double> hopping;     // one entry per bond
    std::vector<double> theta;       // per site, in [0, pi]
    std::vector<double> interaction; // per site, >= 0
    Boundary boundary = Boundary::Open;
    BondPhaseSite bond_phase_site = BondPhaseSite::Left;

    int bond_count() const {
        return boundary == Boundary::Open ? sites - 1 : sites;
    }

    /// Throws config_error on any violated invariant.
    void validate() const;

    /// Uniform-parameter convenience constructor.
    static LatticeSpec uniform(int sites, int particles, double hopping,
                               double theta, double interaction,
                               Boundary boundary = Boundary::Open);
};

/// Three-region junction layout (superfluid | barrier | superfluid); expands
/// deterministically into the per-site arrays of a LatticeSpec.
struct RegionLayout {
    std::array<int, 3> sizes{};
    std::array<double, 3> theta{};
    std::array<double, 3> interaction{};

    int total_sites() const { return sizes[0] + sizes[1] + sizes[2]; }

    LatticeSpec expand(int particles, double hopping,
                       Boundary boundary = Boundary::Open) const;

    /// Index of the first site of region r (r in 0..2).
    int region_start(int r) const;
};

} // namespace ajj
