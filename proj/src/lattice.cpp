#include "ajj/lattice.hpp"

#include "ajj/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ajj {

void LatticeSpec::validate() const {
    if (sites < 1) throw config_error("lattice: sites must be >= 1");
    if (particles < 0) throw config_error("lattice: particles must be >= 0");
    if (static_cast<int>(hopping.size()) != bond_count())
        throw config_error("lattice: expected " + std::to_string(bond_count()) +
                           " hopping entries, got " + std::to_string(hopping.size()));
    if (static_cast<int>(theta.size()) != sites)
        throw config_error("lattice: expected " + std::to_string(sites) +
                           " theta entries, got " + std::to_string(theta.size()));
    if (static_cast<int>(interaction.size()) != sites)
        throw config_error("lattice: expected " + std::to_string(sites) +
                           " interaction entries, got " +
                           std::to_string(interaction.size()));
    for (double t : theta)
        if (!(t >= 0.0 && t <= std::numbers::pi))
            throw config_error("lattice: theta must lie in [0, pi]");
    for (double u : interaction)
        if (!(u >= 0.0) || !std::isfinite(u))
            throw config_error("lattice: interaction must be finite and >= 0");
    for (double j : hopping)
        if (!std::isfinite(j))
            throw config_error("lattice: hopping must be finite");
}

LatticeSpec LatticeSpec::uniform(int sites, int particles, double hopping,
                                 double theta, double interaction,
                                 Boundary boundary) {
    LatticeSpec s;
    s.sites = sites;
    s.particles = particles;
    s.boundary = boundary;
    s.hopping.assign(static_cast<std::size_t>(s.bond_count() > 0 ? s.bond_count() : 0),
                     hopping);
    s.theta.assign(static_cast<std::size_t>(sites), theta);
    s.interaction.assign(static_cast<std::size_t>(sites), interaction);
    s.validate();
    return s;
}

int RegionLayout::region_start(int r) const {
    int start = 0;
    for (int i = 0; i < r; ++i) start += sizes[i];
    return start;
}

LatticeSpec RegionLayout::expand(int particles, double hopping,
                                 Boundary boundary) const {
    for (int s : sizes)
        if (s < 0) throw config_error("region layout: sizes must be >= 0");
    if (total_sites() < 1)
        throw config_error("region layout: total site count must be >= 1");

    LatticeSpec spec;
    spec.sites = total_sites();
    spec.particles = particles;
    spec.boundary = boundary;
    spec.hopping.assign(static_cast<std::size_t>(spec.bond_count()), hopping);
    spec.theta.reserve(spec.sites);
    spec.interaction.reserve(spec.sites);
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < sizes[r]; ++i) {
            spec.theta.push_back(theta[r]);
            spec.interaction.push_back(interaction[r]);
        }
    spec.validate();
    return spec;
}

} // namespace ajj
