#include "ajj/meanfield.hpp"

#include "ajj/errors.hpp"

#include <cmath>
#include <string>

namespace ajj {

namespace {

constexpr double z_singularity_margin = 1e-12;

void check_state(const MeanFieldState& s) {
    if (std::abs(s.z) >= 1.0 - z_singularity_margin)
        throw numeric_error("mean-field flow singular at |z| = 1 (z = " +
                            std::to_string(s.z) + ")");
}

void check_params(const MeanFieldParams& p) {
    if (p.hopping < 0.0) throw config_error("mean-field: hopping must be >= 0");
    if (p.particles < 1) throw config_error("mean-field: particles must be >= 1");
}

} // namespace

MeanFieldRates mft_rhs(const MeanFieldState& s, const MeanFieldParams& p) {
    check_params(p);
    check_state(s);
    const double root = std::sqrt(1.0 - s.z * s.z);
    return {p.hopping * s.z / root * std::cos(s.phi) +
                p.particles * p.interaction * s.z / 4.0,
            -p.hopping * root * std::sin(s.phi)};
}

double mft_energy(const MeanFieldState& s, const MeanFieldParams& p) {
    return -p.hopping * std::sqrt(1.0 - s.z * s.z) * std::cos(s.phi) +
           p.particles * p.interaction * s.z * s.z / 8.0;
}

std::vector<MeanFieldSample> integrate_mft(const MeanFieldState& s0,
                                           const MeanFieldParams& p,
                                           double t_final, double dt) {
    check_params(p);
    check_state(s0);
    if (!(dt > 0.0) || !(t_final >= dt))
        throw config_error("integrate_mft: need dt > 0 and t_final >= dt");

    const long steps = static_cast<long>(std::floor(t_final / dt + 0.5));
    std::vector<MeanFieldSample> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);

    MeanFieldState s = s0;
    traj.push_back({0.0, s.phi, s.z});
    for (long n = 1; n <= steps; ++n) {
        const MeanFieldRates k1 = mft_rhs(s, p);
        const MeanFieldRates k2 =
            mft_rhs({s.phi + 0.5 * dt * k1.dphi, s.z + 0.5 * dt * k1.dz}, p);
        const MeanFieldRates k3 =
            mft_rhs({s.phi + 0.5 * dt * k2.dphi, s.z + 0.5 * dt * k2.dz}, p);
        const MeanFieldRates k4 = mft_rhs({s.phi + dt * k3.dphi, s.z + dt * k3.dz}, p);
        s.phi += dt / 6.0 * (k1.dphi + 2.0 * (k2.dphi + k3.dphi) + k4.dphi);
        s.z += dt / 6.0 * (k1.dz + 2.0 * (k2.dz + k3.dz) + k4.dz);
        check_state(s);
        traj.push_back({static_cast<double>(n) * dt, s.phi, s.z});
    }
    return traj;
}

std::vector<PortraitSample> phase_portrait(const MeanFieldParams& p,
                                           double phi_min, double phi_max,
                                           int phi_count, double z_min,
                                           double z_max, int z_count) {
    check_params(p);
    if (phi_count < 1 || z_count < 1)
        throw config_error("phase_portrait: grid counts must be >= 1");
    if (!(z_min <= z_max) || z_min <= -1.0 || z_max >= 1.0)
        throw config_error("phase_portrait: z range must lie strictly inside (-1, 1)");
    if (!(phi_min <= phi_max))
        throw config_error("phase_portrait: phi range is reversed");

    std::vector<PortraitSample> grid;
    grid.reserve(static_cast<std::size_t>(phi_count) * z_count);
    for (int i = 0; i < phi_count; ++i) {
        const double phi =
            phi_count == 1 ? phi_min
                           : phi_min + (phi_max - phi_min) * i / (phi_count - 1);
        for (int j = 0; j < z_count; ++j) {
            const double z =
                z_count == 1 ? z_min : z_min + (z_max - z_min) * j / (z_count - 1);
            const MeanFieldRates r = mft_rhs({phi, z}, p);
            grid.push_back({phi, z, r.dphi, r.dz});
        }
    }
    return grid;
}

} // namespace ajj
