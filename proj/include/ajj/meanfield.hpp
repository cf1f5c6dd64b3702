#pragma once

#include <vector>

namespace ajj {

/// Classical two-site mean-field state: relative phase and population
/// imbalance. The flow has a square-root singularity at |z| = 1, so
/// trajectories must stay strictly inside.
struct MeanFieldState {
    double phi = 0.0;
    double z = 0.0;
};

struct MeanFieldParams {
    double hopping = 1.0;     // J
    double interaction = 0.0; // U
    int particles = 2;        // N
    // hbar fixed to one
};

struct MeanFieldRates {
    double dphi = 0.0;
    double dz = 0.0;
};

/// Right-hand sides of the two-site mean-field flow:
///   dphi/dt = J z / sqrt(1 - z^2) * cos(phi) + N U z / 4
///   dz/dt   = -J sqrt(1 - z^2) * sin(phi)
/// Throws numeric_error within 1e-12 of |z| = 1.
MeanFieldRates mft_rhs(const MeanFieldState& s, const MeanFieldParams& p);

/// Conserved energy of the flow, -J sqrt(1-z^2) cos(phi) + N U z^2 / 8.
/// Its canonical equations (dphi/dt = dH/dz, dz/dt = -dH/dphi) reproduce
/// mft_rhs; the consistency is checked by the test suite before the quantity
/// is used as a drift diagnostic.
double mft_energy(const MeanFieldState& s, const MeanFieldParams& p);

struct MeanFieldSample {
    double t = 0.0;
    double phi = 0.0;
    double z = 0.0;
};

/// Classical fixed-step fourth-order Runge-Kutta integration; samples every
/// step. Stops with numeric_error if the trajectory approaches |z| = 1.
std::vector<MeanFieldSample> integrate_mft(const MeanFieldState& s0,
                                           const MeanFieldParams& p,
                                           double t_final, double dt);

struct PortraitSample {
    double phi = 0.0;
    double z = 0.0;
    double dphi = 0.0;
    double dz = 0.0;
};

/// Vector-field samples on a regular (phi, z) grid, row-major with phi
/// outermost, suitable for quiver plotting. z range must stay strictly
/// inside (-1, 1).
std::vector<PortraitSample> phase_portrait(const MeanFieldParams& p,
                                           double phi_min, double phi_max,
                                           int phi_count, double z_min,
                                           double z_max, int z_count);

} // namespace ajj
