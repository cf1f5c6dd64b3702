#pragma once

#include "ajj/dynamics.hpp"
#include "ajj/groundstate.hpp"
#include "ajj/lattice.hpp"
#include "ajj/meanfield.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ajj {

enum class Command { Ground, GapScan, Quench, Mft, CommuteTest };

struct MftTrajectoryConfig {
    MeanFieldState start;
    double t_final = 100.0;
    double dt = 1e-3;
};

struct MftPortraitConfig {
    double phi_min = 0.0, phi_max = 0.0;
    int phi_count = 1;
    double z_min = 0.0, z_max = 0.0;
    int z_count = 1;
};

struct MftConfig {
    MeanFieldParams params;
    std::optional<MftTrajectoryConfig> trajectory;
    std::optional<MftPortraitConfig> portrait;
};

struct CommuteTestConfig {
    int sites = 3;
    int max_per_site = 4;
    std::vector<double> theta_values;
};

struct GapScanConfig {
    std::vector<double> theta_values;
    std::vector<double> hopping_values;
};

/// One fully validated run: exactly one command plus whatever blocks that
/// command needs. All numerical work downstream is deterministic, so a config
/// identifies its outputs byte for byte.
struct RunConfig {
    Command command = Command::Ground;
    std::optional<LatticeSpec> lattice;
    std::optional<RegionLayout> layout; // kept for symmetric imprints
    std::optional<ImprintSpec> imprint;
    EvolutionConfig evolution;
    EigensolverOptions eigensolver;
    std::optional<MftConfig> meanfield;
    std::optional<CommuteTestConfig> commute;
    std::optional<GapScanConfig> gaps;
    int ground_pairs = 1;
    std::uint64_t max_states = FockBasis::default_max_states;
    nlohmann::json raw; // original document, echoed into the manifest
};

/// Parse and validate a config document. Every domain invariant is enforced
/// here with a named error; unknown keys are rejected in strict mode (the
/// default).
RunConfig parse_config(const std::filesystem::path& path, bool strict = true);
RunConfig parse_config_json(const nlohmann::json& doc, bool strict = true);

/// Run one command, writing CSV outputs plus manifest.json under out_dir.
/// Throws on failure (config_error / numeric_error / capacity_error).
void execute(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Exception-absorbing wrapper used by the CLI: returns the process exit code
/// (0 ok, 2 config, 3 numerical, 4 capacity) and writes error.json with a
/// machine-readable record on failure.
int execute_cli(const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, bool strict = true);

} // namespace ajj
