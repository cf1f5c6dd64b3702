#include "ajj/run.hpp"

#include "ajj/errors.hpp"
#include "ajj/io.hpp"
#include "ajj/observables.hpp"
#include "ajj/operators.hpp"
#include "ajj/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace ajj {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- parsing

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw config_error(context.empty() ? what : context + ": " + what);
}

// Unknown-key rejection is scoped to one parse call; parsing happens on one
// thread per process invocation.
bool g_strict_keys = true;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
    if (!g_strict_keys) return;
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key))
            fail(context, "unknown key \"" + key + "\"");
}

double get_number(const json& obj, const std::string& key, const std::string& ctx) {
    if (!obj.at(key).is_number())
        fail(ctx, "\"" + key + "\" must be a number");
    return obj.at(key).get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& ctx) {
    if (!obj.at(key).is_number_integer())
        fail(ctx, "\"" + key + "\" must be an integer");
    return obj.at(key).get<int>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& ctx) {
    if (!obj.at(key).is_boolean()) fail(ctx, "\"" + key + "\" must be a boolean");
    return obj.at(key).get<bool>();
}

std::vector<double> get_number_list(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty()) fail(ctx, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) fail(ctx, "expected numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

/// Scalar -> uniform vector of `count`; array -> checked length.
std::vector<double> broadcast(const json& v, int count, const std::string& ctx) {
    if (v.is_number()) return std::vector<double>(static_cast<std::size_t>(count),
                                                  v.get<double>());
    auto list = get_number_list(v, ctx);
    if (static_cast<int>(list.size()) != count)
        fail(ctx, "expected " + std::to_string(count) + " entries, got " +
                      std::to_string(list.size()));
    return list;
}

Boundary parse_boundary(const json& v, const std::string& ctx) {
    const std::string s = v.get<std::string>();
    if (s == "open") return Boundary::Open;
    if (s == "periodic") return Boundary::Periodic;
    fail(ctx, "boundary must be \"open\" or \"periodic\"");
}

BondPhaseSite parse_phase_site(const json& v, const std::string& ctx) {
    const std::string s = v.get<std::string>();
    if (s == "left") return BondPhaseSite::Left;
    if (s == "right") return BondPhaseSite::Right;
    fail(ctx, "bond_phase_site must be \"left\" or \"right\"");
}

LatticeSpec parse_lattice_block(const json& obj) {
    const std::string ctx = "lattice";
    reject_unknown_keys(obj,
                        {"sites", "particles", "hopping", "theta", "interaction",
                         "boundary", "bond_phase_site"},
                        ctx);
    LatticeSpec spec;
    spec.sites = get_int(obj, "sites", ctx);
    spec.particles = get_int(obj, "particles", ctx);
    if (spec.sites < 1) fail(ctx, "sites must be >= 1");
    if (obj.contains("boundary")) spec.boundary = parse_boundary(obj["boundary"], ctx);
    if (obj.contains("bond_phase_site"))
        spec.bond_phase_site = parse_phase_site(obj["bond_phase_site"], ctx);
    spec.hopping = broadcast(obj.at("hopping"), spec.bond_count(), ctx + ".hopping");
    spec.theta = obj.contains("theta")
                     ? broadcast(obj["theta"], spec.sites, ctx + ".theta")
                     : std::vector<double>(static_cast<std::size_t>(spec.sites), 0.0);
    spec.interaction =
        obj.contains("interaction")
            ? broadcast(obj["interaction"], spec.sites, ctx + ".interaction")
            : std::vector<double>(static_cast<std::size_t>(spec.sites), 0.0);
    for (double t : spec.theta)
        if (!(t >= 0.0 && t <= std::numbers::pi))
            fail(ctx, "theta must lie in [0, pi]");
    spec.validate();
    return spec;
}

std::pair<LatticeSpec, RegionLayout> parse_regions_block(const json& obj) {
    const std::string ctx = "regions";
    reject_unknown_keys(obj,
                        {"sizes", "theta", "interaction", "particles", "hopping",
                         "boundary", "bond_phase_site"},
                        ctx);
    RegionLayout layout;
    const auto sizes = obj.at("sizes");
    if (!sizes.is_array() || sizes.size() != 3)
        fail(ctx, "sizes must be an array of three site counts");
    for (int r = 0; r < 3; ++r) {
        if (!sizes[r].is_number_integer() || sizes[r].get<int>() < 0)
            fail(ctx, "sizes entries must be non-negative integers");
        layout.sizes[static_cast<std::size_t>(r)] = sizes[r].get<int>();
    }
    const auto theta = get_number_list(obj.at("theta"), ctx + ".theta");
    const auto inter = get_number_list(obj.at("interaction"), ctx + ".interaction");
    if (theta.size() != 3 || inter.size() != 3)
        fail(ctx, "theta and interaction must list one value per region");
    for (int r = 0; r < 3; ++r) {
        layout.theta[static_cast<std::size_t>(r)] = theta[static_cast<std::size_t>(r)];
        layout.interaction[static_cast<std::size_t>(r)] =
            inter[static_cast<std::size_t>(r)];
    }
    const int particles = get_int(obj, "particles", ctx);
    const double hopping = get_number(obj, "hopping", ctx);
    Boundary bc = Boundary::Open;
    if (obj.contains("boundary")) bc = parse_boundary(obj["boundary"], ctx);
    LatticeSpec spec = layout.expand(particles, hopping, bc);
    if (obj.contains("bond_phase_site"))
        spec.bond_phase_site = parse_phase_site(obj["bond_phase_site"], ctx);
    return {std::move(spec), layout};
}

ImprintSpec parse_imprint_block(const json& obj) {
    const std::string ctx = "imprint";
    reject_unknown_keys(obj, {"mode", "phi", "split"}, ctx);
    ImprintSpec imp;
    const std::string mode = obj.at("mode").get<std::string>();
    if (mode == "symmetric") imp.mode = ImprintMode::Symmetric;
    else if (mode == "asymmetric") imp.mode = ImprintMode::Asymmetric;
    else fail(ctx, "mode must be \"symmetric\" or \"asymmetric\"");
    imp.phi = get_number(obj, "phi", ctx);
    if (!std::isfinite(imp.phi)) fail(ctx, "phi must be finite");
    if (obj.contains("split")) imp.split = get_int(obj, "split", ctx);
    return imp;
}

EvolutionConfig parse_evolution_block(const json& obj) {
    const std::string ctx = "evolution";
    reject_unknown_keys(obj,
                        {"t_final", "dt", "method", "krylov_dim", "tol",
                         "record_correlations", "z_split", "dense_cutoff"},
                        ctx);
    EvolutionConfig cfg;
    if (obj.contains("t_final")) cfg.t_final = get_number(obj, "t_final", ctx);
    if (obj.contains("dt")) cfg.dt = get_number(obj, "dt", ctx);
    if (obj.contains("method")) {
        const std::string m = obj["method"].get<std::string>();
        if (m == "auto") cfg.method = PropagationMethod::Auto;
        else if (m == "dense") cfg.method = PropagationMethod::Dense;
        else if (m == "krylov") cfg.method = PropagationMethod::Krylov;
        else fail(ctx, "method must be \"auto\", \"dense\" or \"krylov\"");
    }
    if (obj.contains("krylov_dim")) cfg.krylov_dim = get_int(obj, "krylov_dim", ctx);
    if (obj.contains("tol")) cfg.tol = get_number(obj, "tol", ctx);
    if (obj.contains("record_correlations"))
        cfg.record_correlations = get_bool(obj, "record_correlations", ctx);
    if (obj.contains("z_split")) cfg.z_split = get_int(obj, "z_split", ctx);
    if (obj.contains("dense_cutoff")) {
        const int c = get_int(obj, "dense_cutoff", ctx);
        if (c < 1) fail(ctx, "dense_cutoff must be >= 1");
        cfg.dense_cutoff = static_cast<std::size_t>(c);
    }
    cfg.validate();
    return cfg;
}

EigensolverOptions parse_eigensolver_block(const json& obj) {
    const std::string ctx = "eigensolver";
    reject_unknown_keys(obj, {"max_iterations", "residual_tol", "dense_cutoff"}, ctx);
    EigensolverOptions opts;
    if (obj.contains("max_iterations")) {
        opts.max_iterations = get_int(obj, "max_iterations", ctx);
        if (opts.max_iterations < 1) fail(ctx, "max_iterations must be >= 1");
    }
    if (obj.contains("residual_tol")) {
        opts.residual_tol = get_number(obj, "residual_tol", ctx);
        if (!(opts.residual_tol > 0.0)) fail(ctx, "residual_tol must be positive");
    }
    if (obj.contains("dense_cutoff")) {
        const int c = get_int(obj, "dense_cutoff", ctx);
        if (c < 1) fail(ctx, "dense_cutoff must be >= 1");
        opts.dense_cutoff = static_cast<std::size_t>(c);
    }
    return opts;
}

MftConfig parse_meanfield_block(const json& obj) {
    const std::string ctx = "meanfield";
    reject_unknown_keys(obj,
                        {"hopping", "interaction", "particles", "trajectory",
                         "portrait"},
                        ctx);
    MftConfig cfg;
    cfg.params.hopping = get_number(obj, "hopping", ctx);
    cfg.params.interaction = get_number(obj, "interaction", ctx);
    cfg.params.particles = get_int(obj, "particles", ctx);
    if (cfg.params.hopping < 0.0) fail(ctx, "hopping must be >= 0");
    if (cfg.params.particles < 1) fail(ctx, "particles must be >= 1");
    if (obj.contains("trajectory")) {
        const auto& t = obj["trajectory"];
        reject_unknown_keys(t, {"phi0", "z0", "t_final", "dt"}, ctx + ".trajectory");
        MftTrajectoryConfig traj;
        traj.start.phi = get_number(t, "phi0", ctx);
        traj.start.z = get_number(t, "z0", ctx);
        if (std::abs(traj.start.z) >= 1.0)
            fail(ctx, "trajectory z0 must lie strictly inside (-1, 1)");
        if (t.contains("t_final")) traj.t_final = get_number(t, "t_final", ctx);
        if (t.contains("dt")) traj.dt = get_number(t, "dt", ctx);
        if (!(traj.dt > 0.0) || !(traj.t_final >= traj.dt))
            fail(ctx, "trajectory needs dt > 0 and t_final >= dt");
        cfg.trajectory = traj;
    }
    if (obj.contains("portrait")) {
        const auto& p = obj["portrait"];
        reject_unknown_keys(
            p, {"phi_min", "phi_max", "phi_count", "z_min", "z_max", "z_count"},
            ctx + ".portrait");
        MftPortraitConfig grid;
        grid.phi_min = get_number(p, "phi_min", ctx);
        grid.phi_max = get_number(p, "phi_max", ctx);
        grid.phi_count = get_int(p, "phi_count", ctx);
        grid.z_min = get_number(p, "z_min", ctx);
        grid.z_max = get_number(p, "z_max", ctx);
        grid.z_count = get_int(p, "z_count", ctx);
        if (grid.phi_count < 1 || grid.z_count < 1)
            fail(ctx, "portrait grid counts must be >= 1");
        if (!(grid.z_min <= grid.z_max) || grid.z_min <= -1.0 || grid.z_max >= 1.0)
            fail(ctx, "portrait z range must lie strictly inside (-1, 1)");
        cfg.portrait = grid;
    }
    if (!cfg.trajectory && !cfg.portrait)
        fail(ctx, "need a trajectory block, a portrait block, or both");
    return cfg;
}

CommuteTestConfig parse_commute_block(const json& obj) {
    const std::string ctx = "commute_test";
    reject_unknown_keys(obj, {"sites", "max_per_site", "theta_values"}, ctx);
    CommuteTestConfig cfg;
    cfg.sites = get_int(obj, "sites", ctx);
    cfg.max_per_site = get_int(obj, "max_per_site", ctx);
    if (cfg.sites < 2) fail(ctx, "sites must be >= 2");
    if (cfg.max_per_site < 2) fail(ctx, "max_per_site must be >= 2");
    cfg.theta_values = get_number_list(obj.at("theta_values"), ctx + ".theta_values");
    for (double t : cfg.theta_values)
        if (!(t >= 0.0 && t <= std::numbers::pi))
            fail(ctx, "theta must lie in [0, pi]");
    return cfg;
}

GapScanConfig parse_gap_scan_block(const json& obj) {
    const std::string ctx = "gap_scan";
    reject_unknown_keys(obj, {"theta_values", "hopping_values"}, ctx);
    GapScanConfig cfg;
    cfg.theta_values = get_number_list(obj.at("theta_values"), ctx + ".theta_values");
    cfg.hopping_values =
        get_number_list(obj.at("hopping_values"), ctx + ".hopping_values");
    for (double t : cfg.theta_values)
        if (!(t >= 0.0 && t <= std::numbers::pi))
            fail(ctx, "theta must lie in [0, pi]");
    return cfg;
}

// ------------------------------------------------------------- serializers

json to_json(const LatticeSpec& s) {
    return json{{"sites", s.sites},
                {"particles", s.particles},
                {"hopping", s.hopping},
                {"theta", s.theta},
                {"interaction", s.interaction},
                {"boundary", s.boundary == Boundary::Open ? "open" : "periodic"},
                {"bond_phase_site",
                 s.bond_phase_site == BondPhaseSite::Left ? "left" : "right"}};
}

json to_json(const ImprintSpec& s, const std::vector<int>& sites) {
    json j{{"mode", s.mode == ImprintMode::Symmetric ? "symmetric" : "asymmetric"},
           {"phi", s.phi},
           {"site_set", sites}};
    if (s.split) j["split"] = *s.split;
    return j;
}

json to_json(const EvolutionConfig& c) {
    const char* m = c.method == PropagationMethod::Auto     ? "auto"
                    : c.method == PropagationMethod::Dense  ? "dense"
                                                            : "krylov";
    return json{{"t_final", c.t_final},
                {"dt", c.dt},
                {"method", m},
                {"krylov_dim", c.krylov_dim},
                {"tol", c.tol},
                {"dense_cutoff", c.dense_cutoff},
                {"record_correlations", c.record_correlations},
                {"z_split", c.z_split}};
}

// --------------------------------------------------------------- commands

int current_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct Emitter {
    std::filesystem::path dir;
    std::vector<std::filesystem::path> files;

    std::filesystem::path target(const std::string& name) {
        files.push_back(dir / name);
        return files.back();
    }
};

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << "\n";
}

void write_density_csv(Emitter& em, const std::string& name,
                       const Eigen::VectorXd& profile) {
    io::CsvFile csv(em.target(name), {"site", "value"});
    for (Eigen::Index i = 0; i < profile.size(); ++i)
        csv.row({io::cell(static_cast<int>(i)), io::cell(profile[i])});
    csv.close();
}

void write_correlations_csv(Emitter& em, const std::string& name,
                            const Eigen::MatrixXcd& C) {
    io::CsvFile csv(em.target(name), {"i", "j", "re", "im"});
    for (Eigen::Index i = 0; i < C.rows(); ++i)
        for (Eigen::Index j = 0; j < C.cols(); ++j)
            csv.row({io::cell(static_cast<int>(i)), io::cell(static_cast<int>(j)),
                     io::cell(std::real(C(i, j))), io::cell(std::imag(C(i, j)))});
    csv.close();
}

void cmd_ground(const RunConfig& cfg, Emitter& em, json& extra) {
    const LatticeSpec& spec = *cfg.lattice;
    auto basis = FockBasis::sector(spec.sites, spec.particles, cfg.max_states);
    const SparseOperator H = build_hamiltonian(spec, basis);
    const int k = std::max(cfg.ground_pairs,
                           H.dim() >= 2 ? 2 : 1); // always resolve degeneracy
    const SpectrumSlice s = lowest_eigenpairs(H, k, cfg.eigensolver);

    {
        io::CsvFile csv(em.target("spectrum.csv"), {"index", "energy"});
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            csv.row({io::cell(i), io::cell(s.eigenvalues[i])});
        csv.close();
    }
    write_density_csv(em, "density.csv", density(s.eigenstates[0]));
    write_correlations_csv(em, "correlations.csv", correlations(s.eigenstates[0]));
    extra["ground_energy"] = s.eigenvalues[0];
    extra["ground_degenerate"] = s.ground_degenerate;
    extra["eigensolver_iterations"] = s.iterations;
}

void cmd_gap_scan(const RunConfig& cfg, Emitter& em, json&) {
    const auto table = gap_scan(*cfg.lattice, cfg.gaps->theta_values,
                                cfg.gaps->hopping_values, cfg.eigensolver);
    io::CsvFile csv(em.target("gap_scan.csv"), {"theta", "J", "E0", "E1", "gap"});
    for (const GapPoint& p : table)
        csv.row({io::cell(p.theta), io::cell(p.hopping), io::cell(p.e0),
                 io::cell(p.e1), io::cell(p.gap)});
    csv.close();
}

void cmd_quench(const RunConfig& cfg, Emitter& em, json& extra) {
    const QuenchResult result =
        run_quench(*cfg.lattice, *cfg.imprint, cfg.evolution, cfg.layout,
                   cfg.eigensolver);
    const ObservableTimeSeries& ts = result.series;

    {
        io::CsvFile csv(em.target("timeseries.csv"), {"t", "observable", "i", "j", "value"});
        for (std::size_t n = 0; n < ts.times.size(); ++n) {
            const std::string t = io::cell(ts.times[n]);
            csv.row({t, "imbalance", "", "", io::cell(ts.imbalance[n])});
            csv.row({t, "energy", "", "", io::cell(ts.energy[n])});
            csv.row({t, "norm_error", "", "", io::cell(ts.norm_error[n])});
            for (Eigen::Index i = 0; i < ts.density[n].size(); ++i)
                csv.row({t, "density", io::cell(static_cast<int>(i)), "",
                         io::cell(ts.density[n][i])});
            if (!ts.correlations.empty()) {
                const auto& C = ts.correlations[n];
                for (Eigen::Index i = 0; i < C.rows(); ++i)
                    for (Eigen::Index j = 0; j < C.cols(); ++j) {
                        csv.row({t, "corr_re", io::cell(static_cast<int>(i)),
                                 io::cell(static_cast<int>(j)),
                                 io::cell(std::real(C(i, j)))});
                        csv.row({t, "corr_im", io::cell(static_cast<int>(i)),
                                 io::cell(static_cast<int>(j)),
                                 io::cell(std::imag(C(i, j)))});
                    }
            }
        }
        csv.close();
    }

    json metadata{{"lattice", to_json(*cfg.lattice)},
                  {"imprint", to_json(*cfg.imprint, result.imprint_sites)},
                  {"evolution", to_json(cfg.evolution)},
                  {"ground_energy", result.ground_energy},
                  {"ground_degenerate", result.ground_degenerate},
                  {"z_split", ts.z_split}};
    write_json_file(em.target("metadata.json"), metadata);

    extra["ground_degenerate"] = result.ground_degenerate;
    extra["max_abs_imbalance"] = ts.max_abs_imbalance();
    extra["max_norm_error"] = ts.max_norm_error();
    extra["max_energy_drift"] = ts.max_energy_drift();
}

void cmd_mft(const RunConfig& cfg, Emitter& em, json&) {
    const MftConfig& mft = *cfg.meanfield;
    if (mft.trajectory) {
        const auto traj = integrate_mft(mft.trajectory->start, mft.params,
                                        mft.trajectory->t_final, mft.trajectory->dt);
        io::CsvFile csv(em.target("mft_trajectory.csv"), {"t", "phi", "z"});
        for (const auto& s : traj)
            csv.row({io::cell(s.t), io::cell(s.phi), io::cell(s.z)});
        csv.close();
    }
    if (mft.portrait) {
        const auto& g = *mft.portrait;
        const auto grid = phase_portrait(mft.params, g.phi_min, g.phi_max,
                                         g.phi_count, g.z_min, g.z_max, g.z_count);
        io::CsvFile csv(em.target("mft_portrait.csv"), {"phi", "z", "dphi", "dz"});
        for (const auto& s : grid)
            csv.row({io::cell(s.phi), io::cell(s.z), io::cell(s.dphi),
                     io::cell(s.dz)});
        csv.close();
    }
}

int sign_of(int x) { return (x > 0) - (x < 0); }

void cmd_commute_test(const RunConfig& cfg, Emitter& em, json& extra) {
    const CommuteTestConfig& ct = *cfg.commute;
    auto basis = FockBasis::truncated(ct.sites, ct.max_per_site, cfg.max_states);
    const Eigen::Index dim = static_cast<Eigen::Index>(basis->size());

    // interior selector: every site strictly below the cap
    std::vector<Eigen::Index> interior;
    for (Eigen::Index s = 0; s < dim; ++s)
        if (basis->interior(static_cast<std::size_t>(s))) interior.push_back(s);

    io::CsvFile csv(em.target("commute_test.csv"),
                    {"theta", "j", "k", "relation", "max_error"});
    double worst = 0.0;
    for (double theta : ct.theta_values) {
        std::vector<Eigen::MatrixXcd> a, adag;
        for (int site = 0; site < ct.sites; ++site) {
            const LadderPair ops = build_anyon_ops(basis, site, theta);
            a.push_back(ops.annihilation.dense());
            adag.push_back(ops.creation.dense());
        }
        for (int j = 0; j < ct.sites; ++j)
            for (int k = 0; k < ct.sites; ++k) {
                // a_j a+_k - e^{i theta sgn(j-k)} a+_k a_j = delta_jk
                const cplx phase1 = std::polar(1.0, theta * sign_of(j - k));
                Eigen::MatrixXcd lhs = a[j] * adag[k] - phase1 * (adag[k] * a[j]);
                if (j == k) lhs -= Eigen::MatrixXcd::Identity(dim, dim);
                double err1 = 0.0;
                for (Eigen::Index r : interior)
                    for (Eigen::Index c : interior)
                        err1 = std::max(err1, std::abs(lhs(r, c)));

                // a_j a_k = e^{-i theta sgn(j-k)} a_k a_j
                const cplx phase2 = std::polar(1.0, -theta * sign_of(j - k));
                const Eigen::MatrixXcd lhs2 = a[j] * a[k] - phase2 * (a[k] * a[j]);
                double err2 = 0.0;
                for (Eigen::Index r : interior)
                    for (Eigen::Index c : interior)
                        err2 = std::max(err2, std::abs(lhs2(r, c)));

                csv.row({io::cell(theta), io::cell(j), io::cell(k), "mixed",
                         io::cell(err1)});
                csv.row({io::cell(theta), io::cell(j), io::cell(k), "paired",
                         io::cell(err2)});
                worst = std::max(worst, std::max(err1, err2));
            }
    }
    csv.close();
    extra["max_error"] = worst;
}

} // namespace

RunConfig parse_config_json(const json& doc, bool strict) {
    g_strict_keys = strict;
    if (!doc.is_object()) throw config_error("config: top level must be an object");
    reject_unknown_keys(doc,
                        {"command", "lattice", "regions", "imprint", "evolution",
                         "eigensolver", "meanfield", "commute_test", "gap_scan",
                         "ground", "max_states"},
                        "config");
    if (!doc.contains("command"))
        throw config_error("config: missing \"command\"");

    RunConfig cfg;
    cfg.raw = doc;
    const std::string cmd = doc.at("command").get<std::string>();
    if (cmd == "ground") cfg.command = Command::Ground;
    else if (cmd == "gap-scan") cfg.command = Command::GapScan;
    else if (cmd == "quench") cfg.command = Command::Quench;
    else if (cmd == "mft") cfg.command = Command::Mft;
    else if (cmd == "commute-test") cfg.command = Command::CommuteTest;
    else
        throw config_error("config: unknown command \"" + cmd +
                           "\" (expected ground, gap-scan, quench, mft or "
                           "commute-test)");

    if (doc.contains("max_states")) {
        const auto& v = doc["max_states"];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
            throw config_error("config: max_states must be a positive integer");
        cfg.max_states = v.get<std::uint64_t>();
    }

    if (doc.contains("lattice") && doc.contains("regions"))
        throw config_error("config: give either \"lattice\" or \"regions\", not both");
    if (doc.contains("lattice")) cfg.lattice = parse_lattice_block(doc["lattice"]);
    if (doc.contains("regions")) {
        auto [spec, layout] = parse_regions_block(doc["regions"]);
        cfg.lattice = std::move(spec);
        cfg.layout = layout;
    }
    if (doc.contains("imprint")) cfg.imprint = parse_imprint_block(doc["imprint"]);
    if (doc.contains("evolution"))
        cfg.evolution = parse_evolution_block(doc["evolution"]);
    if (doc.contains("eigensolver"))
        cfg.eigensolver = parse_eigensolver_block(doc["eigensolver"]);
    if (doc.contains("meanfield"))
        cfg.meanfield = parse_meanfield_block(doc["meanfield"]);
    if (doc.contains("commute_test"))
        cfg.commute = parse_commute_block(doc["commute_test"]);
    if (doc.contains("gap_scan")) cfg.gaps = parse_gap_scan_block(doc["gap_scan"]);
    if (doc.contains("ground")) {
        reject_unknown_keys(doc["ground"], {"pairs"}, "ground");
        cfg.ground_pairs = get_int(doc["ground"], "pairs", "ground");
        if (cfg.ground_pairs < 1)
            throw config_error("ground: pairs must be >= 1");
    }

    // per-command completeness
    const auto need = [&](bool ok, const char* what) {
        if (!ok) throw config_error("config: command \"" + cmd + "\" needs " + what);
    };
    switch (cfg.command) {
    case Command::Ground:
        need(cfg.lattice.has_value(), "a \"lattice\" or \"regions\" block");
        break;
    case Command::GapScan:
        need(cfg.lattice.has_value(), "a \"lattice\" or \"regions\" block");
        need(cfg.gaps.has_value(), "a \"gap_scan\" block");
        break;
    case Command::Quench:
        need(cfg.lattice.has_value(), "a \"lattice\" or \"regions\" block");
        need(cfg.imprint.has_value(), "an \"imprint\" block");
        break;
    case Command::Mft:
        need(cfg.meanfield.has_value(), "a \"meanfield\" block");
        break;
    case Command::CommuteTest:
        need(cfg.commute.has_value(), "a \"commute_test\" block");
        break;
    }
    if (cfg.lattice) {
        const std::uint64_t dim =
            sector_dimension(cfg.lattice->sites, cfg.lattice->particles);
        if (dim > cfg.max_states)
            throw capacity_error("config: sector dimension " + std::to_string(dim) +
                                 " exceeds max_states " +
                                 std::to_string(cfg.max_states));
    }
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in); // exceptions carry line/column positions
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config syntax: ") + e.what());
    }
    try {
        return parse_config_json(doc, strict);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

void execute(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    Emitter em{out_dir, {}};
    json extra = json::object();

    switch (cfg.command) {
    case Command::Ground: cmd_ground(cfg, em, extra); break;
    case Command::GapScan: cmd_gap_scan(cfg, em, extra); break;
    case Command::Quench: cmd_quench(cfg, em, extra); break;
    case Command::Mft: cmd_mft(cfg, em, extra); break;
    case Command::CommuteTest: cmd_commute_test(cfg, em, extra); break;
    }

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    json outputs = json::array();
    for (const auto& f : em.files) {
        const io::EmittedFile d = io::describe_file(f, out_dir);
        outputs.push_back({{"name", d.name}, {"bytes", d.bytes}, {"crc32", d.crc32}});
    }
    json manifest{{"config", cfg.raw},
                  {"outputs", outputs},
                  {"wall_time_seconds", seconds},
                  {"threads", current_threads()},
                  {"versions", {{"ajj", version}}},
                  {"results", extra}};
    write_json_file(out_dir / "manifest.json", manifest);
}

int execute_cli(const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, bool strict) {
    const auto record_error = [&](const char* kind, const std::string& message,
                                  int code) {
        try {
            std::filesystem::create_directories(out_dir);
            write_json_file(out_dir / "error.json",
                            json{{"error", kind}, {"message", message},
                                 {"exit_code", code}});
        } catch (...) {
        }
        return code;
    };
    try {
        execute(parse_config(config_path, strict), out_dir);
        return 0;
    } catch (const config_error& e) {
        fprintf(stderr, "config error: %s\n", e.what());
        return record_error("config", e.what(), 2);
    } catch (const capacity_error& e) {
        fprintf(stderr, "capacity error: %s\n", e.what());
        return record_error("capacity", e.what(), 4);
    } catch (const std::exception& e) {
        fprintf(stderr, "numerical failure: %s\n", e.what());
        return record_error("numerical", e.what(), 3);
    }
}

} // namespace ajj
