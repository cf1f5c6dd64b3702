#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ajj/errors.hpp"
#include "ajj/io.hpp"
#include "ajj/run.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace ajj;
using nlohmann::json;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ajj-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json minimal_quench() {
    return json{{"command", "quench"},
                {"lattice",
                 {{"sites", 2}, {"particles", 2}, {"hopping", 1.0},
                  {"interaction", 0.0}}},
                {"imprint", {{"mode", "symmetric"}, {"phi", pi}}},
                {"evolution", {{"t_final", 2.0}, {"dt", 0.5}}}};
}

} // namespace

TEST_CASE("minimal two-site quench config parses") {
    const RunConfig cfg = parse_config_json(minimal_quench());
    CHECK(cfg.command == Command::Quench);
    REQUIRE(cfg.lattice.has_value());
    CHECK(cfg.lattice->sites == 2);
    CHECK(cfg.imprint->phi == doctest::Approx(pi));
}

TEST_CASE("config validation rejects bad values with named errors") {
    json bad = minimal_quench();
    bad["lattice"]["theta"] = 4.0;
    CHECK_THROWS_WITH_AS((void)parse_config_json(bad),
                         doctest::Contains("theta must lie in [0, pi]"),
                         config_error);

    json regions{{"command", "ground"},
                 {"regions",
                  {{"sizes", {30, 4, 30}}, {"theta", {0.0, 0.0, 0.0}},
                   {"interaction", {0.5, 10.0, 0.5}}, {"particles", 8},
                   {"hopping", 1.0}}}};
    regions["lattice"] = minimal_quench()["lattice"];
    CHECK_THROWS_AS((void)parse_config_json(regions), config_error);

    json unknown = minimal_quench();
    unknown["lattice"]["sties"] = 2;
    CHECK_THROWS_WITH_AS((void)parse_config_json(unknown),
                         doctest::Contains("unknown key"), config_error);
    CHECK_NOTHROW((void)parse_config_json(unknown, /*strict=*/false));

    json missing{{"command", "quench"}};
    CHECK_THROWS_AS((void)parse_config_json(missing), config_error);

    json badcmd = minimal_quench();
    badcmd["command"] = "explode";
    CHECK_THROWS_AS((void)parse_config_json(badcmd), config_error);

    json overflow = minimal_quench();
    overflow["lattice"]["sites"] = 40;
    overflow["lattice"]["particles"] = 40;
    CHECK_THROWS_AS((void)parse_config_json(overflow), capacity_error);
}

TEST_CASE("ground command emits spectrum, density, correlations, manifest") {
    const fs::path dir = fresh_dir("ground");
    json doc{{"command", "ground"},
             {"lattice",
              {{"sites", 4}, {"particles", 4}, {"hopping", 1.0},
               {"interaction", 0.5}}},
             {"ground", {{"pairs", 2}}}};
    execute(parse_config_json(doc), dir);

    for (const char* f :
         {"spectrum.csv", "density.csv", "correlations.csv", "manifest.json"})
        CHECK(fs::exists(dir / f));

    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["results"].contains("ground_energy"));
    CHECK(manifest["config"]["command"] == "ground");

    // checksums in the manifest match the files on disk
    for (const auto& entry : manifest["outputs"]) {
        const fs::path p = dir / entry["name"].get<std::string>();
        CHECK(io::crc32_hex(p) == entry["crc32"].get<std::string>());
        CHECK(fs::file_size(p) == entry["bytes"].get<std::uintmax_t>());
    }

    // header row present
    const std::string csv = slurp(dir / "density.csv");
    CHECK(csv.rfind("site,value", 0) == 0);
}

TEST_CASE("quench command emits a long-format series plus metadata sidecar") {
    const fs::path dir = fresh_dir("quench");
    execute(parse_config_json(minimal_quench()), dir);
    CHECK(fs::exists(dir / "timeseries.csv"));
    CHECK(fs::exists(dir / "metadata.json"));

    const json meta = json::parse(slurp(dir / "metadata.json"));
    CHECK(meta["lattice"]["sites"] == 2);
    CHECK(meta["imprint"]["site_set"] == json::array({0}));
    CHECK(meta["evolution"]["dt"] == 0.5);

    const std::string csv = slurp(dir / "timeseries.csv");
    CHECK(csv.rfind("t,observable,i,j,value", 0) == 0);
    CHECK(csv.find("imbalance") != std::string::npos);
    CHECK(csv.find("corr_re") != std::string::npos);
}

TEST_CASE("re-running a config reproduces outputs byte for byte") {
    const fs::path a = fresh_dir("repeat-a");
    const fs::path b = fresh_dir("repeat-b");
    json doc{{"command", "gap-scan"},
             {"lattice",
              {{"sites", 4}, {"particles", 4}, {"hopping", 1.0},
               {"interaction", 1.0}}},
             {"gap_scan",
              {{"theta_values", {0.0, pi}}, {"hopping_values", {0.0, 0.2}}}}};
    execute(parse_config_json(doc), a);
    execute(parse_config_json(doc), b);
    CHECK(slurp(a / "gap_scan.csv") == slurp(b / "gap_scan.csv"));

    const json ma = json::parse(slurp(a / "manifest.json"));
    const json mb = json::parse(slurp(b / "manifest.json"));
    CHECK(ma["outputs"] == mb["outputs"]); // names, sizes and checksums
}

TEST_CASE("mft command emits trajectory and portrait tables") {
    const fs::path dir = fresh_dir("mft");
    json doc{{"command", "mft"},
             {"meanfield",
              {{"hopping", 1.0}, {"interaction", 0.5}, {"particles", 2},
               {"trajectory",
                {{"phi0", pi / 4}, {"z0", 0.0}, {"t_final", 5.0}, {"dt", 0.01}}},
               {"portrait",
                {{"phi_min", -2 * pi}, {"phi_max", 2 * pi}, {"phi_count", 9},
                 {"z_min", -0.5}, {"z_max", 0.5}, {"z_count", 5}}}}}};
    execute(parse_config_json(doc), dir);
    CHECK(slurp(dir / "mft_trajectory.csv").rfind("t,phi,z", 0) == 0);
    CHECK(slurp(dir / "mft_portrait.csv").rfind("phi,z,dphi,dz", 0) == 0);
}

TEST_CASE("commute-test command reports near-zero residuals") {
    const fs::path dir = fresh_dir("commute");
    json doc{{"command", "commute-test"},
             {"commute_test",
              {{"sites", 2}, {"max_per_site", 3},
               {"theta_values", {0.0, pi / 2, pi}}}}};
    execute(parse_config_json(doc), dir);
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["results"]["max_error"].get<double>() < 1e-12);
}

TEST_CASE("execute_cli maps failures to documented exit codes") {
    const fs::path dir = fresh_dir("cli-codes");

    // config error: 2
    {
        const fs::path cfg = dir / "bad.json";
        std::ofstream(cfg) << R"({"command": "quench"})";
        CHECK(execute_cli(cfg, dir / "out1") == 2);
        CHECK(fs::exists(dir / "out1" / "error.json"));
        const json err = json::parse(slurp(dir / "out1" / "error.json"));
        CHECK(err["error"] == "config");
    }
    // syntax error: also a config error, with position info
    {
        const fs::path cfg = dir / "syntax.json";
        std::ofstream(cfg) << "{ not json";
        CHECK(execute_cli(cfg, dir / "out2") == 2);
    }
    // capacity: 4
    {
        const fs::path cfg = dir / "huge.json";
        json doc = minimal_quench();
        doc["lattice"]["sites"] = 64;
        doc["lattice"]["particles"] = 64;
        std::ofstream(cfg) << doc.dump();
        CHECK(execute_cli(cfg, dir / "out3") == 4);
    }
    // success: 0
    {
        const fs::path cfg = dir / "ok.json";
        std::ofstream(cfg) << minimal_quench().dump();
        CHECK(execute_cli(cfg, dir / "out4") == 0);
        CHECK(fs::exists(dir / "out4" / "manifest.json"));
    }
}

TEST_CASE("csv quoting follows RFC 4180") {
    const fs::path dir = fresh_dir("csv");
    io::CsvFile csv(dir / "q.csv", {"a", "b"});
    csv.row({"plain", "with,comma"});
    csv.row({"quote\"inside", "multi\nline"});
    csv.close();
    const std::string text = slurp(dir / "q.csv");
    CHECK(text.find("\"with,comma\"") != std::string::npos);
    CHECK(text.find("\"quote\"\"inside\"") != std::string::npos);
}
