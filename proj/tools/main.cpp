#include "ajj/run.hpp"
#include "ajj/version.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Exact-diagonalization simulator for density-dependent-hopping "
                 "Bose-Hubbard junction chains: ground states, gap scans, "
                 "phase-imprint quenches, two-site mean-field flows"};
    app.set_version_flag("--version", std::string("ajj ") + ajj::version);

    std::string config_path;
    std::string out_dir = "./out";
    int threads = 0;
    bool strict = true;

    app.add_option("--config", config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (created if missing)")
        ->capture_default_str();
    app.add_option("--threads", threads,
                   "worker threads (default: all available cores)");
    app.add_flag("--strict,!--no-strict", strict,
                 "reject unknown config keys (default on)");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    return ajj::execute_cli(config_path, out_dir, strict);
}
