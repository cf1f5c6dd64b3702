// Timing harness comparing the OpenMP kernels against their serial
// references: CSR matrix-vector product, Hamiltonian assembly, correlation
// matrix, and a ground-state solve on top of them.

#include "ajj/groundstate.hpp"
#include "ajj/observables.hpp"
#include "ajj/operators.hpp"
#include "ajj/reference.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <random>

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_seconds(F&& body, int reps = 1) {
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) body();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-24s %12.4f ms %12.4f ms %8.2fx\n", name, serial * 1e3,
                parallel * 1e3, parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    int sites = 12;
    int particles = 6;
    int reps = 50;
    int threads = 0;
    app.add_option("--sites", sites, "lattice size")->capture_default_str();
    app.add_option("--particles", particles, "boson count")->capture_default_str();
    app.add_option("--reps", reps, "repetitions per timed kernel")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (default: all cores)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif

    using namespace ajj;
    auto basis = FockBasis::sector(sites, particles);
    std::printf("sector %d sites, %d particles: dimension %zu\n\n", sites,
                particles, basis->size());
    std::printf("%-24s %15s %15s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    const LatticeSpec spec =
        LatticeSpec::uniform(sites, particles, 1.0, 1.0471975511965976, 0.7);

    // assembly: the row work is identical, only the distribution differs
    SparseOperator H = build_hamiltonian(spec, basis);
    const double t_assembly = time_seconds([&] { H = build_hamiltonian(spec, basis); },
                                           std::max(1, reps / 10));
    const double t_assembly_ref = time_seconds(
        [&] { (void)reference::build_hamiltonian_dense(spec, *basis); },
        basis->size() <= 4000 ? std::max(1, reps / 10) : 1);
    std::printf("%-24s %12.4f ms (dense reference: %.4f ms)\n", "assembly (CSR)",
                t_assembly * 1e3, t_assembly_ref * 1e3);

    // spmv
    std::mt19937_64 rng(42);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd x(static_cast<Eigen::Index>(basis->size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = cplx{dist(rng), dist(rng)};
    x /= x.norm();
    Eigen::VectorXcd y = x;
    const std::span<const cplx> xs(x.data(), basis->size());
    const std::span<cplx> ys(y.data(), basis->size());
    const double t_spmv_serial =
        time_seconds([&] { H.apply_serial(xs, ys); }, reps);
    const double t_spmv = time_seconds([&] { H.apply(xs, ys); }, reps);
    report("spmv", t_spmv_serial, t_spmv);

    // correlation matrix on a normalized vector
    QuantumState state{basis, x};
    const double t_corr_serial =
        time_seconds([&] { (void)reference::correlations_serial(state); }, 1);
    const double t_corr = time_seconds([&] { (void)correlations(state); }, 1);
    report("correlations", t_corr_serial, t_corr);

    // ground state via Lanczos (dense path disabled to exercise the kernels)
    EigensolverOptions opts;
    opts.dense_cutoff = 1;
    const double t_gs = time_seconds([&] { (void)lowest_eigenpairs(H, 1, opts); }, 1);
    std::printf("%-24s %12.4f ms\n", "Lanczos ground state", t_gs * 1e3);

    return 0;
}
