// Times the coherence-matrix assembly with the serial reference against the
// OpenMP work distribution and verifies the two agree bit for bit.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "atomphase/interferometer.hpp"

using namespace atomphase;

namespace {

Scenario bench_scenario(int n_arms, PhaseMethod method) {
    // Oscillating arms over several periods keep the adaptive quadrature and
    // the per-sample light-cone solves busy.
    const double t_end = 2e-7;
    const double omega = 2.0 * M_PI * 6.0 / t_end;
    const ScenarioWindow win{t_end, ScenarioWindow::default_margin(120e-9)};

    PrimitiveOptions opt;
    opt.domain_end = win.t_end + win.delay_margin;

    std::vector<Trajectory> arms;
    for (int k = 0; k < n_arms; ++k) {
        opt.label = k + 1;
        const double z_mid = 40e-9 + 8e-9 * k;
        arms.push_back(make_sinusoidal_path(z_mid, 8e-9, omega, 0.7 * k, opt));
    }
    Scenario sc{Atom(3.20e15, 24.1e-30, 3.82e-26), ExternalPotential::none(), win,
                std::move(arms), {}, {}, method};
    sc.quad.rel_tol = 1e-12;
    return sc;
}

double time_once(const Scenario& sc, ExecPolicy exec, CoherenceMatrix* out) {
    const auto start = std::chrono::steady_clock::now();
    CoherenceMatrix m = coherence_matrix(sc, exec);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out) *out = m;
    return seconds;
}

double best_of(int reps, const Scenario& sc, ExecPolicy exec, CoherenceMatrix* out) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) best = std::min(best, time_once(sc, exec, out));
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int n_arms = 6;
    if (argc > 1) n_arms = std::atoi(argv[1]);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif
    std::printf("scenario: %d arms, %d pair phases\n\n", n_arms, n_arms * (n_arms - 1) / 2);

    for (PhaseMethod method : {PhaseMethod::first_order, PhaseMethod::retarded}) {
        const Scenario sc = bench_scenario(n_arms, method);

        CoherenceMatrix serial = coherence_matrix(sc, ExecPolicy::serial);
        CoherenceMatrix parallel = serial;
        const double t_serial = best_of(3, sc, ExecPolicy::serial, &serial);
        const double t_parallel = best_of(3, sc, ExecPolicy::parallel, &parallel);

        bool identical = true;
        for (int j = 0; j < serial.size(); ++j)
            for (int k = 0; k < serial.size(); ++k)
                identical = identical && serial.entry(j, k) == parallel.entry(j, k);

        std::printf("%-12s serial %.4fs  parallel %.4fs  speedup %.2fx  bit-identical: %s\n",
                    to_string(method), t_serial, t_parallel, t_serial / t_parallel,
                    identical ? "yes" : "NO");
        if (!identical) return 1;
    }
    return 0;
}
