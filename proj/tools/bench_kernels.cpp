// Benchmark comparing the serial reference kernels against the OpenMP ones:
// split search on stars whose only balanced sub-multiplicities are trivial
// (forcing exhaustive exploration), the balanced-candidate scan, and the
// pairwise mass reduction.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "varifold/decompose.hpp"
#include "varifold/kernels.hpp"
#include "varifold/varifold.hpp"

using namespace varifold;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Star with rays at jittered angles and mixed multiplicities 2/3: no uniform
// fraction of the whole works and generically no subset balances, so the
// split search must exhaust the whole candidate space.
PolyhedralVarifold hard_star(std::size_t rays) {
    PolyhedralVarifold v;
    v.density_class = AppropriateClass::integers();
    v.arrangement.window = Window::make_ball({0.0, 0.0}, 10.0);
    v.arrangement.vertices.push_back({0.0, 0.0});
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    for (std::size_t i = 0; i < rays; ++i) {
        double ang = 2 * M_PI * static_cast<double>(i) / static_cast<double>(rays) + jitter(rng);
        v.arrangement.edges.push_back(Edge{
            Endpoint::at_vertex(0),
            Endpoint::at_exit({10 * std::cos(ang), 10 * std::sin(ang)})});
        v.mult.push_back(i % 2 ? 2.0 : 3.0);
    }
    return v;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial fallbacks)\n");
#endif

    {
        PolyhedralVarifold v = hard_star(14);
        auto problem = detail::make_split_problem(v, v.mult);
        std::printf("split search, %zu rays, %.0f candidates\n", v.edge_count(),
                    problem.candidate_count());
        kernels::SearchStats st;
        auto t0 = std::chrono::steady_clock::now();
        auto serial = kernels::search_split_serial(problem, 1ull << 40, st);
        double ts = seconds_since(t0);
        std::printf("  serial:   %.3fs  nodes=%llu  found=%d\n", ts,
                    static_cast<unsigned long long>(st.nodes), serial.has_value());
        t0 = std::chrono::steady_clock::now();
        auto parallel = kernels::search_split_parallel(problem, 1ull << 40, st);
        double tp = seconds_since(t0);
        std::printf("  parallel: %.3fs  nodes=%llu  found=%d  speedup=%.2fx\n", tp,
                    static_cast<unsigned long long>(st.nodes), parallel.has_value(), ts / tp);
        if (serial != parallel)
            std::printf("  MISMATCH between serial and parallel results\n");
    }

    {
        PolyhedralVarifold v = hard_star(12);
        auto problem = detail::make_split_problem(v, v.mult);
        std::printf("balanced scan, %.0f candidates\n", problem.candidate_count());
        auto t0 = std::chrono::steady_clock::now();
        auto serial = kernels::scan_balanced_serial(problem, 1ull << 40);
        double ts = seconds_since(t0);
        std::printf("  serial:   %.3fs  hits=%zu\n", ts, serial.size());
        t0 = std::chrono::steady_clock::now();
        auto parallel = kernels::scan_balanced_parallel(problem, 1ull << 40);
        double tp = seconds_since(t0);
        std::printf("  parallel: %.3fs  hits=%zu  speedup=%.2fx\n", tp, parallel.size(), ts / tp);
        if (serial != parallel)
            std::printf("  MISMATCH between serial and parallel results\n");
    }

    {
        const std::size_t n = 1 << 22;
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> lengths(n), mults(n);
        for (std::size_t i = 0; i < n; ++i) {
            lengths[i] = u(rng);
            mults[i] = 1.0 + std::floor(3 * u(rng));
        }
        std::printf("mass reduction, %zu edges\n", n);
        auto term = [&](std::size_t i) { return mults[i] * lengths[i]; };
        auto t0 = std::chrono::steady_clock::now();
        double s1 = 0;
        for (int rep = 0; rep < 20; ++rep)
            s1 = kernels::map_sum_serial(n, term);
        double ts = seconds_since(t0) / 20;
        t0 = std::chrono::steady_clock::now();
        double s2 = 0;
        for (int rep = 0; rep < 20; ++rep)
            s2 = kernels::map_sum_parallel(n, term);
        double tp = seconds_since(t0) / 20;
        std::printf("  serial:   %.4fs\n  parallel: %.4fs  speedup=%.2fx  bit-equal=%d\n", ts, tp,
                    ts / tp, s1 == s2);
    }
    return 0;
}
