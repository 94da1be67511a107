#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kernels_core.hpp"
#include "varifold/error.hpp"
#include "varifold/kernels.hpp"

namespace varifold::kernels {

#ifndef _OPENMP

// Built without OpenMP: the parallel entry points are the serial ones.
std::optional<std::vector<std::int64_t>> search_split_parallel(const SplitProblem& problem,
                                                               std::uint64_t node_cap,
                                                               SearchStats& stats) {
    return search_split_serial(problem, node_cap, stats);
}

std::vector<std::vector<std::int64_t>> scan_balanced_parallel(const SplitProblem& problem,
                                                              std::uint64_t scan_cap) {
    return scan_balanced_serial(problem, scan_cap);
}

#else

namespace {

// Prefix tuples over the most significant digits (edges n-1 .. n-depth),
// listed so that task order agrees with the global counting order.
std::vector<std::vector<std::int64_t>> prefix_list(const SplitProblem& p, std::size_t depth) {
    const std::size_t n = p.choices.size();
    std::vector<std::vector<std::int64_t>> prefixes{{}};
    for (std::size_t level = 0; level < depth; ++level) {
        const auto& ch = p.choices[n - 1 - level];
        std::vector<std::vector<std::int64_t>> next;
        next.reserve(prefixes.size() * ch.size());
        for (const auto& pre : prefixes)
            for (std::int64_t v : ch) {
                auto ext = pre;
                ext.push_back(v);
                next.push_back(std::move(ext));
            }
        prefixes = std::move(next);
    }
    return prefixes;
}

} // namespace

std::optional<std::vector<std::int64_t>> search_split_parallel(const SplitProblem& problem,
                                                               std::uint64_t node_cap,
                                                               SearchStats& stats) {
    stats = SearchStats{};
    const std::size_t n = problem.choices.size();
    if (n == 0)
        return std::nullopt;

    const std::size_t min_tasks = 4 * static_cast<std::size_t>(omp_get_max_threads());
    std::size_t depth = 0;
    double tasks = 1;
    while (depth < n - 1 && tasks < static_cast<double>(min_tasks) && tasks < 4096)
        tasks *= static_cast<double>(problem.choices[n - 1 - depth++].size());
    if (depth == 0)
        return search_split_serial(problem, node_cap, stats);

    const auto prefixes = prefix_list(problem, depth);
    const auto task_count = static_cast<std::int64_t>(prefixes.size());

    std::atomic<std::uint64_t> nodes_used{0};
    std::atomic<std::int64_t> best_task{std::numeric_limits<std::int64_t>::max()};
    std::vector<std::optional<std::vector<std::int64_t>>> found(prefixes.size());
    std::vector<char> completed(prefixes.size(), 0);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < task_count; ++t) {
        if (best_task.load(std::memory_order_relaxed) < t)
            continue; // a lower-ranked task already holds the answer
        detail::DfsEngine engine(problem);
        detail::Budget budget;
        budget.cap = node_cap;
        budget.shared = &nodes_used;
        budget.best_task = &best_task;
        budget.my_task = t;

        // Pre-assign this task's prefix digits; a failed check prunes the
        // whole subtree. The engine is task-local, so no unwinding is needed.
        bool viable = true;
        for (std::size_t k = 0; k < depth && viable; ++k) {
            if (!budget.take() ||
                !engine.assign(n - 1 - k, prefixes[static_cast<std::size_t>(t)][k]))
                viable = false;
        }
        std::vector<std::int64_t> out;
        bool hit = false;
        if (viable && !budget.hit)
            hit = engine.dfs(static_cast<std::int64_t>(n - depth) - 1, budget, out);

        if (hit) {
            found[static_cast<std::size_t>(t)] = std::move(out);
            std::int64_t cur = best_task.load();
            while (t < cur && !best_task.compare_exchange_weak(cur, t)) {
            }
        }
        completed[static_cast<std::size_t>(t)] = !budget.hit;
    }

    stats.nodes = nodes_used.load();
    for (std::size_t t = 0; t < prefixes.size(); ++t) {
        if (found[t])
            return found[t]; // every lower-ranked task completed empty
        if (!completed[t]) {
            stats.cap_hit = true;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::vector<std::vector<std::int64_t>> scan_balanced_parallel(const SplitProblem& problem,
                                                              std::uint64_t scan_cap) {
    double total = problem.candidate_count();
    if (total > static_cast<double>(scan_cap))
        throw Error(Error::Code::cap_exceeded,
                    "candidate space too large to scan exhaustively");
    const auto count = static_cast<std::int64_t>(total);
    constexpr std::int64_t block = 8192;
    const std::int64_t blocks = (count + block - 1) / block;
    std::vector<std::vector<std::vector<std::int64_t>>> per_block(
        static_cast<std::size_t>(blocks));

#pragma omp parallel
    {
        std::vector<std::int64_t> values;
        detail::BalanceChecker checker(problem);
#pragma omp for schedule(dynamic)
        for (std::int64_t b = 0; b < blocks; ++b) {
            auto& local = per_block[static_cast<std::size_t>(b)];
            const std::int64_t lo = std::max<std::int64_t>(1, b * block);
            const std::int64_t hi = std::min(count, (b + 1) * block);
            for (std::int64_t i = lo; i < hi; ++i) {
                detail::decode_candidate_into(problem, static_cast<std::uint64_t>(i), values);
                if (checker.check(values))
                    local.push_back(values);
            }
        }
    }

    std::vector<std::vector<std::int64_t>> out;
    for (auto& local : per_block)
        for (auto& v : local)
            out.push_back(std::move(v));
    return out;
}

#endif // _OPENMP

} // namespace varifold::kernels
