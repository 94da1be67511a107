#include "varifold/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "kernels_core.hpp"
#include "varifold/error.hpp"

namespace varifold::kernels {

double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 8) {
        double s = 0;
        for (double t : terms)
            s += t;
        return s;
    }
    std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double SplitProblem::candidate_count() const {
    double c = 1;
    for (const auto& ch : choices)
        c *= static_cast<double>(ch.size());
    return c;
}

bool SplitProblem::balanced(std::span<const std::int64_t> values) const {
    for (const auto& vc : vertices) {
        Vec a(vc.parent_vec.size(), 0.0);
        for (std::size_t k = 0; k < vc.edges.size(); ++k) {
            double w = static_cast<double>(values[vc.edges[k]]) * unit;
            for (std::size_t i = 0; i < a.size(); ++i)
                a[i] += w * vc.outward[k][i];
        }
        if (!split_balanced_at(a, vc.parent_vec, vc.parent_norm, eps))
            return false;
    }
    return true;
}

std::optional<std::vector<std::int64_t>> search_split_serial(const SplitProblem& problem,
                                                             std::uint64_t node_cap,
                                                             SearchStats& stats) {
    stats = SearchStats{};
    const std::size_t n = problem.choices.size();
    if (n == 0)
        return std::nullopt;
    detail::DfsEngine engine(problem);
    detail::Budget budget;
    budget.cap = node_cap;
    std::vector<std::int64_t> out;
    bool found = engine.dfs(static_cast<std::int64_t>(n) - 1, budget, out);
    stats.nodes = budget.used;
    stats.cap_hit = budget.hit;
    if (found)
        return out;
    return std::nullopt;
}

std::vector<std::vector<std::int64_t>> scan_balanced_serial(const SplitProblem& problem,
                                                            std::uint64_t scan_cap) {
    double total = problem.candidate_count();
    if (total > static_cast<double>(scan_cap))
        throw Error(Error::Code::cap_exceeded,
                    "candidate space too large to scan exhaustively");
    const auto count = static_cast<std::uint64_t>(total);
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> values;
    detail::BalanceChecker checker(problem);
    for (std::uint64_t i = 1; i < count; ++i) { // index 0 is the zero vector
        detail::decode_candidate_into(problem, i, values);
        if (checker.check(values))
            out.push_back(values);
    }
    return out;
}

std::optional<std::vector<std::int64_t>> search_split(const SplitProblem& problem,
                                                      std::uint64_t node_cap, SearchStats& stats,
                                                      bool allow_parallel) {
#ifdef _OPENMP
    if (allow_parallel && problem.candidate_count() >= 1 << 14)
        return search_split_parallel(problem, node_cap, stats);
#endif
    (void)allow_parallel;
    return search_split_serial(problem, node_cap, stats);
}

std::vector<std::vector<std::int64_t>> scan_balanced(const SplitProblem& problem,
                                                     std::uint64_t scan_cap, bool allow_parallel) {
#ifdef _OPENMP
    if (allow_parallel && problem.candidate_count() >= 1 << 14)
        return scan_balanced_parallel(problem, scan_cap);
#endif
    (void)allow_parallel;
    return scan_balanced_serial(problem, scan_cap);
}

} // namespace varifold::kernels
