#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "varifold/geometry.hpp"

namespace varifold::kernels {

/// Fixed-tree pairwise summation; bit-stable regardless of how the terms
/// were produced.
double pairwise_sum(std::span<const double> terms);

/// Fills terms[i] = term(i) and pairwise-reduces. The parallel variant maps
/// in parallel but reduces over the same fixed tree, so serial and parallel
/// results are bit-identical.
template <class F>
double map_sum_serial(std::size_t n, F&& term) {
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i)
        terms[i] = term(i);
    return pairwise_sum(terms);
}

template <class F>
double map_sum_parallel(std::size_t n, F&& term) {
    std::vector<double> terms(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        terms[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));
    return pairwise_sum(terms);
}

/// Chooses the parallel map above the given size when OpenMP is compiled in.
template <class F>
double map_sum(std::size_t n, F&& term, std::size_t parallel_threshold = 4096) {
#ifdef _OPENMP
    if (n >= parallel_threshold)
        return map_sum_parallel(n, term);
#endif
    (void)parallel_threshold;
    return map_sum_serial(n, term);
}

/// Nonnegative-collinearity of a split contribution with the parent's
/// first-variation vector: the component of a orthogonal to parent must
/// vanish within eps and the parallel component must lie in [0, |parent|].
/// Linear sensitivity to the orthogonal defect, unlike the norm identity
/// |a| + |parent - a| = |parent|, which admits sqrt(eps)-size defects.
inline bool split_balanced_at(const Vec& a, const Vec& parent, double parent_norm, double eps) {
    double na2 = 0;
    for (double x : a)
        na2 += x * x;
    if (parent_norm <= eps)
        return na2 <= eps * eps;
    double t = dot(a, parent) / parent_norm;
    if (t < -eps || t > parent_norm + eps)
        return false;
    double perp2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double r = a[i] - (t / parent_norm) * parent[i];
        perp2 += r * r;
    }
    return perp2 <= eps * eps;
}

/// Sub-multiplicity search space of one varifold, in integer grid units.
/// Candidate vectors are ranked in counting order with edge 0 as the least
/// significant digit; the searches below return the least-ranked hit, which
/// pins the deterministic choice of split.
struct SplitProblem {
    // admissible values per edge, ascending, always starting at 0
    std::vector<std::vector<std::int64_t>> choices;
    std::vector<std::int64_t> full; // parent multiplicity in units
    double unit = 1.0;              // multiplicity value of one grid unit

    struct VertexConstraint {
        std::vector<std::size_t> edges; // incident edge indices
        std::vector<Vec> outward;       // unit vector away from each edge at the vertex
        Vec parent_vec;                 // first-variation vector of the parent
        double parent_norm = 0;
    };
    std::vector<VertexConstraint> vertices;
    double eps = 1e-9;

    /// Number of candidate vectors (capped to avoid overflow).
    double candidate_count() const;
    /// Split condition at every vertex for a complete assignment in units.
    bool balanced(std::span<const std::int64_t> values) const;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    bool cap_hit = false;
};

/// First proper (nonzero, not full) balanced assignment in counting order,
/// or nullopt after exhausting the space. cap_hit set when the node budget
/// ran out before either outcome was certified.
std::optional<std::vector<std::int64_t>> search_split_serial(const SplitProblem& problem,
                                                             std::uint64_t node_cap,
                                                             SearchStats& stats);

/// OpenMP variant: top-level digit prefixes are explored concurrently and the
/// least-ranked hit wins, so the result never depends on the schedule.
std::optional<std::vector<std::int64_t>> search_split_parallel(const SplitProblem& problem,
                                                               std::uint64_t node_cap,
                                                               SearchStats& stats);

std::optional<std::vector<std::int64_t>> search_split(const SplitProblem& problem,
                                                      std::uint64_t node_cap, SearchStats& stats,
                                                      bool allow_parallel);

/// All balanced assignments (proper or not, zero excluded) in counting order.
/// include_improper keeps the full vector; used by the enumeration oracle.
/// Throws on candidate spaces larger than scan_cap.
std::vector<std::vector<std::int64_t>> scan_balanced_serial(const SplitProblem& problem,
                                                            std::uint64_t scan_cap);
std::vector<std::vector<std::int64_t>> scan_balanced_parallel(const SplitProblem& problem,
                                                              std::uint64_t scan_cap);
std::vector<std::vector<std::int64_t>> scan_balanced(const SplitProblem& problem,
                                                     std::uint64_t scan_cap, bool allow_parallel);

} // namespace varifold::kernels
