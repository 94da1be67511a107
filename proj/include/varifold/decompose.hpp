#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varifold/kernels.hpp"
#include "varifold/variation.hpp"
#include "varifold/varifold.hpp"

namespace varifold {

struct SearchOptions {
    std::uint64_t node_cap = 10'000'000;
    bool parallel = true;
    // When set, split selection inside decompose is randomized (seeded) to
    // exhibit non-uniqueness of decompositions; searches stay deterministic
    // per seed.
    std::optional<std::uint64_t> randomize_seed;
};

/// Multiset of sub-multiplicities with positive integer counts; realizes xi
/// with v(xi) = sum count * part.
struct SplitPart {
    std::vector<double> mult; // aligned with the parent's edges
    std::int64_t count = 1;
};

struct SplitMultiset {
    std::vector<SplitPart> parts;

    std::vector<double> combined(std::size_t edge_count) const;
    std::int64_t total_count() const;
};

struct Decomposition {
    SplitMultiset split;
    // Sub-multiplicities the search could not certify within the node budget.
    std::vector<std::vector<double>> undecided;
    bool complete = true;
};

/// Split condition: at every vertex the first-variation vectors of W and
/// V - W are nonnegative multiples of the parent's (no cancellation of
/// total variation). Tested by the orthogonal-component criterion of
/// split_balanced_at.
bool check_split(const PolyhedralVarifold& v, const SubMultiplicity& m);

/// Deterministic split search: the first hit in counting order over the
/// admissible sub-multiplicity lattice, edge 0 as least significant digit.
/// Throws cap_exceeded when the node budget runs out undecided.
std::optional<SubMultiplicity> find_split(const PolyhedralVarifold& v,
                                          const SearchOptions& opts = {});

bool is_indecomposable(const PolyhedralVarifold& v, const SearchOptions& opts = {});

/// W != 0, W <= V, W splits V, and W is indecomposable.
bool is_component(const PolyhedralVarifold& v, const SubMultiplicity& m,
                  const SearchOptions& opts = {});

/// Recursive greedy decomposition: split until every leaf is indecomposable,
/// merging identical leaves into counts. Each split strictly decreases the
/// total multiplicity on both sides, and nested splits compose, so every
/// leaf is a component of the original varifold.
Decomposition decompose(const PolyhedralVarifold& v, const SearchOptions& opts = {});

struct EnumerationCaps {
    double max_total_multiplicity = 24.0;
    std::uint64_t node_cap = 10'000'000;
    bool parallel = true;
};

/// All decompositions up to part reordering: every indecomposable
/// parent-splitting sub-multiplicity is enumerated, then every nonnegative
/// integer combination summing edgewise to the parent. The independent
/// oracle for decompose.
std::vector<SplitMultiset> enumerate_decompositions(const PolyhedralVarifold& v,
                                                    const EnumerationCaps& caps = {});

struct VerifyReport {
    bool pass = true;
    int failed_condition = 0; // 1, 2 or 3 per the decomposition definition
    std::string reason;
};

/// Checks the three decomposition conditions in order: component-hood of
/// each part, edgewise multiplicity sum, atomwise total-variation sum.
/// Reports the first failure.
VerifyReport verify_decomposition(const PolyhedralVarifold& v, const SplitMultiset& d,
                                  const SearchOptions& opts = {});

/// Maximality of xi with respect to B: no family with the same combined
/// varifold, all members positively weighted in B, has a larger total count.
/// Decided via exhaustive enumeration restricted to v(xi).
bool is_maximal(const SplitMultiset& d, const PolyhedralVarifold& parent, const Region& b,
                const EnumerationCaps& caps = {});

/// Connectivity of the weighted support inside the window; edges touching
/// only at boundary exits are not connected.
bool support_connected(const PolyhedralVarifold& v, std::span<const double> weights);

namespace detail {

/// Constraint system for splits of the varifold with per-edge weights on v's
/// arrangement. one_sided drops the remainder-in-class requirement (used for
/// xi-family enumeration where only members must lie in the class).
kernels::SplitProblem make_split_problem(const PolyhedralVarifold& v,
                                         std::span<const double> weights, bool one_sided = false);

std::vector<std::int64_t> to_units(const PolyhedralVarifold& v, std::span<const double> values);
std::vector<double> from_units(const PolyhedralVarifold& v,
                               std::span<const std::int64_t> units);

} // namespace detail

} // namespace varifold
