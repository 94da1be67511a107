#pragma once

// DFS machinery shared by the serial and OpenMP split searches.

#include <atomic>
#include <cstdint>
#include <vector>

#include "varifold/kernels.hpp"

namespace varifold::kernels::detail {

inline double segment_param_distance(const Vec& a, const Vec& p, double p_norm) {
    // distance from a to the segment { t p : 0 <= t <= 1 }
    if (p_norm == 0)
        return norm(a);
    double t = dot(a, p) / (p_norm * p_norm);
    if (t < 0)
        t = 0;
    else if (t > 1)
        t = 1;
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - t * p[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline void decode_candidate_into(const SplitProblem& p, std::uint64_t index,
                                  std::vector<std::int64_t>& values) {
    values.resize(p.choices.size());
    for (std::size_t e = 0; e < p.choices.size(); ++e) {
        std::uint64_t base = p.choices[e].size();
        values[e] = p.choices[e][index % base];
        index /= base;
    }
}

inline std::vector<std::int64_t> decode_candidate(const SplitProblem& p, std::uint64_t index) {
    std::vector<std::int64_t> values;
    decode_candidate_into(p, index, values);
    return values;
}

/// Allocation-free balance check for scan hot loops.
class BalanceChecker {
public:
    explicit BalanceChecker(const SplitProblem& p) : p_(p) {
        std::size_t dim = 0;
        for (const auto& vc : p.vertices)
            dim = std::max(dim, vc.parent_vec.size());
        accum_.assign(dim, 0.0);
    }

    bool check(std::span<const std::int64_t> values) {
        for (const auto& vc : p_.vertices) {
            const std::size_t dim = vc.parent_vec.size();
            accum_.resize(dim);
            for (std::size_t i = 0; i < dim; ++i)
                accum_[i] = 0.0;
            for (std::size_t k = 0; k < vc.edges.size(); ++k) {
                const double w = static_cast<double>(values[vc.edges[k]]) * p_.unit;
                if (w == 0)
                    continue;
                const Vec& u = vc.outward[k];
                for (std::size_t i = 0; i < dim; ++i)
                    accum_[i] += w * u[i];
            }
            if (!split_balanced_at(accum_, vc.parent_vec, vc.parent_norm, p_.eps))
                return false;
        }
        return true;
    }

private:
    const SplitProblem& p_;
    Vec accum_;
};

struct Budget {
    std::uint64_t cap = 0;
    std::uint64_t used = 0;
    bool hit = false;
    std::atomic<std::uint64_t>* shared = nullptr;
    const std::atomic<std::int64_t>* best_task = nullptr;
    std::int64_t my_task = -1;
    bool cancelled = false;
    std::uint64_t local = 0;

    bool take() {
        if (shared) {
            if (++local >= 256) {
                used = shared->fetch_add(local, std::memory_order_relaxed) + local;
                local = 0;
                if (best_task &&
                    best_task->load(std::memory_order_relaxed) < my_task) {
                    cancelled = true;
                    return false;
                }
            }
            if (used >= cap) {
                hit = true;
                return false;
            }
            return true;
        }
        if (++used > cap) {
            hit = true;
            return false;
        }
        return true;
    }
};

/// Incremental assignment state over the edges of a SplitProblem.
class DfsEngine {
public:
    explicit DfsEngine(const SplitProblem& p) : p_(p) {
        const std::size_t n = p.choices.size();
        value_.assign(n, 0);
        edge_terms_.resize(n);
        accum_.resize(p.vertices.size());
        unassigned_.resize(p.vertices.size());
        free_bound_.resize(p.vertices.size());
        for (std::size_t v = 0; v < p.vertices.size(); ++v) {
            const auto& vc = p.vertices[v];
            accum_[v] = Vec(vc.parent_vec.size(), 0.0);
            unassigned_[v] = vc.edges.size();
            double fb = 0;
            for (std::size_t k = 0; k < vc.edges.size(); ++k) {
                edge_terms_[vc.edges[k]].push_back(Term{v, &vc.outward[k]});
                fb += static_cast<double>(p.full[vc.edges[k]]) * p.unit;
            }
            free_bound_[v] = fb;
        }
    }

    // Assigns value v (units) to edge e and runs the per-vertex checks.
    // Returns false when a constraint is already unsatisfiable; the caller
    // must still unassign.
    bool assign(std::size_t e, std::int64_t v) {
        value_[e] = v;
        nonzero_ += v > 0;
        below_full_ += v < p_.full[e];
        bool ok = true;
        const double w = static_cast<double>(v) * p_.unit;
        for (const Term& t : edge_terms_[e]) {
            Vec& acc = accum_[t.vertex];
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += w * (*t.outward)[i];
            --unassigned_[t.vertex];
            free_bound_[t.vertex] -= static_cast<double>(p_.full[e]) * p_.unit;
            if (!ok)
                continue;
            const auto& vc = p_.vertices[t.vertex];
            if (unassigned_[t.vertex] == 0) {
                if (!split_balanced_at(acc, vc.parent_vec, vc.parent_norm, p_.eps))
                    ok = false;
            } else if (segment_param_distance(acc, vc.parent_vec, vc.parent_norm) >
                       free_bound_[t.vertex] + 2 * p_.eps) {
                ok = false;
            }
        }
        return ok;
    }

    void unassign(std::size_t e) {
        const std::int64_t v = value_[e];
        nonzero_ -= v > 0;
        below_full_ -= v < p_.full[e];
        const double w = static_cast<double>(v) * p_.unit;
        for (const Term& t : edge_terms_[e]) {
            Vec& acc = accum_[t.vertex];
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] -= w * (*t.outward)[i];
            ++unassigned_[t.vertex];
            free_bound_[t.vertex] += static_cast<double>(p_.full[e]) * p_.unit;
        }
        value_[e] = 0;
    }

    bool proper() const { return nonzero_ > 0 && below_full_ > 0; }
    const std::vector<std::int64_t>& value() const { return value_; }

    // DFS over edges last..0, values ascending: leaves appear in counting
    // order (edge 0 least significant). Returns true on the first proper hit.
    bool dfs(std::int64_t edge, Budget& budget, std::vector<std::int64_t>& out) {
        for (std::int64_t v : p_.choices[static_cast<std::size_t>(edge)]) {
            if (!budget.take())
                return false;
            bool ok = assign(static_cast<std::size_t>(edge), v);
            if (ok) {
                if (edge == 0) {
                    if (proper()) {
                        out = value_;
                        unassign(0);
                        return true;
                    }
                } else if (dfs(edge - 1, budget, out)) {
                    unassign(static_cast<std::size_t>(edge));
                    return true;
                }
            }
            unassign(static_cast<std::size_t>(edge));
            if (budget.hit || budget.cancelled)
                return false;
        }
        return false;
    }

private:
    struct Term {
        std::size_t vertex;
        const Vec* outward;
    };

    const SplitProblem& p_;
    std::vector<std::int64_t> value_;
    std::vector<std::vector<Term>> edge_terms_;
    std::vector<Vec> accum_;
    std::vector<std::size_t> unassigned_;
    std::vector<double> free_bound_;
    std::size_t nonzero_ = 0;
    std::size_t below_full_ = 0;
};

} // namespace varifold::kernels::detail
