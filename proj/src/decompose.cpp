#include "varifold/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace varifold {

namespace detail {

std::vector<std::int64_t> to_units(const PolyhedralVarifold& v, std::span<const double> values) {
    std::vector<std::int64_t> out(values.size());
    for (std::size_t e = 0; e < values.size(); ++e) {
        auto u = v.density_class.to_units(values[e], 1e-9);
        if (!u)
            throw Error(Error::Code::invalid_input,
                        "multiplicity on edge " + std::to_string(e) +
                            " is not representable in the density class");
        out[e] = *u;
    }
    return out;
}

std::vector<double> from_units(const PolyhedralVarifold& v,
                               std::span<const std::int64_t> units) {
    std::vector<double> out(units.size());
    for (std::size_t e = 0; e < units.size(); ++e)
        out[e] = static_cast<double>(units[e]) * v.density_class.unit();
    return out;
}

kernels::SplitProblem make_split_problem(const PolyhedralVarifold& v,
                                         std::span<const double> weights, bool one_sided) {
    kernels::SplitProblem p;
    p.unit = v.density_class.unit();
    p.eps = v.tolerances().num;
    const std::size_t ne = v.edge_count();
    p.full = to_units(v, weights);
    p.choices.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        if (one_sided) {
            for (std::int64_t k = 0; k <= p.full[e]; ++k)
                if (k == 0 || v.density_class.unit_value_in_class(k))
                    p.choices[e].push_back(k);
        } else {
            p.choices[e] = v.density_class.admissible_units(p.full[e]);
        }
    }
    for (std::size_t vi = 0; vi < v.arrangement.vertices.size(); ++vi) {
        kernels::SplitProblem::VertexConstraint vc;
        const Vec& pt = v.arrangement.vertices[vi];
        for (std::size_t e = 0; e < ne; ++e) {
            const Edge& ed = v.arrangement.edges[e];
            int id = static_cast<int>(vi);
            if (ed.a.is_vertex() && ed.a.vertex == id) {
                vc.edges.push_back(e);
                vc.outward.push_back(normalized(sub(pt, v.arrangement.endpoint_point(ed.b))));
            }
            if (ed.b.is_vertex() && ed.b.vertex == id) {
                vc.edges.push_back(e);
                vc.outward.push_back(normalized(sub(pt, v.arrangement.endpoint_point(ed.a))));
            }
        }
        if (vc.edges.empty())
            continue;
        vc.parent_vec = vertex_variation(v, weights, vi);
        vc.parent_norm = norm(vc.parent_vec);
        p.vertices.push_back(std::move(vc));
    }
    return p;
}

} // namespace detail

namespace {

constexpr double kTol = 1e-9;

bool essentially_zero(std::span<const double> values) {
    for (double x : values)
        if (x > kTol)
            return false;
    return true;
}

void require_validating(const PolyhedralVarifold& v, const char* op) {
    Diagnostics d = validate(v);
    if (!d.valid())
        throw Error(Error::Code::invalid_input,
                    std::string(op) + ": varifold does not validate: " + d.violations[0].code);
}

// Split search over the varifold with the given weights on v's arrangement.
// Returns the winning unit vector, nullopt if none exists; throws on cap.
// With an rng, selection is uniform over all proper splits (scanned
// exhaustively on small instances) instead of counting-order-first.
std::optional<std::vector<std::int64_t>> split_units(const PolyhedralVarifold& v,
                                                     std::span<const double> weights,
                                                     const SearchOptions& opts,
                                                     std::mt19937_64* select_rng = nullptr) {
    kernels::SplitProblem problem = detail::make_split_problem(v, weights);
    if (select_rng && problem.candidate_count() <= 250000) {
        auto all = kernels::scan_balanced(problem, opts.node_cap, opts.parallel);
        std::vector<std::vector<std::int64_t>> proper;
        for (auto& cand : all) {
            bool below = false;
            for (std::size_t e = 0; e < cand.size(); ++e)
                below = below || cand[e] < problem.full[e];
            if (below)
                proper.push_back(std::move(cand));
        }
        if (proper.empty())
            return std::nullopt;
        return proper[static_cast<std::size_t>((*select_rng)() % proper.size())];
    }
    if (select_rng)
        for (auto& ch : problem.choices)
            std::shuffle(ch.begin(), ch.end(), *select_rng);
    kernels::SearchStats stats;
    auto hit = kernels::search_split(problem, opts.node_cap, stats, opts.parallel);
    if (!hit && stats.cap_hit)
        throw Error(Error::Code::cap_exceeded,
                    "undecided: split search exceeded the node budget (" +
                        std::to_string(stats.nodes) + " nodes)");
    return hit;
}

} // namespace

std::vector<double> SplitMultiset::combined(std::size_t edge_count) const {
    std::vector<double> out(edge_count, 0.0);
    for (const auto& p : parts)
        for (std::size_t e = 0; e < edge_count && e < p.mult.size(); ++e)
            out[e] += static_cast<double>(p.count) * p.mult[e];
    return out;
}

std::int64_t SplitMultiset::total_count() const {
    std::int64_t s = 0;
    for (const auto& p : parts)
        s += p.count;
    return s;
}

bool check_split(const PolyhedralVarifold& v, const SubMultiplicity& m) {
    require_valid_sub(v, m);
    bool some_pos = false, some_below = false;
    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        some_pos = some_pos || m.values[e] > kTol;
        some_below = some_below || m.values[e] < v.mult[e] - kTol;
    }
    if (!some_pos || !some_below)
        throw Error(Error::Code::invalid_input, "check_split needs W != 0 and V - W != 0");
    const double eps = v.tolerances().num;
    for (std::size_t vi = 0; vi < v.arrangement.vertices.size(); ++vi) {
        Vec a = vertex_variation(v, m.values, vi);
        Vec p = vertex_variation(v, v.mult, vi);
        if (!kernels::split_balanced_at(a, p, norm(p), eps))
            return false;
    }
    return true;
}

std::optional<SubMultiplicity> find_split(const PolyhedralVarifold& v,
                                          const SearchOptions& opts) {
    require_validating(v, "find_split");
    if (v.edge_count() == 0 || essentially_zero(v.mult))
        throw Error(Error::Code::invalid_input, "find_split needs V != 0");
    auto units = split_units(v, v.mult, opts);
    if (!units)
        return std::nullopt;
    return SubMultiplicity{detail::from_units(v, *units)};
}

bool is_indecomposable(const PolyhedralVarifold& v, const SearchOptions& opts) {
    return !find_split(v, opts).has_value();
}

bool is_component(const PolyhedralVarifold& v, const SubMultiplicity& m,
                  const SearchOptions& opts) {
    require_valid_sub(v, m);
    if (essentially_zero(m.values))
        return false;
    SubMultiplicity rest = complement_sub(v, m);
    if (!essentially_zero(rest.values) && !check_split(v, m))
        return false;
    return is_indecomposable(sub_varifold(v, m), opts);
}

Decomposition decompose(const PolyhedralVarifold& v, const SearchOptions& opts) {
    require_validating(v, "decompose");
    Decomposition out;
    if (v.edge_count() == 0 || essentially_zero(v.mult))
        return out; // the zero varifold decomposes into nothing

    std::optional<std::mt19937_64> rng;
    if (opts.randomize_seed)
        rng.emplace(*opts.randomize_seed);

    std::vector<std::vector<std::int64_t>> stack{detail::to_units(v, v.mult)};
    std::map<std::vector<std::int64_t>, std::int64_t> leaves;
    while (!stack.empty()) {
        std::vector<std::int64_t> w = std::move(stack.back());
        stack.pop_back();
        std::vector<double> weights = detail::from_units(v, w);
        std::optional<std::vector<std::int64_t>> m;
        try {
            m = split_units(v, weights, opts, rng ? &*rng : nullptr);
        } catch (const Error& e) {
            if (e.code() != Error::Code::cap_exceeded)
                throw;
            out.undecided.push_back(weights);
            out.complete = false;
            continue;
        }
        if (!m) {
            ++leaves[w];
            continue;
        }
        std::vector<std::int64_t> rest(w.size());
        for (std::size_t e = 0; e < w.size(); ++e)
            rest[e] = w[e] - (*m)[e];
        stack.push_back(std::move(*m));
        stack.push_back(std::move(rest));
    }

    for (const auto& [units, count] : leaves)
        out.split.parts.push_back(SplitPart{detail::from_units(v, units), count});
    // canonical order: ascending counting rank, edge 0 least significant
    std::sort(out.split.parts.begin(), out.split.parts.end(),
              [](const SplitPart& a, const SplitPart& b) {
                  return std::lexicographical_compare(a.mult.rbegin(), a.mult.rend(),
                                                      b.mult.rbegin(), b.mult.rend());
              });
    return out;
}

std::vector<SplitMultiset> enumerate_decompositions(const PolyhedralVarifold& v,
                                                    const EnumerationCaps& caps) {
    require_validating(v, "enumerate_decompositions");
    double total_mult = std::accumulate(v.mult.begin(), v.mult.end(), 0.0);
    if (total_mult > caps.max_total_multiplicity)
        throw Error(Error::Code::cap_exceeded,
                    "enumerate_decompositions: total multiplicity exceeds the configured bound");
    if (v.edge_count() == 0 || essentially_zero(v.mult))
        return {SplitMultiset{}};

    // Stage 1: all parent-splitting sub-multiplicities (the full vector
    // included: it covers the case of an indecomposable parent).
    kernels::SplitProblem problem = detail::make_split_problem(v, v.mult);
    auto balanced = kernels::scan_balanced(problem, caps.node_cap, caps.parallel);

    // Stage 2: keep the indecomposable ones.
    SearchOptions sub_opts;
    sub_opts.node_cap = caps.node_cap;
    sub_opts.parallel = caps.parallel;
    std::vector<std::vector<std::int64_t>> parts;
    for (const auto& cand : balanced) {
        PolyhedralVarifold w = sub_varifold(v, SubMultiplicity{detail::from_units(v, cand)});
        if (is_indecomposable(w, sub_opts))
            parts.push_back(cand);
    }

    // Stage 3: all exact covers by nonnegative integer counts.
    const std::vector<std::int64_t> target = detail::to_units(v, v.mult);
    std::vector<SplitMultiset> out;
    std::vector<std::int64_t> counts(parts.size(), 0);
    std::uint64_t nodes = 0;

    auto emit = [&]() {
        SplitMultiset d;
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (counts[i] > 0)
                d.parts.push_back(SplitPart{detail::from_units(v, parts[i]), counts[i]});
        out.push_back(std::move(d));
    };
    auto cover = [&](auto&& self, std::size_t i, std::vector<std::int64_t>& rem,
                     std::int64_t rem_total) -> void {
        if (++nodes > caps.node_cap)
            throw Error(Error::Code::cap_exceeded, "enumerate_decompositions: cover search cap");
        if (rem_total == 0) {
            emit(); // remaining parts keep count 0
            return;
        }
        if (i == parts.size())
            return;
        std::int64_t max_c = std::numeric_limits<std::int64_t>::max();
        std::int64_t part_total = 0;
        for (std::size_t e = 0; e < rem.size(); ++e) {
            part_total += parts[i][e];
            if (parts[i][e] > 0)
                max_c = std::min(max_c, rem[e] / parts[i][e]);
        }
        for (std::int64_t c = 0; c <= max_c; ++c) {
            if (c > 0)
                for (std::size_t e = 0; e < rem.size(); ++e)
                    rem[e] -= parts[i][e];
            counts[i] = c;
            self(self, i + 1, rem, rem_total - c * part_total);
        }
        for (std::size_t e = 0; e < rem.size(); ++e)
            rem[e] += max_c * parts[i][e];
        counts[i] = 0;
    };
    std::vector<std::int64_t> rem = target;
    std::int64_t rem_total = std::accumulate(rem.begin(), rem.end(), std::int64_t{0});
    cover(cover, 0, rem, rem_total);
    return out;
}

VerifyReport verify_decomposition(const PolyhedralVarifold& v, const SplitMultiset& d,
                                  const SearchOptions& opts) {
    VerifyReport rep;
    auto fail = [&](int cond, std::string reason) {
        rep.pass = false;
        rep.failed_condition = cond;
        rep.reason = std::move(reason);
        return rep;
    };

    // (1) every member is a component of V
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const auto& part = d.parts[i];
        std::string label = "part " + std::to_string(i);
        if (part.count < 1)
            return fail(1, label + " has a non-positive count");
        SubMultiplicity m{part.mult};
        try {
            require_valid_sub(v, m);
        } catch (const Error& e) {
            return fail(1, label + " is not a class-valid sub-multiplicity: " + e.what());
        }
        if (essentially_zero(m.values))
            return fail(1, label + " is zero");
        SubMultiplicity rest = complement_sub(v, m);
        if (!essentially_zero(rest.values) && !check_split(v, m))
            return fail(1, label + " does not split V: first variations unbalance at a vertex");
        if (!is_indecomposable(sub_varifold(v, m), opts))
            return fail(1, label + ": member decomposable");
    }

    // (2) edgewise multiplicity sum reproduces V
    std::vector<double> sum = d.combined(v.edge_count());
    for (std::size_t e = 0; e < v.edge_count(); ++e)
        if (std::abs(sum[e] - v.mult[e]) > kTol)
            return fail(2, "edgewise sum mismatch on edge " + std::to_string(e) + ": parts give " +
                               std::to_string(sum[e]) + ", parent has " +
                               std::to_string(v.mult[e]));

    // (3) atomwise total-variation sum reproduces ||dV||
    const double eps = v.tolerances().num;
    for (std::size_t vi = 0; vi < v.arrangement.vertices.size(); ++vi) {
        double lhs = 0;
        for (const auto& part : d.parts)
            lhs += static_cast<double>(part.count) * norm(vertex_variation(v, part.mult, vi));
        double rhs = norm(vertex_variation(v, v.mult, vi));
        if (std::abs(lhs - rhs) > eps)
            return fail(3, "total-variation sum mismatch at vertex " + std::to_string(vi));
    }
    return rep;
}

bool is_maximal(const SplitMultiset& d, const PolyhedralVarifold& parent, const Region& b,
                const EnumerationCaps& caps) {
    if (d.parts.empty())
        throw Error(Error::Code::invalid_input, "is_maximal: empty multiset");
    const ClipShape shape = ClipShape::make_region(b);
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        double w = kernels::map_sum_serial(parent.edge_count(), [&](std::size_t e) {
            return d.parts[i].mult[e] * clip_length(parent.arrangement, e, shape);
        });
        if (!(w > kTol))
            throw Error(Error::Code::invalid_input,
                        "is_maximal: part " + std::to_string(i) + " carries no weight in B");
    }

    // v(xi): combined multiplicities as the target varifold.
    std::vector<double> total = d.combined(parent.edge_count());
    PolyhedralVarifold target = parent;
    target.mult = total;
    std::vector<std::int64_t> target_units = detail::to_units(parent, total);

    // Members of competing families only need to lie in the class themselves.
    kernels::SplitProblem problem = detail::make_split_problem(target, total, /*one_sided=*/true);
    auto balanced = kernels::scan_balanced(problem, caps.node_cap, caps.parallel);
    std::vector<std::vector<std::int64_t>> members;
    for (auto& cand : balanced) {
        double w = kernels::map_sum_serial(parent.edge_count(), [&](std::size_t e) {
            return static_cast<double>(cand[e]) * parent.density_class.unit() *
                   clip_length(parent.arrangement, e, shape);
        });
        if (w > kTol)
            members.push_back(std::move(cand));
    }

    // Maximize the total count over exact covers of the target.
    std::int64_t best = 0;
    std::uint64_t nodes = 0;
    auto search = [&](auto&& self, std::size_t i, std::vector<std::int64_t>& rem,
                      std::int64_t rem_total, std::int64_t count) -> void {
        if (++nodes > caps.node_cap)
            throw Error(Error::Code::cap_exceeded, "is_maximal: cover search cap");
        if (rem_total == 0) {
            best = std::max(best, count);
            return;
        }
        if (i == members.size())
            return;
        std::int64_t max_c = std::numeric_limits<std::int64_t>::max();
        std::int64_t part_total = 0;
        for (std::size_t e = 0; e < rem.size(); ++e) {
            part_total += members[i][e];
            if (members[i][e] > 0)
                max_c = std::min(max_c, rem[e] / members[i][e]);
        }
        for (std::int64_t c = max_c; c >= 0; --c) {
            for (std::size_t e = 0; e < rem.size(); ++e)
                rem[e] -= c * members[i][e];
            self(self, i + 1, rem, rem_total - c * part_total, count + c);
            for (std::size_t e = 0; e < rem.size(); ++e)
                rem[e] += c * members[i][e];
        }
    };
    std::vector<std::int64_t> rem = target_units;
    std::int64_t rem_total = std::accumulate(rem.begin(), rem.end(), std::int64_t{0});
    search(search, 0, rem, rem_total, 0);
    return d.total_count() >= best;
}

bool support_connected(const PolyhedralVarifold& v, std::span<const double> weights) {
    // Union-find over vertices; every exit endpoint is its own node, so
    // supports touching only at the window boundary stay disconnected.
    std::size_t nodes = v.arrangement.vertices.size();
    std::vector<std::size_t> node_of(2 * v.edge_count());
    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        const Edge& ed = v.arrangement.edges[e];
        node_of[2 * e] = ed.a.is_vertex() ? static_cast<std::size_t>(ed.a.vertex) : nodes++;
        node_of[2 * e + 1] = ed.b.is_vertex() ? static_cast<std::size_t>(ed.b.vertex) : nodes++;
    }
    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < v.edge_count(); ++e)
        if (weights[e] > kTol)
            parent[find(node_of[2 * e])] = find(node_of[2 * e + 1]);
    std::size_t root = static_cast<std::size_t>(-1);
    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        if (weights[e] <= kTol)
            continue;
        std::size_t r = find(node_of[2 * e]);
        if (root == static_cast<std::size_t>(-1))
            root = r;
        else if (r != root)
            return false;
    }
    return true;
}

} // namespace varifold
