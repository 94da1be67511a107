// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run via ctest or directly: ./acceptance

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "varifold/cli.hpp"
#include "varifold/decompose.hpp"
#include "varifold/fixtures.hpp"
#include "varifold/io.hpp"
#include "varifold/variation.hpp"

using namespace varifold;

namespace {

constexpr double kEps = 1e-9;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

using UnitVec = std::vector<int>;

UnitVec to_units(const std::vector<double>& m) {
    UnitVec u;
    for (double x : m)
        u.push_back(static_cast<int>(std::lround(x)));
    return u;
}

std::map<UnitVec, int> canonical(const SplitMultiset& d) {
    std::map<UnitVec, int> out;
    for (const auto& p : d.parts)
        out[to_units(p.mult)] += static_cast<int>(p.count);
    return out;
}

std::vector<PolyhedralVarifold> named_fixtures() {
    return {fixtures::six_rays(), fixtures::crossing_segment(2), fixtures::y_junction(),
            fixtures::tent(), fixtures::disjoint_segments()};
}

// sub-multiplicity "multiplicities of restrict(V,E)" for regions that cut no
// edge: full multiplicity on edges inside E, zero outside
SubMultiplicity restrict_multiplicities(const PolyhedralVarifold& v, const Region& e) {
    SubMultiplicity m;
    m.values.assign(v.edge_count(), 0.0);
    for (std::size_t i = 0; i < v.edge_count(); ++i) {
        Vec mid = lerp(v.arrangement.edge_a(i), v.arrangement.edge_b(i), 0.5);
        if (e.contains(mid))
            m.values[i] = v.mult[i];
    }
    return m;
}

bool region_cuts_an_edge(const PolyhedralVarifold& v, const Region& e) {
    for (std::size_t i = 0; i < v.edge_count(); ++i) {
        IntervalSet in = ClipShape::make_region(e).clip(v.arrangement.edge_a(i),
                                                        v.arrangement.edge_b(i));
        double len = v.arrangement.edge_length(i);
        double inside = in.measure() * len;
        if (inside > kEps && inside < len - kEps)
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------

Check criterion1_six_ray_families() {
    Check c;
    PolyhedralVarifold star = fixtures::six_rays();
    c.require(first_variation(star).empty(), "dV of the six-ray star is not empty");

    SplitMultiset h1;
    h1.parts = {{{1, 0, 0, 1, 0, 0}, 2}, {{0, 1, 0, 0, 1, 0}, 2}, {{0, 0, 1, 0, 0, 1}, 2}};
    c.require(verify_decomposition(star, h1).pass, "H1 with counts 2 failed verification");

    SplitMultiset h3c;
    h3c.parts = {{{1, 0, 2, 0, 2, 0}, 1}, {{0, 2, 0, 1, 0, 2}, 1}, {{1, 0, 0, 1, 0, 0}, 1}};
    c.require(verify_decomposition(star, h3c).pass, "corrected H3 failed verification");

    SplitMultiset h2;
    h2.parts = {{{1, 1, 1, 1, 1, 1}, 2}};
    VerifyReport r2 = verify_decomposition(star, h2);
    c.require(!r2.pass && r2.failed_condition == 1 &&
                  r2.reason.find("member decomposable") != std::string::npos,
              "H2 must fail condition 1 with reason 'member decomposable'");

    SplitMultiset h3;
    h3.parts = {{{1, 0, 2, 0, 2, 0}, 1}, {{0, 2, 0, 1, 0, 2}, 1}};
    VerifyReport r3 = verify_decomposition(star, h3);
    c.require(!r3.pass && r3.failed_condition == 2 &&
                  r3.reason.find("edgewise sum mismatch") != std::string::npos,
              "printed H3 must fail condition 2 with an edgewise sum mismatch");
    return c;
}

Check criterion2_enumeration_oracle() {
    Check c;
    // Independent brute force: balance at the junction reduces to the two
    // integer equations m2+m3 = m5+m6 and 4(m1-m4) = m3+m5-m2-m6 (cos theta
    // = 1/4 clears the surds). Minimal balanced vectors are the components;
    // exact covers of (2,...,2) give the decompositions.
    std::vector<UnitVec> balanced;
    UnitVec m(6);
    for (m[0] = 0; m[0] <= 2; ++m[0])
        for (m[1] = 0; m[1] <= 2; ++m[1])
            for (m[2] = 0; m[2] <= 2; ++m[2])
                for (m[3] = 0; m[3] <= 2; ++m[3])
                    for (m[4] = 0; m[4] <= 2; ++m[4])
                        for (m[5] = 0; m[5] <= 2; ++m[5]) {
                            bool bal = m[1] + m[2] == m[4] + m[5] &&
                                       4 * (m[0] - m[3]) == m[2] + m[4] - m[1] - m[5];
                            bool nz = m[0] + m[1] + m[2] + m[3] + m[4] + m[5] > 0;
                            if (bal && nz)
                                balanced.push_back(m);
                        }
    std::vector<UnitVec> minimal;
    for (const auto& a : balanced) {
        bool is_min = true;
        for (const auto& b : balanced) {
            if (b == a)
                continue;
            bool leq = true;
            for (int e = 0; e < 6; ++e)
                leq = leq && b[e] <= a[e];
            if (leq)
                is_min = false;
        }
        if (is_min)
            minimal.push_back(a);
    }
    std::set<std::map<UnitVec, int>> oracle;
    std::map<UnitVec, int> current;
    auto rec = [&](auto&& self, std::size_t i, UnitVec rem) -> void {
        bool done = std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; });
        if (done) {
            oracle.insert(current);
            return;
        }
        if (i == minimal.size())
            return;
        int maxc = 6;
        for (int e = 0; e < 6; ++e)
            if (minimal[i][e] > 0)
                maxc = std::min(maxc, rem[e] / minimal[i][e]);
        for (int cnt = 0; cnt <= maxc; ++cnt) {
            UnitVec r2 = rem;
            for (int e = 0; e < 6; ++e)
                r2[e] -= cnt * minimal[i][e];
            if (*std::min_element(r2.begin(), r2.end()) < 0)
                continue;
            if (cnt > 0)
                current[minimal[i]] = cnt;
            self(self, i + 1, r2);
            current.erase(minimal[i]);
        }
    };
    rec(rec, 0, UnitVec(6, 2));

    auto got_list = enumerate_decompositions(fixtures::six_rays());
    std::set<std::map<UnitVec, int>> got;
    for (const auto& d : got_list)
        got.insert(canonical(d));

    c.require(got_list.size() == 2, "enumerate must return exactly 2 decompositions, got " +
                                        std::to_string(got_list.size()));
    c.require(oracle.size() == 2, "integer-balance brute force must find exactly 2");
    c.require(got == oracle, "enumerated decompositions differ from the brute force");
    return c;
}

Check criterion3_decompose_verifies() {
    Check c;
    for (const auto& v : named_fixtures()) {
        Decomposition d = decompose(v);
        c.require(d.complete, "decompose hit the cap on a named fixture");
        c.require(verify_decomposition(v, d.split).pass, "decompose failed verification");
    }
    // the doubled crossing segment is V = W + W
    Decomposition ww = decompose(fixtures::crossing_segment(2));
    c.require(ww.split.parts.size() == 1 && ww.split.parts[0].count == 2 &&
                  ww.split.parts[0].mult == std::vector<double>{1.0},
              "mult-2 crossing segment must decompose as unit segment with count 2");

    std::mt19937_64 rng(2024);
    for (int it = 0; it < 200; ++it) {
        PolyhedralVarifold v = testsupport::random_balanced_star(rng);
        Decomposition d = decompose(v);
        c.require(d.complete, "decompose hit the cap on a fuzzed star");
        VerifyReport rep = verify_decomposition(v, d.split);
        c.require(rep.pass, "fuzz " + std::to_string(it) + ": " + rep.reason);
        if (!c.ok)
            break;
    }
    return c;
}

Check criterion4_oracle_agreement() {
    Check c;
    std::mt19937_64 rng(404);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 60; ++it) {
        PolyhedralVarifold v = testsupport::random_balanced_star(rng);
        double total = 0;
        for (double m : v.mult)
            total += m;
        if (total > 12)
            continue;
        ++checked;
        auto mine = canonical(decompose(v).split);
        bool found = false;
        for (const auto& d : enumerate_decompositions(v))
            found = found || canonical(d) == mine;
        c.require(found, "decompose output missing from the enumeration (instance " +
                             std::to_string(it) + ")");
        if (!c.ok)
            break;
    }
    c.require(checked >= 60, "not enough small fuzz instances generated");
    return c;
}

Check criterion5_equivalence_if() {
    Check c;
    std::mt19937_64 rng(505);
    int done = 0, guard = 0;
    while (done < 100 && guard++ < 1000) {
        testsupport::SeparatedPair pair = testsupport::separated_clusters(rng);
        if (!region_generic(pair.region, pair.varifold.arrangement))
            continue;
        if (!v_boundary(pair.varifold, pair.region).empty())
            continue; // generator should prevent this; skip defensively
        SubMultiplicity m{pair.right_mult};
        bool proper = false, below = false;
        for (std::size_t e = 0; e < m.values.size(); ++e) {
            proper = proper || m.values[e] > kEps;
            below = below || m.values[e] < pair.varifold.mult[e] - kEps;
        }
        if (!proper || !below)
            continue;
        ++done;
        c.require(check_split(pair.varifold, m),
                  "vanishing V dE must imply the split condition");
        if (!c.ok)
            break;
    }
    c.require(done == 100, "needed 100 boundary-free pairs, got " + std::to_string(done));
    return c;
}

Check criterion6_equivalence_only_if() {
    Check c;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    PolyhedralVarifold ones = fixtures::six_rays();
    ones.mult.assign(6, 1.0);
    std::vector<PolyhedralVarifold> stationary = {fixtures::y_junction(),
                                                  fixtures::crossing_segment(1), ones};

    for (const auto& v : stationary) {
        int done = 0, guard = 0;
        while (done < 100 && guard++ < 3000) {
            double radius = v.arrangement.window.radius;
            Region e = Region::intersection_of(
                {Halfspace{{u(rng), u(rng)}, u(rng) * radius / 2}});
            if (norm(e.halfspaces[0].normal) < 0.1)
                continue;
            if (!region_generic(e, v.arrangement))
                continue;
            ++done;
            bool split = restriction_split_holds(v, e);
            bool boundary_free = v_boundary(v, e).empty();
            c.require(split == boundary_free,
                      "split and vanishing boundary must coincide for stationary "
                      "unit-multiplicity varifolds");
            // where no edge is cut the edgewise check_split agrees
            if (!region_cuts_an_edge(v, e)) {
                SubMultiplicity m = restrict_multiplicities(v, e);
                bool proper = false, below = false;
                for (std::size_t i = 0; i < m.values.size(); ++i) {
                    proper = proper || m.values[i] > kEps;
                    below = below || m.values[i] < v.mult[i] - kEps;
                }
                if (proper && below)
                    c.require(check_split(v, m) == split,
                              "edgewise and measure-level split disagree on an uncut region");
            }
            if (!c.ok)
                return c;
        }
        c.require(done == 100, "needed 100 generic regions per fixture");
    }

    // the tent shows the one-way direction: a split without vanishing boundary
    PolyhedralVarifold tent = fixtures::tent();
    c.require(check_split(tent, SubMultiplicity{{0, 0, 0, 1, 1}}),
              "the tent part must split the tent");
    Region above = Region::intersection_of({Halfspace{{0.0, 1.0}, 0.25}});
    c.require(!v_boundary(tent, above).empty(), "tent V dE must be nonzero");
    return c;
}

Check criterion7_measure_identities() {
    Check c;
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& v : named_fixtures()) {
        const Tolerances tol = v.tolerances();
        VectorAtomMeasure dv = first_variation(v);

        for (int it = 0; it < 30; ++it) {
            Region e = Region::intersection_of(
                {Halfspace{{u(rng), u(rng)}, u(rng) * v.arrangement.window.radius / 2}});
            if (norm(e.halfspaces[0].normal) < 0.1 || !region_generic(e, v.arrangement))
                continue;

            // ||T restricted to E|| = ||T|| restricted to E, atom by atom
            ScalarAtomMeasure lhs = total_variation_measure(restrict_measure(dv, e, tol));
            ScalarAtomMeasure rhs = restrict_scalar_measure(total_variation_measure(dv), e, tol);
            c.require(lhs.atoms.size() == rhs.atoms.size(), "restriction identity: atom count");
            for (std::size_t i = 0; i < lhs.atoms.size() && c.ok; ++i) {
                c.require(distance(lhs.atoms[i].point, rhs.atoms[i].point) <= kEps,
                          "restriction identity: atom location");
                c.require(std::abs(lhs.atoms[i].mass - rhs.atoms[i].mass) <= kEps,
                          "restriction identity: atom mass");
            }

            // V d(complement of E) = -V dE
            VectorAtomMeasure plus = v_boundary(v, e);
            VectorAtomMeasure minus = v_boundary(v, e.complemented());
            c.require(combine(plus, minus, 1.0, tol).empty(),
                      "boundary antisymmetry violated");
            if (!c.ok)
                return c;
        }
    }

    // linearity of the first variation over add and scalar_multiple
    for (const auto& v : named_fixtures()) {
        const Tolerances tol = v.tolerances();
        PolyhedralVarifold doubled = scalar_multiple(v, 2);
        VectorAtomMeasure twice = first_variation(doubled);
        VectorAtomMeasure once = first_variation(v);
        c.require(twice.atoms.size() == once.atoms.size(), "scalar linearity: atom count");
        for (std::size_t i = 0; i < twice.atoms.size() && c.ok; ++i)
            c.require(norm(sub(twice.atoms[i].vector, scaled(once.atoms[i].vector, 2.0))) <= kEps,
                      "scalar linearity: atom value");

        PolyhedralVarifold sum = add(v, v);
        VectorAtomMeasure via_add = first_variation(sum);
        c.require(combine(via_add, twice, -1.0, tol).empty(), "additive linearity");
        if (!c.ok)
            return c;
    }
    return c;
}

Check criterion8_apriori() {
    Check c;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& v : named_fixtures()) {
        int done = 0, guard = 0;
        while (done < 100 && guard++ < 20000) {
            std::size_t e = static_cast<std::size_t>(u(rng) * v.edge_count()) % v.edge_count();
            Vec a = lerp(v.arrangement.edge_a(e), v.arrangement.edge_b(e), u(rng));
            double margin_to_boundary = v.arrangement.window.boundary_distance(a);
            if (margin_to_boundary < 0.05)
                continue;
            double r = u(rng) * (margin_to_boundary - 1e-6);
            if (r < 1e-3)
                continue;
            double dens = density(v, a);
            if (dens < 0.5)
                continue;
            double d = dens * (0.3 + 0.7 * u(rng));
            double cc = 0.01 + 3.0 * u(rng);
            AprioriReport rep = apriori_check(v, a, r, cc, d);
            if (!rep.hypotheses_hold)
                continue;
            ++done;
            c.require(rep.margin >= -kEps, "a-priori margin negative: " +
                                               std::to_string(rep.margin));
            if (!c.ok)
                return c;
        }
        c.require(done == 100, "needed 100 hypothesis-satisfying tuples per fixture");
    }
    return c;
}

Check criterion9_strong_distance() {
    Check c;
    PolyhedralVarifold one = fixtures::crossing_segment(1);
    PolyhedralVarifold two = fixtures::crossing_segment(2);
    ClipShape k = ClipShape::make_ball({0.0, 0.0}, 0.5);
    c.require(std::abs(strong_distance(two, one, k) - 1.0) <= kEps,
              "multiplicity pair distance must be |2-1| times the covered length");
    c.require(strong_distance(one, one, k) <= kEps, "distance of equal inputs must vanish");

    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    std::uniform_int_distribution<int> mu(1, 3);
    auto random_net = [&]() {
        std::vector<std::pair<Vec, Vec>> segs;
        for (int i = 0; i < 4; ++i) {
            Vec p = {u(rng), u(rng)}, q = {u(rng), u(rng)};
            if (distance(p, q) > 0.3)
                segs.push_back({p, q});
        }
        if (segs.empty())
            segs.push_back({{-1.0, 0.0}, {1.0, 0.0}});
        PolyhedralVarifold v;
        v.density_class = AppropriateClass::integers();
        v.arrangement = build_arrangement(segs, Window::make_ball({0.0, 0.0}, 2.0));
        for (std::size_t e = 0; e < v.arrangement.edges.size(); ++e)
            v.mult.push_back(mu(rng));
        return v;
    };
    ClipShape kb = ClipShape::make_box({-1.0, -1.0}, {1.0, 1.0});
    for (int it = 0; it < 25; ++it) {
        PolyhedralVarifold a = random_net(), b = random_net(), m = random_net();
        double ab = strong_distance(a, b, kb);
        c.require(std::abs(ab - strong_distance(b, a, kb)) <= kEps, "symmetry violated");
        c.require(strong_distance(a, a, kb) <= kEps, "identity violated");
        c.require(ab <= strong_distance(a, m, kb) + strong_distance(m, b, kb) + 3 * kEps,
                  "triangle inequality violated");
        if (!c.ok)
            break;
    }
    return c;
}

Check criterion10_determinism() {
    Check c;
    auto run = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return std::pair<int, std::string>(code, out.str());
    };
    std::string path = "acceptance_six_rays.json";
    auto demo = run({"demo", "six-rays", "--out", path});
    c.require(demo.first == 0, "demo failed");
    auto d1 = run({"decompose", path});
    auto d2 = run({"decompose", path});
    c.require(d1.first == 0 && d1.second == d2.second,
              "decompose output is not byte-identical across runs");
    auto e1 = run({"enumerate", path});
    auto e2 = run({"enumerate", path});
    c.require(e1.first == 0 && e1.second == e2.second,
              "enumerate output is not byte-identical across runs");
    return c;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Check()> run;
    };
    std::vector<Criterion> criteria = {
        {1, "six-ray fixture: stationarity and the three printed families", criterion1_six_ray_families},
        {2, "enumeration matches the integer-balance brute force (exactly 2)", criterion2_enumeration_oracle},
        {3, "decompose verifies on named fixtures and 200 fuzzed stars", criterion3_decompose_verifies},
        {4, "decompose output appears in the enumeration (mass <= 12)", criterion4_oracle_agreement},
        {5, "vanishing V dE implies the split condition (100 pairs)", criterion5_equivalence_if},
        {6, "stationary unit-multiplicity: split iff vanishing boundary; tent one-way", criterion6_equivalence_only_if},
        {7, "measure calculus identities (restriction, antisymmetry, linearity)", criterion7_measure_identities},
        {8, "a-priori estimate margin on 100 random tuples per fixture", criterion8_apriori},
        {9, "strong distance: pseudometric axioms and hand values", criterion9_strong_distance},
        {10, "byte-identical decompose and enumerate output", criterion10_determinism},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        if (c.ok) {
            std::printf("PASS criterion %d: %s\n", cr.id, cr.title);
        } else {
            std::printf("FAIL criterion %d: %s -- %s\n", cr.id, cr.title, c.detail.c_str());
            ++failures;
        }
    }
    return failures;
}
