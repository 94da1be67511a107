#include "varifold/varifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "varifold/kernels.hpp"

namespace varifold {

namespace {

constexpr double kClassTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

// ---------------------------------------------------------------------------
// AppropriateClass

AppropriateClass AppropriateClass::integers() {
    AppropriateClass c;
    c.kind = Kind::integers;
    c.denom = 1;
    c.pieces = {{1.0, kInf}};
    return c;
}

AppropriateClass AppropriateClass::grid(std::int64_t denom,
                                        std::vector<std::pair<double, double>> pieces,
                                        double closure_check_bound) {
    if (denom < 1)
        throw Error(Error::Code::invalid_input, "class denominator must be a positive integer");
    if (pieces.empty())
        throw Error(Error::Code::invalid_input, "class needs at least one piece");
    std::sort(pieces.begin(), pieces.end());
    for (const auto& [lo, hi] : pieces) {
        if (!(lo >= 1.0 - kClassTol))
            throw Error(Error::Code::invalid_input, "class pieces must lie in [1, inf)");
        if (!(hi >= lo))
            throw Error(Error::Code::invalid_input, "class piece with hi < lo");
    }
    AppropriateClass c;
    c.kind = Kind::grid;
    c.denom = denom;
    c.pieces = std::move(pieces);

    // Sum-closure on generators up to the bound.
    std::vector<double> gen;
    for (std::int64_t k = denom; k <= static_cast<std::int64_t>(closure_check_bound * denom); ++k)
        if (c.contains(static_cast<double>(k) / denom, kClassTol))
            gen.push_back(static_cast<double>(k) / denom);
    for (double a : gen)
        for (double b : gen) {
            double s = a + b;
            if (s <= closure_check_bound + kClassTol && !c.contains(s, kClassTol)) {
                std::ostringstream os;
                os << "class not closed under addition: " << a << " + " << b << " = " << s
                   << " is not a member";
                throw Error(Error::Code::invalid_input, os.str());
            }
        }
    return c;
}

bool AppropriateClass::contains(double x, double tol) const {
    if (!(x >= 1.0 - tol))
        return false;
    double k = std::round(x * static_cast<double>(denom));
    if (std::abs(x * static_cast<double>(denom) - k) > tol * static_cast<double>(denom))
        return false;
    double value = k / static_cast<double>(denom);
    if (kind == Kind::integers)
        return true;
    for (const auto& [lo, hi] : pieces)
        if (value >= lo - tol && value <= hi + tol)
            return true;
    return false;
}

std::optional<std::int64_t> AppropriateClass::to_units(double x, double tol) const {
    double k = std::round(x * static_cast<double>(denom));
    if (std::abs(x * static_cast<double>(denom) - k) > tol * static_cast<double>(denom))
        return std::nullopt;
    auto units = static_cast<std::int64_t>(k);
    if (units == 0)
        return x >= -tol && x <= tol ? std::optional<std::int64_t>(0) : std::nullopt;
    if (!unit_value_in_class(units))
        return std::nullopt;
    return units;
}

bool AppropriateClass::unit_value_in_class(std::int64_t k) const {
    return contains(static_cast<double>(k) / static_cast<double>(denom), kClassTol);
}

bool AppropriateClass::same_as(const AppropriateClass& other) const {
    return kind == other.kind && denom == other.denom && pieces == other.pieces;
}

std::string AppropriateClass::describe() const {
    if (kind == Kind::integers)
        return "positive integers";
    std::ostringstream os;
    os << "grid 1/" << denom << " on";
    for (const auto& [lo, hi] : pieces) {
        os << " [" << lo << ",";
        if (hi == kInf)
            os << "inf";
        else
            os << hi;
        os << "]";
    }
    return os.str();
}

std::vector<std::int64_t> AppropriateClass::admissible_units(std::int64_t full) const {
    std::vector<std::int64_t> out;
    for (std::int64_t k = 0; k <= full; ++k)
        if ((k == 0 || unit_value_in_class(k)) &&
            (k == full || unit_value_in_class(full - k)))
            out.push_back(k);
    return out;
}

// ---------------------------------------------------------------------------
// validate

Diagnostics validate(const PolyhedralVarifold& v) {
    Diagnostics d;
    if (v.mult.size() != v.arrangement.edges.size()) {
        d.violations.push_back(
            {"multiplicity-count", "multiplicities do not match the edge list"});
        return d;
    }
    for (std::size_t e = 0; e < v.mult.size(); ++e)
        if (!v.density_class.contains(v.mult[e], kClassTol))
            d.violations.push_back(
                {"multiplicity-not-in-class",
                 "edge " + std::to_string(e) + " has multiplicity " + std::to_string(v.mult[e]) +
                     " outside class (" + v.density_class.describe() + ")"});
    auto arr = arrangement_violations(v.arrangement);
    d.violations.insert(d.violations.end(), arr.begin(), arr.end());
    return d;
}

void require_valid_sub(const PolyhedralVarifold& v, const SubMultiplicity& m) {
    if (m.values.size() != v.edge_count())
        throw Error(Error::Code::invalid_input, "sub-multiplicity does not match the edge list");
    const auto& cls = v.density_class;
    for (std::size_t e = 0; e < m.values.size(); ++e) {
        double x = m.values[e];
        double r = v.mult[e] - x;
        if (x < -kClassTol || r < -kClassTol)
            throw Error(Error::Code::invalid_input,
                        "sub-multiplicity out of range on edge " + std::to_string(e));
        if (x > kClassTol && !cls.contains(x, kClassTol))
            throw Error(Error::Code::invalid_input,
                        "sub-multiplicity on edge " + std::to_string(e) + " not in class");
        if (r > kClassTol && !cls.contains(r, kClassTol))
            throw Error(Error::Code::invalid_input,
                        "remainder multiplicity on edge " + std::to_string(e) + " not in class");
    }
}

// ---------------------------------------------------------------------------
// algebra

PolyhedralVarifold add(const PolyhedralVarifold& v, const PolyhedralVarifold& w) {
    if (!v.density_class.same_as(w.density_class))
        throw Error(Error::Code::mismatch, "add: density classes differ");
    auto [arr, maps] = common_refinement(v.arrangement, w.arrangement);
    std::vector<double> mult(arr.edges.size(), 0.0);
    for (std::size_t e = 0; e < maps.a_edges.size(); ++e)
        for (std::size_t r : maps.a_edges[e])
            mult[r] += v.mult[e];
    for (std::size_t e = 0; e < maps.b_edges.size(); ++e)
        for (std::size_t r : maps.b_edges[e])
            mult[r] += w.mult[e];
    return PolyhedralVarifold{std::move(arr), std::move(mult), v.density_class};
}

PolyhedralVarifold scalar_multiple(const PolyhedralVarifold& v, std::int64_t k) {
    if (k < 1)
        throw Error(Error::Code::invalid_input, "scalar multiple needs k >= 1");
    PolyhedralVarifold out = v;
    for (double& m : out.mult)
        m *= static_cast<double>(k);
    return out;
}

PolyhedralVarifold sub_varifold(const PolyhedralVarifold& v, const SubMultiplicity& m) {
    require_valid_sub(v, m);
    PolyhedralVarifold out;
    out.density_class = v.density_class;
    out.arrangement.window = v.arrangement.window;

    std::vector<int> vertex_map(v.arrangement.vertices.size(), -1);
    auto remap = [&](const Endpoint& ep) {
        if (!ep.is_vertex())
            return ep;
        int& id = vertex_map[static_cast<std::size_t>(ep.vertex)];
        if (id < 0) {
            id = static_cast<int>(out.arrangement.vertices.size());
            out.arrangement.vertices.push_back(
                v.arrangement.vertices[static_cast<std::size_t>(ep.vertex)]);
        }
        return Endpoint::at_vertex(id);
    };
    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        if (m.values[e] <= kClassTol)
            continue;
        out.arrangement.edges.push_back(
            Edge{remap(v.arrangement.edges[e].a), remap(v.arrangement.edges[e].b)});
        out.mult.push_back(m.values[e]);
    }
    return out;
}

SubMultiplicity complement_sub(const PolyhedralVarifold& v, const SubMultiplicity& m) {
    SubMultiplicity out;
    out.values.resize(v.edge_count());
    for (std::size_t e = 0; e < v.edge_count(); ++e)
        out.values[e] = v.mult[e] - m.values[e];
    return out;
}

// ---------------------------------------------------------------------------
// measures

double weight_in(const PolyhedralVarifold& v, const ClipShape& shape) {
    return kernels::map_sum(v.edge_count(), [&](std::size_t e) {
        return v.mult[e] * clip_length(v.arrangement, e, shape);
    });
}

double weight_ball_mass(const PolyhedralVarifold& v, const Vec& a, double r) {
    if (!(r > 0) || a.size() != v.arrangement.dim())
        throw Error(Error::Code::invalid_input, "weight_ball_mass needs r > 0 and matching dim");
    if (!v.arrangement.window.contains_closed_ball(a, r, v.tolerances().geom))
        throw Error(Error::Code::invalid_input, "ball escapes the window");
    return weight_in(v, ClipShape::make_ball(a, r));
}

double total_weight(const PolyhedralVarifold& v) {
    return kernels::map_sum(v.edge_count(), [&](std::size_t e) {
        return v.mult[e] * v.arrangement.edge_length(e);
    });
}

double density(const PolyhedralVarifold& v, const Vec& x) {
    if (!v.arrangement.window.contains(x))
        throw Error(Error::Code::invalid_input, "density point must lie in the window");
    const double eps = v.tolerances().geom;
    for (std::size_t i = 0; i < v.arrangement.vertices.size(); ++i) {
        if (distance(x, v.arrangement.vertices[i]) <= eps) {
            double half_sum = 0;
            for (std::size_t e = 0; e < v.edge_count(); ++e) {
                const Edge& ed = v.arrangement.edges[e];
                int id = static_cast<int>(i);
                if ((ed.a.is_vertex() && ed.a.vertex == id) ||
                    (ed.b.is_vertex() && ed.b.vertex == id))
                    half_sum += v.mult[e];
            }
            return half_sum / 2;
        }
    }
    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        Vec a = v.arrangement.edge_a(e), b = v.arrangement.edge_b(e);
        if (detail::point_segment_distance(x, a, b) <= eps)
            return v.mult[e];
    }
    return 0.0;
}

PolyhedralVarifold restrict_to(const PolyhedralVarifold& v, const Region& e) {
    std::string why;
    if (!region_generic(e, v.arrangement, &why))
        throw Error(Error::Code::non_generic, "restrict: region not in generic position: " + why);
    const double eps = v.tolerances().geom;
    const ClipShape shape = ClipShape::make_region(e);

    PolyhedralVarifold out;
    out.density_class = v.density_class;
    out.arrangement.window = v.arrangement.window;

    std::vector<int> vertex_map(v.arrangement.vertices.size(), -1);
    auto keep_vertex = [&](int old_id) {
        int& id = vertex_map[static_cast<std::size_t>(old_id)];
        if (id < 0) {
            id = static_cast<int>(out.arrangement.vertices.size());
            out.arrangement.vertices.push_back(
                v.arrangement.vertices[static_cast<std::size_t>(old_id)]);
        }
        return Endpoint::at_vertex(id);
    };
    auto cut_endpoint = [&](const Vec& p) {
        // Cut points are strictly inside generically; near the boundary they
        // degrade to exits.
        if (v.arrangement.window.boundary_distance(p) <= eps)
            return Endpoint::at_exit(p);
        int id = static_cast<int>(out.arrangement.vertices.size());
        out.arrangement.vertices.push_back(p);
        return Endpoint::at_vertex(id);
    };

    for (std::size_t ei = 0; ei < v.edge_count(); ++ei) {
        Vec a = v.arrangement.edge_a(ei), b = v.arrangement.edge_b(ei);
        double len = distance(a, b);
        IntervalSet in = shape.clip(a, b);
        for (const auto& [t0, t1] : in.parts) {
            if ((t1 - t0) * len <= eps)
                continue;
            Endpoint pa = t0 * len <= eps
                              ? (v.arrangement.edges[ei].a.is_vertex()
                                     ? keep_vertex(v.arrangement.edges[ei].a.vertex)
                                     : v.arrangement.edges[ei].a)
                              : cut_endpoint(lerp(a, b, t0));
            Endpoint pb = (1 - t1) * len <= eps
                              ? (v.arrangement.edges[ei].b.is_vertex()
                                     ? keep_vertex(v.arrangement.edges[ei].b.vertex)
                                     : v.arrangement.edges[ei].b)
                              : cut_endpoint(lerp(a, b, t1));
            out.arrangement.edges.push_back(Edge{pa, pb});
            out.mult.push_back(v.mult[ei]);
        }
    }
    return out;
}

double strong_distance(const PolyhedralVarifold& v, const PolyhedralVarifold& w,
                       const ClipShape& k) {
    if (!v.arrangement.window.same_as(w.arrangement.window, v.tolerances().geom))
        throw Error(Error::Code::mismatch, "strong_distance: windows differ");
    if (k.kind == ClipShape::Kind::ball &&
        !v.arrangement.window.contains_closed_ball(k.center, k.radius, v.tolerances().geom))
        throw Error(Error::Code::invalid_input, "strong_distance: K escapes the window");
    if (k.kind == ClipShape::Kind::box) {
        for (std::size_t i = 0; i < k.lo.size(); ++i)
            if (!(k.lo[i] <= k.hi[i]))
                throw Error(Error::Code::invalid_input, "strong_distance: empty box");
        if (!v.arrangement.window.contains(k.lo) || !v.arrangement.window.contains(k.hi))
            throw Error(Error::Code::invalid_input, "strong_distance: K escapes the window");
    }

    auto [arr, maps] = common_refinement(v.arrangement, w.arrangement);
    std::vector<double> mv(arr.edges.size(), 0.0), mw(arr.edges.size(), 0.0);
    for (std::size_t e = 0; e < maps.a_edges.size(); ++e)
        for (std::size_t r : maps.a_edges[e])
            mv[r] = v.mult[e];
    for (std::size_t e = 0; e < maps.b_edges.size(); ++e)
        for (std::size_t r : maps.b_edges[e])
            mw[r] = w.mult[e];
    return kernels::map_sum(arr.edges.size(), [&](std::size_t e) {
        double dm = std::abs(mv[e] - mw[e]);
        return dm == 0 ? 0.0 : dm * clip_length(arr, e, k);
    });
}

} // namespace varifold
