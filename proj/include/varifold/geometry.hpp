#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varifold/error.hpp"

namespace varifold {

/// Points and directions in R^n. The dimension n >= 2 is fixed per instance
/// (per window); all containers holding Vec values agree on it.
using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double distance(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double k);
Vec normalized(const Vec& a);
Vec lerp(const Vec& a, const Vec& b, double t);
bool finite(const Vec& a);

/// Compares coordinates left to right; total order used to canonicalize
/// atom and vertex listings.
bool lex_less(const Vec& a, const Vec& b);

/// The bounded open set U everything lives in. Membership is strict.
struct Window {
    enum class Kind { ball, box };

    Kind kind = Kind::ball;
    Vec center;        // ball
    double radius = 0; // ball
    Vec lo, hi;        // box, componentwise lo < hi

    static Window make_ball(Vec center, double radius);
    static Window make_box(Vec lo, Vec hi);

    std::size_t dim() const;
    double diameter() const;
    bool contains(const Vec& p) const;
    /// Distance from p to the topological boundary; meaningful for p in the
    /// closed window (0 on the boundary, negative outside by up to the
    /// overshoot along the coordinate metric used per kind).
    double boundary_distance(const Vec& p) const;
    bool contains_closed_ball(const Vec& a, double r, double slack) const;
    bool same_as(const Window& other, double tol) const;
};

/// Geometric and numeric tolerances. Incidence/snap decisions use geom
/// (relative to the window diameter); measure comparisons use num (absolute).
struct Tolerances {
    double geom = 1e-12;
    double num = 1e-9;

    static Tolerances for_window(const Window& w) {
        return Tolerances{1e-9 * w.diameter(), 1e-9};
    }
};

/// Open half-space { x : normal . x > offset } with |normal| = 1.
struct Halfspace {
    Vec normal;
    double offset = 0;
};

/// A region E of the window: intersection or union of finitely many open
/// half-spaces, optionally complemented. Operations that cut along its
/// boundary hyperplanes require generic position w.r.t. the arrangement.
struct Region {
    enum class Combine { intersection, united };

    Combine combine = Combine::intersection;
    std::vector<Halfspace> halfspaces;
    bool complement = false;

    static Region intersection_of(std::vector<Halfspace> hs);
    static Region union_of(std::vector<Halfspace> hs);
    static Region whole();

    bool contains(const Vec& p) const;
    Region complemented() const;
};

/// Edge endpoint: either a registered vertex (strictly inside the window)
/// or a boundary-exit point on the window boundary. Exit points are not
/// vertices and never carry first-variation atoms.
struct Endpoint {
    int vertex = -1;
    Vec exit;

    bool is_vertex() const { return vertex >= 0; }
    static Endpoint at_vertex(int id) { return Endpoint{id, {}}; }
    static Endpoint at_exit(Vec p) { return Endpoint{-1, std::move(p)}; }
};

struct Edge {
    Endpoint a, b;
};

/// Straight-segment skeleton: pairwise interior-disjoint edges meeting only
/// at registered vertices. Every interior edge endpoint is a vertex.
struct Arrangement {
    Window window;
    std::vector<Vec> vertices;
    std::vector<Edge> edges;

    std::size_t dim() const { return window.dim(); }
    const Vec& endpoint_point(const Endpoint& e) const;
    Vec edge_a(std::size_t e) const { return endpoint_point(edges[e].a); }
    Vec edge_b(std::size_t e) const { return endpoint_point(edges[e].b); }
    double edge_length(std::size_t e) const;
    double total_length() const;
    Tolerances tolerances() const { return Tolerances::for_window(window); }
};

/// Subsets of the unit parameter interval [0,1]; used for all 1-d clipping.
struct IntervalSet {
    std::vector<std::pair<double, double>> parts; // sorted, disjoint, lo < hi

    static IntervalSet empty() { return {}; }
    static IntervalSet full() { return IntervalSet{{{0.0, 1.0}}}; }
    static IntervalSet of(double lo, double hi);

    IntervalSet intersect(const IntervalSet& o) const;
    IntervalSet unite(const IntervalSet& o) const;
    IntervalSet complement() const;
    double measure() const;
};

/// Closed ball, closed box, or Region used as a clipping shape.
struct ClipShape {
    enum class Kind { ball, box, region };

    Kind kind = Kind::ball;
    Vec center;
    double radius = 0;
    Vec lo, hi;
    Region reg;

    static ClipShape make_ball(Vec center, double radius);
    static ClipShape make_box(Vec lo, Vec hi);
    static ClipShape make_region(Region r);

    /// Parameter subset of segment p + t (q - p), t in [0,1], inside the shape.
    IntervalSet clip(const Vec& p, const Vec& q) const;
};

double clip_length(const Vec& p, const Vec& q, const ClipShape& shape);
double clip_length(const Arrangement& arr, std::size_t edge, const ClipShape& shape);

/// Normalizes raw segment soup into a valid Arrangement. Interior crossings
/// of non-collinear segments become vertices; collinear overlaps are split at
/// all endpoints and merged so edge supports are simple. Endpoints must lie
/// in the closed window (snapped within geom tolerance).
Arrangement build_arrangement(const std::vector<std::pair<Vec, Vec>>& segments,
                              const Window& window);

struct RefinementMaps {
    // refined edge ids covering each input edge, in order along the edge
    std::vector<std::vector<std::size_t>> a_edges;
    std::vector<std::vector<std::size_t>> b_edges;
};

/// Refined arrangement covering both supports, with edge maps partitioning
/// every input edge into refined edges.
std::pair<Arrangement, RefinementMaps> common_refinement(const Arrangement& a,
                                                         const Arrangement& b);

struct Violation {
    std::string code;
    std::string detail;
};

/// Structural checks of the Arrangement invariants; never throws.
std::vector<Violation> arrangement_violations(const Arrangement& arr);

/// Generic position of a region's boundary hyperplanes w.r.t. an arrangement:
/// no edge endpoint (vertex or exit) within geom tolerance of any hyperplane,
/// and no edge contained in one.
bool region_generic(const Region& region, const Arrangement& arr, std::string* why = nullptr);

namespace detail {

struct NormalizeResult {
    Arrangement arrangement;
    // refined edge ids covering each input segment
    std::vector<std::vector<std::size_t>> segment_edges;
};

NormalizeResult normalize_segments(const std::vector<std::pair<Vec, Vec>>& segments,
                                   const Window& window);

/// Distance from point x to the segment [a, b].
double point_segment_distance(const Vec& x, const Vec& a, const Vec& b);

} // namespace detail

} // namespace varifold
