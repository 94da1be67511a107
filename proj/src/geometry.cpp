#include "varifold/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace varifold {

namespace {

void require_same_dim(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw Error(Error::Code::mismatch, "dimension mismatch between points");
}

std::string point_str(const Vec& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

} // namespace

double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double distance(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

Vec add(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Vec scaled(const Vec& a, double k) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * k;
    return r;
}

Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0)
        throw Error(Error::Code::invalid_input, "cannot normalize zero vector");
    return scaled(a, 1.0 / n);
}

Vec lerp(const Vec& a, const Vec& b, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + t * (b[i] - a[i]);
    return r;
}

bool finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x))
            return false;
    return true;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Window

Window Window::make_ball(Vec center, double radius) {
    if (center.size() < 2 || !finite(center) || !(radius > 0))
        throw Error(Error::Code::invalid_input, "ball window needs n >= 2 and radius > 0");
    Window w;
    w.kind = Kind::ball;
    w.center = std::move(center);
    w.radius = radius;
    return w;
}

Window Window::make_box(Vec lo, Vec hi) {
    if (lo.size() < 2 || lo.size() != hi.size() || !finite(lo) || !finite(hi))
        throw Error(Error::Code::invalid_input, "box window needs matching finite corners, n >= 2");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i]))
            throw Error(Error::Code::invalid_input, "box window needs lo < hi componentwise");
    Window w;
    w.kind = Kind::box;
    w.lo = std::move(lo);
    w.hi = std::move(hi);
    return w;
}

std::size_t Window::dim() const { return kind == Kind::ball ? center.size() : lo.size(); }

double Window::diameter() const {
    return kind == Kind::ball ? 2 * radius : distance(lo, hi);
}

bool Window::contains(const Vec& p) const {
    if (kind == Kind::ball)
        return distance(p, center) < radius;
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < p[i] && p[i] < hi[i]))
            return false;
    return true;
}

double Window::boundary_distance(const Vec& p) const {
    if (kind == Kind::ball)
        return radius - distance(p, center);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lo.size(); ++i) {
        d = std::min(d, p[i] - lo[i]);
        d = std::min(d, hi[i] - p[i]);
    }
    return d;
}

bool Window::contains_closed_ball(const Vec& a, double r, double slack) const {
    return boundary_distance(a) >= r - slack;
}

bool Window::same_as(const Window& other, double tol) const {
    if (kind != other.kind || dim() != other.dim())
        return false;
    if (kind == Kind::ball)
        return distance(center, other.center) <= tol && std::abs(radius - other.radius) <= tol;
    return distance(lo, other.lo) <= tol && distance(hi, other.hi) <= tol;
}

// ---------------------------------------------------------------------------
// Region

Region Region::intersection_of(std::vector<Halfspace> hs) {
    Region r;
    r.combine = Combine::intersection;
    for (auto& h : hs) {
        double n = norm(h.normal);
        if (n == 0)
            throw Error(Error::Code::invalid_input, "half-space needs nonzero normal");
        h.offset /= n;
        h.normal = scaled(h.normal, 1.0 / n);
    }
    r.halfspaces = std::move(hs);
    return r;
}

Region Region::union_of(std::vector<Halfspace> hs) {
    Region r = intersection_of(std::move(hs));
    r.combine = Combine::united;
    return r;
}

Region Region::whole() { return Region{}; }

bool Region::contains(const Vec& p) const {
    bool in;
    if (combine == Combine::intersection) {
        in = true;
        for (const auto& h : halfspaces)
            in = in && dot(h.normal, p) > h.offset;
    } else {
        in = false;
        for (const auto& h : halfspaces)
            in = in || dot(h.normal, p) > h.offset;
    }
    return complement ? !in : in;
}

Region Region::complemented() const {
    Region r = *this;
    r.complement = !r.complement;
    return r;
}

// ---------------------------------------------------------------------------
// Arrangement accessors

const Vec& Arrangement::endpoint_point(const Endpoint& e) const {
    return e.is_vertex() ? vertices[static_cast<std::size_t>(e.vertex)] : e.exit;
}

double Arrangement::edge_length(std::size_t e) const {
    return distance(edge_a(e), edge_b(e));
}

double Arrangement::total_length() const {
    double s = 0;
    for (std::size_t e = 0; e < edges.size(); ++e)
        s += edge_length(e);
    return s;
}

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet IntervalSet::of(double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (!(lo < hi))
        return empty();
    return IntervalSet{{{lo, hi}}};
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < parts.size() && j < o.parts.size()) {
        double lo = std::max(parts[i].first, o.parts[j].first);
        double hi = std::min(parts[i].second, o.parts[j].second);
        if (lo < hi)
            out.parts.emplace_back(lo, hi);
        if (parts[i].second < o.parts[j].second)
            ++i;
        else
            ++j;
    }
    return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<std::pair<double, double>> all = parts;
    all.insert(all.end(), o.parts.begin(), o.parts.end());
    std::sort(all.begin(), all.end());
    IntervalSet out;
    for (const auto& iv : all) {
        if (!out.parts.empty() && iv.first <= out.parts.back().second)
            out.parts.back().second = std::max(out.parts.back().second, iv.second);
        else
            out.parts.push_back(iv);
    }
    return out;
}

IntervalSet IntervalSet::complement() const {
    IntervalSet out;
    double cursor = 0.0;
    for (const auto& iv : parts) {
        if (cursor < iv.first)
            out.parts.emplace_back(cursor, iv.first);
        cursor = std::max(cursor, iv.second);
    }
    if (cursor < 1.0)
        out.parts.emplace_back(cursor, 1.0);
    return out;
}

double IntervalSet::measure() const {
    double s = 0;
    for (const auto& iv : parts)
        s += iv.second - iv.first;
    return s;
}

// ---------------------------------------------------------------------------
// ClipShape

ClipShape ClipShape::make_ball(Vec center, double radius) {
    ClipShape s;
    s.kind = Kind::ball;
    s.center = std::move(center);
    s.radius = radius;
    return s;
}

ClipShape ClipShape::make_box(Vec lo, Vec hi) {
    ClipShape s;
    s.kind = Kind::box;
    s.lo = std::move(lo);
    s.hi = std::move(hi);
    return s;
}

ClipShape ClipShape::make_region(Region r) {
    ClipShape s;
    s.kind = Kind::region;
    s.reg = std::move(r);
    return s;
}

namespace {

IntervalSet clip_halfspace(const Vec& p, const Vec& d, const Halfspace& h) {
    // normal . (p + t d) > offset
    double a = dot(h.normal, d);
    double b = dot(h.normal, p) - h.offset;
    const double tiny = 1e-300;
    if (std::abs(a) < tiny)
        return b > 0 ? IntervalSet::full() : IntervalSet::empty();
    double t0 = -b / a;
    return a > 0 ? IntervalSet::of(t0, 1.0) : IntervalSet::of(0.0, t0);
}

IntervalSet clip_closed_ball(const Vec& p, const Vec& d, const Vec& c, double r) {
    // |p + t d - c|^2 <= r^2
    Vec w = sub(p, c);
    double A = dot(d, d);
    double B = 2 * dot(d, w);
    double C = dot(w, w) - r * r;
    if (A == 0)
        return C <= 0 ? IntervalSet::full() : IntervalSet::empty();
    double disc = B * B - 4 * A * C;
    if (disc < 0)
        return IntervalSet::empty();
    double sq = std::sqrt(disc);
    return IntervalSet::of((-B - sq) / (2 * A), (-B + sq) / (2 * A));
}

IntervalSet clip_closed_box(const Vec& p, const Vec& d, const Vec& lo, const Vec& hi) {
    IntervalSet out = IntervalSet::full();
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double tiny = 1e-300;
        if (std::abs(d[i]) < tiny) {
            if (p[i] < lo[i] || p[i] > hi[i])
                return IntervalSet::empty();
            continue;
        }
        double t0 = (lo[i] - p[i]) / d[i];
        double t1 = (hi[i] - p[i]) / d[i];
        if (t0 > t1)
            std::swap(t0, t1);
        out = out.intersect(IntervalSet::of(t0, t1));
    }
    return out;
}

IntervalSet clip_region(const Vec& p, const Vec& d, const Region& reg) {
    IntervalSet acc;
    if (reg.combine == Region::Combine::intersection) {
        acc = IntervalSet::full();
        for (const auto& h : reg.halfspaces)
            acc = acc.intersect(clip_halfspace(p, d, h));
    } else {
        acc = IntervalSet::empty();
        for (const auto& h : reg.halfspaces)
            acc = acc.unite(clip_halfspace(p, d, h));
    }
    return reg.complement ? acc.complement() : acc;
}

} // namespace

IntervalSet ClipShape::clip(const Vec& p, const Vec& q) const {
    Vec d = sub(q, p);
    switch (kind) {
    case Kind::ball:
        return clip_closed_ball(p, d, center, radius);
    case Kind::box:
        return clip_closed_box(p, d, lo, hi);
    case Kind::region:
        return clip_region(p, d, reg);
    }
    return IntervalSet::empty();
}

double clip_length(const Vec& p, const Vec& q, const ClipShape& shape) {
    return shape.clip(p, q).measure() * distance(p, q);
}

double clip_length(const Arrangement& arr, std::size_t edge, const ClipShape& shape) {
    return clip_length(arr.edge_a(edge), arr.edge_b(edge), shape);
}

// ---------------------------------------------------------------------------
// Normalization of segment soup

namespace detail {

double point_segment_distance(const Vec& x, const Vec& a, const Vec& b) {
    Vec d = sub(b, a);
    double len2 = dot(d, d);
    if (len2 == 0)
        return distance(x, a);
    double t = dot(sub(x, a), d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(x, lerp(a, b, t));
}

namespace {

// Registry snapping nearby points to a single representative. Reports an
// ambiguous snap when a point sits close to two registered representatives.
class PointRegistry {
public:
    explicit PointRegistry(double eps) : eps_(eps) {}

    std::size_t lookup(const Vec& p) {
        std::size_t best = npos;
        double best_d = eps_;
        std::size_t second = npos;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            double d = distance(points_[i], p);
            if (d <= best_d) {
                second = best;
                best = i;
                best_d = d;
            } else if (d <= eps_ && i != best) {
                second = i;
            }
        }
        if (best != npos && second != npos)
            throw Error(Error::Code::invalid_input,
                        "ambiguous snap: point " + point_str(p) +
                            " is within tolerance of two distinct arrangement points");
        if (best != npos)
            return best;
        points_.push_back(p);
        return points_.size() - 1;
    }

    const Vec& point(std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    double eps_;
    std::vector<Vec> points_;
};

struct WorkSegment {
    Vec p, q;
    std::vector<double> cuts; // parameters in (0,1)
};

} // namespace

NormalizeResult normalize_segments(const std::vector<std::pair<Vec, Vec>>& segments,
                                   const Window& window) {
    const Tolerances tol = Tolerances::for_window(window);
    const double eps = tol.geom;
    const std::size_t n = window.dim();

    std::vector<WorkSegment> work;
    work.reserve(segments.size());
    for (const auto& [p, q] : segments) {
        if (p.size() != n || q.size() != n || !finite(p) || !finite(q))
            throw Error(Error::Code::invalid_input, "segment endpoint dimension/finiteness");
        if (distance(p, q) <= eps)
            throw Error(Error::Code::invalid_input,
                        "degenerate segment near " + point_str(p) + ": length below tolerance");
        for (const Vec& x : {p, q})
            if (window.boundary_distance(x) < -eps)
                throw Error(Error::Code::invalid_input,
                            "segment endpoint " + point_str(x) + " lies outside the window");
        // Pull endpoints within tolerance of the boundary (or slightly beyond)
        // back into the closed window.
        ClipShape win = window.kind == Window::Kind::ball
                            ? ClipShape::make_ball(window.center, window.radius)
                            : ClipShape::make_box(window.lo, window.hi);
        IntervalSet in = win.clip(p, q);
        if (in.parts.empty() || in.measure() * distance(p, q) <= eps)
            throw Error(Error::Code::invalid_input,
                        "segment near " + point_str(p) + " degenerates after window clip");
        double t0 = in.parts.front().first;
        double t1 = in.parts.back().second;
        work.push_back(WorkSegment{t0 == 0.0 ? p : lerp(p, q, t0),
                                   t1 == 1.0 ? q : lerp(p, q, t1), {}});
    }

    // Pairwise interactions: crossings of non-collinear segments and
    // endpoint splits of collinear overlaps.
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = i + 1; j < work.size(); ++j) {
            WorkSegment& si = work[i];
            WorkSegment& sj = work[j];
            Vec di = sub(si.q, si.p);
            Vec dj = sub(sj.q, sj.p);
            double li = norm(di), lj = norm(dj);

            double cosang = dot(di, dj) / (li * lj);
            bool parallel = std::abs(std::abs(cosang) - 1.0) < 1e-12;
            if (parallel) {
                // Same supporting line? Then split each segment at the
                // other's interior endpoints so overlaps become shared pieces.
                Vec dhat = scaled(di, 1.0 / li);
                Vec off = sub(sj.p, si.p);
                Vec perp = sub(off, scaled(dhat, dot(off, dhat)));
                if (norm(perp) > eps)
                    continue; // distinct parallel lines: no interaction
                auto param_on = [&](const WorkSegment& s, const Vec& x, double len) {
                    return dot(sub(x, s.p), sub(s.q, s.p)) / (len * len);
                };
                for (const Vec* x : {&sj.p, &sj.q}) {
                    double t = param_on(si, *x, li);
                    if (t > eps / li && t < 1 - eps / li)
                        si.cuts.push_back(t);
                }
                for (const Vec* x : {&si.p, &si.q}) {
                    double t = param_on(sj, *x, lj);
                    if (t > eps / lj && t < 1 - eps / lj)
                        sj.cuts.push_back(t);
                }
                continue;
            }

            // Closest points of the supporting lines.
            double a = dot(di, di), b = dot(di, dj), c = dot(dj, dj);
            Vec w0 = sub(si.p, sj.p);
            double d0 = dot(di, w0), e0 = dot(dj, w0);
            double den = a * c - b * b;
            if (den <= 0)
                continue;
            double s = (b * e0 - c * d0) / den;
            double t = (a * e0 - b * d0) / den;
            double slack_i = eps / li, slack_j = eps / lj;
            if (s < -slack_i || s > 1 + slack_i || t < -slack_j || t > 1 + slack_j)
                continue;
            Vec xi = lerp(si.p, si.q, std::clamp(s, 0.0, 1.0));
            Vec xj = lerp(sj.p, sj.q, std::clamp(t, 0.0, 1.0));
            if (distance(xi, xj) > eps)
                continue; // lines pass near each other but segments do not meet
            if (s > slack_i && s < 1 - slack_i)
                si.cuts.push_back(s);
            if (t > slack_j && t < 1 - slack_j)
                sj.cuts.push_back(t);
        }
    }

    // Assemble pieces, registering shared points globally.
    PointRegistry registry(eps);
    struct Piece {
        std::size_t pa, pb; // registry ids, pa < pb after ordering
        bool swapped;
    };
    std::vector<Piece> pieces;
    std::vector<std::vector<std::size_t>> segment_pieces(work.size());
    auto piece_key = [](std::size_t a, std::size_t b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    std::vector<std::pair<std::size_t, std::size_t>> keys;

    for (std::size_t i = 0; i < work.size(); ++i) {
        WorkSegment& s = work[i];
        s.cuts.push_back(0.0);
        s.cuts.push_back(1.0);
        std::sort(s.cuts.begin(), s.cuts.end());
        double len = distance(s.p, s.q);
        std::vector<double> params;
        for (double t : s.cuts)
            if (params.empty() || (t - params.back()) * len > eps)
                params.push_back(t);
        if (params.size() < 2)
            continue;
        for (std::size_t k = 0; k + 1 < params.size(); ++k) {
            Vec pa = lerp(s.p, s.q, params[k]);
            Vec pb = lerp(s.p, s.q, params[k + 1]);
            std::size_t ia = registry.lookup(pa);
            std::size_t ib = registry.lookup(pb);
            if (ia == ib)
                continue; // collapsed by snapping
            auto key = piece_key(ia, ib);
            std::size_t id = pieces.size();
            for (std::size_t m = 0; m < keys.size(); ++m)
                if (keys[m] == key) {
                    id = m;
                    break;
                }
            if (id == pieces.size()) {
                pieces.push_back(Piece{key.first, key.second, false});
                keys.push_back(key);
            }
            segment_pieces[i].push_back(id);
        }
    }

    // Registry points near the window boundary become exits, the rest vertices.
    std::vector<int> vertex_of(registry.size(), -1);
    Arrangement arr;
    arr.window = window;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        if (window.boundary_distance(registry.point(i)) > eps) {
            vertex_of[i] = static_cast<int>(arr.vertices.size());
            arr.vertices.push_back(registry.point(i));
        }
    }
    auto make_endpoint = [&](std::size_t reg_id) {
        if (vertex_of[reg_id] >= 0)
            return Endpoint::at_vertex(vertex_of[reg_id]);
        return Endpoint::at_exit(registry.point(reg_id));
    };
    for (const Piece& pc : pieces)
        arr.edges.push_back(Edge{make_endpoint(pc.pa), make_endpoint(pc.pb)});

    return NormalizeResult{std::move(arr), std::move(segment_pieces)};
}

} // namespace detail

Arrangement build_arrangement(const std::vector<std::pair<Vec, Vec>>& segments,
                              const Window& window) {
    return detail::normalize_segments(segments, window).arrangement;
}

std::pair<Arrangement, RefinementMaps> common_refinement(const Arrangement& a,
                                                         const Arrangement& b) {
    if (!a.window.same_as(b.window, a.tolerances().geom))
        throw Error(Error::Code::mismatch, "common_refinement: arrangements use different windows");
    std::vector<std::pair<Vec, Vec>> segs;
    segs.reserve(a.edges.size() + b.edges.size());
    for (std::size_t e = 0; e < a.edges.size(); ++e)
        segs.emplace_back(a.edge_a(e), a.edge_b(e));
    for (std::size_t e = 0; e < b.edges.size(); ++e)
        segs.emplace_back(b.edge_a(e), b.edge_b(e));
    auto res = detail::normalize_segments(segs, a.window);
    RefinementMaps maps;
    maps.a_edges.assign(res.segment_edges.begin(), res.segment_edges.begin() + a.edges.size());
    maps.b_edges.assign(res.segment_edges.begin() + a.edges.size(), res.segment_edges.end());
    return {std::move(res.arrangement), std::move(maps)};
}

// ---------------------------------------------------------------------------
// Validity diagnostics

std::vector<Violation> arrangement_violations(const Arrangement& arr) {
    std::vector<Violation> out;
    const Tolerances tol = arr.tolerances();
    const double eps = tol.geom;
    const std::size_t n = arr.dim();

    for (std::size_t i = 0; i < arr.vertices.size(); ++i) {
        const Vec& v = arr.vertices[i];
        if (v.size() != n || !finite(v)) {
            out.push_back({"vertex-coords", "vertex " + std::to_string(i)});
            continue;
        }
        if (arr.window.boundary_distance(v) <= eps)
            out.push_back({"vertex-outside-window",
                           "vertex " + std::to_string(i) + " not strictly inside the window"});
        for (std::size_t j = i + 1; j < arr.vertices.size(); ++j)
            if (distance(v, arr.vertices[j]) <= eps)
                out.push_back({"duplicate-vertex",
                               "vertices " + std::to_string(i) + " and " + std::to_string(j)});
    }

    for (std::size_t e = 0; e < arr.edges.size(); ++e) {
        const Edge& ed = arr.edges[e];
        for (const Endpoint* ep : {&ed.a, &ed.b}) {
            if (ep->is_vertex()) {
                if (ep->vertex >= static_cast<int>(arr.vertices.size()))
                    out.push_back({"bad-vertex-ref", "edge " + std::to_string(e)});
            } else if (std::abs(arr.window.boundary_distance(ep->exit)) > eps) {
                out.push_back({"exit-off-boundary",
                               "edge " + std::to_string(e) + " exit " + point_str(ep->exit)});
            }
        }
        if (arr.edge_length(e) <= eps)
            out.push_back({"edge-too-short", "edge " + std::to_string(e)});
    }

    // Pairwise interaction checks.
    for (std::size_t e = 0; e < arr.edges.size(); ++e) {
        Vec pa = arr.edge_a(e), pb = arr.edge_b(e);
        for (std::size_t f = e + 1; f < arr.edges.size(); ++f) {
            Vec qa = arr.edge_a(f), qb = arr.edge_b(f);
            bool share_vertex =
                (arr.edges[e].a.is_vertex() &&
                 (arr.edges[e].a.vertex == arr.edges[f].a.vertex ||
                  arr.edges[e].a.vertex == arr.edges[f].b.vertex)) ||
                (arr.edges[e].b.is_vertex() &&
                 (arr.edges[e].b.vertex == arr.edges[f].a.vertex ||
                  arr.edges[e].b.vertex == arr.edges[f].b.vertex));

            Vec di = sub(pb, pa), dj = sub(qb, qa);
            double li = arr.edge_length(e), lj = arr.edge_length(f);
            double cosang = dot(di, dj) / (li * lj);
            if (std::abs(std::abs(cosang) - 1.0) < 1e-12) {
                // Parallel. On a shared line, any contact of positive length
                // is an overlap that normalization should have merged.
                Vec dhat = scaled(di, 1.0 / li);
                Vec off = sub(qa, pa);
                Vec perp = sub(off, scaled(dhat, dot(off, dhat)));
                if (norm(perp) <= eps) {
                    double u0 = dot(sub(qa, pa), dhat), u1 = dot(sub(qb, pa), dhat);
                    if (u0 > u1)
                        std::swap(u0, u1);
                    if (std::min(li, u1) - std::max(0.0, u0) > eps)
                        out.push_back({"edge-overlap", "edges " + std::to_string(e) + " and " +
                                                           std::to_string(f)});
                }
                continue;
            }

            // Non-collinear: closest approach must be at a shared vertex.
            double a2 = dot(di, di), b2 = dot(di, dj), c2 = dot(dj, dj);
            Vec w0 = sub(pa, qa);
            double den = a2 * c2 - b2 * b2;
            if (den <= 0)
                continue;
            double s = std::clamp((b2 * dot(dj, w0) - c2 * dot(di, w0)) / den, 0.0, 1.0);
            double t = std::clamp((a2 * dot(dj, w0) - b2 * dot(di, w0)) / den, 0.0, 1.0);
            Vec xi = lerp(pa, pb, s), xj = lerp(qa, qb, t);
            if (distance(xi, xj) > eps)
                continue;
            bool i_interior = s * li > eps && (1 - s) * li > eps;
            bool j_interior = t * lj > eps && (1 - t) * lj > eps;
            if (i_interior || j_interior)
                out.push_back({"edges-cross-without-vertex",
                               "edges " + std::to_string(e) + " and " + std::to_string(f) +
                                   " meet near " + point_str(xi)});
            else if (!share_vertex) {
                // Endpoint contact away from the boundary must be registered.
                if (arr.window.boundary_distance(xi) > eps)
                    out.push_back({"contact-not-a-vertex",
                                   "edges " + std::to_string(e) + " and " + std::to_string(f) +
                                       " touch near " + point_str(xi)});
            }
        }
    }
    return out;
}

bool region_generic(const Region& region, const Arrangement& arr, std::string* why) {
    const double eps = arr.tolerances().geom;
    for (const auto& h : region.halfspaces) {
        for (std::size_t i = 0; i < arr.vertices.size(); ++i) {
            if (std::abs(dot(h.normal, arr.vertices[i]) - h.offset) <= eps) {
                if (why)
                    *why = "vertex " + std::to_string(i) + " lies on a boundary hyperplane";
                return false;
            }
        }
        for (std::size_t e = 0; e < arr.edges.size(); ++e) {
            double da = dot(h.normal, arr.edge_a(e)) - h.offset;
            double db = dot(h.normal, arr.edge_b(e)) - h.offset;
            if (std::abs(da) <= eps && std::abs(db) <= eps) {
                if (why)
                    *why = "edge " + std::to_string(e) + " is contained in a boundary hyperplane";
                return false;
            }
            if (std::abs(da) <= eps || std::abs(db) <= eps) {
                if (why)
                    *why = "edge " + std::to_string(e) + " endpoint lies on a boundary hyperplane";
                return false;
            }
        }
    }
    return true;
}

} // namespace varifold
