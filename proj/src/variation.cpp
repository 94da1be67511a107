#include "varifold/variation.hpp"

#include <algorithm>
#include <cmath>

namespace varifold {

double VectorAtomMeasure::total_mass() const {
    double s = 0;
    for (const auto& a : atoms)
        s += norm(a.vector);
    return s;
}

double ScalarAtomMeasure::total_mass() const {
    double s = 0;
    for (const auto& a : atoms)
        s += a.mass;
    return s;
}

Vec vertex_variation(const PolyhedralVarifold& v, std::span<const double> weights,
                     std::size_t vertex) {
    const std::size_t n = v.arrangement.dim();
    Vec sum(n, 0.0);
    const Vec& p = v.arrangement.vertices[vertex];
    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        if (weights[e] == 0)
            continue;
        const Edge& ed = v.arrangement.edges[e];
        int id = static_cast<int>(vertex);
        // Unit vector at the vertex pointing away from the edge.
        if (ed.a.is_vertex() && ed.a.vertex == id) {
            Vec u = normalized(sub(p, v.arrangement.endpoint_point(ed.b)));
            for (std::size_t i = 0; i < n; ++i)
                sum[i] += weights[e] * u[i];
        }
        if (ed.b.is_vertex() && ed.b.vertex == id) {
            Vec u = normalized(sub(p, v.arrangement.endpoint_point(ed.a)));
            for (std::size_t i = 0; i < n; ++i)
                sum[i] += weights[e] * u[i];
        }
    }
    return sum;
}

VectorAtomMeasure first_variation(const PolyhedralVarifold& v) {
    const double eps = v.tolerances().num;
    VectorAtomMeasure out;
    for (std::size_t i = 0; i < v.arrangement.vertices.size(); ++i) {
        Vec vec = vertex_variation(v, v.mult, i);
        if (norm(vec) > eps)
            out.atoms.push_back(VectorAtom{v.arrangement.vertices[i], std::move(vec)});
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const VectorAtom& a, const VectorAtom& b) { return lex_less(a.point, b.point); });
    return out;
}

ScalarAtomMeasure total_variation_measure(const VectorAtomMeasure& t) {
    ScalarAtomMeasure out;
    out.atoms.reserve(t.atoms.size());
    for (const auto& a : t.atoms)
        out.atoms.push_back(ScalarAtom{a.point, norm(a.vector)});
    return out;
}

namespace {

void require_atoms_off_boundary(const std::vector<Vec>& points, const Region& e,
                                const Tolerances& tol) {
    for (const Vec& p : points)
        for (const auto& h : e.halfspaces)
            if (std::abs(dot(h.normal, p) - h.offset) <= tol.geom)
                throw Error(Error::Code::non_generic,
                            "atom lies on the region boundary");
}

} // namespace

VectorAtomMeasure restrict_measure(const VectorAtomMeasure& t, const Region& e,
                                   const Tolerances& tol) {
    std::vector<Vec> pts;
    for (const auto& a : t.atoms)
        pts.push_back(a.point);
    require_atoms_off_boundary(pts, e, tol);
    VectorAtomMeasure out;
    for (const auto& a : t.atoms)
        if (e.contains(a.point))
            out.atoms.push_back(a);
    return out;
}

ScalarAtomMeasure restrict_scalar_measure(const ScalarAtomMeasure& s, const Region& e,
                                          const Tolerances& tol) {
    std::vector<Vec> pts;
    for (const auto& a : s.atoms)
        pts.push_back(a.point);
    require_atoms_off_boundary(pts, e, tol);
    ScalarAtomMeasure out;
    for (const auto& a : s.atoms)
        if (e.contains(a.point))
            out.atoms.push_back(a);
    return out;
}

VectorAtomMeasure combine(const VectorAtomMeasure& a, const VectorAtomMeasure& b, double sign,
                          const Tolerances& tol) {
    VectorAtomMeasure out;
    std::vector<VectorAtom> work = a.atoms;
    for (const auto& atom : b.atoms) {
        bool merged = false;
        for (auto& w : work)
            if (distance(w.point, atom.point) <= tol.geom) {
                for (std::size_t i = 0; i < w.vector.size(); ++i)
                    w.vector[i] += sign * atom.vector[i];
                merged = true;
                break;
            }
        if (!merged)
            work.push_back(VectorAtom{atom.point, scaled(atom.vector, sign)});
    }
    for (auto& w : work)
        if (norm(w.vector) > tol.num)
            out.atoms.push_back(std::move(w));
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const VectorAtom& x, const VectorAtom& y) { return lex_less(x.point, y.point); });
    return out;
}

Vec eta(const PolyhedralVarifold& v, const Vec& x) {
    VectorAtomMeasure dv = first_variation(v);
    const double eps = v.tolerances().geom;
    for (const auto& a : dv.atoms)
        if (distance(a.point, x) <= eps)
            return normalized(a.vector);
    throw Error(Error::Code::invalid_input, "eta: point not in the support of ||dV||");
}

Vec mean_curvature(const PolyhedralVarifold& v, const Vec& x) {
    (void)x;
    return Vec(v.arrangement.dim(), 0.0);
}

std::pair<ScalarAtomMeasure, ScalarAtomMeasure> ac_singular_split(const PolyhedralVarifold& v) {
    // dV is purely atomic while ||V|| is atomless, so the absolutely
    // continuous part vanishes and all of ||dV|| is singular.
    return {ScalarAtomMeasure{}, total_variation_measure(first_variation(v))};
}

VectorAtomMeasure v_boundary(const PolyhedralVarifold& v, const Region& e) {
    std::string why;
    if (!region_generic(e, v.arrangement, &why))
        throw Error(Error::Code::non_generic, "v_boundary: region not generic: " + why);
    const Tolerances tol = v.tolerances();
    VectorAtomMeasure inside = restrict_measure(first_variation(v), e, tol);
    VectorAtomMeasure of_restriction = first_variation(restrict_to(v, e));
    return combine(inside, of_restriction, -1.0, tol);
}

bool restriction_split_holds(const PolyhedralVarifold& v, const Region& e) {
    const Tolerances tol = v.tolerances();
    ScalarAtomMeasure whole = total_variation_measure(first_variation(v));
    ScalarAtomMeasure in = total_variation_measure(first_variation(restrict_to(v, e)));
    ScalarAtomMeasure outp =
        total_variation_measure(first_variation(restrict_to(v, e.complemented())));

    // Atomwise: ||dV||(x) == ||dW||(x) + ||d(V-W)||(x) at every location.
    std::vector<ScalarAtom> all;
    auto accumulate = [&](const ScalarAtomMeasure& m, double sign) {
        for (const auto& a : m.atoms) {
            bool merged = false;
            for (auto& w : all)
                if (distance(w.point, a.point) <= tol.geom) {
                    w.mass += sign * a.mass;
                    merged = true;
                    break;
                }
            if (!merged)
                all.push_back(ScalarAtom{a.point, sign * a.mass});
        }
    };
    accumulate(whole, 1.0);
    accumulate(in, -1.0);
    accumulate(outp, -1.0);
    for (const auto& a : all)
        if (std::abs(a.mass) > tol.num)
            return false;
    return true;
}

AprioriReport apriori_check(const PolyhedralVarifold& v, const Vec& a, double r, double c,
                            double d) {
    if (!(r > 0) || !(c > 0) || !(d > 0))
        throw Error(Error::Code::invalid_input, "apriori_check needs positive r, c, d");
    if (!v.arrangement.window.contains_closed_ball(a, r, v.tolerances().geom))
        throw Error(Error::Code::invalid_input, "apriori_check: ball escapes the window");
    const double eps = v.tolerances().num;

    AprioriReport rep;
    bool density_ok = density(v, a) >= d - eps;

    // ||dV|| B(a,t) is a step function of t jumping only at atom radii.
    VectorAtomMeasure dv = first_variation(v);
    std::vector<std::pair<double, double>> atom_radii; // (radius, mass)
    for (const auto& atom : dv.atoms)
        atom_radii.emplace_back(distance(atom.point, a), norm(atom.vector));
    std::sort(atom_radii.begin(), atom_radii.end());
    auto dv_ball = [&](double t) {
        double s = 0;
        for (const auto& [rad, mass] : atom_radii)
            if (rad <= t)
                s += mass;
        return s;
    };
    bool variation_ok = true;
    std::vector<double> samples;
    for (const auto& [rad, mass] : atom_radii)
        if (rad > 0 && rad < r)
            samples.push_back(rad);
    for (int i = 1; i <= 32; ++i)
        samples.push_back(r * static_cast<double>(i) / 33.0);
    for (double t : samples)
        if (dv_ball(t) > 2 * c * t + eps) {
            variation_ok = false;
            break;
        }

    rep.hypotheses_hold = density_ok && variation_ok;
    rep.lower_bound = 2 * (d - c * r) * r;
    rep.actual = weight_ball_mass(v, a, r);
    rep.margin = rep.actual - rep.lower_bound;
    return rep;
}

} // namespace varifold
