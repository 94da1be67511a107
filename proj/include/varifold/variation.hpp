#pragma once

#include <span>
#include <utility>
#include <vector>

#include "varifold/varifold.hpp"

namespace varifold {

/// Finite vector-valued atomic measure: the home of dV, eta, and V dE.
struct VectorAtom {
    Vec point;
    Vec vector;
};

struct VectorAtomMeasure {
    std::vector<VectorAtom> atoms; // sorted by point, no zero vectors

    bool empty() const { return atoms.empty(); }
    double total_mass() const;
};

struct ScalarAtom {
    Vec point;
    double mass = 0;
};

struct ScalarAtomMeasure {
    std::vector<ScalarAtom> atoms;

    bool empty() const { return atoms.empty(); }
    double total_mass() const;
};

/// First-variation vector of the weights at one vertex: the sum over incident
/// edge-ends of weight(e) times the unit vector pointing away from the edge.
Vec vertex_variation(const PolyhedralVarifold& v, std::span<const double> weights,
                     std::size_t vertex);

/// dV as an atomic vector measure: one atom per unbalanced interior vertex;
/// boundary exits contribute nothing; atoms below the numeric tolerance drop.
VectorAtomMeasure first_variation(const PolyhedralVarifold& v);

/// ||T|| for purely atomic T: atom |vector| at each atom location.
ScalarAtomMeasure total_variation_measure(const VectorAtomMeasure& t);

/// Keeps exactly the atoms with location in E; errors when an atom sits on
/// the region boundary.
VectorAtomMeasure restrict_measure(const VectorAtomMeasure& t, const Region& e,
                                   const Tolerances& tol);
ScalarAtomMeasure restrict_scalar_measure(const ScalarAtomMeasure& s, const Region& e,
                                          const Tolerances& tol);

/// Signed atomwise combination a + sign * b, matching atom locations within
/// the geometric tolerance and dropping near-zero results.
VectorAtomMeasure combine(const VectorAtomMeasure& a, const VectorAtomMeasure& b, double sign,
                          const Tolerances& tol);

/// Unit direction of dV at an atom location.
Vec eta(const PolyhedralVarifold& v, const Vec& x);

/// Generalized mean curvature: identically zero for segment networks (dV is
/// purely atomic while ||V|| is atomless).
Vec mean_curvature(const PolyhedralVarifold& v, const Vec& x);

/// Split of ||dV|| into the ||V||-absolutely-continuous part (always zero
/// here) and the singular part (all of ||dV||).
std::pair<ScalarAtomMeasure, ScalarAtomMeasure> ac_singular_split(const PolyhedralVarifold& v);

/// Distributional V boundary of E: (dV) restricted to E minus d(V restricted
/// to E), with cut vertices on the region boundary included.
VectorAtomMeasure v_boundary(const PolyhedralVarifold& v, const Region& e);

/// Measure-level split condition for W = V restricted to E:
/// ||dV|| = ||dW|| + ||d(V-W)|| atomwise. Agrees with check_split whenever
/// the region boundary cuts no edge.
bool restriction_split_holds(const PolyhedralVarifold& v, const Region& e);

struct AprioriReport {
    bool hypotheses_hold = false;
    double lower_bound = 0;
    double actual = 0;
    double margin = 0;
};

/// Lower-bound check ||V|| B(a,r) >= alpha(1) (d - c r) r with alpha(1) = 2.
/// Hypotheses: density at a at least d, and ||dV|| B(a,t) <= 2 c t for t up
/// to r (verified at all atom radii plus uniform samples; the left side is a
/// step function with jumps only at atom radii).
AprioriReport apriori_check(const PolyhedralVarifold& v, const Vec& a, double r, double c,
                            double d);

} // namespace varifold
