#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varifold/geometry.hpp"

namespace varifold {

/// Density value set C with inf C >= 1 and c + d in C for c, d in C.
/// Either all positive integers, or a rational grid (1/D) * P restricted to
/// finitely many closed pieces. Sum-closure is checked on construction by
/// testing generator sums up to a bound.
struct AppropriateClass {
    enum class Kind { integers, grid };

    Kind kind = Kind::integers;
    std::int64_t denom = 1;
    // closed pieces [lo, hi] with lo <= hi, hi may be +inf; a point is lo == hi
    std::vector<std::pair<double, double>> pieces;

    static AppropriateClass integers();
    static AppropriateClass grid(std::int64_t denom,
                                 std::vector<std::pair<double, double>> pieces,
                                 double closure_check_bound = 16.0);

    double unit() const { return 1.0 / static_cast<double>(denom); }
    bool contains(double x, double tol) const;
    /// Nearest grid representation k with x ~ k/denom, or nullopt when x is
    /// off-grid or its value is not in C (0 is always representable).
    std::optional<std::int64_t> to_units(double x, double tol) const;
    bool unit_value_in_class(std::int64_t k) const;
    bool same_as(const AppropriateClass& other) const;
    std::string describe() const;

    /// Admissible split values for an edge of multiplicity full (in units):
    /// k with k/denom in C u {0} and (full - k)/denom in C u {0}, ascending.
    std::vector<std::int64_t> admissible_units(std::int64_t full) const;
};

/// A varifold with straight-segment support: an Arrangement plus one
/// multiplicity per edge drawn from the density class.
struct PolyhedralVarifold {
    Arrangement arrangement;
    std::vector<double> mult;
    AppropriateClass density_class;

    std::size_t edge_count() const { return arrangement.edges.size(); }
    Tolerances tolerances() const { return arrangement.tolerances(); }
};

/// Per-edge weights 0 <= m(e) <= mult(e) on a fixed parent, inducing the
/// sub-varifold W <= V; nonzero values and their complements must lie in C.
struct SubMultiplicity {
    std::vector<double> values;
};

struct Diagnostics {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Confirms all invariants; reports per-edge class violations and
/// arrangement defects. Never throws.
Diagnostics validate(const PolyhedralVarifold& v);

/// Throws unless m is a valid sub-multiplicity of v (sizes, bounds, class
/// membership of values and complements).
void require_valid_sub(const PolyhedralVarifold& v, const SubMultiplicity& m);

PolyhedralVarifold add(const PolyhedralVarifold& v, const PolyhedralVarifold& w);
PolyhedralVarifold scalar_multiple(const PolyhedralVarifold& v, std::int64_t k);

/// Edges with m(e) > 0 only; the companion remainder is sub_varifold of
/// mult - m, and the weight identity ||V|| = ||W|| + ||V-W|| holds edgewise
/// by construction.
PolyhedralVarifold sub_varifold(const PolyhedralVarifold& v, const SubMultiplicity& m);
SubMultiplicity complement_sub(const PolyhedralVarifold& v, const SubMultiplicity& m);

/// ||V|| B(a, r) for a closed ball inside the window.
double weight_ball_mass(const PolyhedralVarifold& v, const Vec& a, double r);
/// ||V||(shape) for an arbitrary clip shape (no window check).
double weight_in(const PolyhedralVarifold& v, const ClipShape& shape);
double total_weight(const PolyhedralVarifold& v);

/// 1-density of the weight at x: 0 off the support, mult(e) at edge interior
/// points, half the incident multiplicity sum at a vertex.
double density(const PolyhedralVarifold& v, const Vec& x);

/// V restricted to a region in generic position; cut points on the region
/// boundary become vertices of the result.
PolyhedralVarifold restrict_to(const PolyhedralVarifold& v, const Region& e);

/// Total-variation norm of V - W on K x G(n,1): after common refinement,
/// coincident collinear pieces share a Grassmannian point and subtract,
/// non-parallel pieces never cancel.
double strong_distance(const PolyhedralVarifold& v, const PolyhedralVarifold& w,
                       const ClipShape& k);

} // namespace varifold
