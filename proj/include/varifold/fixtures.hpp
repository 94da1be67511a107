#pragma once

#include <cstdint>

#include "varifold/varifold.hpp"

namespace varifold::fixtures {

/// Six rays from the origin at angles {0, +-theta, pi, pi -+ theta} with
/// cos theta = 1/4, all multiplicity 2, in the ball of radius 10. Stationary;
/// admits exactly two decompositions.
PolyhedralVarifold six_rays();

/// Ray direction i (1-based, matching the classical numbering).
Vec six_ray_direction(int i);

/// Horizontal line through the window with a tent of unit-multiplicity edges
/// (-1,0) -> (0,1) -> (1,0) on top; the polyhedral analogue of a bump over a
/// line. Window: ball of radius 3.
PolyhedralVarifold tent();

/// Three unit-multiplicity edges from the origin at 120 degrees, exiting the
/// ball of radius 2. Stationary and indecomposable.
PolyhedralVarifold y_junction();

/// A single segment crossing the ball of radius 2 along the x-axis with the
/// given multiplicity; no vertices, empty first variation.
PolyhedralVarifold crossing_segment(std::int64_t mult = 2);

/// Two unit-multiplicity segments with interior endpoints and disjoint
/// supports, in the ball of radius 4.
PolyhedralVarifold disjoint_segments();

/// A unit-multiplicity segment from (-1,0) to (1,0) with interior endpoints,
/// in the ball of radius 2.
PolyhedralVarifold interior_segment(std::int64_t mult = 1);

} // namespace varifold::fixtures
