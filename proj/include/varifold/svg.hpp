#pragma once

#include <string>

#include "varifold/varifold.hpp"

namespace varifold::svg {

/// Static SVG 1.1 picture of a planar network: edges with stroke width
/// proportional to multiplicity, first-variation atoms as arrows.
std::string render(const PolyhedralVarifold& v);

} // namespace varifold::svg
