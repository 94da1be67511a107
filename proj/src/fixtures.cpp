#include "varifold/fixtures.hpp"

#include <cmath>

namespace varifold::fixtures {

namespace {

PolyhedralVarifold star(const Window& window, const Vec& center,
                        const std::vector<Vec>& directions, const std::vector<double>& mults,
                        double reach) {
    PolyhedralVarifold v;
    v.density_class = AppropriateClass::integers();
    v.arrangement.window = window;
    v.arrangement.vertices.push_back(center);
    for (std::size_t i = 0; i < directions.size(); ++i) {
        Vec exit = add(center, scaled(normalized(directions[i]), reach));
        v.arrangement.edges.push_back(Edge{Endpoint::at_vertex(0), Endpoint::at_exit(exit)});
        v.mult.push_back(mults[i]);
    }
    return v;
}

} // namespace

Vec six_ray_direction(int i) {
    const double c = 0.25;
    const double s = std::sqrt(15.0) / 4.0;
    switch (i) {
    case 1: return {1.0, 0.0};
    case 2: return {c, s};
    case 3: return {-c, s};
    case 4: return {-1.0, 0.0};
    case 5: return {-c, -s};
    case 6: return {c, -s};
    default: throw Error(Error::Code::invalid_input, "ray index must be 1..6");
    }
}

PolyhedralVarifold six_rays() {
    Window w = Window::make_ball({0.0, 0.0}, 10.0);
    std::vector<Vec> dirs;
    for (int i = 1; i <= 6; ++i)
        dirs.push_back(six_ray_direction(i));
    return star(w, {0.0, 0.0}, dirs, std::vector<double>(6, 2.0), 10.0);
}

PolyhedralVarifold tent() {
    PolyhedralVarifold v;
    v.density_class = AppropriateClass::integers();
    v.arrangement.window = Window::make_ball({0.0, 0.0}, 3.0);
    v.arrangement.vertices = {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    auto vx = [](int i) { return Endpoint::at_vertex(i); };
    v.arrangement.edges = {
        Edge{Endpoint::at_exit({-3.0, 0.0}), vx(0)}, // base, left piece
        Edge{vx(0), vx(1)},                          // base, middle piece
        Edge{vx(1), Endpoint::at_exit({3.0, 0.0})},  // base, right piece
        Edge{vx(0), vx(2)},                          // tent, rising edge
        Edge{vx(2), vx(1)},                          // tent, falling edge
    };
    v.mult.assign(5, 1.0);
    return v;
}

PolyhedralVarifold y_junction() {
    Window w = Window::make_ball({0.0, 0.0}, 2.0);
    std::vector<Vec> dirs;
    for (int k = 0; k < 3; ++k) {
        double ang = M_PI / 2 + 2 * M_PI * k / 3;
        dirs.push_back({std::cos(ang), std::sin(ang)});
    }
    return star(w, {0.0, 0.0}, dirs, std::vector<double>(3, 1.0), 2.0);
}

PolyhedralVarifold crossing_segment(std::int64_t mult) {
    PolyhedralVarifold v;
    v.density_class = AppropriateClass::integers();
    v.arrangement.window = Window::make_ball({0.0, 0.0}, 2.0);
    v.arrangement.edges = {
        Edge{Endpoint::at_exit({-2.0, 0.0}), Endpoint::at_exit({2.0, 0.0})}};
    v.mult = {static_cast<double>(mult)};
    return v;
}

PolyhedralVarifold disjoint_segments() {
    PolyhedralVarifold v;
    v.density_class = AppropriateClass::integers();
    v.arrangement.window = Window::make_ball({0.0, 0.0}, 4.0);
    v.arrangement.vertices = {{-2.0, -1.0}, {-0.5, -1.0}, {0.5, 1.0}, {2.0, 1.0}};
    v.arrangement.edges = {Edge{Endpoint::at_vertex(0), Endpoint::at_vertex(1)},
                           Edge{Endpoint::at_vertex(2), Endpoint::at_vertex(3)}};
    v.mult = {1.0, 1.0};
    return v;
}

PolyhedralVarifold interior_segment(std::int64_t mult) {
    PolyhedralVarifold v;
    v.density_class = AppropriateClass::integers();
    v.arrangement.window = Window::make_ball({0.0, 0.0}, 2.0);
    v.arrangement.vertices = {{-1.0, 0.0}, {1.0, 0.0}};
    v.arrangement.edges = {Edge{Endpoint::at_vertex(0), Endpoint::at_vertex(1)}};
    v.mult = {static_cast<double>(mult)};
    return v;
}

} // namespace varifold::fixtures
