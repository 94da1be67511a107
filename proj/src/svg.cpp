#include "varifold/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "varifold/io.hpp"
#include "varifold/variation.hpp"

namespace varifold::svg {

namespace {

struct Frame {
    double min_x, min_y, max_x, max_y, scale;

    double x(double wx) const { return (wx - min_x) * scale; }
    // SVG y runs downward
    double y(double wy) const { return (max_y - wy) * scale; }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

std::string render(const PolyhedralVarifold& v) {
    if (v.arrangement.dim() != 2)
        throw Error(Error::Code::invalid_input, "render supports planar networks only");
    const Window& w = v.arrangement.window;

    Frame f{};
    if (w.kind == Window::Kind::ball) {
        f.min_x = w.center[0] - w.radius;
        f.max_x = w.center[0] + w.radius;
        f.min_y = w.center[1] - w.radius;
        f.max_y = w.center[1] + w.radius;
    } else {
        f.min_x = w.lo[0];
        f.max_x = w.hi[0];
        f.min_y = w.lo[1];
        f.max_y = w.hi[1];
    }
    const double pad = 0.05 * std::max(f.max_x - f.min_x, f.max_y - f.min_y);
    f.min_x -= pad;
    f.min_y -= pad;
    f.max_x += pad;
    f.max_y += pad;
    f.scale = 640.0 / std::max(f.max_x - f.min_x, f.max_y - f.min_y);

    double max_mult = 1;
    for (double m : v.mult)
        max_mult = std::max(max_mult, m);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << num((f.max_x - f.min_x) * f.scale) << "\" height=\"" << num((f.max_y - f.min_y) * f.scale)
       << "\">\n";

    if (w.kind == Window::Kind::ball)
        os << "  <circle cx=\"" << num(f.x(w.center[0])) << "\" cy=\"" << num(f.y(w.center[1]))
           << "\" r=\"" << num(w.radius * f.scale)
           << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"6,4\"/>\n";
    else
        os << "  <rect x=\"" << num(f.x(w.lo[0])) << "\" y=\"" << num(f.y(w.hi[1])) << "\" width=\""
           << num((w.hi[0] - w.lo[0]) * f.scale) << "\" height=\""
           << num((w.hi[1] - w.lo[1]) * f.scale)
           << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"6,4\"/>\n";

    for (std::size_t e = 0; e < v.edge_count(); ++e) {
        Vec a = v.arrangement.edge_a(e), b = v.arrangement.edge_b(e);
        double width = 1.5 + 3.0 * v.mult[e] / max_mult;
        os << "  <line x1=\"" << num(f.x(a[0])) << "\" y1=\"" << num(f.y(a[1])) << "\" x2=\""
           << num(f.x(b[0])) << "\" y2=\"" << num(f.y(b[1])) << "\" stroke=\"#222222\""
           << " stroke-width=\"" << num(width) << "\"/>\n";
    }

    for (const Vec& p : v.arrangement.vertices)
        os << "  <circle cx=\"" << num(f.x(p[0])) << "\" cy=\"" << num(f.y(p[1]))
           << "\" r=\"3\" fill=\"#222222\"/>\n";

    // first-variation atoms as red arrows
    VectorAtomMeasure dv = first_variation(v);
    const double arrow = 0.12 * std::max(f.max_x - f.min_x, f.max_y - f.min_y);
    double max_atom = 0;
    for (const auto& a : dv.atoms)
        max_atom = std::max(max_atom, norm(a.vector));
    for (const auto& a : dv.atoms) {
        Vec dir = normalized(a.vector);
        double len = arrow * norm(a.vector) / max_atom;
        Vec tip = add(a.point, scaled(dir, len));
        double tx = f.x(tip[0]), ty = f.y(tip[1]);
        double px = f.x(a.point[0]), py = f.y(a.point[1]);
        os << "  <line x1=\"" << num(px) << "\" y1=\"" << num(py) << "\" x2=\"" << num(tx)
           << "\" y2=\"" << num(ty) << "\" stroke=\"#cc2222\" stroke-width=\"2\"/>\n";
        // arrowhead
        double ang = std::atan2(ty - py, tx - px);
        for (double da : {2.6, -2.6}) {
            os << "  <line x1=\"" << num(tx) << "\" y1=\"" << num(ty) << "\" x2=\""
               << num(tx + 8 * std::cos(ang + da)) << "\" y2=\"" << num(ty + 8 * std::sin(ang + da))
               << "\" stroke=\"#cc2222\" stroke-width=\"2\"/>\n";
        }
    }

    os << "</svg>\n";
    return os.str();
}

} // namespace varifold::svg
