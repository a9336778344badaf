#include "blpack/error.hpp"
#include "blpack/maps.hpp"

#include <cmath>

namespace blpack {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kEdgeTol = 1e-12;

double wrap(double a)
{
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

Complex contact(const EuclideanCircle& c) { return c.center / std::abs(c.center); }

struct Pair {
    int u, v, w;  // consecutive boundary vertices and the third vertex of their face
};

Pair boundary_pair(const Triangulation& t, int walk_pos)
{
    const auto& walk = t.boundary_walk();
    const int m = static_cast<int>(walk.size());
    if (walk_pos < 0 || walk_pos >= m) throw Error(ErrorCode::InvalidArgument, "walk position out of range");
    const int u = walk[walk_pos];
    return {u, walk[(walk_pos + 1) % m], t.neighbors(u)[1]};
}

// Coordinates in which the interstice between C(u) and C(v) becomes the
// half strip 0 < Re w < 1 outside the circle |w - 1/2| = 1/2: mu -> infinity,
// lambda(u) -> 0, lambda(v) -> 1.
Complex strip_coordinate(Complex lu, Complex lv, Complex mu, Complex z)
{
    return (z - lu) * (lv - mu) / ((z - mu) * (lv - lu));
}

bool in_interstice(const Packing& d, const Pair& pr, Complex z)
{
    const Complex lu = contact(d.circle(pr.u)), lv = contact(d.circle(pr.v));
    const Complex mu = tangency_point(d.circle(pr.u), d.circle(pr.v));
    const Complex w = strip_coordinate(lu, lv, mu, z);
    const double carrier_side = strip_coordinate(lu, lv, mu, d.center(pr.w)).imag();
    return w.real() >= -kEdgeTol && w.real() <= 1.0 + kEdgeTol && std::abs(w - 0.5) >= 0.5 - kEdgeTol &&
           w.imag() * carrier_side < 0;
}

int walk_position(const Triangulation& t, int v)
{
    const auto& walk = t.boundary_walk();
    for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
        if (walk[i] == v) return i;
    }
    throw Error(ErrorCode::InvalidArgument, "vertex is not on the boundary");
}

}  // namespace

MobiusTransform interstice_map(const CpMap& f, int walk_pos)
{
    const Pair pr = boundary_pair(f.complex(), walk_pos);
    const auto& d = f.domain();
    const auto& r = f.range();
    return mobius_from_three_points(
        {contact(d.circle(pr.u)), contact(d.circle(pr.v)), tangency_point(d.circle(pr.u), d.circle(pr.v))},
        {contact(r.circle(pr.u)), contact(r.circle(pr.v)), tangency_point(r.circle(pr.u), r.circle(pr.v))});
}

Complex interstice_formula(const CpMap& f, int walk_pos, Complex z) { return interstice_map(f, walk_pos)(z); }

Complex boundary_disc_formula(const CpMap& f, int v, Complex z)
{
    const auto& t = f.complex();
    const auto& d = f.domain();
    const int pos = walk_position(t, v);
    const int m = static_cast<int>(t.boundary_walk().size());
    const int next = t.neighbors(v).front();
    const int prev = t.neighbors(v).back();

    const Complex c = d.center(v);
    const Complex target = f.range().center(v);
    const Complex offset = z - c;
    if (offset == Complex(0.0)) return target;
    const double scale = std::abs(offset) / d.radius(v);
    const double phi = std::arg(offset);
    const Complex p = c + std::polar(d.radius(v), phi);

    // Angles measured counterclockwise from the edge towards `next`.
    const double base = std::arg(d.center(next) - c);
    const double rel = wrap(phi - base);
    const double carrier_end = wrap(std::arg(d.center(prev) - c) - base);
    const double contact_angle = wrap(std::arg(c) - base);

    Complex image;
    if (rel <= carrier_end) {
        int face = find_face(d, p);
        if (face < 0) face = t.vertex_faces(v).front();
        image = carrier_formula(f, face, p);
    } else if (rel <= contact_angle) {
        image = interstice_formula(f, (pos + m - 1) % m, p);
    } else {
        image = interstice_formula(f, pos, p);
    }
    return target + scale * (image - target);
}

ExtensionHit locate_region(const CpMap& f, Complex z)
{
    if (!(std::abs(z) < 1.0 - 1e-12)) {
        throw Error(ErrorCode::RegionLocationFailed, "point too close to or outside the unit circle");
    }
    const auto& d = f.domain();
    const auto& t = f.complex();
    if (const int face = find_face(d, z); face >= 0) return {Region::Carrier, face};
    const int m = static_cast<int>(t.boundary_walk().size());
    for (int i = 0; i < m; ++i) {
        if (in_interstice(d, boundary_pair(t, i), z)) return {Region::Interstice, i};
    }
    for (int v : t.boundary_walk()) {
        if (std::abs(z - d.center(v)) <= d.radius(v) * (1.0 + kEdgeTol)) return {Region::BoundaryDisc, v};
    }
    throw Error(ErrorCode::RegionLocationFailed, "no region contains the point");
}

Complex extension_eval(const CpMap& f, Complex z)
{
    const auto hit = locate_region(f, z);
    switch (hit.region) {
    case Region::Carrier:
        return carrier_formula(f, hit.index, z);
    case Region::Interstice:
        return interstice_formula(f, hit.index, z);
    case Region::BoundaryDisc:
        return boundary_disc_formula(f, hit.index, z);
    }
    return {};
}

}  // namespace blpack
