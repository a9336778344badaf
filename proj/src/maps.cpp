#include "blpack/maps.hpp"

#include "blpack/error.hpp"

#include <algorithm>
#include <cmath>

namespace blpack {

namespace {

constexpr double kBaryTol = 1e-12;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

std::array<double, 3> bary(Complex z0, Complex z1, Complex z2, Complex z)
{
    const Complex d1 = z1 - z0, d2 = z2 - z0, q = z - z0;
    const double det = cross(d1, d2);
    const double l1 = cross(q, d2) / det;
    const double l2 = cross(d1, q) / det;
    return {1.0 - l1 - l2, l1, l2};
}

// Frame for comparing packings: a point map pinned by the packing alone.
MobiusTransform frame_transform(const Packing& p)
{
    const auto& t = p.complex;
    const auto interior = t.interior_vertices();
    if (!interior.empty()) {
        const int u0 = interior.front();
        return normalizing_transform(p, u0, t.neighbors(u0)[0]);
    }
    const auto& walk = t.boundary_walk();
    return normalizing_transform(p, walk[0], walk[1]);
}

}  // namespace

CpMap::CpMap(Packing domain, Packing range) : domain_(std::move(domain)), range_(std::move(range))
{
    if (!domain_.complex.same_combinatorics(range_.complex)) {
        throw Error(ErrorCode::DifferentComplex, "cp-map needs packings of the same complex");
    }
    if (!domain_.branch.empty()) throw Error(ErrorCode::InvalidArgument, "cp-map domain must be univalent");
}

std::array<double, 3> barycentric(const Packing& p, int f, Complex z)
{
    const auto& face = p.complex.face(f);
    return bary(p.center(face[0]), p.center(face[1]), p.center(face[2]), z);
}

int find_face(const Packing& p, Complex z)
{
    for (int f = 0; f < p.complex.num_faces(); ++f) {
        const auto l = barycentric(p, f, z);
        if (l[0] >= -kBaryTol && l[1] >= -kBaryTol && l[2] >= -kBaryTol) return f;
    }
    return -1;
}

Complex cp_map_eval(const CpMap& f, Complex z)
{
    const int face = find_face(f.domain(), z);
    if (face < 0) throw Error(ErrorCode::OutsideCarrier, "point outside the domain carrier");
    return carrier_formula(f, face, z);
}

Complex carrier_formula(const CpMap& f, int face, Complex z)
{
    const auto l = barycentric(f.domain(), face, z);
    const auto& tri = f.complex().face(face);
    const auto& r = f.range();
    return l[0] * r.center(tri[0]) + l[1] * r.center(tri[1]) + l[2] * r.center(tri[2]);
}

double ratio_map(const CpMap& f, int v) { return f.range().radius(v) / f.domain().radius(v); }

double local_distortion(const Packing& p, int v)
{
    double worst = 1.0;
    const double rv = p.radius(v);
    for (int u : p.complex.neighbors(v)) {
        const double q = p.radius(u) / rv;
        worst = std::max(worst, 0.5 * (q + 1.0 / q));
    }
    return worst;
}

double max_local_distortion(const Packing& p)
{
    double worst = 1.0;
    for (int v = 0; v < p.complex.num_vertices(); ++v) worst = std::max(worst, local_distortion(p, v));
    return worst;
}

int valence(const Packing& p)
{
    const auto& c = p.circles;
    const int n = static_cast<int>(c.size());
    auto depth = [&](Complex z) {
        int count = 0;
        for (const auto& d : c) {
            if (std::abs(z - d.center) < d.radius) ++count;
        }
        return count;
    };

    std::vector<Complex> candidates;
    for (const auto& d : c) candidates.push_back(d.center);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Complex delta = c[j].center - c[i].center;
            const double dist = std::abs(delta);
            const double ri = c[i].radius, rj = c[j].radius;
            // Tangent neighbours overlap only by layout error; ignore those.
            const double overlap = ri + rj - dist;
            if (overlap <= 1e-7 * std::min(ri, rj) + 1e-10) continue;
            candidates.push_back(0.5 * (c[i].center + c[j].center));
            if (dist <= std::abs(ri - rj)) continue;
            const double along = (dist * dist + ri * ri - rj * rj) / (2.0 * dist);
            const double half = std::sqrt(std::max(0.0, ri * ri - along * along));
            const Complex dir = delta / dist;
            const Complex mid = c[i].center + along * dir;
            const Complex normal = dir * Complex(0.0, 1.0);
            for (double sgn : {1.0, -1.0}) {
                const Complex x = mid + sgn * half * normal;
                candidates.push_back(x + 1e-9 * (mid - x) / std::abs(mid - x));
            }
        }
    }
    int best = 0;
    for (Complex z : candidates) best = std::max(best, depth(z));
    return best;
}

int sampled_map_valence(const CpMap& f, int grid)
{
    const auto& r = f.range();
    const auto& t = f.complex();
    struct Box {
        double x0, x1, y0, y1;
    };
    std::vector<Box> boxes;
    boxes.reserve(t.num_faces());
    for (const auto& face : t.faces()) {
        Box b{1e300, -1e300, 1e300, -1e300};
        for (int v : face) {
            const Complex z = r.center(v);
            b.x0 = std::min(b.x0, z.real());
            b.x1 = std::max(b.x1, z.real());
            b.y0 = std::min(b.y0, z.imag());
            b.y1 = std::max(b.y1, z.imag());
        }
        boxes.push_back(b);
    }
    int best = 0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const Complex w(-1.0 + (i + 0.5) * 2.0 / grid, -1.0 + (j + 0.5) * 2.0 / grid);
            int count = 0;
            for (int fi = 0; fi < t.num_faces(); ++fi) {
                const auto& b = boxes[fi];
                if (w.real() < b.x0 || w.real() > b.x1 || w.imag() < b.y0 || w.imag() > b.y1) continue;
                const auto l = barycentric(r, fi, w);
                if (l[0] > 0 && l[1] > 0 && l[2] > 0) ++count;
            }
            best = std::max(best, count);
        }
    }
    return best;
}

double face_dilatation(const CpMap& f, int face)
{
    const auto& tri = f.complex().face(face);
    const auto& d = f.domain();
    const auto& r = f.range();
    const Complex d1 = d.center(tri[1]) - d.center(tri[0]);
    const Complex d2 = d.center(tri[2]) - d.center(tri[0]);
    const Complex e1 = r.center(tri[1]) - r.center(tri[0]);
    const Complex e2 = r.center(tri[2]) - r.center(tri[0]);
    // Affine map z -> a z + b conj(z) + c through the three vertex pairs.
    const Complex den = d1 * std::conj(d2) - d2 * std::conj(d1);
    const Complex a = (e1 * std::conj(d2) - e2 * std::conj(d1)) / den;
    const Complex b = (d1 * e2 - d2 * e1) / den;
    const double abs_a = std::abs(a), abs_b = std::abs(b);
    if (!(abs_a > abs_b + 1e-14)) {
        throw Error(ErrorCode::DegenerateFace, "face " + std::to_string(face) + " is degenerate or reversed");
    }
    return (abs_a + abs_b) / (abs_a - abs_b);
}

double per_face_dilatation(const CpMap& f)
{
    double worst = 1.0;
    for (int face = 0; face < f.complex().num_faces(); ++face) worst = std::max(worst, face_dilatation(f, face));
    return worst;
}

MobiusEquivalence equivalent_mod_mobius(const Packing& p, const Packing& q, double tol)
{
    if (!p.complex.same_combinatorics(q.complex)) {
        throw Error(ErrorCode::DifferentComplex, "packings have different complexes");
    }
    MobiusEquivalence out;
    out.transform = frame_transform(q).inverse().compose(frame_transform(p));
    for (int v = 0; v < p.complex.num_vertices(); ++v) {
        const auto image = apply_mobius_to_circle(out.transform, p.circle(v));
        out.discrepancy = std::max(out.discrepancy,
                                   std::abs(image.center - q.center(v)) + std::abs(image.radius - q.radius(v)));
    }
    out.equivalent = p.branch.sorted() == q.branch.sorted() && out.discrepancy <= tol;
    return out;
}

}  // namespace blpack
