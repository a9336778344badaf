#include "blpack/error.hpp"
#include "blpack/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

namespace blpack {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Three mutually tangent circles in a reference frame computed from the
// label alone, with the Mobius-natural point of each circle (hyperbolic
// center, or the point of tangency with the unit circle for horocycles).
struct LocalTriple {
    std::array<EuclideanCircle, 3> circle;
    std::array<Complex, 3> natural;
};

struct Placed {
    EuclideanCircle circle;
    Complex natural;
};

Placed center_circle(const HyperbolicRadius& hc)
{
    const double sc = hc.s();
    const double one_minus_sc = hc.one_minus_t() / (1.0 + sc);
    return {{0.0, one_minus_sc / (1.0 + sc)}, 0.0};
}

// Circle tangent to the center circle (at the origin) in direction theta.
Placed petal_circle(const HyperbolicRadius& hc, const HyperbolicRadius& hp, double theta)
{
    const double sc = hc.s();
    const double sp = hp.s();
    const double one_minus_sc = hc.one_minus_t() / (1.0 + sc);
    const double inner = one_minus_sc / (1.0 + sc);
    const double q = sc * hp.t();
    const double radius = sc * hp.one_minus_t() / ((1.0 + q) * (1.0 + sc));
    const Complex dir = std::polar(1.0, theta);
    const double one_minus_scsp = one_minus_sc + sc * hp.one_minus_t() / (1.0 + sp);
    const double natural = one_minus_scsp / (1.0 + sc * sp);
    return {{dir * (inner + radius), radius}, dir * natural};
}

// Reference configuration for the positively oriented face <v, u, w>.
LocalTriple reference_triple(const HyperbolicRadius& hv, const HyperbolicRadius& hu, const HyperbolicRadius& hw)
{
    LocalTriple out;
    auto store = [&](int i, const Placed& p) {
        out.circle[i] = p.circle;
        out.natural[i] = p.natural;
    };
    if (!hv.is_infinite()) {
        store(0, center_circle(hv));
        store(1, petal_circle(hv, hu, 0.0));
        store(2, petal_circle(hv, hw, hyperbolic_angle(hv, hu, hw)));
    } else if (!hu.is_infinite()) {
        store(1, center_circle(hu));
        store(0, petal_circle(hu, hv, 0.0));
        store(2, petal_circle(hu, hw, -hyperbolic_angle(hu, hw, hv)));
    } else if (!hw.is_infinite()) {
        store(2, center_circle(hw));
        store(0, petal_circle(hw, hv, 0.0));
        store(1, petal_circle(hw, hu, hyperbolic_angle(hw, hv, hu)));
    } else {
        const double r = 2.0 * std::sqrt(3.0) - 3.0;
        for (int i = 0; i < 3; ++i) {
            const Complex dir = std::polar(1.0, kTwoPi * i / 3.0);
            out.circle[i] = {dir * (1.0 - r), r};
            out.natural[i] = dir;
        }
    }
    return out;
}

double residual_of(const Triangulation& t, const std::vector<EuclideanCircle>& c)
{
    double worst = 0.0;
    for (const auto& [a, b] : t.edges()) {
        worst = std::max(worst, std::abs(std::abs(c[a].center - c[b].center) - (c[a].radius + c[b].radius)));
    }
    for (int v : t.boundary_walk()) {
        worst = std::max(worst, std::abs(std::abs(c[v].center) + c[v].radius - 1.0));
    }
    return worst;
}

// Gauss-Seidel least-squares adjustment of centers with radii held fixed.
void refine_centers(const Triangulation& t, std::vector<EuclideanCircle>& c, double tol)
{
    for (int pass = 0; pass < 500 && residual_of(t, c) > 0.1 * tol; ++pass) {
        for (int v = 0; v < t.num_vertices(); ++v) {
            double jtj[3] = {0, 0, 0};  // xx, xy, yy
            double jte[2] = {0, 0};
            auto add = [&](Complex dir, double e) {
                jtj[0] += dir.real() * dir.real();
                jtj[1] += dir.real() * dir.imag();
                jtj[2] += dir.imag() * dir.imag();
                jte[0] += dir.real() * e;
                jte[1] += dir.imag() * e;
            };
            for (int u : t.neighbors(v)) {
                const Complex d = c[v].center - c[u].center;
                const double len = std::abs(d);
                if (len == 0.0) continue;
                add(d / len, len - (c[v].radius + c[u].radius));
            }
            if (t.is_boundary(v)) {
                const double len = std::abs(c[v].center);
                if (len > 0.0) add(c[v].center / len, len + c[v].radius - 1.0);
            }
            const double det = jtj[0] * jtj[2] - jtj[1] * jtj[1];
            if (std::abs(det) < 1e-300) continue;
            const double dx = -(jtj[2] * jte[0] - jtj[1] * jte[1]) / det;
            const double dy = -(-jtj[1] * jte[0] + jtj[0] * jte[1]) / det;
            c[v].center += Complex(dx, dy);
        }
    }
}

Packing finish(const Triangulation& t, std::vector<EuclideanCircle> circles)
{
    Packing p;
    p.complex = t;
    p.circles = std::move(circles);
    const auto sums = angle_sums(p);
    p.angle_sum = sums.theta;
    p.branch = sums.branch;
    p.target.assign(t.num_vertices(), std::numeric_limits<double>::quiet_NaN());
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_interior(v)) p.target[v] = kTwoPi * (1 + p.branch.order_at(v));
    }
    return p;
}

}  // namespace

double LayoutResidual::max() const { return std::max({tangency, boundary, containment}); }

Packing layout(const Triangulation& t, const RadiusLabel& label, double tol_layout)
{
    const int n = t.num_vertices();
    if (static_cast<int>(label.radii.size()) != n) throw Error(ErrorCode::InvalidArgument, "label size mismatch");
    for (int v = 0; v < n; ++v) {
        if (t.is_boundary(v) != label.radii[v].is_infinite()) {
            throw Error(ErrorCode::InvalidArgument, "label must be infinite exactly on the boundary");
        }
    }

    std::vector<EuclideanCircle> circles(n);
    std::vector<Complex> natural(n);
    std::vector<bool> placed(n, false);

    int root_face = 0;
    int root = -1;
    const auto interior = t.interior_vertices();
    if (!interior.empty()) {
        root = interior.front();
        root_face = *std::min_element(t.vertex_faces(root).begin(), t.vertex_faces(root).end());
    }
    {
        Face f = t.face(root_face);
        if (root >= 0) {
            while (f[0] != root) std::rotate(f.begin(), f.begin() + 1, f.end());
        }
        const auto ref = reference_triple(label.radii[f[0]], label.radii[f[1]], label.radii[f[2]]);
        for (int i = 0; i < 3; ++i) {
            circles[f[i]] = ref.circle[i];
            natural[f[i]] = ref.natural[i];
            placed[f[i]] = true;
        }
    }

    std::vector<bool> visited(t.num_faces(), false);
    std::queue<int> queue;
    visited[root_face] = true;
    queue.push(root_face);
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop();
        for (int i = 0; i < 3; ++i) {
            const int g = t.face_across(f, i);
            if (g < 0 || visited[g]) continue;
            visited[g] = true;
            queue.push(g);

            Face face = t.face(g);
            if (placed[face[0]] && placed[face[1]] && placed[face[2]]) continue;
            while (!(placed[face[0]] && placed[face[1]])) std::rotate(face.begin(), face.begin() + 1, face.end());
            const int v = face[0], u = face[1], w = face[2];

            const auto ref = reference_triple(label.radii[v], label.radii[u], label.radii[w]);
            const Complex local_mu = tangency_point(ref.circle[0], ref.circle[1]);
            const Complex global_mu = tangency_point(circles[v], circles[u]);
            const auto m =
                mobius_from_three_points({ref.natural[0], ref.natural[1], local_mu}, {natural[v], natural[u], global_mu});
            circles[w] = apply_mobius_to_circle(m, ref.circle[2]);
            natural[w] = m(ref.natural[2]);
            placed[w] = true;
        }
    }

    if (residual_of(t, circles) > tol_layout) refine_centers(t, circles, tol_layout);
    Packing p = finish(t, std::move(circles));
    const auto res = layout_residual(p);
    if (res.max() > tol_layout) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "layout residual %.3g exceeds %.3g", res.max(), tol_layout);
        throw Error(ErrorCode::LayoutInconsistent, msg);
    }
    return p;
}

Packing assemble_packing(const Triangulation& t, const BranchStructure& b, std::vector<EuclideanCircle> circles)
{
    if (static_cast<int>(circles.size()) != t.num_vertices()) {
        throw Error(ErrorCode::InvalidArgument, "one circle per vertex required");
    }
    Packing p = finish(t, std::move(circles));
    p.branch = b.sorted();
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_interior(v)) p.target[v] = target_angle_sum(b, v);
    }
    return p;
}

LayoutResidual layout_residual(const Packing& p)
{
    LayoutResidual r;
    const auto& c = p.circles;
    for (const auto& [a, b] : p.complex.edges()) {
        r.tangency = std::max(r.tangency, std::abs(std::abs(c[a].center - c[b].center) - (c[a].radius + c[b].radius)));
    }
    for (int v : p.complex.boundary_walk()) {
        r.boundary = std::max(r.boundary, std::abs(std::abs(c[v].center) + c[v].radius - 1.0));
    }
    for (const auto& circle : c) {
        r.containment = std::max(r.containment, std::abs(circle.center) + circle.radius - 1.0);
    }
    return r;
}

Packing apply_automorphism(const Packing& p, const MobiusTransform& m)
{
    std::vector<EuclideanCircle> circles;
    circles.reserve(p.circles.size());
    for (const auto& c : p.circles) circles.push_back(apply_mobius_to_circle(m, c));
    Packing out = finish(p.complex, std::move(circles));
    out.branch = p.branch;
    out.target = p.target;
    out.report = p.report;
    return out;
}

MobiusTransform normalizing_transform(const Packing& p, int u0, int u1)
{
    const int n = p.complex.num_vertices();
    if (u0 < 0 || u0 >= n || u1 < 0 || u1 >= n || u0 == u1) {
        throw Error(ErrorCode::InvalidArgument, "normalize needs two distinct vertices");
    }
    if (p.complex.is_boundary(u0)) {
        if (p.complex.neighbors(u0).front() != u1) {
            throw Error(ErrorCode::InvalidArgument, "normalize: u1 must follow a boundary u0 on the boundary walk");
        }
        const int u2 = p.complex.neighbors(u1).front();
        std::array<Complex, 3> from, to;
        const int ids[3] = {u0, u1, u2};
        for (int i = 0; i < 3; ++i) {
            from[i] = p.center(ids[i]) / std::abs(p.center(ids[i]));
            to[i] = std::polar(1.0, kTwoPi * i / 3.0);
        }
        return mobius_from_three_points(from, to);
    }
    const Complex c = hyperbolic_center(p.circle(u0));
    const Complex w = apply_mobius_to_circle(disc_automorphism(c, 0.0), p.circle(u1)).center;
    return disc_automorphism(c, -std::arg(w));
}

Packing normalize(const Packing& p, int u0, int u1)
{
    return apply_automorphism(p, normalizing_transform(p, u0, u1));
}

AngleSums angle_sums(const Packing& p, double tol)
{
    const auto& t = p.complex;
    AngleSums out;
    out.theta.assign(t.num_vertices(), 0.0);
    for (const auto& f : t.faces()) {
        for (int i = 0; i < 3; ++i) {
            out.theta[f[i]] += euclidean_angle(p.radius(f[i]), p.radius(f[(i + 1) % 3]), p.radius(f[(i + 2) % 3]));
        }
    }
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_interior(v) && out.theta[v] > kTwoPi + tol) {
            out.branch.entries.push_back({v, static_cast<int>(std::lround(out.theta[v] / kTwoPi)) - 1});
        }
    }
    return out;
}

double gauss_bonnet_residual(const Packing& p)
{
    const auto sums = angle_sums(p);
    const auto& t = p.complex;
    double lhs = 0.0;
    double boundary_defect = 0.0;
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (t.is_interior(v)) {
            lhs += kTwoPi - sums.theta[v];
        } else {
            boundary_defect += M_PI - sums.theta[v];
        }
    }
    return lhs - (kTwoPi - boundary_defect);
}

}  // namespace blpack
