#include "blpack/complex.hpp"

#include "blpack/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace blpack {

namespace {

Edge undirected(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

bool has_directed_edge(const Face& f, int a, int b)
{
    for (int i = 0; i < 3; ++i) {
        if (f[i] == a && f[(i + 1) % 3] == b) return true;
    }
    return false;
}

}  // namespace

std::vector<int> Triangulation::interior_vertices() const
{
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v) {
        if (!boundary_[v]) out.push_back(v);
    }
    return out;
}

int Triangulation::num_interior() const
{
    return static_cast<int>(std::count(boundary_.begin(), boundary_.end(), false));
}

Triangulation build_triangulation(std::vector<Face> faces)
{
    if (faces.empty()) throw Error(ErrorCode::NotADisc, "empty face list");

    int max_id = -1;
    for (const auto& f : faces) {
        for (int v : f) {
            if (v < 0) throw Error(ErrorCode::BadFace, "negative vertex id");
            max_id = std::max(max_id, v);
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
            throw Error(ErrorCode::BadFace, "repeated vertex in face (" + std::to_string(f[0]) + "," +
                                                std::to_string(f[1]) + "," + std::to_string(f[2]) + ")");
        }
    }
    const int n = max_id + 1;
    const int nf = static_cast<int>(faces.size());

    std::vector<bool> used(n, false);
    for (const auto& f : faces) {
        for (int v : f) used[v] = true;
    }
    for (int v = 0; v < n; ++v) {
        if (!used[v]) throw Error(ErrorCode::NotADisc, "vertex id " + std::to_string(v) + " is not used by any face");
    }

    {
        std::set<std::array<int, 3>> seen;
        for (const auto& f : faces) {
            auto key = f;
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) throw Error(ErrorCode::NotADisc, "duplicate face");
        }
    }

    // Edge -> incident faces.
    std::map<Edge, std::vector<int>> edge_faces;
    for (int fi = 0; fi < nf; ++fi) {
        for (int i = 0; i < 3; ++i) {
            auto& list = edge_faces[undirected(faces[fi][i], faces[fi][(i + 1) % 3])];
            list.push_back(fi);
            if (list.size() > 2) throw Error(ErrorCode::NotADisc, "edge shared by more than two faces");
        }
    }

    // Orient consistently by breadth-first propagation from face 0.
    std::vector<bool> visited(nf, false);
    std::queue<int> queue;
    visited[0] = true;
    queue.push(0);
    int reached = 1;
    while (!queue.empty()) {
        const int fi = queue.front();
        queue.pop();
        for (int i = 0; i < 3; ++i) {
            const int a = faces[fi][i];
            const int b = faces[fi][(i + 1) % 3];
            for (int gi : edge_faces[undirected(a, b)]) {
                if (gi == fi) continue;
                const bool consistent = has_directed_edge(faces[gi], b, a);
                if (!visited[gi]) {
                    if (!consistent) std::swap(faces[gi][1], faces[gi][2]);
                    visited[gi] = true;
                    ++reached;
                    queue.push(gi);
                } else if (!consistent) {
                    throw Error(ErrorCode::NonOrientable, "inconsistent orientation across edge (" +
                                                              std::to_string(a) + "," + std::to_string(b) + ")");
                }
            }
        }
    }
    if (reached != nf) throw Error(ErrorCode::NotADisc, "face adjacency graph is disconnected");

    Triangulation t;
    t.faces_ = std::move(faces);
    const auto& fs = t.faces_;

    t.edges_.reserve(edge_faces.size());
    for (const auto& [e, list] : edge_faces) t.edges_.push_back(e);

    if (n - t.num_edges() + nf != 1) {
        throw Error(ErrorCode::NotADisc, "Euler characteristic V-E+F = " + std::to_string(n - t.num_edges() + nf) +
                                             ", expected 1");
    }

    t.adjacency_.assign(nf, {-1, -1, -1});
    for (int fi = 0; fi < nf; ++fi) {
        for (int i = 0; i < 3; ++i) {
            for (int gi : edge_faces[undirected(fs[fi][i], fs[fi][(i + 1) % 3])]) {
                if (gi != fi) t.adjacency_[fi][i] = gi;
            }
        }
    }

    // Vertex links: every face <v, a, b> contributes the link arc a -> b.
    std::vector<std::map<int, std::pair<int, int>>> next(n);  // a -> (b, face)
    for (int fi = 0; fi < nf; ++fi) {
        for (int i = 0; i < 3; ++i) {
            const int v = fs[fi][i];
            const int a = fs[fi][(i + 1) % 3];
            const int b = fs[fi][(i + 2) % 3];
            if (!next[v].emplace(a, std::make_pair(b, fi)).second) {
                throw Error(ErrorCode::NotADisc, "non-manifold link at vertex " + std::to_string(v));
            }
        }
    }

    t.boundary_.assign(n, false);
    t.neighbors_.assign(n, {});
    t.vertex_faces_.assign(n, {});
    for (int v = 0; v < n; ++v) {
        const auto& nx = next[v];
        std::set<int> targets;
        for (const auto& [a, bf] : nx) targets.insert(bf.first);
        std::vector<int> starts;
        for (const auto& [a, bf] : nx) {
            if (!targets.count(a)) starts.push_back(a);
        }
        if (starts.size() > 1) throw Error(ErrorCode::NotADisc, "pinched vertex " + std::to_string(v));

        const bool interior = starts.empty();
        int cur = interior ? nx.begin()->first : starts.front();
        auto& nb = t.neighbors_[v];
        auto& vf = t.vertex_faces_[v];
        nb.push_back(cur);
        for (std::size_t step = 0; step < nx.size(); ++step) {
            auto it = nx.find(cur);
            if (it == nx.end()) break;
            vf.push_back(it->second.second);
            cur = it->second.first;
            if (interior && cur == nb.front()) break;
            nb.push_back(cur);
        }
        if (vf.size() != nx.size()) throw Error(ErrorCode::NotADisc, "link of vertex " + std::to_string(v) + " is not connected");
        if (interior && cur != nb.front()) throw Error(ErrorCode::NotADisc, "link of vertex " + std::to_string(v) + " does not close");
        t.boundary_[v] = !interior;
        t.degree_ = std::max(t.degree_, static_cast<int>(nb.size()));
    }

    // Boundary walk follows the outgoing boundary edge v -> neighbors(v)[0].
    int first = -1;
    for (int v = 0; v < n && first < 0; ++v) {
        if (t.boundary_[v]) first = v;
    }
    if (first < 0) throw Error(ErrorCode::NotADisc, "no boundary vertex");
    int cur = first;
    do {
        t.boundary_walk_.push_back(cur);
        cur = t.neighbors_[cur].front();
        if (!t.boundary_[cur] || t.boundary_walk_.size() > static_cast<std::size_t>(n)) {
            throw Error(ErrorCode::NotADisc, "boundary walk does not close");
        }
    } while (cur != first);
    if (static_cast<int>(t.boundary_walk_.size()) != static_cast<int>(std::count(t.boundary_.begin(), t.boundary_.end(), true))) {
        throw Error(ErrorCode::NotADisc, "boundary has more than one component");
    }
    return t;
}

Triangulation flower(int k)
{
    if (k < 3) throw Error(ErrorCode::InvalidArgument, "flower needs at least 3 petals");
    std::vector<Face> faces;
    for (int i = 1; i <= k; ++i) faces.push_back({0, i, i % k + 1});
    return build_triangulation(std::move(faces));
}

Triangulation hex_ball(int n)
{
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "hex_ball needs n >= 1");
    struct Lattice {
        int q, r, ring;
        double angle;
    };
    auto ring_of = [](int q, int r) { return (std::abs(q) + std::abs(r) + std::abs(q + r)) / 2; };
    const std::complex<double> omega(0.5, std::sqrt(3.0) / 2.0);

    std::vector<Lattice> pts;
    for (int q = -n; q <= n; ++q) {
        for (int r = -n; r <= n; ++r) {
            const int ring = ring_of(q, r);
            if (ring > n) continue;
            const auto z = static_cast<double>(q) + static_cast<double>(r) * omega;
            double a = std::atan2(z.imag(), z.real());
            if (a < -1e-12) a += 2.0 * M_PI;
            if (a < 0) a = 0;
            pts.push_back({q, r, ring, ring == 0 ? 0.0 : a});
        }
    }
    std::sort(pts.begin(), pts.end(), [](const Lattice& x, const Lattice& y) {
        if (x.ring != y.ring) return x.ring < y.ring;
        return x.angle < y.angle;
    });
    std::map<std::pair<int, int>, int> id;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) id[{pts[i].q, pts[i].r}] = i;

    auto lookup = [&](int q, int r) {
        auto it = id.find({q, r});
        return it == id.end() ? -1 : it->second;
    };
    std::vector<Face> faces;
    for (int q = -n; q <= n; ++q) {
        for (int r = -n; r <= n; ++r) {
            const int a = lookup(q, r);
            const int b = lookup(q + 1, r);
            const int c = lookup(q, r + 1);
            const int d = lookup(q + 1, r + 1);
            if (a >= 0 && b >= 0 && c >= 0) faces.push_back({a, b, c});
            if (b >= 0 && d >= 0 && c >= 0) faces.push_back({b, d, c});
        }
    }
    // Canonical face order: a face containing the center comes first.
    std::stable_sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) {
        return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
    });
    return build_triangulation(std::move(faces));
}

Triangulation hex_refine(const Triangulation& t)
{
    const int n = t.num_vertices();
    std::map<Edge, int> mid;
    for (int e = 0; e < t.num_edges(); ++e) mid[t.edges()[e]] = n + e;
    auto m = [&](int a, int b) { return mid.at(undirected(a, b)); };

    std::vector<Face> faces;
    faces.reserve(4 * t.faces().size());
    for (const auto& f : t.faces()) {
        const int a = f[0], b = f[1], c = f[2];
        const int ab = m(a, b), bc = m(b, c), ca = m(c, a);
        faces.push_back({a, ab, ca});
        faces.push_back({ab, b, bc});
        faces.push_back({ca, bc, c});
        faces.push_back({ab, bc, ca});
    }
    return build_triangulation(std::move(faces));
}

int BranchStructure::total_order() const
{
    int s = 0;
    for (const auto& e : entries) s += e.order;
    return s;
}

int BranchStructure::order_at(int v) const
{
    for (const auto& e : entries) {
        if (e.vertex == v) return e.order;
    }
    return 0;
}

BranchStructure BranchStructure::sorted() const
{
    BranchStructure out = *this;
    std::sort(out.entries.begin(), out.entries.end(),
              [](const BranchPoint& x, const BranchPoint& y) { return x.vertex < y.vertex; });
    return out;
}

std::vector<bool> enclosed_vertices(const Triangulation& t, std::span<const int> cycle)
{
    const int nf = t.num_faces();
    std::set<Edge> on_cycle;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        on_cycle.insert(undirected(cycle[i], cycle[(i + 1) % cycle.size()]));
    }

    std::vector<int> region(nf, -1);
    std::vector<bool> touches_boundary;
    int regions = 0;
    for (int seed = 0; seed < nf; ++seed) {
        if (region[seed] >= 0) continue;
        bool touches = false;
        std::vector<int> stack{seed};
        region[seed] = regions;
        while (!stack.empty()) {
            const int f = stack.back();
            stack.pop_back();
            for (int i = 0; i < 3; ++i) {
                const auto& face = t.face(f);
                const bool cut = on_cycle.count(undirected(face[i], face[(i + 1) % 3])) > 0;
                const int g = t.face_across(f, i);
                if (g < 0) {
                    if (!cut) touches = true;
                    continue;
                }
                if (cut || region[g] >= 0) continue;
                region[g] = regions;
                stack.push_back(g);
            }
        }
        touches_boundary.push_back(touches);
        ++regions;
    }

    std::vector<bool> on_path(t.num_vertices(), false);
    for (int v : cycle) on_path[v] = true;
    std::vector<bool> inside(t.num_vertices(), false);
    for (int v = 0; v < t.num_vertices(); ++v) {
        if (on_path[v]) continue;
        const auto vf = t.vertex_faces(v);
        inside[v] = !touches_boundary[region[vf.front()]];
    }
    return inside;
}

namespace {

struct CycleSearch {
    const Triangulation& t;
    const BranchStructure& b;
    int max_len = 0;
    std::vector<int> path;
    std::vector<bool> on_path;
    std::vector<int> witness;

    bool violates(const std::vector<int>& cycle) const
    {
        const auto inside = enclosed_vertices(t, cycle);
        int enclosed = 0;
        for (const auto& e : b.entries) {
            if (inside[e.vertex]) enclosed += e.order;
        }
        return static_cast<int>(cycle.size()) < 3 + 2 * enclosed;
    }

    // Depth-first extension of a path rooted at its smallest vertex.
    bool extend(int start)
    {
        const int last = path.back();
        for (int u : t.neighbors(last)) {
            if (u == start && path.size() >= 3 && path[1] < path.back()) {
                if (violates(path)) {
                    witness = path;
                    return true;
                }
            }
            if (u <= start || on_path[u] || static_cast<int>(path.size()) >= max_len) continue;
            path.push_back(u);
            on_path[u] = true;
            const bool found = extend(start);
            on_path[u] = false;
            path.pop_back();
            if (found) return true;
        }
        return false;
    }
};

}  // namespace

BranchValidation validate_branch_structure(const Triangulation& t, const BranchStructure& b)
{
    std::set<int> seen;
    for (const auto& e : b.entries) {
        if (e.vertex < 0 || e.vertex >= t.num_vertices()) {
            throw Error(ErrorCode::InvalidArgument, "branch vertex " + std::to_string(e.vertex) + " not in complex");
        }
        if (e.order < 1) throw Error(ErrorCode::InvalidArgument, "branch order must be positive");
        if (t.is_boundary(e.vertex)) {
            throw Error(ErrorCode::BranchOnBoundary, "branch vertex " + std::to_string(e.vertex) + " is on the boundary");
        }
        if (!seen.insert(e.vertex).second) {
            throw Error(ErrorCode::DuplicateBranchVertex, "vertex " + std::to_string(e.vertex) + " listed twice");
        }
    }
    if (b.empty()) return {};

    // A cycle of length L encloses orders summing to at most total_order, so
    // only L <= 2 + 2*total_order can violate.
    CycleSearch search{t, b, 2 + 2 * b.total_order(), {}, std::vector<bool>(t.num_vertices(), false), {}};
    for (int s = 0; s < t.num_vertices(); ++s) {
        search.path = {s};
        search.on_path[s] = true;
        const bool found = search.extend(s);
        search.on_path[s] = false;
        if (found) return {false, search.witness};
    }
    return {};
}

}  // namespace blpack
