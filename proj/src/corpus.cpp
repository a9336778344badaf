#include "blpack/corpus.hpp"

#include <algorithm>
#include <queue>
#include <random>

namespace blpack {

Triangulation random_flips(const Triangulation& t, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Triangulation cur = t;
    int done = 0;
    for (int attempt = 0; done < count && attempt < 100 * count; ++attempt) {
        const auto& edges = cur.edges();
        const auto [a, b] = edges[rng() % edges.size()];
        // Faces <a,b,c> and <b,a,d> on either side of the edge.
        int fab = -1, fba = -1, c = -1, d = -1;
        for (int f = 0; f < cur.num_faces(); ++f) {
            const auto& face = cur.face(f);
            for (int i = 0; i < 3; ++i) {
                if (face[i] == a && face[(i + 1) % 3] == b) {
                    fab = f;
                    c = face[(i + 2) % 3];
                }
                if (face[i] == b && face[(i + 1) % 3] == a) {
                    fba = f;
                    d = face[(i + 2) % 3];
                }
            }
        }
        if (fab < 0 || fba < 0) continue;
        const auto nc = cur.neighbors(c);
        if (std::find(nc.begin(), nc.end(), d) != nc.end()) continue;
        auto min_degree = [&](int v) { return cur.is_interior(v) ? 5 : 3; };
        if (cur.vertex_degree(a) < min_degree(a) || cur.vertex_degree(b) < min_degree(b)) continue;

        std::vector<Face> faces = cur.faces();
        faces[fab] = {a, d, c};
        faces[fba] = {d, b, c};
        cur = build_triangulation(std::move(faces));
        ++done;
    }
    return cur;
}

std::vector<int> deep_vertices(const Triangulation& t)
{
    const int n = t.num_vertices();
    std::vector<int> depth(n, -1);
    std::queue<int> queue;
    for (int v : t.boundary_walk()) {
        depth[v] = 0;
        queue.push(v);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int u : t.neighbors(v)) {
            if (depth[u] < 0) {
                depth[u] = depth[v] + 1;
                queue.push(u);
            }
        }
    }
    std::vector<int> out = t.interior_vertices();
    std::stable_sort(out.begin(), out.end(), [&](int x, int y) { return depth[x] > depth[y]; });
    return out;
}

BranchStructure pick_branch(const Triangulation& t, int count)
{
    const auto cand = deep_vertices(t);
    const int m = static_cast<int>(cand.size());
    if (count <= 0) return {};
    if (count == 1) {
        for (int v : cand) {
            BranchStructure b{{{v, 1}}};
            if (validate_branch_structure(t, b).valid) return b;
        }
        return {};
    }
    if (count == 2) {
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                BranchStructure b{{{cand[i], 1}, {cand[j], 1}}};
                if (validate_branch_structure(t, b).valid) return b.sorted();
            }
        }
        return {};
    }
    return {};
}

std::vector<std::pair<std::string, Triangulation>> corpus_complexes()
{
    std::vector<std::pair<std::string, Triangulation>> out;
    for (int n = 1; n <= 6; ++n) out.emplace_back("hex_ball_" + std::to_string(n), hex_ball(n));
    for (int k : {5, 7, 8, 9}) out.emplace_back("refined_flower_" + std::to_string(k), hex_refine(flower(k)));
    for (int k : {5, 7}) out.emplace_back("twice_refined_flower_" + std::to_string(k), hex_refine(hex_refine(flower(k))));
    out.emplace_back("flipped_refined_flower_8", random_flips(hex_refine(flower(8)), 4, 3));
    out.emplace_back("flipped_hex_ball_3", random_flips(hex_ball(3), 8, 1));
    out.emplace_back("flipped_hex_ball_4", random_flips(hex_ball(4), 12, 2));
    return out;
}

std::vector<CorpusEntry> corpus()
{
    std::vector<CorpusEntry> out;
    for (const auto& [name, t] : corpus_complexes()) {
        out.push_back({name, t, {}});
        for (int count : {1, 2}) {
            auto b = pick_branch(t, count);
            if (!b.empty()) out.push_back({name + "_branch_" + std::to_string(count), t, std::move(b)});
        }
    }
    return out;
}

}  // namespace blpack
