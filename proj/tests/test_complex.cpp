#include "blpack/complex.hpp"
#include "blpack/corpus.hpp"
#include "blpack/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace blpack;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

// Each directed edge occurs once; interior edges appear in both directions.
void check_orientation(const Triangulation& t)
{
    std::map<std::pair<int, int>, int> directed;
    for (const auto& f : t.faces()) {
        for (int i = 0; i < 3; ++i) ++directed[{f[i], f[(i + 1) % 3]}];
    }
    for (const auto& [e, count] : directed) CHECK(count == 1);
    for (const auto& [u, v] : t.edges()) {
        const auto uses = directed.count({u, v}) + directed.count({v, u});
        CHECK(uses >= 1);
        if (t.is_interior(u) || t.is_interior(v)) CHECK(uses == 2);
    }
}

void check_links(const Triangulation& t)
{
    for (int v = 0; v < t.num_vertices(); ++v) {
        const auto nb = t.neighbors(v);
        const auto vf = t.vertex_faces(v);
        const size_t expected = t.is_interior(v) ? nb.size() : nb.size() - 1;
        REQUIRE(vf.size() == expected);
        for (size_t i = 0; i < vf.size(); ++i) {
            const Face& f = t.face(vf[i]);
            const int a = nb[i], b = nb[(i + 1) % nb.size()];
            const auto it = std::find(f.begin(), f.end(), v);
            REQUIRE(it != f.end());
            const int k = static_cast<int>(it - f.begin());
            CHECK(f[(k + 1) % 3] == a);
            CHECK(f[(k + 2) % 3] == b);
        }
    }
}

}  // namespace

TEST_CASE("single face")
{
    const auto t = build_triangulation({{0, 1, 2}});
    CHECK(t.num_vertices() == 3);
    CHECK(t.num_interior() == 0);
    CHECK(t.num_edges() == 3);
    CHECK(t.boundary_walk().size() == 3);
}

TEST_CASE("hex flower")
{
    const auto t = flower(6);
    CHECK(t.num_interior() == 1);
    CHECK(t.vertex_degree(0) == 6);
    CHECK(t.boundary_walk().size() == 6);
    CHECK(t.degree() == 6);
}

TEST_CASE("conflicting orientation is repaired")
{
    // Second face repeats the shared edge 1->2 in the same direction.
    const auto t = build_triangulation({{0, 1, 2}, {1, 2, 3}});
    check_orientation(t);
    CHECK(t.face(1) != Face{1, 2, 3});
    const auto u = build_triangulation({{1, 2, 3}, {0, 1, 2}});
    check_orientation(u);
}

TEST_CASE("non-orientable and malformed input")
{
    // A triangulated Mobius band.
    const std::vector<Face> mobius = {{0, 1, 3}, {1, 3, 4}, {1, 2, 4}, {2, 4, 5}, {2, 0, 5}, {0, 5, 3}};
    const auto bad = code_of([&] { build_triangulation(mobius); });
    CHECK((bad == ErrorCode::NonOrientable || bad == ErrorCode::NotADisc));
    CHECK(code_of([] { build_triangulation({{0, 0, 1}}); }) == ErrorCode::BadFace);
    CHECK(code_of([] { build_triangulation({{0, 1, -2}}); }) == ErrorCode::BadFace);
    CHECK(code_of([] { build_triangulation({}); }) == ErrorCode::NotADisc);
    // Two faces sharing only a vertex.
    CHECK(code_of([] { build_triangulation({{0, 1, 2}, {0, 3, 4}}); }) == ErrorCode::NotADisc);
    // Closed surface (tetrahedron) has no boundary.
    CHECK(code_of([] { build_triangulation({{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}); }) == ErrorCode::NotADisc);
}

TEST_CASE("hex_ball counts")
{
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const auto t = hex_ball(n);
        CHECK(t.num_vertices() == 1 + 3 * n * (n + 1));
        CHECK(static_cast<int>(t.boundary_walk().size()) == 6 * n);
        CHECK(t.degree() == 6);
        CHECK(t.num_interior() == (n == 1 ? 1 : 1 + 3 * (n - 1) * n));
    }
    CHECK(hex_ball(1).num_faces() == 6);
    CHECK(hex_ball(3).num_interior() == 19);
}

TEST_CASE("hex_refine counts")
{
    const auto single = hex_refine(build_triangulation({{0, 1, 2}}));
    CHECK(single.num_vertices() == 6);
    CHECK(single.num_faces() == 4);

    const auto f = flower(6);
    const auto r = hex_refine(f);
    CHECK(r.num_vertices() == f.num_vertices() + f.num_edges());
    CHECK(r.num_vertices() == 19);

    const auto rr = hex_refine(r);
    CHECK(rr.num_faces() == 16 * f.num_faces());
    CHECK(rr.same_combinatorics(hex_refine(hex_refine(f))));
}

TEST_CASE("generated complexes are discs with cyclic interior links")
{
    std::vector<std::pair<std::string, Triangulation>> all = corpus_complexes();
    for (int k = 3; k <= 9; ++k) all.emplace_back("flower", flower(k));
    all.emplace_back("refined hex_ball", hex_refine(hex_ball(2)));
    for (const auto& [name, t] : all) {
        CAPTURE(name);
        CHECK(t.num_vertices() - t.num_edges() + t.num_faces() == 1);
        CHECK(!t.boundary_walk().empty());
        check_orientation(t);
        check_links(t);
    }
}

TEST_CASE("boundary walk is counterclockwise from the smallest boundary id")
{
    const auto t = hex_ball(2);
    const auto& walk = t.boundary_walk();
    CHECK(walk.front() == *std::min_element(walk.begin(), walk.end()));
    for (size_t i = 0; i < walk.size(); ++i) CHECK(t.neighbors(walk[i]).front() == walk[(i + 1) % walk.size()]);
}

TEST_CASE("random flips keep a disc")
{
    const auto t = random_flips(hex_ball(3), 20, 5);
    CHECK(t.num_vertices() == hex_ball(3).num_vertices());
    CHECK(t.num_vertices() - t.num_edges() + t.num_faces() == 1);
    CHECK(!t.same_combinatorics(hex_ball(3)));
    check_links(t);
}

TEST_CASE("branch structure examples")
{
    const auto ball2 = hex_ball(2);
    CHECK(validate_branch_structure(ball2, {}).valid);
    CHECK(validate_branch_structure(ball2, {{{0, 1}}}).valid);

    const auto fan = flower(4);
    const auto res = validate_branch_structure(fan, {{{0, 1}}});
    CHECK_FALSE(res.valid);
    REQUIRE(res.witness.size() == 4);
    std::set<int> petals(res.witness.begin(), res.witness.end());
    CHECK(petals == std::set<int>{1, 2, 3, 4});
}

TEST_CASE("branch structure errors")
{
    const auto t = hex_ball(2);
    CHECK(code_of([&] { validate_branch_structure(t, {{{t.boundary_walk()[0], 1}}}); }) == ErrorCode::BranchOnBoundary);
    CHECK(code_of([&] { validate_branch_structure(t, {{{0, 1}, {0, 1}}}); }) == ErrorCode::DuplicateBranchVertex);
    CHECK(code_of([&] { validate_branch_structure(t, {{{0, 0}}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("empty structure is valid on every complex")
{
    for (const auto& [name, t] : corpus_complexes()) {
        CAPTURE(name);
        CHECK(validate_branch_structure(t, {}).valid);
    }
}

TEST_CASE("validator agrees with the cycle enumerator on small complexes")
{
    std::vector<Triangulation> small = {flower(4), flower(5), flower(6), flower(7), hex_ball(1),
                                        hex_refine(flower(5))};
    for (const auto& t : small) {
        std::vector<BranchStructure> structures = {{}};
        const auto interior = t.interior_vertices();
        for (int v : interior) {
            for (int k = 1; k <= 3; ++k) structures.push_back({{{v, k}}});
        }
        for (size_t i = 0; i < interior.size(); ++i) {
            for (size_t j = i + 1; j < interior.size(); ++j) structures.push_back({{{interior[i], 1}, {interior[j], 1}}});
        }
        const auto expected = oracle::brute_force_validity(t, structures);
        for (size_t i = 0; i < structures.size(); ++i) {
            CAPTURE(i);
            CHECK(validate_branch_structure(t, structures[i]).valid == expected[i].valid);
        }
    }
}

TEST_CASE("enclosed vertices of a link cycle")
{
    const auto t = hex_ball(2);
    const auto nb = t.neighbors(0);
    const std::vector<int> cycle(nb.begin(), nb.end());
    const auto inside = enclosed_vertices(t, cycle);
    for (int v = 0; v < t.num_vertices(); ++v) CHECK(inside[v] == (v == 0));
}
