#include "blpack/corpus.hpp"
#include "blpack/error.hpp"
#include "blpack/experiments.hpp"
#include "blpack/io.hpp"
#include "blpack/render.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace blpack;

namespace {

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("blpack_test_" + name)).string();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int count(const std::string& haystack, const std::string& needle)
{
    int n = 0;
    for (size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

std::vector<double> column(const ExperimentReport& r, const char* key)
{
    std::vector<double> out;
    for (const auto& l : r.levels) out.push_back(l.at(key).get<double>());
    return out;
}

}  // namespace

TEST_CASE("complex round trip")
{
    const auto t = hex_ball(3);
    const BranchStructure b{{{0, 1}}};
    const auto back = complex_from_json(parse_json(dump_json(complex_to_json(t, b))));
    CHECK(back.complex.same_combinatorics(t));
    CHECK(back.branch == b);
}

TEST_CASE("packing round trip is bit exact")
{
    const auto p = compute_packing(random_flips(hex_ball(3), 6, 4), {});
    const auto path = temp_path("packing.json");
    write_file_atomic(path, dump_json(packing_to_json(p)));
    const auto q = packing_from_json(read_json_file(path));
    for (int v = 0; v < p.complex.num_vertices(); ++v) {
        CHECK(p.center(v) == q.center(v));
        CHECK(p.radius(v) == q.radius(v));
    }
    CHECK(q.complex.same_combinatorics(p.complex));
    std::remove(path.c_str());
}

TEST_CASE("malformed json reports line and column")
{
    try {
        parse_json("{\n  \"faces\": [[0,1,2],\n  ]\n}");
        FAIL("accepted malformed json");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
    try {
        read_json_file(temp_path("does_not_exist.json"));
        FAIL("read a missing file");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
    CHECK_THROWS_AS(complex_from_json(parse_json("{\"faces\": 3}")), Error);
    CHECK_THROWS_AS(packing_from_json(parse_json("{\"faces\": [[0,1,2]]}")), Error);
}

TEST_CASE("svg rendering")
{
    const auto uni = compute_packing(flower(6), {});
    const std::string svg = render_svg(uni);
    CHECK(count(svg, "<circle") == 8);
    CHECK(count(svg, "fill=\"black\"") == 0);

    const auto br = compute_packing(flower(6), {{{0, 1}}});
    const std::string branched = render_svg(br);
    CHECK(count(branched, "fill=\"black\"") == 1);
    // The center circle is the first packing circle after the unit circle.
    const auto second = branched.find("<circle", branched.find("<circle") + 1);
    CHECK(branched.substr(second, branched.find('\n', second) - second).find("fill=\"black\"") != std::string::npos);

    const auto a = temp_path("a.svg"), b = temp_path("b.svg");
    write_svg(br, a);
    write_svg(br, b);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == branched);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("corpus")
{
    const auto all = corpus();
    CHECK(corpus_complexes().size() >= 15);
    CHECK(all.size() >= 20);
    int single = 0, dual = 0;
    for (const auto& e : all) {
        CHECK(validate_branch_structure(e.complex, e.branch).valid);
        single += e.branch.entries.size() == 1;
        dual += e.branch.entries.size() == 2;
    }
    CHECK(single > 0);
    CHECK(dual > 0);
    const auto deep = deep_vertices(hex_ball(3));
    CHECK(deep.front() == 0);
}

TEST_CASE("compact grid")
{
    const auto g = compact_grid(0.5, 61);
    for (const auto& z : g) CHECK(std::abs(z) <= 0.5 + 1e-15);
    CHECK(g.size() > 61 * 61 / 2);
    CHECK(g.size() < 61 * 61);
}

TEST_CASE("schwarz experiment")
{
    const auto t = flower(6);
    const auto same = experiment_schwarz(t, {}, 0);
    CHECK(same.passed());
    CHECK(same.levels[0].at("r").get<double>() == same.levels[0].at("r_univalent").get<double>());

    const auto strict = experiment_schwarz(t, {{{0, 1}}}, 0);
    CHECK(strict.passed());
    CHECK(strict.levels[0].at("margin").get<double>() > 1e-6);

    const auto ball = hex_ball(5);
    const auto two = experiment_schwarz(ball, pick_branch(ball, 2), 0);
    CHECK(two.passed());
    CHECK_THROWS_AS(experiment_schwarz(t, {}, 3), Error);
}

TEST_CASE("approximation of the identity")
{
    const auto r = experiment_approximation({0.0}, {2, 3, 4});
    for (const auto& l : r.levels) {
        CHECK(l.at("map_error").get<double>() < 1e-8);
        CHECK(l.at("branch").empty());
        CHECK(l.at("valence").get<int>() == 1);
    }
    const auto sigma = column(r, "sigma");
    CHECK(sigma[0] > sigma[1]);
    CHECK(sigma[1] > sigma[2]);
}

TEST_CASE("approximation of z squared")
{
    const auto r = experiment_approximation({0.0, 0.0}, {3, 5, 7});
    const auto central = column(r, "central_ratio_error");
    const auto err = column(r, "map_error");
    CHECK(central[0] > central[1]);
    CHECK(central[1] > central[2]);
    CHECK(err[0] > err[1]);
    CHECK(err[1] > err[2]);
    for (const auto& l : r.levels) {
        REQUIRE(l.at("branch").size() == 1);
        CHECK(l.at("branch")[0][0].get<int>() == 0);
        CHECK(l.at("valence").get<int>() == 2);
    }
    CHECK(r.passed());
}

TEST_CASE("distortion stays bounded")
{
    const auto uni = experiment_distortion({2, 3, 4, 5}, {});
    for (const auto& l : uni.levels) CHECK(l.at("max_mu").get<double>() < 2.0);

    const auto br = experiment_distortion({2, 3, 4}, {{{0, 1}}});
    for (const auto& l : br.levels) {
        CHECK(l.at("valence").get<int>() == 2);
        CHECK(l.at("max_dilatation").get<double>() > 1.0);
    }
    const auto json = br.to_json();
    CHECK(json.at("experiment") == "distortion");
    CHECK(json.at("verdicts").size() == 2);
}

TEST_CASE("reports are identical across sequential and parallel runs")
{
    ExperimentOptions seq, par;
    seq.parallel = false;
    par.parallel = true;
    const auto a = experiment_distortion({2, 3, 4}, {{{0, 1}}}, seq).to_json().dump();
    const auto b = experiment_distortion({2, 3, 4}, {{{0, 1}}}, par).to_json().dump();
    CHECK(a == b);
}
