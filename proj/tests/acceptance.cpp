// Acceptance suite. Prints one PASS/FAIL line per criterion; with arguments
// only the listed criteria run. Exit status is nonzero when any fails.

#include "blpack/corpus.hpp"
#include "blpack/error.hpp"
#include "blpack/experiments.hpp"
#include "blpack/io.hpp"
#include "blpack/maps.hpp"

#include "oracles.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace blpack;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    Json data;
};

std::string fmt(const char* format, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

int first_interior(const Triangulation& t) { return t.interior_vertices().front(); }

Packing frame(const Packing& p)
{
    const int u0 = first_interior(p.complex);
    return normalize(p, u0, p.complex.neighbors(u0)[0]);
}

double circle_discrepancy(const Packing& a, const Packing& b)
{
    double worst = 0.0;
    for (int v = 0; v < a.complex.num_vertices(); ++v) {
        worst = std::max(worst, std::abs(a.center(v) - b.center(v)) + std::abs(a.radius(v) - b.radius(v)));
    }
    return worst;
}

// Solved corpus, built once per run.
class Corpus {
public:
    struct Item {
        CorpusEntry entry;
        Packing packing;
    };

    const std::vector<Item>& items()
    {
        if (items_.empty()) {
            for (auto& e : corpus()) {
                Packing p = compute_packing(e.complex, e.branch);
                items_.push_back({std::move(e), std::move(p)});
            }
        }
        return items_;
    }

private:
    std::vector<Item> items_;
};

Outcome closed_forms(Corpus&)
{
    const auto face = normalize(compute_packing(build_triangulation({{0, 1, 2}}), {}), 0, 1);
    const auto flower6 = normalize(compute_packing(flower(6), {}), 0, 1);
    const double target = 2 * std::sqrt(3.0) - 3;
    double face_err = 0.0, flower_err = 0.0;
    for (int v = 0; v < 3; ++v) face_err = std::max(face_err, std::abs(face.radius(v) - target));
    for (int v = 0; v < 7; ++v) flower_err = std::max(flower_err, std::abs(flower6.radius(v) - 1.0 / 3.0));
    Outcome o;
    o.pass = face_err < 1e-8 && flower_err < 1e-8;
    o.summary = "single face " + fmt("%.2e", face_err) + ", hex flower " + fmt("%.2e", flower_err);
    o.data = {{"single_face_error", face_err}, {"hex_flower_error", flower_err}};
    return o;
}

Outcome angle_sums_and_boundary(Corpus& c)
{
    double theta = 0.0, boundary = 0.0;
    Json rows = Json::array();
    for (const auto& [e, p] : c.items()) {
        double th = 0.0;
        for (int v : e.complex.interior_vertices()) th = std::max(th, std::abs(p.angle_sum[v] - p.target[v]));
        double bd = 0.0;
        for (int v : e.complex.boundary_walk()) bd = std::max(bd, std::abs(std::abs(p.center(v)) + p.radius(v) - 1.0));
        theta = std::max(theta, th);
        boundary = std::max(boundary, bd);
        rows.push_back({{"name", e.name}, {"theta", th}, {"boundary", bd}});
    }
    Outcome o;
    o.pass = c.items().size() >= 20 && theta < 1e-10 && boundary < 1e-8;
    o.summary = std::to_string(c.items().size()) + " packings, max angle-sum error " + fmt("%.2e", theta) +
                ", max boundary error " + fmt("%.2e", boundary);
    o.data = rows;
    return o;
}

Outcome gauss_bonnet(Corpus& c)
{
    double worst = 0.0;
    Json rows = Json::array();
    for (const auto& [e, p] : c.items()) {
        const double r = gauss_bonnet_residual(p);
        worst = std::max(worst, std::abs(r));
        rows.push_back({{"name", e.name}, {"residual", r}});
    }
    Outcome o;
    o.pass = worst < 1e-8;
    o.summary = "max |residual| " + fmt("%.2e", worst) + " over " + std::to_string(c.items().size()) + " packings";
    o.data = rows;
    return o;
}

Outcome uniqueness(Corpus&)
{
    const std::set<std::string> chosen = {"hex_ball_3_branch_1", "refined_flower_7_branch_1",
                                          "twice_refined_flower_5_branch_2", "flipped_hex_ball_3_branch_1",
                                          "flipped_refined_flower_8"};
    double worst = 0.0;
    int runs = 0;
    Json rows = Json::array();
    for (const auto& e : corpus()) {
        if (!chosen.count(e.name)) continue;
        std::vector<Packing> solved;
        for (std::uint64_t seed : {11u, 22u, 33u}) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(0.02, 0.98);
            SolverOptions opts;
            std::vector<double> t0(e.complex.num_vertices());
            for (auto& x : t0) x = u(rng);
            opts.initial_t = t0;
            solved.push_back(frame(compute_packing(e.complex, e.branch, opts)));
        }
        double d = 0.0;
        for (size_t i = 0; i < solved.size(); ++i) {
            for (size_t j = i + 1; j < solved.size(); ++j) d = std::max(d, circle_discrepancy(solved[i], solved[j]));
        }
        worst = std::max(worst, d);
        ++runs;
        rows.push_back({{"name", e.name}, {"discrepancy", d}});
    }

    const auto base = compute_packing(hex_ball(3), {});
    const auto moved = apply_automorphism(base, disc_automorphism(0.3, M_PI / 5));
    const auto eq = equivalent_mod_mobius(base, moved, 1e-9);
    const auto [a, theta] = automorphism_parameters(eq.transform);
    const double param_err = std::max(std::abs(a - Complex(0.3, 0.0)), std::abs(theta - M_PI / 5));

    Outcome o;
    o.pass = runs == 5 && worst < 1e-6 && eq.equivalent && param_err < 1e-9;
    o.summary = std::to_string(runs) + " complexes, max discrepancy " + fmt("%.2e", worst) +
                ", recovered automorphism error " + fmt("%.2e", param_err);
    o.data = {{"complexes", rows}, {"a", {a.real(), a.imag()}}, {"theta", theta}, {"parameter_error", param_err}};
    return o;
}

Outcome valence_identity(Corpus& c)
{
    bool ok = true;
    int by_order[3] = {0, 0, 0};
    Json rows = Json::array();
    for (const auto& [e, p] : c.items()) {
        const int expected = 1 + e.branch.total_order();
        const int val = valence(p);
        const int sampled = oracle::sampled_valence(p, 100000);
        ok = ok && val == expected && sampled == val;
        if (expected <= 3) ++by_order[expected - 1];
        rows.push_back({{"name", e.name}, {"valence", val}, {"sampled", sampled}, {"expected", expected}});
    }
    Outcome o;
    o.pass = ok && by_order[0] > 0 && by_order[1] > 0 && by_order[2] > 0;
    o.summary = "valence 1/2/3 packings: " + std::to_string(by_order[0]) + "/" + std::to_string(by_order[1]) + "/" +
                std::to_string(by_order[2]) + (ok ? ", all match 1 + sum ord and sampling" : ", mismatch");
    o.data = rows;
    return o;
}

Outcome schwarz(Corpus& c)
{
    std::map<std::string, const Packing*> univalent;
    for (const auto& [e, p] : c.items()) {
        if (e.branch.empty()) univalent[e.name] = &p;
    }
    double worst_excess = -INFINITY, min_margin = INFINITY;
    int instances = 0;
    Json rows = Json::array();
    for (const auto& [e, p] : c.items()) {
        if (e.branch.empty()) continue;
        const Packing& ref = *univalent.at(e.name.substr(0, e.name.rfind("_branch_")));
        double margin = INFINITY;
        for (int v0 : e.complex.interior_vertices()) {
            const int u1 = e.complex.neighbors(v0)[0];
            const double r = normalize(p, v0, u1).radius(v0);
            const double r_tilde = normalize(ref, v0, u1).radius(v0);
            worst_excess = std::max(worst_excess, r - r_tilde);
            margin = std::min(margin, r_tilde - r);
            ++instances;
        }
        min_margin = std::min(min_margin, margin);
        rows.push_back({{"name", e.name}, {"min_margin", margin}});
    }
    Outcome o;
    o.pass = instances > 0 && worst_excess <= 1e-12 && min_margin > 1e-6;
    o.summary = std::to_string(instances) + " (packing, v0) pairs, min margin r_univalent - r = " + fmt("%.3e", min_margin);
    o.data = rows;
    return o;
}

std::string join(const std::vector<double>& xs)
{
    std::string s;
    for (double x : xs) s += (s.empty() ? "" : ", ") + fmt("%.4g", x);
    return s;
}

Outcome approximation_trend(Corpus&)
{
    const auto r = experiment_approximation({0.0, 0.5}, {3, 5, 7});
    std::vector<double> err, central;
    for (const auto& l : r.levels) {
        err.push_back(l.at("map_error").get<double>());
        central.push_back(l.at("central_ratio_error").get<double>());
    }
    bool pass = true;
    for (const auto& v : r.verdicts) {
        if (v.rule == "map_error_strictly_decreasing" || v.rule == "central_ratio_error_strictly_decreasing") {
            pass = pass && v.pass;
        }
    }
    Outcome o;
    o.pass = pass;
    o.summary = "map error [" + join(err) + "], central ratio error [" + join(central) + "]";
    o.data = r.to_json();
    return o;
}

Outcome distortion_plateau(Corpus&)
{
    const auto r = experiment_distortion({2, 3, 4, 5, 6, 7, 8}, {{{0, 1}}});
    bool excluded = false;
    std::vector<double> mu, dil;
    for (const auto& l : r.levels) {
        if (l.contains("excluded")) {
            excluded = true;
            continue;
        }
        mu.push_back(l.at("max_mu").get<double>());
        dil.push_back(l.at("max_dilatation").get<double>());
    }
    Outcome o;
    o.pass = !excluded && r.passed();
    o.summary = "max mu [" + join(mu) + "], max dilatation [" + join(dil) + "]";
    o.data = r.to_json();
    return o;
}

Outcome geometry_layer(Corpus&)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> r(0.01, 10.0);
    double sum_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = r(rng), b = r(rng), c = r(rng);
        sum_err = std::max(sum_err, std::abs(euclidean_angle(a, b, c) + euclidean_angle(b, a, c) +
                                             euclidean_angle(c, a, b) - M_PI));
    }

    const double eps = 1e-4;
    const auto H = [](double h) { return HyperbolicRadius::from_h(h); };
    const double limit_err =
        std::abs(hyperbolic_angle(H(eps), H(2 * eps), H(2 * eps)) - euclidean_angle(1, 2, 2));

    bool monotone = true;
    const std::vector<HyperbolicRadius> others = {H(0.01), H(0.2), H(1.0), H(4.0), HyperbolicRadius::infinite()};
    for (const auto& hu : others) {
        for (const auto& hw : others) {
            double prev = INFINITY;
            for (int k = 0; k <= 80; ++k) {
                const double a = hyperbolic_angle(H(1e-4 * std::pow(10.0, k / 16.0)), hu, hw);
                monotone = monotone && a < prev;
                prev = a;
            }
        }
    }
    for (double ru : {0.1, 1.0, 10.0}) {
        for (double rw : {0.1, 1.0, 10.0}) {
            double prev = INFINITY;
            for (int k = 0; k <= 60; ++k) {
                const double a = euclidean_angle(1e-3 * std::pow(10.0, k / 10.0), ru, rw);
                monotone = monotone && a < prev;
                prev = a;
            }
        }
    }
    Outcome o;
    o.pass = sum_err < 1e-12 && limit_err < 1e-6 && monotone;
    o.summary = "triangle sum " + fmt("%.2e", sum_err) + ", small-radius limit " + fmt("%.2e", limit_err) +
                (monotone ? ", monotone grids pass" : ", monotone grids FAIL");
    o.data = {{"sum_error", sum_err}, {"limit_error", limit_err}, {"monotone", monotone}};
    return o;
}

Outcome validator_agreement(Corpus&)
{
    int complexes = 0, structures_checked = 0, disagreements = 0, rejected = 0;
    std::map<std::string, BranchStructure> listed;
    for (const auto& e : corpus()) listed[e.name] = e.branch;
    for (const auto& [name, t] : corpus_complexes()) {
        if (t.num_vertices() > 30) continue;
        ++complexes;
        std::vector<BranchStructure> structures;
        for (const auto& [n, b] : listed) {
            if (n == name || n.rfind(name + "_branch_", 0) == 0) structures.push_back(b);
        }
        const auto interior = t.interior_vertices();
        for (int v : interior) {
            for (int k = 1; k <= 2; ++k) structures.push_back({{{v, k}}});
        }
        for (size_t i = 0; i < interior.size(); ++i) {
            for (size_t j = i + 1; j < interior.size(); ++j) structures.push_back({{{interior[i], 1}, {interior[j], 1}}});
        }
        const auto expected = oracle::brute_force_validity(t, structures);
        for (size_t i = 0; i < structures.size(); ++i) {
            const bool got = validate_branch_structure(t, structures[i]).valid;
            disagreements += got != expected[i].valid;
            rejected += !expected[i].valid;
            ++structures_checked;
        }
    }
    const auto fan = validate_branch_structure(flower(4), {{{0, 1}}});
    const std::set<int> witness(fan.witness.begin(), fan.witness.end());
    const bool fan_ok = !fan.valid && fan.witness.size() == 4 && witness == std::set<int>{1, 2, 3, 4};

    Outcome o;
    o.pass = complexes > 0 && disagreements == 0 && fan_ok;
    o.summary = std::to_string(structures_checked) + " structures on " + std::to_string(complexes) + " complexes (" +
                std::to_string(rejected) + " invalid), " + std::to_string(disagreements) + " disagreements; fan " +
                (fan_ok ? "rejected with its 4-cycle" : "NOT rejected correctly");
    o.data = {{"checked", structures_checked}, {"disagreements", disagreements}, {"fan_ok", fan_ok}};
    return o;
}

using Criterion = std::function<Outcome(Corpus&)>;

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list = {closed_forms,       angle_sums_and_boundary, gauss_bonnet,
                                                uniqueness,         valence_identity,        schwarz,
                                                approximation_trend, distortion_plateau,     geometry_layer,
                                                validator_agreement};
    return list;
}

Outcome determinism(Corpus&)
{
    setenv("BLPACK_DETERMINISTIC", "1", 1);
    std::string first, second;
    for (std::string* out : {&first, &second}) {
        Corpus fresh;
        Json all = Json::array();
        for (int k = 0; k < 8; ++k) all.push_back(criteria()[k](fresh).data);
        *out = dump_json(all);
    }
    unsetenv("BLPACK_DETERMINISTIC");
    Outcome o;
    o.pass = first == second;
    o.summary = "two deterministic runs of criteria 1-8: " + std::to_string(first.size()) + " bytes, " +
                (o.pass ? "identical" : "DIFFERENT");
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    if (wanted.empty()) {
        for (int k = 1; k <= 11; ++k) wanted.push_back(k);
    }

    Corpus shared;
    bool all_pass = true;
    for (int k : wanted) {
        if (k < 1 || k > 11) {
            std::fprintf(stderr, "unknown criterion %d\n", k);
            return 2;
        }
        Outcome o;
        try {
            o = k == 11 ? determinism(shared) : criteria()[k - 1](shared);
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("error: ") + e.what();
        }
        std::printf("criterion %2d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.summary.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
