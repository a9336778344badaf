#include "blpack/check.hpp"

#include "blpack/corpus.hpp"
#include "blpack/maps.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <random>

namespace blpack {

namespace {

std::string fmt(const char* format, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite()
{
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool pass, std::string detail) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.01, 10.0);
    double worst_sum = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = radius(rng), b = radius(rng), c = radius(rng);
        const double s = euclidean_angle(a, b, c) + euclidean_angle(b, a, c) + euclidean_angle(c, a, b);
        worst_sum = std::max(worst_sum, std::abs(s - M_PI));
    }
    add("triangle angle sum", worst_sum < 1e-12, fmt("max |sum - pi| = %.3g", worst_sum));

    std::map<std::string, Packing> univalent;
    for (const auto& e : corpus()) {
        const auto& t = e.complex;
        const std::string tag = e.name + ": ";
        add(tag + "euler characteristic", t.num_vertices() - t.num_edges() + t.num_faces() == 1,
            "V - E + F = " + std::to_string(t.num_vertices() - t.num_edges() + t.num_faces()));
        add(tag + "branch structure valid", validate_branch_structure(t, e.branch).valid, "");

        const Packing p = compute_packing(t, e.branch);
        double theta = 0.0;
        for (int v : t.interior_vertices()) theta = std::max(theta, std::abs(p.angle_sum[v] - p.target[v]));
        const auto res = layout_residual(p);
        add(tag + "angle sums", theta < 1e-10, fmt("max |theta - target| = %.3g", theta));
        add(tag + "boundary tangency", res.boundary < 1e-8, fmt("%.3g", res.boundary));
        add(tag + "edge tangency", res.tangency < 1e-8, fmt("%.3g", res.tangency));
        add(tag + "containment", res.containment < 1e-8, fmt("%.3g", res.containment));
        const double gb = gauss_bonnet_residual(p);
        add(tag + "gauss-bonnet", std::abs(gb) < 1e-8, fmt("%.3g", gb));
        add(tag + "recomputed branch set", angle_sums(p).branch == e.branch.sorted(), "");
        const int val = valence(p);
        add(tag + "valence", val == 1 + e.branch.total_order(),
            std::to_string(val) + " vs " + std::to_string(1 + e.branch.total_order()));

        if (e.branch.empty()) {
            univalent.emplace(e.name, p);
        } else if (auto it = univalent.find(e.name.substr(0, e.name.rfind("_branch_"))); it != univalent.end()) {
            double margin = INFINITY;
            for (int v0 : t.interior_vertices()) {
                const int u1 = t.neighbors(v0)[0];
                const double r = normalize(p, v0, u1).radius(v0);
                const double r_tilde = normalize(it->second, v0, u1).radius(v0);
                margin = std::min(margin, r_tilde - r);
            }
            add(tag + "schwarz", margin > 1e-6, fmt("min r_univalent - r_branched = %.3g", margin));
        }
    }
    return out;
}

}  // namespace blpack
