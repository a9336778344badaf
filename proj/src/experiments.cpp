#include "blpack/experiments.hpp"

#include "blpack/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <numeric>
#include <optional>

namespace blpack {

namespace {

constexpr double kRho = 0.5;

template <class T>
std::vector<T> run_levels(const std::vector<int>& levels, bool parallel, const std::function<T(int)>& work)
{
    std::vector<T> out;
    out.reserve(levels.size());
    if (parallel && !deterministic_mode()) {
        std::vector<std::future<T>> pending;
        for (int n : levels) pending.push_back(std::async(std::launch::async, work, n));
        for (auto& f : pending) out.push_back(f.get());
    } else {
        for (int n : levels) out.push_back(work(n));
    }
    return out;
}

Json complex_list(const std::vector<Complex>& zs)
{
    Json out = Json::array();
    for (Complex z : zs) out.push_back({z.real(), z.imag()});
    return out;
}

Json branch_list(const BranchStructure& b)
{
    Json out = Json::array();
    for (const auto& e : b.sorted().entries) out.push_back({e.vertex, e.order});
    return out;
}

SolverOptions solver_options(const ExperimentOptions& o)
{
    SolverOptions s;
    s.tol_angle = o.tol_angle;
    return s;
}

double max_radius(const Packing& p)
{
    double r = 0.0;
    for (const auto& c : p.circles) r = std::max(r, c.radius);
    return r;
}

int nearest_vertex(const Packing& p, Complex x, const std::vector<bool>* skip = nullptr, bool interior_only = false)
{
    int best = -1;
    double best_d = 0.0;
    for (int v = 0; v < p.complex.num_vertices(); ++v) {
        if (skip && (*skip)[v]) continue;
        if (interior_only && !p.complex.is_interior(v)) continue;
        const double d = std::abs(p.center(v) - x);
        if (best < 0 || d < best_d) {
            best = v;
            best_d = d;
        }
    }
    return best;
}

// Branch vertices for the critical points: all of k_i on the nearest free
// interior vertex when that stays valid, else order one on the k_i nearest.
BranchStructure branch_for(const Packing& domain, const std::vector<CriticalPoint>& critical)
{
    const auto& t = domain.complex;
    BranchStructure b;
    std::vector<bool> used(t.num_vertices(), false);
    for (const auto& cp : critical) {
        const int v = nearest_vertex(domain, cp.point, &used, true);
        if (v < 0) throw Error(ErrorCode::InvalidBranchStructure, "no interior vertex left for a critical point");
        BranchStructure trial = b;
        trial.entries.push_back({v, cp.order});
        if (validate_branch_structure(t, trial).valid) {
            b = trial;
            used[v] = true;
            continue;
        }
        trial = b;
        std::vector<bool> taken = used;
        for (int i = 0; i < cp.order; ++i) {
            const int u = nearest_vertex(domain, cp.point, &taken, true);
            if (u < 0) throw Error(ErrorCode::InvalidBranchStructure, "not enough interior vertices");
            trial.entries.push_back({u, 1});
            taken[u] = true;
        }
        if (!validate_branch_structure(t, trial).valid) {
            throw Error(ErrorCode::InvalidBranchStructure, "critical points cannot be realized on this level");
        }
        b = trial;
        used = taken;
    }
    return b.sorted();
}

// Point near which v_ddot is chosen: 1/2 unless phi nearly vanishes there,
// since Arg phi is then too unstable to fix the rotation.
Complex reference_point(const ClassicalBlaschke& phi)
{
    for (Complex p : {Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(-0.5, 0.0), Complex(0.0, -0.5)}) {
        if (std::abs(phi.eval(p)) >= 0.1) return p;
    }
    return 0.5;
}

bool strictly_decreasing(const std::vector<double>& xs)
{
    for (size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] < xs[i - 1])) return false;
    }
    return true;
}

std::string join(const std::vector<double>& xs)
{
    std::string s;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", xs[i]);
        s += buf;
    }
    return s;
}

std::vector<double> column(const std::vector<Json>& levels, const char* key)
{
    std::vector<double> out;
    for (const auto& l : levels) {
        if (l.contains(key)) out.push_back(l.at(key).get<double>());
    }
    return out;
}

}  // namespace

bool deterministic_mode()
{
    const char* v = std::getenv("BLPACK_DETERMINISTIC");
    return v != nullptr && std::string(v) == "1";
}

bool ExperimentReport::passed() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Json ExperimentReport::to_json() const
{
    Json v = Json::array();
    for (const auto& x : verdicts) v.push_back({{"rule", x.rule}, {"pass", x.pass}, {"detail", x.detail}});
    return {{"experiment", name}, {"parameters", parameters}, {"levels", levels}, {"verdicts", v}};
}

std::vector<Complex> compact_grid(double radius, int points)
{
    std::vector<Complex> out;
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
            const Complex z(-radius + 2.0 * radius * i / (points - 1), -radius + 2.0 * radius * j / (points - 1));
            if (std::abs(z) <= radius) out.push_back(z);
        }
    }
    return out;
}

ExperimentReport experiment_approximation(const std::vector<Complex>& zeros, const std::vector<int>& levels,
                                          const ExperimentOptions& options)
{
    const ClassicalBlaschke phi = make_blaschke(zeros);
    const auto critical = blaschke_critical_points(phi);
    const Complex ref = reference_point(phi);
    const Complex phi0 = phi.eval(0.0);

    ExperimentReport report;
    report.name = "approximation";
    Json crit = Json::array();
    for (const auto& c : critical) crit.push_back({{"x", c.point.real()}, {"y", c.point.imag()}, {"order", c.order}});
    report.parameters = {{"zeros", complex_list(zeros)},
                         {"levels", levels},
                         {"tol_angle", options.tol_angle},
                         {"critical_points", crit},
                         {"reference_point", {ref.real(), ref.imag()}}};

    const std::function<Json(int)> work = [&](int n) -> Json {
        const Triangulation t = hex_ball(n);
        const SolverOptions so = solver_options(options);
        // Domain: the hex ball with its center at 0 and vertex 1 on the positive axis.
        const Packing domain = normalize(compute_packing(t, {}, so), 0, 1);
        const int v_dot = 0;
        const int v_ddot = nearest_vertex(domain, ref);
        const BranchStructure b = branch_for(domain, critical);
        // The argument of phi at the realized center of v_ddot, which tends to
        // Arg phi(ref) as the mesh refines.
        const double ref_arg = std::arg(phi.eval(domain.center(v_ddot)));

        Packing range = normalize(compute_packing(t, b, so), v_dot, v_ddot);
        range = apply_automorphism(range, disc_automorphism(0.0, ref_arg));
        if (phi0 != Complex(0.0)) range = apply_automorphism(range, disc_automorphism(-phi0, 0.0));
        const CpMap f(domain, range);

        double map_error = 0.0;
        for (Complex z : compact_grid()) map_error = std::max(map_error, std::abs(extension_eval(f, z) - phi.eval(z)));
        double ratio_error = 0.0;
        for (int v = 0; v < t.num_vertices(); ++v) {
            const Complex s = domain.center(v);
            if (std::abs(s) > kRho) continue;
            map_error = std::max(map_error, std::abs(range.center(v) - phi.eval(s)));
            ratio_error = std::max(ratio_error, std::abs(ratio_map(f, v) - std::abs(phi.derivative(s))));
        }
        const double central_ratio_error = std::abs(ratio_map(f, v_dot) - std::abs(phi.derivative(0.0)));
        const auto recomputed = angle_sums(range).branch;
        double arg_gap = std::remainder(std::arg(range.center(v_ddot)) - ref_arg, 2.0 * M_PI);

        return {{"level", n},
                {"vertices", t.num_vertices()},
                {"branch", branch_list(b)},
                {"recomputed_branch", branch_list(recomputed)},
                {"map_error", map_error},
                {"ratio_error", ratio_error},
                {"central_ratio_error", central_ratio_error},
                {"sigma", max_radius(domain)},
                {"delta", max_radius(range)},
                {"max_mu", max_local_distortion(range)},
                {"max_dilatation", per_face_dilatation(f)},
                {"valence", valence(range)},
                {"gauss_bonnet", gauss_bonnet_residual(range)},
                {"r_domain_v0", domain.radius(v_dot)},
                {"r_range_v0", range.radius(v_dot)},
                {"v_ddot", v_ddot},
                {"v_ddot_center", {domain.center(v_ddot).real(), domain.center(v_ddot).imag()}},
                {"center_mismatch", std::abs(range.center(v_dot) - phi0)},
                {"arg_mismatch", std::abs(arg_gap)},
                {"sweeps", range.report.sweeps}};
    };
    report.levels = run_levels<Json>(levels, options.parallel, work);

    const auto map_err = column(report.levels, "map_error");
    const auto central = column(report.levels, "central_ratio_error");
    const auto sigma = column(report.levels, "sigma");
    report.verdicts.push_back({"map_error_strictly_decreasing", strictly_decreasing(map_err), join(map_err)});
    report.verdicts.push_back(
        {"central_ratio_error_strictly_decreasing", strictly_decreasing(central), join(central)});
    report.verdicts.push_back({"sigma_strictly_decreasing", strictly_decreasing(sigma), join(sigma)});

    int total = 0;
    for (const auto& c : critical) total += c.order;
    bool branch_ok = true, valence_ok = true;
    for (const auto& l : report.levels) {
        branch_ok = branch_ok && l.at("branch") == l.at("recomputed_branch");
        int ord = 0;
        for (const auto& e : l.at("branch")) ord += e[1].get<int>();
        branch_ok = branch_ok && ord == total;
        valence_ok = valence_ok && l.at("valence").get<int>() == 1 + total;
    }
    report.verdicts.push_back({"branch_orders_match_critical_points", branch_ok,
                               "total order " + std::to_string(total) + " at every level"});
    report.verdicts.push_back({"valence_is_degree", valence_ok, "expected " + std::to_string(1 + total)});
    return report;
}

ExperimentReport experiment_distortion(const std::vector<int>& levels, const BranchStructure& branch,
                                       const ExperimentOptions& options)
{
    ExperimentReport report;
    report.name = "distortion";
    report.parameters = {{"levels", levels}, {"branch", branch_list(branch)}, {"rho", kRho},
                         {"tol_angle", options.tol_angle}};

    const std::function<Json(int)> work = [&](int n) -> Json {
        const Triangulation t = hex_ball(n);
        const SolverOptions so = solver_options(options);
        Json out = {{"level", n}, {"vertices", t.num_vertices()}};
        try {
            for (const auto& e : branch.entries) {
                if (e.vertex >= t.num_vertices() || !t.is_interior(e.vertex)) {
                    throw Error(ErrorCode::BranchOnBoundary, "branch vertex not interior at this level");
                }
            }
            const Packing domain = normalize(compute_packing(t, {}, so), 0, 1);
            const Packing range = normalize(compute_packing(t, branch, so), 0, 1);
            for (const auto& e : branch.entries) {
                if (std::abs(domain.center(e.vertex)) > kRho || std::abs(range.center(e.vertex)) > kRho) {
                    throw Error(ErrorCode::BranchDriftedOutside,
                                "branch vertex " + std::to_string(e.vertex) + " left |z| <= 0.5");
                }
            }
            const CpMap f(domain, range);
            out["max_mu"] = max_local_distortion(range);
            out["max_mu_domain"] = max_local_distortion(domain);
            out["max_dilatation"] = per_face_dilatation(f);
            out["valence"] = valence(range);
            out["gauss_bonnet"] = gauss_bonnet_residual(range);
            out["sweeps"] = range.report.sweeps;
        } catch (const Error& e) {
            out["excluded"] = std::string(to_string(e.code())) + ": " + e.what();
        }
        return out;
    };
    report.levels = run_levels<Json>(levels, options.parallel, work);

    auto value_at = [&](int n, const char* key) -> std::optional<double> {
        for (const auto& l : report.levels) {
            if (l.at("level").get<int>() == n && l.contains(key)) return l.at(key).get<double>();
        }
        return std::nullopt;
    };
    const int last = levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
    for (const char* key : {"max_mu", "max_dilatation"}) {
        const auto hi = value_at(last, key);
        const auto lo = value_at(last - 2, key);
        Verdict v{std::string(key) + "_plateau", false, "levels " + std::to_string(last - 2) + " and " +
                                                            std::to_string(last) + " not both available"};
        if (hi && lo) {
            v.pass = std::abs(*hi - *lo) <= 0.1 * *lo;
            v.detail = join({*lo, *hi}) + " at levels " + std::to_string(last - 2) + ", " + std::to_string(last);
        }
        report.verdicts.push_back(v);
    }
    return report;
}

ExperimentReport experiment_schwarz(const Triangulation& t, const BranchStructure& b, int v0,
                                    const ExperimentOptions& options)
{
    if (v0 < 0 || v0 >= t.num_vertices() || !t.is_interior(v0)) {
        throw Error(ErrorCode::InvalidArgument, "v0 must be an interior vertex");
    }
    ExperimentReport report;
    report.name = "schwarz";
    report.parameters = {{"vertices", t.num_vertices()}, {"branch", branch_list(b)}, {"v0", v0},
                         {"tol_angle", options.tol_angle}};
    const SolverOptions so = solver_options(options);
    const int u1 = t.neighbors(v0)[0];
    const Packing flat = normalize(compute_packing(t, {}, so), v0, u1);
    const Packing branched = normalize(compute_packing(t, b, so), v0, u1);
    const double r = branched.radius(v0);
    const double r_tilde = flat.radius(v0);
    report.levels.push_back({{"r", r}, {"r_univalent", r_tilde}, {"margin", r_tilde - r}});
    report.verdicts.push_back({"r_le_r_univalent", r <= r_tilde + 1e-12, join({r, r_tilde})});
    report.verdicts.push_back({"r_positive", r > 0.0, join({r})});
    if (!b.empty()) report.verdicts.push_back({"strict_when_branched", r_tilde - r > 1e-6, join({r_tilde - r})});
    return report;
}

}  // namespace blpack
