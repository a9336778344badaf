#include "blpack/solver.hpp"

#include "blpack/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blpack {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Bracket for s = exp(-h) = sqrt(t).
constexpr double kSLow = 1e-8;
constexpr double kSHigh = 1.0 - 1e-16;

struct Petal {
    double omt_u, omt_w;  // 1 - t of the two far corners
    double t_u, t_w;
};

// Angle at a vertex with s = exp(-h) against two petals, and d(angle)/ds.
inline void angle_and_slope(double s, const Petal& p, double& angle, double& slope)
{
    const double t = s * s;
    const double omt = (1.0 - s) * (1.0 + s);
    const double a = p.omt_u * p.omt_w;
    const double b = p.t_u * p.t_w;
    const double one_minus_tb = omt + t * (p.omt_u + p.t_u * p.omt_w);
    const double num = s * std::sqrt(a);
    const double den = std::sqrt(omt * one_minus_tb);
    angle = 2.0 * std::atan2(num, den);
    const double root_q = num / den;
    const double log_slope = 1.0 / s + s / omt + s * b / one_minus_tb;
    slope = 2.0 * root_q / (1.0 + root_q * root_q) * log_slope;
}

struct VertexProblem {
    std::vector<Petal> petals;
    double target = kTwoPi;

    void eval(double s, double& f, double& df) const
    {
        f = -target;
        df = 0.0;
        for (const auto& p : petals) {
            double a, da;
            angle_and_slope(s, p, a, da);
            f += a;
            df += da;
        }
    }
};

// Root of the increasing function f on [kSLow, kSHigh], Newton steps kept
// inside a shrinking bracket and replaced by bisection when they leave it.
double solve_vertex(const VertexProblem& prob, double s0, double tol)
{
    double lo = kSLow, hi = kSHigh;
    double s = std::clamp(s0, lo, hi);
    double f, df;
    for (int iter = 0; iter < 200; ++iter) {
        prob.eval(s, f, df);
        if (std::abs(f) < tol) return s;
        if (f > 0) {
            hi = s;
        } else {
            lo = s;
        }
        if (hi - lo <= 1e-17) return s;
        double next = s - f / df;
        if (!(df > 0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
        s = next;
    }
    return s;
}

}  // namespace

double target_angle_sum(const BranchStructure& b, int v) { return kTwoPi * (1 + b.order_at(v)); }

double hyperbolic_angle_sum(const Triangulation& t, const RadiusLabel& label, int v)
{
    double sum = 0.0;
    for (int f : t.vertex_faces(v)) {
        const auto& face = t.face(f);
        int i = 0;
        while (face[i] != v) ++i;
        sum += hyperbolic_angle(label.radii[v], label.radii[face[(i + 1) % 3]], label.radii[face[(i + 2) % 3]]);
    }
    return sum;
}

SolveResult solve_radii(const Triangulation& t, const BranchStructure& b, const SolverOptions& options)
{
    if (!validate_branch_structure(t, b).valid) {
        throw Error(ErrorCode::InvalidBranchStructure, "branch structure violates the cycle-length condition");
    }
    const int n = t.num_vertices();
    SolveResult result;
    auto& radii = result.label.radii;
    radii.assign(n, HyperbolicRadius::infinite());

    const auto interior = t.interior_vertices();
    for (int v : interior) {
        double t0 = 0.5;
        if (options.initial_t) {
            if (static_cast<int>(options.initial_t->size()) != n) {
                throw Error(ErrorCode::InvalidArgument, "initial label has wrong size");
            }
            t0 = (*options.initial_t)[v];
        }
        radii[v] = HyperbolicRadius::from_t(t0);
    }
    if (interior.empty()) return result;

    std::vector<double> s(n, 0.0);
    for (int v : interior) s[v] = radii[v].s();

    const double vertex_tol = std::min(options.vertex_tol, 0.25 * options.tol_angle);
    VertexProblem prob;
    auto load = [&](int v) {
        prob.petals.clear();
        prob.target = target_angle_sum(b, v);
        for (int f : t.vertex_faces(v)) {
            const auto& face = t.face(f);
            int i = 0;
            while (face[i] != v) ++i;
            const auto& hu = radii[face[(i + 1) % 3]];
            const auto& hw = radii[face[(i + 2) % 3]];
            prob.petals.push_back({hu.one_minus_t(), hw.one_minus_t(), hu.t(), hw.t()});
        }
    };

    auto& report = result.report;
    for (long sweep = 1; sweep <= options.max_sweeps; ++sweep) {
        for (int v : interior) {
            load(v);
            s[v] = solve_vertex(prob, s[v], vertex_tol);
            radii[v] = HyperbolicRadius::from_t(s[v] * s[v]);
        }
        double worst = 0.0;
        std::vector<double> residuals;
        if (options.record_trace) residuals.assign(n, 0.0);
        for (int v : interior) {
            const double r = std::abs(hyperbolic_angle_sum(t, result.label, v) - target_angle_sum(b, v));
            worst = std::max(worst, r);
            if (options.record_trace) residuals[v] = r;
        }
        if (options.record_trace) report.trace.push_back(std::move(residuals));
        report.sweeps = sweep;
        report.max_residual = worst;
        if (worst < options.tol_angle) return result;
    }
    throw Error(ErrorCode::NoConvergence,
                "no convergence after " + std::to_string(options.max_sweeps) + " sweeps (residual " +
                    std::to_string(report.max_residual) + ")");
}

Packing compute_packing(const Triangulation& t, const BranchStructure& b, const SolverOptions& options,
                        double tol_layout)
{
    // Layout can amplify the label residual, so the radius solve is tightened
    // until the layout closes and the realized Euclidean angle sums meet the
    // requested tolerance.
    constexpr double kFloor = 1e-13;
    SolverOptions opts = options;
    long sweeps = 0;
    for (;;) {
        auto solved = solve_radii(t, b, opts);
        sweeps += solved.report.sweeps;
        auto tighten = [&] {
            opts.tol_angle = std::max(kFloor, 0.1 * opts.tol_angle);
            std::vector<double> warm(t.num_vertices(), 0.5);
            for (int v : t.interior_vertices()) warm[v] = solved.label.radii[v].t();
            opts.initial_t = std::move(warm);
        };
        Packing p;
        try {
            p = layout(t, solved.label, tol_layout);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::LayoutInconsistent || opts.tol_angle <= kFloor) throw;
            tighten();
            continue;
        }
        p.branch = b.sorted();
        double worst = 0.0;
        for (int v = 0; v < t.num_vertices(); ++v) {
            if (!t.is_interior(v)) continue;
            p.target[v] = target_angle_sum(b, v);
            worst = std::max(worst, std::abs(p.angle_sum[v] - p.target[v]));
        }
        if (worst < options.tol_angle || opts.tol_angle <= kFloor) {
            p.report = std::move(solved.report);
            p.report.sweeps = sweeps;
            p.report.max_residual = worst;
            return p;
        }
        tighten();
    }
}

}  // namespace blpack
