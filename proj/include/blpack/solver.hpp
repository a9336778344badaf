#pragma once

#include "blpack/complex.hpp"
#include "blpack/geometry.hpp"

#include <optional>
#include <vector>

namespace blpack {

/// Per-vertex hyperbolic radii; boundary vertices are horocycles.
struct RadiusLabel {
    std::vector<HyperbolicRadius> radii;
};

struct SolverOptions {
    /// Global stop: max |angle sum - target| over interior vertices.
    double tol_angle = 1e-10;
    /// Stop for the one-dimensional solve at a single vertex.
    double vertex_tol = 1e-12;
    long max_sweeps = 1'000'000;
    /// Initial t = exp(-2h) per vertex (boundary entries ignored); 0.5 when absent.
    std::optional<std::vector<double>> initial_t;
    /// Record per-vertex residuals after every sweep.
    bool record_trace = false;
};

struct SolveReport {
    long sweeps = 0;
    /// Hyperbolic residual after solve_radii; realized Euclidean residual on a Packing.
    double max_residual = 0.0;
    /// trace[s][v] = |angle sum - target| at interior v after sweep s+1.
    std::vector<std::vector<double>> trace;
};

struct SolveResult {
    RadiusLabel label;
    SolveReport report;
};

/// Target angle sum 2 pi (1 + k_v) at an interior vertex.
double target_angle_sum(const BranchStructure& b, int v);

/// Hyperbolic angle sum at interior vertex v under `label`.
double hyperbolic_angle_sum(const Triangulation& t, const RadiusLabel& label, int v);

/// Hyperbolic radii with horocyclic boundary whose angle sums hit
/// 2 pi (1 + k_v). Throws InvalidBranchStructure or NoConvergence.
SolveResult solve_radii(const Triangulation& t, const BranchStructure& b, const SolverOptions& options = {});

/// A circle packing of a finite complex inside the closed unit disc.
struct Packing {
    Triangulation complex;
    BranchStructure branch;
    std::vector<EuclideanCircle> circles;
    /// Interior: Theta(v) from the realized Euclidean radii; boundary: gamma(v).
    std::vector<double> angle_sum;
    /// Interior: 2 pi (1 + k_v); boundary: NaN (no target).
    std::vector<double> target;
    SolveReport report;

    const EuclideanCircle& circle(int v) const { return circles[v]; }
    Complex center(int v) const { return circles[v].center; }
    double radius(int v) const { return circles[v].radius; }
};

struct LayoutResidual {
    double tangency = 0.0;   ///< max over edges of ||c_u - c_v| - (r_u + r_v)|
    double boundary = 0.0;   ///< max over boundary v of ||c_v| + r_v - 1|
    double containment = 0.0;///< max over v of max(0, |c_v| + r_v - 1)
    double max() const;
};

/// Places Euclidean circles for a solved label. The root is the smallest
/// interior vertex (at the origin) and faces are visited breadth first
/// from the lowest-id face containing it. Throws LayoutInconsistent when
/// residuals stay above tol_layout after refinement.
Packing layout(const Triangulation& t, const RadiusLabel& label, double tol_layout = 1e-8);

/// solve_radii followed by layout, re-solving with a tighter tolerance until
/// the Euclidean angle sums of the laid-out circles are within
/// options.tol_angle. The report carries the total sweep count and that
/// realized residual.
Packing compute_packing(const Triangulation& t, const BranchStructure& b, const SolverOptions& options = {},
                        double tol_layout = 1e-8);

/// Packing from given circles; angle sums are recomputed and the targets
/// follow `b`.
Packing assemble_packing(const Triangulation& t, const BranchStructure& b, std::vector<EuclideanCircle> circles);

LayoutResidual layout_residual(const Packing& p);

/// Applies a disc automorphism to every circle and recomputes angle sums.
Packing apply_automorphism(const Packing& p, const MobiusTransform& m);

/// The automorphism that puts C(u0) at the origin and C(u1) on the positive
/// real axis. For a boundary u0, u1 must be the next boundary vertex; the
/// contact points of u0, u1 and the vertex after u1 go to the cube roots of unity.
MobiusTransform normalizing_transform(const Packing& p, int u0, int u1);

Packing normalize(const Packing& p, int u0, int u1);

struct AngleSums {
    std::vector<double> theta;  ///< Theta at interior vertices, gamma at boundary vertices
    BranchStructure branch;     ///< {v : Theta(v) > 2 pi + tol}, ord = round(Theta / 2 pi) - 1
};

AngleSums angle_sums(const Packing& p, double tol = 1e-6);

/// sum_int (2 pi - Theta) - [2 pi - sum_bd (pi - gamma)], from realized radii.
double gauss_bonnet_residual(const Packing& p);

}  // namespace blpack
