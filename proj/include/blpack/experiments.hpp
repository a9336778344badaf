#pragma once

#include "blpack/io.hpp"
#include "blpack/maps.hpp"

#include <string>
#include <vector>

namespace blpack {

struct Verdict {
    std::string rule;
    bool pass = false;
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    Json parameters;
    /// One metrics object per level, in level order.
    std::vector<Json> levels;
    std::vector<Verdict> verdicts;

    bool passed() const;
    Json to_json() const;
};

struct ExperimentOptions {
    double tol_angle = 1e-10;
    /// Run levels concurrently; ignored when BLPACK_DETERMINISTIC=1.
    bool parallel = true;
};

/// True when BLPACK_DETERMINISTIC is set to 1.
bool deterministic_mode();

/// Discrete Blaschke products on hex balls converging to the Blaschke
/// product with the given zeros.
ExperimentReport experiment_approximation(const std::vector<Complex>& zeros, const std::vector<int>& levels,
                                          const ExperimentOptions& options = {});

/// Local distortion and face dilatation of branched hex balls. `branch`
/// names hex-ball vertex ids (0 is the center), which are stable across levels.
ExperimentReport experiment_distortion(const std::vector<int>& levels, const BranchStructure& branch,
                                       const ExperimentOptions& options = {});

/// Radius at v0 of the branched against the univalent packing, both with
/// C(v0) centered at the origin.
ExperimentReport experiment_schwarz(const Triangulation& t, const BranchStructure& b, int v0,
                                    const ExperimentOptions& options = {});

/// Sampling set for sup norms on |z| <= radius: a points x points lattice
/// on the enclosing square, clipped to the disc.
std::vector<Complex> compact_grid(double radius = 0.5, int points = 61);

}  // namespace blpack
