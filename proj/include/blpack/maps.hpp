#pragma once

#include "blpack/solver.hpp"

#include <vector>

namespace blpack {

/// Simplicial map between two packings of one complex, sending each
/// domain center to the matching range center and affine on faces.
class CpMap {
public:
    /// Throws DifferentComplex, or InvalidArgument when the domain is branched.
    CpMap(Packing domain, Packing range);

    const Packing& domain() const { return domain_; }
    const Packing& range() const { return range_; }
    const Triangulation& complex() const { return domain_.complex; }

private:
    Packing domain_;
    Packing range_;
};

/// Lowest-id face of the carrier containing z (barycentric test with 1e-12
/// slack), or -1.
int find_face(const Packing& p, Complex z);

/// Barycentric coordinates of z with respect to face f of p.
std::array<double, 3> barycentric(const Packing& p, int f, Complex z);

/// Throws OutsideCarrier when z lies in no face.
Complex cp_map_eval(const CpMap& f, Complex z);

/// f#(v) = r_range(v) / r_domain(v).
double ratio_map(const CpMap& f, int v);

/// max over neighbors u of (r(u)/r(v) + r(v)/r(u)) / 2.
double local_distortion(const Packing& p, int v);
double max_local_distortion(const Packing& p);

/// Largest number of open packing discs sharing a point, evaluated at
/// centers, nudged crossing points and midpoints of overlapping pairs.
int valence(const Packing& p);

/// Largest number of range faces over one point of a grid x grid
/// lattice on the unit square [-1,1]^2.
int sampled_map_valence(const CpMap& f, int grid = 200);

enum class Region { Carrier, Interstice, BoundaryDisc };

struct ExtensionHit {
    Region region;
    /// Face id for Carrier, boundary-walk position i of the pair
    /// (walk[i], walk[i+1]) for Interstice, vertex id for BoundaryDisc.
    int index;
};

/// Region of the domain disc holding z, with priority carrier, interstice,
/// boundary disc. Throws RegionLocationFailed.
ExtensionHit locate_region(const CpMap& f, Complex z);

/// Extension of the cp-map to the whole open disc.
Complex extension_eval(const CpMap& f, Complex z);

/// Single-region formulas, defined wherever their geometry makes sense;
/// used to compare neighbouring regions along shared seams.
Complex carrier_formula(const CpMap& f, int face, Complex z);
Complex interstice_formula(const CpMap& f, int walk_pos, Complex z);
Complex boundary_disc_formula(const CpMap& f, int v, Complex z);

/// The Mobius map M(u,v) of the interstice between walk[i] and walk[i+1].
MobiusTransform interstice_map(const CpMap& f, int walk_pos);

/// Dilatation (|a|+|b|)/(|a|-|b|) of the affine map on face id `face`.
/// Throws DegenerateFace.
double face_dilatation(const CpMap& f, int face);
/// Max of face_dilatation over all faces.
double per_face_dilatation(const CpMap& f);

struct MobiusEquivalence {
    bool equivalent = false;
    MobiusTransform transform;
    /// max over v of |center difference| + |radius difference| after transport.
    double discrepancy = 0.0;
};

/// Transports p onto q's normalization frame (smallest interior vertex at
/// the pinned center, its first neighbor fixing the argument) and compares.
/// Throws DifferentComplex.
MobiusEquivalence equivalent_mod_mobius(const Packing& p, const Packing& q, double tol);

/// e^{i theta} prod (z - a_j) / (1 - conj(a_j) z).
struct ClassicalBlaschke {
    std::vector<Complex> zeros;
    Complex rotation{1.0, 0.0};

    int degree() const { return static_cast<int>(zeros.size()); }
    Complex eval(Complex z) const;
    Complex derivative(Complex z) const;
};

/// Throws PointOutsideDisc for zeros off the open disc.
ClassicalBlaschke make_blaschke(std::vector<Complex> zeros, Complex rotation = 1.0);

Complex classical_blaschke_eval(const ClassicalBlaschke& phi, Complex z);

struct CriticalPoint {
    Complex point;
    int order = 1;
};

/// Zeros of phi' in the open disc with multiplicity; their orders sum to
/// degree - 1. Throws RootFindingFailed.
std::vector<CriticalPoint> blaschke_critical_points(const ClassicalBlaschke& phi);

}  // namespace blpack
