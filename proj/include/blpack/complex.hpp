#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace blpack {

/// Oriented triangle <a, b, c>; positively oriented means counterclockwise.
using Face = std::array<int, 3>;
using Edge = std::pair<int, int>;

/// Combinatorial triangulation of a closed disc.
///
/// Vertex ids are dense (0..n-1). Faces are stored with a globally
/// consistent orientation; the orientation of the first input face is
/// taken as positive. Instances are immutable once built.
class Triangulation {
public:
    Triangulation() = default;

    int num_vertices() const { return static_cast<int>(neighbors_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int f) const { return faces_[f]; }
    /// Undirected edges as (min, max) pairs, sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    bool is_boundary(int v) const { return boundary_[v]; }
    bool is_interior(int v) const { return !boundary_[v]; }

    /// Neighbors in counterclockwise order. For an interior vertex this is
    /// a cycle starting at the smallest neighbor id; for a boundary vertex
    /// it is the path whose first element follows v on the boundary walk.
    std::span<const int> neighbors(int v) const { return neighbors_[v]; }
    /// Faces around v in link order: vertex_faces(v)[i] is <v, nb[i], nb[i+1]>
    /// (indices taken cyclically for interior vertices).
    std::span<const int> vertex_faces(int v) const { return vertex_faces_[v]; }
    int vertex_degree(int v) const { return static_cast<int>(neighbors_[v].size()); }

    /// Maximum vertex degree.
    int degree() const { return degree_; }

    /// Boundary vertices in positive (counterclockwise) order, starting at
    /// the smallest boundary id.
    const std::vector<int>& boundary_walk() const { return boundary_walk_; }
    std::vector<int> interior_vertices() const;
    int num_interior() const;

    /// Face on the other side of edge (face[i], face[i+1]); -1 on the boundary.
    int face_across(int f, int i) const { return adjacency_[f][i]; }

    bool same_combinatorics(const Triangulation& other) const { return faces_ == other.faces_; }

private:
    friend Triangulation build_triangulation(std::vector<Face> faces);

    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::vector<bool> boundary_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::array<int, 3>> adjacency_;
    std::vector<int> boundary_walk_;
    int degree_ = 0;
};

/// Validates faces and assembles a Triangulation. Faces whose orientation
/// disagrees with face 0 are flipped; a complex that cannot be made
/// consistent raises NonOrientable.
Triangulation build_triangulation(std::vector<Face> faces);

/// Fan of k triangles around vertex 0 with petals 1..k (k >= 3).
Triangulation flower(int k);

/// Combinatorial ball of radius n in the triangular lattice. Vertex 0 is
/// the center; ring j holds ids 1+3j(j-1) .. 3j(j+1) ordered by angle,
/// starting on the positive real axis.
Triangulation hex_ball(int n);

/// Splits every face into four through edge midpoints. Old ids are kept;
/// the midpoint of edges()[e] gets id num_vertices() + e.
Triangulation hex_refine(const Triangulation& t);

struct BranchPoint {
    int vertex = 0;
    int order = 1;

    bool operator==(const BranchPoint&) const = default;
};

/// The set {(v_i, k_i)} of interior branch vertices with positive orders.
struct BranchStructure {
    std::vector<BranchPoint> entries;

    bool empty() const { return entries.empty(); }
    int total_order() const;
    /// Branch order at v, 0 when v is not listed.
    int order_at(int v) const;
    /// Entries sorted by vertex id.
    BranchStructure sorted() const;

    bool operator==(const BranchStructure&) const = default;
};

struct BranchValidation {
    bool valid = true;
    /// A violating simple closed edge path (vertex list, implicitly closed).
    std::vector<int> witness;
};

/// Checks that every simple closed edge path has at least
/// 3 + 2 * (sum of enclosed orders) edges. Throws BranchOnBoundary or
/// DuplicateBranchVertex for malformed input.
BranchValidation validate_branch_structure(const Triangulation& t, const BranchStructure& b);

/// Vertices enclosed by the simple closed edge path `cycle`: faces are
/// grouped into regions connected across edges not on the cycle, and a
/// region is inside when none of its faces carries a boundary edge that is
/// off the cycle. Vertices on the cycle are never enclosed.
std::vector<bool> enclosed_vertices(const Triangulation& t, std::span<const int> cycle);

}  // namespace blpack
