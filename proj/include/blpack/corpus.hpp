#pragma once

#include "blpack/complex.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blpack {

struct CorpusEntry {
    std::string name;
    Triangulation complex;
    BranchStructure branch;
};

/// Applies `count` random flips of interior edges drawn with an
/// mt19937_64 seeded by `seed`. Flips that would create a duplicate edge or
/// push an interior degree below 4 are skipped.
Triangulation random_flips(const Triangulation& t, int count, std::uint64_t seed);

/// Interior vertices ordered by decreasing combinatorial distance to the
/// boundary, ties by id.
std::vector<int> deep_vertices(const Triangulation& t);

/// First valid structure with `count` order-one branch vertices taken from
/// deep_vertices (lexicographic over tuples); empty when none exists.
BranchStructure pick_branch(const Triangulation& t, int count);

/// The named test complexes, without branching.
std::vector<std::pair<std::string, Triangulation>> corpus_complexes();

/// Every corpus complex with the empty structure, one branch vertex, and
/// two branch vertices where the complex admits them.
std::vector<CorpusEntry> corpus();

}  // namespace blpack
