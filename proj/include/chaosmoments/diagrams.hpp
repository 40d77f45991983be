#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace chaosmoments {

// Vertices are grouped into rows of given sizes and numbered row-major.
// An admissible diagram is a perfect matching with no edge inside a row.
// Edges are stored as (low id, high id); the high endpoint always lies in a
// strictly later row than the low one (enumeration matches the lowest
// unmatched vertex first, so earlier rows are exhausted in order).

struct Diagram {
    std::vector<std::pair<int, int>> edges;
};

struct RowLayout {
    std::vector<int> sizes;
    std::vector<int> offsets;  // offsets[r] = id of first vertex of row r
    int total = 0;

    explicit RowLayout(const std::vector<int>& s);
    int row_of(int v) const;
};

// Number of admissible diagrams; 0 when the total vertex count is odd.
// Total vertex count is capped at 24.
std::int64_t count_admissible(const std::vector<int>& sizes);

// All admissible diagrams in lexicographic order of the matching map.
// Total vertex count is capped at 16; odd totals are an error here.
std::vector<Diagram> enumerate_admissible(const std::vector<int>& sizes);

// Diagrams on p equal rows of size m_p with every edge joining one of the
// first p/2 rows (upper vertices) to one of the last p/2 rows (lower
// vertices). Fixing the upper side, each diagram is a permutation of the
// m = p m_p / 2 lower vertices, so there are exactly m! of them; they are
// produced in lexicographic order of that permutation.
std::vector<Diagram> enumerate_constrained(int p, int m_p);

// 1-based (row, col) label of a vertex.
struct VertexRef {
    int row = 0;
    int col = 0;
};

// Per-edge (upper, lower) variable labels in edge order: the endpoint in the
// earlier row first. Input edges must reference valid vertices of the layout.
std::vector<std::pair<VertexRef, VertexRef>> edge_factors(const RowLayout& layout,
                                                          const Diagram& d);

}  // namespace chaosmoments
