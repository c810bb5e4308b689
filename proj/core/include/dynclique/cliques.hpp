#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynclique/graph.hpp"

namespace dynclique {

/** Clique counts by dimension: counts[j] is the number of (j+1)-cliques. */
struct CliqueTally {
    int n = 0;
    std::vector<std::int64_t> counts;

    /** Alternating sum of counts over all dimensions. */
    std::int64_t euler_characteristic() const;
};

/**
 * The clique complex of a snapshot, listed per dimension. A dimension-j face
 * is a (j+1)-clique stored as an ascending vertex tuple; each dimension's
 * list is lexicographically sorted and duplicate-free. The complex is closed
 * under taking subsets of its faces by construction.
 */
struct CliqueComplex {
    int n = 0;
    std::vector<std::vector<int>> faces;  // faces[j]: flattened (j+1)-tuples

    int dim() const { return static_cast<int>(faces.size()) - 1; }

    std::size_t count(int j) const
    {
        if (j < 0 || j > dim())
            return 0;
        return faces[static_cast<std::size_t>(j)].size() / static_cast<std::size_t>(j + 1);
    }

    std::span<const int> face(int j, std::size_t idx) const
    {
        const auto width = static_cast<std::size_t>(j + 1);
        return {faces[static_cast<std::size_t>(j)].data() + idx * width, width};
    }

    CliqueTally tally() const;
};

/**
 * All cliques of g with dimension <= max_dim, each exactly once. Extension
 * proceeds along a degeneracy ordering, so enumeration stays fast when
 * cliques are small.
 */
CliqueComplex enumerate_cliques(const GraphSnapshot& g, int max_dim);

/**
 * Full clique complex: starts at max_dim_hint and deepens until the top
 * enumerated dimension is empty, which certifies that no larger clique
 * exists (every clique contains cliques of all smaller sizes).
 */
CliqueComplex enumerate_cliques_complete(const GraphSnapshot& g, int max_dim_hint = 4);

CliqueTally clique_tally(const GraphSnapshot& g, int max_dim);

/** Copy of g with the edge (u, v) toggled. */
GraphSnapshot flip_edge(const GraphSnapshot& g, int u, int v);

/**
 * Signed per-dimension clique-count change caused by toggling (u, v):
 * +c at dimension j when c (j+1)-cliques are created, -c when destroyed.
 * Result has max_dim + 1 entries and agrees with recounting from scratch.
 */
std::vector<std::int64_t> delta_tally(const GraphSnapshot& g, int u, int v, int max_dim);

}  // namespace dynclique
