#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace dynclique {

/** Number of vertex pairs over {0, ..., n-1}. */
inline constexpr std::int64_t pair_count(int n)
{
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

/** Lexicographic slot of the unordered pair (u, v), u < v, in [0, pair_count(n)). */
inline constexpr std::int64_t edge_slot(int n, int u, int v)
{
    return static_cast<std::int64_t>(u) * n - static_cast<std::int64_t>(u) * (u + 1) / 2 +
           (v - u - 1);
}

/**
 * One time slice of the edge process: an undirected simple graph on
 * {0, ..., n-1}. Edges are stored as (u, v) with u < v, lexicographically
 * sorted and duplicate-free; that ordering is the canonical identity used
 * for equality and hashing downstream.
 */
struct GraphSnapshot {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    bool operator==(const GraphSnapshot&) const = default;

    bool has_edge(int u, int v) const;

    /** Sorts endpoints and edge list, drops duplicates; rejects self-loops. */
    void canonicalize();
};

GraphSnapshot complete_graph(int n);

}  // namespace dynclique
