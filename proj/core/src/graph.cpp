#include "dynclique/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynclique {

bool GraphSnapshot::has_edge(int u, int v) const
{
    if (u == v)
        return false;
    if (u > v)
        std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

void GraphSnapshot::canonicalize()
{
    for (auto& [u, v] : edges) {
        if (u == v)
            throw std::invalid_argument("self-loops are not allowed");
        if (u < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

GraphSnapshot complete_graph(int n)
{
    GraphSnapshot g;
    g.n = n;
    g.edges.reserve(static_cast<std::size_t>(pair_count(n)));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.edges.emplace_back(u, v);
    return g;
}

}  // namespace dynclique
