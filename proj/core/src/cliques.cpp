#include "dynclique/cliques.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace dynclique {

std::int64_t CliqueTally::euler_characteristic() const
{
    std::int64_t sum = 0;
    int sign = 1;
    for (std::int64_t c : counts) {
        sum += sign * c;
        sign = -sign;
    }
    return sum;
}

CliqueTally CliqueComplex::tally() const
{
    CliqueTally t;
    t.n = n;
    t.counts.resize(faces.size());
    for (int j = 0; j <= dim(); ++j)
        t.counts[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(count(j));
    return t;
}

namespace {

/** Row-per-vertex adjacency bitset. */
struct AdjacencyBits {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;

    explicit AdjacencyBits(const GraphSnapshot& g)
        : n(g.n), words((g.n + 63) / 64), bits(static_cast<std::size_t>(g.n) * words, 0)
    {
        for (const auto& [u, v] : g.edges) {
            set(u, v);
            set(v, u);
        }
    }

    void set(int u, int v)
    {
        bits[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v / 64)] |=
            std::uint64_t{1} << (v % 64);
    }

    const std::uint64_t* row(int u) const { return bits.data() + static_cast<std::size_t>(u) * words; }
};

/** Smallest-last vertex ordering; pos[v] is v's position in it. */
std::vector<int> degeneracy_positions(const GraphSnapshot& g)
{
    const int n = g.n;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<int> degree(static_cast<std::size_t>(n));
    int max_degree = 0;
    for (int v = 0; v < n; ++v) {
        degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
        max_degree = std::max(max_degree, degree[static_cast<std::size_t>(v)]);
    }
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(max_degree) + 1);
    for (int v = 0; v < n; ++v)
        buckets[static_cast<std::size_t>(degree[static_cast<std::size_t>(v)])].push_back(v);

    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    int next_pos = 0;
    int d = 0;
    while (next_pos < n) {
        while (d <= max_degree && buckets[static_cast<std::size_t>(d)].empty())
            ++d;
        if (d > max_degree)
            break;
        int v = buckets[static_cast<std::size_t>(d)].back();
        buckets[static_cast<std::size_t>(d)].pop_back();
        if (removed[static_cast<std::size_t>(v)] || degree[static_cast<std::size_t>(v)] != d)
            continue;  // stale bucket entry
        removed[static_cast<std::size_t>(v)] = true;
        pos[static_cast<std::size_t>(v)] = next_pos++;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!removed[static_cast<std::size_t>(w)]) {
                int& dw = degree[static_cast<std::size_t>(w)];
                --dw;
                buckets[static_cast<std::size_t>(dw)].push_back(w);
                d = std::min(d, dw);
            }
        }
    }
    return pos;
}

struct Enumerator {
    const AdjacencyBits& adj;
    int max_dim;
    // later[v]: bitset of vertices placed after v in the degeneracy ordering
    std::vector<std::uint64_t> later;
    std::vector<std::vector<std::vector<int>>> collected;  // per dimension, vertex tuples
    std::vector<int> current;

    Enumerator(const AdjacencyBits& a, const std::vector<int>& pos, int md)
        : adj(a), max_dim(md), later(static_cast<std::size_t>(a.n) * a.words, 0),
          collected(static_cast<std::size_t>(md) + 1)
    {
        for (int v = 0; v < adj.n; ++v) {
            auto* row = later.data() + static_cast<std::size_t>(v) * adj.words;
            for (int w = 0; w < adj.n; ++w)
                if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)])
                    row[w / 64] |= std::uint64_t{1} << (w % 64);
        }
    }

    void record()
    {
        std::vector<int> tuple = current;
        std::sort(tuple.begin(), tuple.end());
        collected[current.size() - 1].push_back(std::move(tuple));
    }

    // candidates: vertices adjacent to every member of `current` and placed
    // after its last-added vertex in the degeneracy ordering.
    void extend(const std::vector<std::uint64_t>& candidates)
    {
        record();
        if (static_cast<int>(current.size()) == max_dim + 1)
            return;
        std::vector<std::uint64_t> next(static_cast<std::size_t>(adj.words));
        for (int q = 0; q < adj.words; ++q) {
            std::uint64_t word = candidates[static_cast<std::size_t>(q)];
            while (word) {
                const int w = q * 64 + std::countr_zero(word);
                word &= word - 1;
                const std::uint64_t* row = adj.row(w);
                const std::uint64_t* lat = later.data() + static_cast<std::size_t>(w) * adj.words;
                for (int r = 0; r < adj.words; ++r)
                    next[static_cast<std::size_t>(r)] =
                        candidates[static_cast<std::size_t>(r)] & row[r] & lat[r];
                current.push_back(w);
                extend(next);
                current.pop_back();
            }
        }
    }
};

}  // namespace

CliqueComplex enumerate_cliques(const GraphSnapshot& g, int max_dim)
{
    if (max_dim < 0)
        throw std::invalid_argument("max_dim must be non-negative");

    CliqueComplex cx;
    cx.n = g.n;
    if (g.n == 0) {
        return cx;
    }

    const AdjacencyBits adj(g);
    const auto pos = degeneracy_positions(g);
    Enumerator en(adj, pos, max_dim);

    for (int v = 0; v < g.n; ++v) {
        std::vector<std::uint64_t> candidates(static_cast<std::size_t>(adj.words));
        const std::uint64_t* lat = en.later.data() + static_cast<std::size_t>(v) * adj.words;
        for (int q = 0; q < adj.words; ++q)
            candidates[static_cast<std::size_t>(q)] = adj.row(v)[q] & lat[q];
        en.current.assign(1, v);
        en.extend(candidates);
    }

    // Lexicographic order per dimension is the canonical layout.
    int top = max_dim;
    while (top > 0 && en.collected[static_cast<std::size_t>(top)].empty())
        --top;
    cx.faces.resize(static_cast<std::size_t>(top) + 1);
    for (int j = 0; j <= top; ++j) {
        auto& tuples = en.collected[static_cast<std::size_t>(j)];
        std::sort(tuples.begin(), tuples.end());
        auto& flat = cx.faces[static_cast<std::size_t>(j)];
        flat.reserve(tuples.size() * static_cast<std::size_t>(j + 1));
        for (const auto& tuple : tuples)
            flat.insert(flat.end(), tuple.begin(), tuple.end());
    }
    return cx;
}

CliqueComplex enumerate_cliques_complete(const GraphSnapshot& g, int max_dim_hint)
{
    int max_dim = std::clamp(max_dim_hint, 1, std::max(1, g.n - 1));
    while (true) {
        CliqueComplex cx = enumerate_cliques(g, max_dim);
        if (cx.count(max_dim) == 0 || max_dim >= g.n - 1)
            return cx;
        max_dim = std::min(g.n - 1, 2 * max_dim);
    }
}

CliqueTally clique_tally(const GraphSnapshot& g, int max_dim)
{
    CliqueTally t = enumerate_cliques(g, max_dim).tally();
    t.counts.resize(static_cast<std::size_t>(max_dim) + 1, 0);
    return t;
}

GraphSnapshot flip_edge(const GraphSnapshot& g, int u, int v)
{
    if (u == v)
        throw std::invalid_argument("cannot flip a self-loop");
    if (u > v)
        std::swap(u, v);
    GraphSnapshot out = g;
    const auto edge = std::make_pair(u, v);
    auto it = std::lower_bound(out.edges.begin(), out.edges.end(), edge);
    if (it != out.edges.end() && *it == edge)
        out.edges.erase(it);
    else
        out.edges.insert(it, edge);
    return out;
}

std::vector<std::int64_t> delta_tally(const GraphSnapshot& g, int u, int v, int max_dim)
{
    if (u == v)
        throw std::invalid_argument("cannot flip a self-loop");
    if (u > v)
        std::swap(u, v);
    std::vector<std::int64_t> delta(static_cast<std::size_t>(max_dim) + 1, 0);
    if (max_dim < 1)
        return delta;

    // Cliques gained or lost are exactly {u, v} together with a clique S of
    // the subgraph induced on the common neighbourhood of u and v.
    const AdjacencyBits adj(g);
    std::vector<int> common;
    for (int w = 0; w < g.n; ++w) {
        if (w == u || w == v)
            continue;
        if ((adj.row(u)[w / 64] >> (w % 64) & 1) && (adj.row(v)[w / 64] >> (w % 64) & 1))
            common.push_back(w);
    }

    GraphSnapshot induced;
    induced.n = static_cast<int>(common.size());
    for (int a = 0; a < induced.n; ++a)
        for (int b = a + 1; b < induced.n; ++b)
            if ((adj.row(common[static_cast<std::size_t>(a)])[common[static_cast<std::size_t>(b)] / 64] >>
                     (common[static_cast<std::size_t>(b)] % 64) &
                 1))
                induced.edges.emplace_back(a, b);

    const std::int64_t sign = g.has_edge(u, v) ? -1 : +1;
    delta[1] = sign;  // the S = empty case: the edge itself
    if (induced.n > 0 && max_dim >= 2) {
        const CliqueTally inner = clique_tally(induced, max_dim - 2);
        for (std::size_t j = 0; j < inner.counts.size(); ++j)
            delta[j + 2] = sign * inner.counts[j];
    }
    return delta;
}

}  // namespace dynclique
