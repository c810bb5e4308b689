#include "dynclique/homology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynclique/rng.hpp"

namespace dynclique {

namespace {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t q)
{
    if (q < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

/** Index of `face` (ascending tuple) in the lexicographically sorted dim list. */
std::uint32_t face_row(const CliqueComplex& cx, int dim, const std::vector<int>& face)
{
    const auto& flat = cx.faces[static_cast<std::size_t>(dim)];
    const std::size_t width = static_cast<std::size_t>(dim) + 1;
    const std::size_t count = flat.size() / width;
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const int* entry = flat.data() + mid * width;
        if (std::lexicographical_compare(entry, entry + width, face.begin(), face.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == count ||
        !std::equal(face.begin(), face.end(), flat.data() + lo * width))
        throw std::logic_error("face missing from complex; downward closure violated");
    return static_cast<std::uint32_t>(lo);
}

std::int64_t mod_pow_inverse(std::int64_t a, std::int64_t q)
{
    // Fermat inverse, q prime.
    std::int64_t result = 1, base = a % q, e = q - 2;
    while (e > 0) {
        if (e & 1)
            result = result * base % q;
        base = base * base % q;
        e >>= 1;
    }
    return result;
}

using SparseColumn = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/** dst -= coeff * src (mod q); both columns sorted by row. */
SparseColumn axpy_mod(const SparseColumn& dst, const SparseColumn& src, std::int64_t coeff,
                      std::int64_t q)
{
    SparseColumn out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, (q - coeff * src[j].second % q) % q);
            ++j;
        } else {
            const std::int64_t value = ((dst[i].second - coeff * src[j].second) % q + q) % q;
            if (value != 0)
                out.emplace_back(dst[i].first, value);
            ++i;
            ++j;
        }
    }
    return out;
}

std::size_t rank_mod_prime(const BoundaryMatrix& m, std::int64_t q)
{
    // Column reduction: each surviving column ends with a unique lowest row.
    std::vector<std::int64_t> pivot_col_of_row(m.rows, -1);
    std::vector<SparseColumn> reduced;
    reduced.reserve(m.cols);
    std::size_t rank = 0;

    for (const auto& col : m.columns) {
        SparseColumn work;
        work.reserve(col.size());
        for (const auto& [row, sign] : col)
            work.emplace_back(row, sign > 0 ? 1 : q - 1);
        while (!work.empty()) {
            const std::uint32_t low = work.back().first;
            const std::int64_t owner = pivot_col_of_row[low];
            if (owner < 0)
                break;
            const SparseColumn& pivot = reduced[static_cast<std::size_t>(owner)];
            const std::int64_t coeff =
                work.back().second * mod_pow_inverse(pivot.back().second, q) % q;
            work = axpy_mod(work, pivot, coeff, q);
        }
        if (!work.empty()) {
            pivot_col_of_row[work.back().first] = static_cast<std::int64_t>(reduced.size());
            ++rank;
        }
        reduced.push_back(std::move(work));
    }
    return rank;
}

std::size_t rank_bareiss(const BoundaryMatrix& m)
{
    if (m.rows == 0 || m.cols == 0)
        return 0;
    std::vector<std::vector<BigInt>> a(m.rows, std::vector<BigInt>(m.cols, 0));
    for (std::size_t j = 0; j < m.cols; ++j)
        for (const auto& [row, sign] : m.columns[j])
            a[row][j] = sign;

    std::size_t rank = 0;
    BigInt prev_pivot = 1;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot_row = rank;
        while (pivot_row < m.rows && a[pivot_row][col] == 0)
            ++pivot_row;
        if (pivot_row == m.rows)
            continue;
        std::swap(a[rank], a[pivot_row]);
        for (std::size_t r = rank + 1; r < m.rows; ++r) {
            for (std::size_t c = col + 1; c < m.cols; ++c)
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev_pivot;
            a[r][col] = 0;
        }
        prev_pivot = a[rank][col];
        ++rank;
    }
    return rank;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n))
    {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }

    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

BoundaryMatrix boundary_matrix(const CliqueComplex& cx, int k)
{
    if (k < 1 || k > cx.dim())
        throw std::out_of_range("boundary dimension outside [1, dim]");

    BoundaryMatrix m;
    m.k = k;
    m.rows = cx.count(k - 1);
    m.cols = cx.count(k);
    m.columns.resize(m.cols);

    std::vector<int> face(static_cast<std::size_t>(k));
    for (std::size_t col = 0; col < m.cols; ++col) {
        const auto simplex = cx.face(k, col);
        auto& entries = m.columns[col];
        entries.reserve(static_cast<std::size_t>(k) + 1);
        for (int drop = 0; drop <= k; ++drop) {
            face.clear();
            for (int i = 0; i <= k; ++i)
                if (i != drop)
                    face.push_back(simplex[static_cast<std::size_t>(i)]);
            entries.emplace_back(face_row(cx, k - 1, face),
                                 static_cast<std::int8_t>(drop % 2 == 0 ? 1 : -1));
        }
        std::sort(entries.begin(), entries.end());
    }
    return m;
}

FieldSpec FieldSpec::prime(std::uint64_t q)
{
    if (q >= (std::uint64_t{1} << 31) || !is_prime(q))
        throw std::domain_error("field modulus must be a prime below 2^31");
    return {q};
}

std::size_t rank_over_field(const BoundaryMatrix& m, const FieldSpec& field)
{
    if (field.modulus == 0)
        return rank_bareiss(m);
    if (field.modulus >= (std::uint64_t{1} << 31) || !is_prime(field.modulus))
        throw std::domain_error("field modulus must be a prime below 2^31");
    return rank_mod_prime(m, static_cast<std::int64_t>(field.modulus));
}

std::int64_t component_count(const CliqueComplex& cx)
{
    if (cx.n == 0)
        return 0;
    UnionFind uf(cx.n);
    const std::size_t edges = cx.count(1);
    for (std::size_t e = 0; e < edges; ++e) {
        const auto edge = cx.face(1, e);
        uf.unite(edge[0], edge[1]);
    }
    std::int64_t components = 0;
    for (int v = 0; v < cx.n; ++v)
        if (uf.find(v) == v)
            ++components;
    return components;
}

std::uint64_t derived_prime(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 rng = substream(seed, {stream_tag::prime, index});
    while (true) {
        // Odd candidate in (2^20, 2^30).
        std::uint64_t candidate = ((rng() % (std::uint64_t{1} << 29)) + (std::uint64_t{1} << 20)) | 1;
        if (is_prime(candidate))
            return candidate;
    }
}

std::int64_t BettiVector::unreduced_alternating_sum() const
{
    std::int64_t sum = 0;
    int sign = 1;
    for (std::size_t j = 0; j < betti.size(); ++j) {
        std::int64_t b = betti[j];
        if (j == 0)
            b += 1;
        sum += sign * b;
        sign = -sign;
    }
    return sum;
}

BettiVector betti_numbers(const CliqueComplex& cx, const BettiOptions& opts)
{
    BettiVector out;
    if (cx.n == 0)
        return out;  // empty complex: no Betti numbers, euler 0

    const int dim = cx.dim();
    out.euler = cx.tally().euler_characteristic();
    out.betti.assign(static_cast<std::size_t>(dim) + 1, 0);
    out.betti[0] = component_count(cx) - 1;
    if (dim == 0)
        return out;

    // ranks[k] = rank of the dimension-k boundary map, k in [1, dim].
    auto compute_ranks = [&cx, dim](const FieldSpec& field) {
        std::vector<std::size_t> ranks(static_cast<std::size_t>(dim) + 2, 0);
        for (int k = 1; k <= dim; ++k)
            ranks[static_cast<std::size_t>(k)] = rank_over_field(boundary_matrix(cx, k), field);
        return ranks;
    };

    std::vector<std::size_t> ranks;
    if (opts.exact) {
        ranks = compute_ranks(FieldSpec::exact_rational());
    } else {
        const std::uint64_t q1 = derived_prime(opts.prime_seed, 0);
        std::uint64_t q2 = derived_prime(opts.prime_seed, 1);
        for (std::uint64_t i = 2; q2 == q1; ++i)
            q2 = derived_prime(opts.prime_seed, i);
        ranks = compute_ranks(FieldSpec{q1});
        if (ranks != compute_ranks(FieldSpec{q2}))
            ranks = compute_ranks(FieldSpec::exact_rational());
    }

    for (int k = 1; k <= dim; ++k) {
        const std::int64_t nullity = static_cast<std::int64_t>(cx.count(k)) -
                                     static_cast<std::int64_t>(ranks[static_cast<std::size_t>(k)]);
        out.betti[static_cast<std::size_t>(k)] =
            nullity - static_cast<std::int64_t>(ranks[static_cast<std::size_t>(k) + 1]);
    }
    return out;
}

}  // namespace dynclique
