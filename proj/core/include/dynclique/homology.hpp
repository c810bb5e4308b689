#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dynclique/cliques.hpp"

namespace dynclique {

/**
 * Boundary map from dimension-k faces to their (k-1)-faces under the
 * alternating-sign rule: the column of a face carries (-1)^i at the row of
 * the face obtained by dropping its i-th vertex (vertices ascending).
 */
struct BoundaryMatrix {
    int k = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    // per column: (row, sign) with rows ascending and sign in {-1, +1}
    std::vector<std::vector<std::pair<std::uint32_t, std::int8_t>>> columns;
};

/** Builds the dimension-k boundary map; throws std::out_of_range unless 1 <= k <= dim. */
BoundaryMatrix boundary_matrix(const CliqueComplex& cx, int k);

/** Coefficient field: exact rationals, or integers mod a prime q. */
struct FieldSpec {
    std::uint64_t modulus = 0;  // 0 = exact rationals

    static FieldSpec exact_rational() { return {0}; }

    /** Throws std::domain_error when q is not a prime below 2^31. */
    static FieldSpec prime(std::uint64_t q);
};

/**
 * Matrix rank over the chosen field. The modular path runs a sparse column
 * reduction with pivoting on each column's lowest nonzero row; the exact
 * path runs fraction-free (Bareiss) elimination on a dense integer copy.
 * A rank mod q never exceeds the rational rank.
 */
std::size_t rank_over_field(const BoundaryMatrix& m, const FieldSpec& field);

/** Reduced Betti numbers plus the Euler characteristic of the complex. */
struct BettiVector {
    std::vector<std::int64_t> betti;  // reduced, indices 0..dim
    std::int64_t euler = 0;           // alternating face-count sum

    std::int64_t reduced(int k) const
    {
        return (k >= 0 && k < static_cast<int>(betti.size())) ? betti[static_cast<std::size_t>(k)]
                                                              : 0;
    }

    /**
     * Alternating sum of unreduced Betti numbers (b_0 = betti[0] + 1 for a
     * non-empty complex, b_j = betti[j] above). Equals euler exactly.
     */
    std::int64_t unreduced_alternating_sum() const;
};

struct BettiOptions {
    /** The default modular prime pair is derived from this seed. */
    std::uint64_t prime_seed = 0x5eedb377ull;
    /** Forces fraction-free rational ranks everywhere (slow; verification mode). */
    bool exact = false;
};

/**
 * Reduced Betti numbers over the rationals. Dimension 0 uses union-find on
 * the 1-skeleton. Higher dimensions use boundary ranks computed modulo a
 * large random prime, revalidated against a second prime; on disagreement
 * the ranks are recomputed exactly.
 */
BettiVector betti_numbers(const CliqueComplex& cx, const BettiOptions& opts = {});

/** Connected components of the 1-skeleton (n = 0 gives 0). */
std::int64_t component_count(const CliqueComplex& cx);

/** Deterministic prime in (2^20, 2^30) at the given index of the seed's sequence. */
std::uint64_t derived_prime(std::uint64_t seed, std::uint64_t index);

}  // namespace dynclique
