#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dynclique/exact_math.hpp"

namespace dynclique {

/**
 * Closed-form moments of the clique counts of a stationary snapshot:
 *
 *   E[count_j]   = C(n, j+1) p^{C(j+1, 2)}
 *   Var[count_j] = sum_{i=2}^{j+1} C(j+1, i) C(n, j+1) C(n-j-1, j+1-i)
 *                  [p^{2 C(j+1,2) - C(i,2)} - p^{2 C(j+1,2)}]
 *
 * where count_j is the number of (j+1)-cliques. Exact in rationals when p
 * is rational; double overloads evaluate in floating point.
 */
BigRational mean_clique_count(int n, const BigRational& p, int j);
BigRational var_clique_count(int n, const BigRational& p, int j);
double mean_clique_count(int n, double p, int j);
double var_clique_count(int n, double p, int j);

/** Var[count_k] divided by its growth scale n^{2k} p^{2 C(k+1,2) - 1}. */
double var_theta_ratio(int n, double p, int k);

/** var_theta_ratio scanned over an n-grid at p = n^alpha. */
struct VarOrderScan {
    int k = 0;
    double alpha = 0.0;
    std::vector<int> n_grid;
    std::vector<double> ratios;
    double lower = 0.0;  // min over the grid
    double upper = 0.0;  // max over the grid
};
VarOrderScan var_order_constants(int k, double alpha, std::span<const int> n_grid);

/**
 * Exact finite-n covariance of the pair of normalized (k+1)-clique counts
 * taken dt apart. With L = e^{-lambda*dt}:
 *
 *           sum_{i=2}^{k+1} C(k+1,i) C(n-k-1,k+1-i) [(1 + (1-p)/p L)^{C(i,2)} - 1]
 *   cov  =  ---------------------------------------------------------------------
 *           sum_{i=2}^{k+1} C(k+1,i) C(n-k-1,k+1-i) [p^{-C(i,2)} - 1]
 *
 * For k = 1 this collapses to L exactly, for every n. Evaluated in extended
 * precision; throws std::overflow_error if an intermediate leaves range.
 */
long double cov_normalized_clique_counts(int n, double p, double lambda, int k, double dt);

/**
 * A 4-tuple of vertex subsets (two of size i+1 followed by two of size j+1)
 * reduced to its intersection type: all single, pairwise, triple, and
 * quadruple intersection cardinalities, plus the inclusion-exclusion counts
 *
 *   vertices = sum a_q - sum a_qr + sum a_qrs - a_1234
 *   pairs    = same sums over C(a, 2)
 *
 * i.e. the number of distinct vertices and of distinct vertex pairs covered
 * by the four sets.
 */
struct QuadIntersection {
    std::array<int, 4> single{};    // a1, a2, a3, a4
    std::array<int, 6> pairwise{};  // a12, a13, a14, a23, a24, a34
    std::array<int, 4> triple{};    // a123, a124, a134, a234
    int quadruple = 0;              // a1234
    int vertices = 0;
    int pairs = 0;

    bool operator==(const QuadIntersection&) const = default;

    /** Packs the 15 cardinalities into a hashable key (each must be < 16). */
    std::uint64_t key() const;
};

/** Sets given as bitmasks over a ground set of at most 64 vertices. */
QuadIntersection intersection_type(std::uint64_t a1, std::uint64_t a2, std::uint64_t a3,
                                   std::uint64_t a4);
QuadIntersection intersection_type(std::span<const int> a1, std::span<const int> a2,
                                   std::span<const int> a3, std::span<const int> a4);

/** True iff some set shares at most one vertex with each of the other three. */
bool is_independent_quad(const QuadIntersection& q);

/**
 * The sixteen-term correlation factor Phi(h) of the quad, built from
 * tau(u) = p + (1-p) e^{-lambda*u} evaluated at u = h and u = 2h.
 */
long double quad_phi(double h, const QuadIntersection& q, double p, double lambda);

/**
 * E[g(h)] for the quad, where g is the product of the four indicator
 * increments (sets 1 and 2 over the step h -> 2h, sets 3 and 4 over
 * 0 -> h). Equals p^pairs * Phi(h); identically zero when the quad has an
 * independent set.
 */
long double expected_g(double h, const QuadIntersection& q, double p, double lambda);

/**
 * Same expectation computed the long way: per covered edge, the probability
 * of being on at its required times is obtained by summing the eight paths
 * of the two-state chain over the grid {0, h, 2h}. Verification route for
 * expected_g.
 */
long double expected_g_by_joint_law(double h, const QuadIntersection& q, double p, double lambda);

/**
 * Exhaustive check of the exponent bound
 *
 *   vertices + alpha * pairs <= 4k + alpha * (4 C(k+1,2) - 2)
 *
 * over all quads of sizes (i+1, i+1, j+1, j+1) on a ground set of
 * 2(i+1) + 2(j+1) vertices, skipping quads with an independent set.
 * Equivalent to n^ver p^pair <= n^{4k} p^{4C(k+1,2)-2} at p = n^alpha.
 */
struct VerPairReport {
    int i = 0, j = 0, k = 0;
    std::vector<double> alphas;
    std::size_t quads_enumerated = 0;
    std::size_t classes_checked = 0;   // distinct non-independent intersection types
    std::size_t violations = 0;
    double min_margin = 0.0;  // smallest RHS - LHS seen (>= 0 when the bound holds)
};
VerPairReport check_ver_pair_bound(int i, int j, int k, std::span<const double> alphas);

/**
 * Exact fourth cross-moment of clique-count increments,
 *
 *   xi_ij(h) = E[(count_i(2h) - count_i(h))^2 (count_j(h) - count_j(0))^2],
 *
 * computed as the sum of expected_g over all ordered quads of (i+1)- and
 * (j+1)-subsets of an n-vertex ground set. Feasible for small n (<= 8
 * advised); throws std::invalid_argument when n > 16.
 */
long double xi_cross_moment_exact(int n, int i, int j, double h, double p, double lambda);

/** Exhaustively enumerated snapshot moments, exact in rationals (n <= 6). */
struct ExhaustiveMoments {
    int n = 0;
    std::vector<BigRational> mean;  // per dimension j
    std::vector<BigRational> var;
};
ExhaustiveMoments exhaustive_clique_moments(int n, const BigRational& p);

}  // namespace dynclique
