#include "dynclique/formulas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dynclique/cliques.hpp"
#include "dynclique/dynamics.hpp"
#include "dynclique/graph.hpp"

namespace dynclique {

namespace {

void require_probability(double p)
{
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("edge probability must lie in (0, 1)");
}

long double binomial_ld(std::int64_t n, std::int64_t k)
{
    return binomial(n, k).convert_to<long double>();
}

}  // namespace

BigRational mean_clique_count(int n, const BigRational& p, int j)
{
    if (j < 0 || j > n - 1)
        throw std::domain_error("clique dimension outside [0, n-1]");
    return BigRational(binomial(n, j + 1)) * pow_rat(p, static_cast<std::uint64_t>(choose2(j + 1)));
}

BigRational var_clique_count(int n, const BigRational& p, int j)
{
    if (j < 0 || j > n - 1)
        throw std::domain_error("clique dimension outside [0, n-1]");
    const std::uint64_t cliques_pairs = static_cast<std::uint64_t>(choose2(j + 1));
    BigRational total = 0;
    for (int i = 2; i <= j + 1; ++i) {
        const BigRational overlap =
            pow_rat(p, 2 * cliques_pairs - static_cast<std::uint64_t>(choose2(i))) -
            pow_rat(p, 2 * cliques_pairs);
        total += BigRational(binomial(j + 1, i) * binomial(n, j + 1) *
                             binomial(n - j - 1, j + 1 - i)) *
                 overlap;
    }
    return total;
}

double mean_clique_count(int n, double p, int j)
{
    require_probability(p);
    if (j < 0 || j > n - 1)
        throw std::domain_error("clique dimension outside [0, n-1]");
    return static_cast<double>(binomial_ld(n, j + 1) *
                               std::pow(static_cast<long double>(p), choose2(j + 1)));
}

double var_clique_count(int n, double p, int j)
{
    require_probability(p);
    if (j < 0 || j > n - 1)
        throw std::domain_error("clique dimension outside [0, n-1]");
    const long double lp = p;
    const std::int64_t cliques_pairs = choose2(j + 1);
    long double total = 0;
    for (int i = 2; i <= j + 1; ++i) {
        const long double overlap = std::pow(lp, 2 * cliques_pairs - choose2(i)) -
                                    std::pow(lp, 2 * cliques_pairs);
        total += binomial_ld(j + 1, i) * binomial_ld(n, j + 1) * binomial_ld(n - j - 1, j + 1 - i) *
                 overlap;
    }
    return static_cast<double>(total);
}

double var_theta_ratio(int n, double p, int k)
{
    const long double scale =
        std::pow(static_cast<long double>(n), 2 * k) *
        std::pow(static_cast<long double>(p), 2 * choose2(k + 1) - 1);
    return static_cast<double>(var_clique_count(n, p, k) / static_cast<double>(scale));
}

VarOrderScan var_order_constants(int k, double alpha, std::span<const int> n_grid)
{
    VarOrderScan scan;
    scan.k = k;
    scan.alpha = alpha;
    scan.n_grid.assign(n_grid.begin(), n_grid.end());
    scan.ratios.reserve(n_grid.size());
    for (int n : n_grid)
        scan.ratios.push_back(var_theta_ratio(n, std::pow(n, alpha), k));
    const auto [lo, hi] = std::minmax_element(scan.ratios.begin(), scan.ratios.end());
    scan.lower = scan.ratios.empty() ? 0.0 : *lo;
    scan.upper = scan.ratios.empty() ? 0.0 : *hi;
    return scan;
}

long double cov_normalized_clique_counts(int n, double p, double lambda, int k, double dt)
{
    require_probability(p);
    if (!(lambda > 0.0))
        throw std::domain_error("rate lambda must be positive");
    if (!(dt >= 0.0))
        throw std::domain_error("time gap must be non-negative");
    if (k < 1 || k > n - 2)
        throw std::domain_error("clique dimension outside [1, n-2]");

    const long double lp = p;
    const long double decay = std::exp(static_cast<long double>(-lambda * dt));
    long double numerator = 0, denominator = 0;
    for (int i = 2; i <= k + 1; ++i) {
        const long double weight = binomial_ld(k + 1, i) * binomial_ld(n - k - 1, k + 1 - i);
        const std::int64_t exponent = choose2(i);
        numerator += weight * (std::pow(1.0L + (1.0L - lp) / lp * decay, exponent) - 1.0L);
        denominator += weight * (std::pow(1.0L / lp, exponent) - 1.0L);
    }
    if (!std::isfinite(numerator) || !std::isfinite(denominator))
        throw std::overflow_error("covariance evaluation left extended-precision range");
    return numerator / denominator;
}

std::uint64_t QuadIntersection::key() const
{
    std::uint64_t packed = 0;
    auto push = [&packed](int value) {
        if (value < 0 || value > 15)
            throw std::overflow_error("intersection cardinality exceeds key capacity");
        packed = packed << 4 | static_cast<std::uint64_t>(value);
    };
    for (int v : single)
        push(v);
    for (int v : pairwise)
        push(v);
    for (int v : triple)
        push(v);
    push(quadruple);
    return packed;
}

QuadIntersection intersection_type(std::uint64_t a1, std::uint64_t a2, std::uint64_t a3,
                                   std::uint64_t a4)
{
    const std::array<std::uint64_t, 4> m{a1, a2, a3, a4};
    QuadIntersection q;
    for (int i = 0; i < 4; ++i)
        q.single[static_cast<std::size_t>(i)] = std::popcount(m[static_cast<std::size_t>(i)]);
    int idx = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            q.pairwise[static_cast<std::size_t>(idx++)] =
                std::popcount(m[static_cast<std::size_t>(i)] & m[static_cast<std::size_t>(j)]);
    idx = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int l = j + 1; l < 4; ++l)
                q.triple[static_cast<std::size_t>(idx++)] =
                    std::popcount(m[static_cast<std::size_t>(i)] & m[static_cast<std::size_t>(j)] &
                                  m[static_cast<std::size_t>(l)]);
    q.quadruple = std::popcount(a1 & a2 & a3 & a4);

    auto alternating = [&q](auto f) {
        int sum = 0;
        for (int v : q.single)
            sum += f(v);
        for (int v : q.pairwise)
            sum -= f(v);
        for (int v : q.triple)
            sum += f(v);
        sum -= f(q.quadruple);
        return sum;
    };
    q.vertices = alternating([](int v) { return v; });
    q.pairs = alternating([](int v) { return static_cast<int>(choose2(v)); });
    return q;
}

QuadIntersection intersection_type(std::span<const int> a1, std::span<const int> a2,
                                   std::span<const int> a3, std::span<const int> a4)
{
    auto to_mask = [](std::span<const int> set) {
        std::uint64_t mask = 0;
        for (int v : set) {
            if (v < 0 || v >= 64)
                throw std::invalid_argument("ground-set vertex outside [0, 64)");
            mask |= std::uint64_t{1} << v;
        }
        return mask;
    };
    return intersection_type(to_mask(a1), to_mask(a2), to_mask(a3), to_mask(a4));
}

bool is_independent_quad(const QuadIntersection& q)
{
    // pairwise layout: a12, a13, a14, a23, a24, a34
    const auto& a = q.pairwise;
    const bool set1 = a[0] <= 1 && a[1] <= 1 && a[2] <= 1;
    const bool set2 = a[0] <= 1 && a[3] <= 1 && a[4] <= 1;
    const bool set3 = a[1] <= 1 && a[3] <= 1 && a[5] <= 1;
    const bool set4 = a[2] <= 1 && a[4] <= 1 && a[5] <= 1;
    return set1 || set2 || set3 || set4;
}

long double quad_phi(double h, const QuadIntersection& q, double p, double lambda)
{
    require_probability(p);
    if (!(lambda > 0.0))
        throw std::domain_error("rate lambda must be positive");
    if (!(h >= 0.0))
        throw std::domain_error("time gap must be non-negative");

    const long double lp = p;
    const long double tau_h = lp + (1.0L - lp) * std::exp(static_cast<long double>(-lambda * h));
    const long double tau_2h =
        lp + (1.0L - lp) * std::exp(static_cast<long double>(-2.0 * lambda * h));

    const std::int64_t c12 = choose2(q.pairwise[0]), c13 = choose2(q.pairwise[1]),
                       c14 = choose2(q.pairwise[2]), c23 = choose2(q.pairwise[3]),
                       c24 = choose2(q.pairwise[4]), c34 = choose2(q.pairwise[5]);
    const std::int64_t c123 = choose2(q.triple[0]), c124 = choose2(q.triple[1]),
                       c134 = choose2(q.triple[2]), c234 = choose2(q.triple[3]);
    const std::int64_t c1234 = choose2(q.quadruple);

    auto power = [](long double base, std::int64_t exponent) {
        if (exponent < 0)
            throw std::logic_error("negative correlation exponent");
        long double result = 1.0L;
        for (std::int64_t i = 0; i < exponent; ++i)
            result *= base;
        return result;
    };

    // Edges required at two linked times, grouped by the four sets' time
    // pattern; cross = both increment pairs, e.g. sets {1,2} against {3,4}.
    const std::int64_t cross = c13 + c14 + c23 + c24 - c123 - c124 - c134 - c234 + c1234;

    long double phi = 0.0L;
    phi += power(tau_h, cross);
    phi += power(tau_h, cross);
    phi += power(tau_2h, cross);
    phi += 1.0L;
    phi += power(tau_h, c12 + c13 + c24 + c34 - c234 - c123) *
           power(tau_2h, c14 - c124 - c134 + c1234);
    phi += power(tau_h, c12 + c23 + c14 + c34 - c134 - c123) *
           power(tau_2h, c24 - c124 - c234 + c1234);
    phi += power(tau_h, c12 + c14 + c23 + c34 - c234 - c124) *
           power(tau_2h, c13 - c123 - c134 + c1234);
    phi += power(tau_h, c12 + c24 + c13 + c34 - c134 - c124) *
           power(tau_2h, c23 - c123 - c234 + c1234);
    phi -= power(tau_h, c13 + c23 + c34 - c123) *
           power(tau_2h, c14 + c24 - c124 - c134 - c234 + c1234);
    phi -= power(tau_h, c14 + c24 + c34 - c124) *
           power(tau_2h, c13 + c23 - c123 - c134 - c234 + c1234);
    phi -= power(tau_h, c14 + c24 + c34 - c124 - c134 - c234 + c1234);
    phi -= power(tau_h, c13 + c23 + c34 - c123 - c134 - c234 + c1234);
    phi -= power(tau_h, c12 + c13 + c14 - c123 - c124 - c134 + c1234);
    phi -= power(tau_h, c12 + c23 + c24 - c123 - c124 - c234 + c1234);
    phi -= power(tau_h, c12 + c23 + c24 - c234) *
           power(tau_2h, c13 + c14 - c123 - c124 - c134 + c1234);
    phi -= power(tau_h, c12 + c13 + c14 - c134) *
           power(tau_2h, c23 + c24 - c123 - c124 - c234 + c1234);
    return phi;
}

long double expected_g(double h, const QuadIntersection& q, double p, double lambda)
{
    if (is_independent_quad(q))
        return 0.0L;  // one increment factors out with mean zero
    const long double weight =
        std::pow(static_cast<long double>(p), static_cast<long double>(q.pairs));
    return weight * quad_phi(h, q, p, lambda);
}

long double expected_g_by_joint_law(double h, const QuadIntersection& q, double p, double lambda)
{
    require_probability(p);
    if (!(h >= 0.0))
        throw std::domain_error("time gap must be non-negative");

    // cards[mask]: cardinality of the intersection of the sets in `mask`.
    std::array<int, 16> cards{};
    cards[0b0001] = q.single[0];
    cards[0b0010] = q.single[1];
    cards[0b0100] = q.single[2];
    cards[0b1000] = q.single[3];
    cards[0b0011] = q.pairwise[0];
    cards[0b0101] = q.pairwise[1];
    cards[0b1001] = q.pairwise[2];
    cards[0b0110] = q.pairwise[3];
    cards[0b1010] = q.pairwise[4];
    cards[0b1100] = q.pairwise[5];
    cards[0b0111] = q.triple[0];
    cards[0b1011] = q.triple[1];
    cards[0b1101] = q.triple[2];
    cards[0b1110] = q.triple[3];
    cards[0b1111] = q.quadruple;

    // edges_exact[F]: number of edges lying inside exactly the sets in F.
    std::array<std::int64_t, 16> edges_exact{};
    for (int f = 1; f < 16; ++f) {
        std::int64_t count = 0;
        for (int g = f; g < 16; ++g) {
            if ((g & f) != f)
                continue;
            const int extra = std::popcount(static_cast<unsigned>(g & ~f));
            count += (extra % 2 == 0 ? 1 : -1) * choose2(cards[static_cast<std::size_t>(g)]);
        }
        edges_exact[static_cast<std::size_t>(f)] = count;
    }

    // P{edge on at each required grid slot}; slots are 0, h, 2h. Sums the
    // eight state paths of the chain across the grid.
    auto on_probability = [&](bool need0, bool need1, bool need2) {
        long double total = 0.0L;
        for (int s0 = 0; s0 < 2; ++s0)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2) {
                    if ((need0 && s0 == 0) || (need1 && s1 == 0) || (need2 && s2 == 0))
                        continue;
                    long double prob = s0 == 1 ? p : 1.0 - p;
                    prob *= edge_transition_prob(static_cast<EdgeState>(s0),
                                                 static_cast<EdgeState>(s1), h, p, lambda);
                    prob *= edge_transition_prob(static_cast<EdgeState>(s1),
                                                 static_cast<EdgeState>(s2), h, p, lambda);
                    total += prob;
                }
        return total;
    };

    // The sixteen sign/time combinations of the four indicator increments:
    // sets 1 and 2 pick 2h (+) or h (-); sets 3 and 4 pick h (+) or 0 (-).
    long double expectation = 0.0L;
    for (int combo = 0; combo < 16; ++combo) {
        std::array<int, 4> slot{};  // grid slot per set: 0, 1, or 2 (times 0, h, 2h)
        slot[0] = (combo & 1) ? 1 : 2;
        slot[1] = (combo & 2) ? 1 : 2;
        slot[2] = (combo & 4) ? 0 : 1;
        slot[3] = (combo & 8) ? 0 : 1;
        const int sign = std::popcount(static_cast<unsigned>(combo)) % 2 == 0 ? 1 : -1;

        long double term = 1.0L;
        for (int f = 1; f < 16; ++f) {
            const std::int64_t count = edges_exact[static_cast<std::size_t>(f)];
            if (count == 0)
                continue;
            bool need[3] = {false, false, false};
            for (int set = 0; set < 4; ++set)
                if (f >> set & 1)
                    need[slot[static_cast<std::size_t>(set)]] = true;
            const long double prob = on_probability(need[0], need[1], need[2]);
            term *= std::pow(prob, static_cast<long double>(count));
        }
        expectation += sign * term;
    }
    return expectation;
}

namespace {

std::vector<std::uint64_t> subsets_of_size(int ground, int size)
{
    std::vector<std::uint64_t> masks;
    if (size == 0) {
        masks.push_back(0);
        return masks;
    }
    if (size > ground)
        return masks;
    // Gosper's hack: next mask with the same popcount.
    std::uint64_t mask = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << ground;
    while (mask < limit) {
        masks.push_back(mask);
        const std::uint64_t c = mask & -mask;
        const std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return masks;
}

}  // namespace

VerPairReport check_ver_pair_bound(int i, int j, int k, std::span<const double> alphas)
{
    if (i < 0 || j < 0 || k < 1)
        throw std::invalid_argument("require i, j >= 0 and k >= 1");
    const int ground = 2 * (i + 1) + 2 * (j + 1);
    if (ground > 28)
        throw std::invalid_argument("quad enumeration limited to small i, j");

    VerPairReport report;
    report.i = i;
    report.j = j;
    report.k = k;
    report.alphas.assign(alphas.begin(), alphas.end());
    report.min_margin = std::numeric_limits<double>::infinity();

    const auto sets_i = subsets_of_size(ground, i + 1);
    const auto sets_j = subsets_of_size(ground, j + 1);
    const double rhs_vertices = 4.0 * k;
    const double rhs_pairs = 4.0 * static_cast<double>(choose2(k + 1)) - 2.0;

    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t a1 : sets_i)
        for (std::uint64_t a2 : sets_i)
            for (std::uint64_t a3 : sets_j)
                for (std::uint64_t a4 : sets_j) {
                    ++report.quads_enumerated;
                    const QuadIntersection q = intersection_type(a1, a2, a3, a4);
                    if (!seen.insert(q.key()).second)
                        continue;
                    if (is_independent_quad(q))
                        continue;
                    ++report.classes_checked;
                    for (double alpha : alphas) {
                        const double margin = (rhs_vertices + alpha * rhs_pairs) -
                                              (q.vertices + alpha * q.pairs);
                        report.min_margin = std::min(report.min_margin, margin);
                        if (margin < -1e-9)
                            ++report.violations;
                    }
                }
    return report;
}

long double xi_cross_moment_exact(int n, int i, int j, double h, double p, double lambda)
{
    if (n < 1 || n > 16)
        throw std::invalid_argument("exact cross moment requires 1 <= n <= 16");
    if (i < 0 || j < 0 || i + 1 > n || j + 1 > n)
        throw std::invalid_argument("set sizes must fit the ground set");

    const auto sets_i = subsets_of_size(n, i + 1);
    const auto sets_j = subsets_of_size(n, j + 1);

    std::unordered_map<std::uint64_t, long double> memo;
    long double total = 0.0L;
    for (std::uint64_t a1 : sets_i)
        for (std::uint64_t a2 : sets_i)
            for (std::uint64_t a3 : sets_j)
                for (std::uint64_t a4 : sets_j) {
                    const QuadIntersection q = intersection_type(a1, a2, a3, a4);
                    const auto [it, inserted] = memo.try_emplace(q.key(), 0.0L);
                    if (inserted)
                        it->second = expected_g(h, q, p, lambda);
                    total += it->second;
                }
    return total;
}

ExhaustiveMoments exhaustive_clique_moments(int n, const BigRational& p)
{
    if (n < 1 || n > 6)
        throw std::invalid_argument("exhaustive enumeration limited to n <= 6");
    if (p <= 0 || p >= 1)
        throw std::domain_error("edge probability must lie in (0, 1)");

    const int slots = static_cast<int>(pair_count(n));
    std::vector<BigRational> p_pow(static_cast<std::size_t>(slots) + 1),
        q_pow(static_cast<std::size_t>(slots) + 1);
    p_pow[0] = 1;
    q_pow[0] = 1;
    for (int e = 1; e <= slots; ++e) {
        p_pow[static_cast<std::size_t>(e)] = p_pow[static_cast<std::size_t>(e) - 1] * p;
        q_pow[static_cast<std::size_t>(e)] =
            q_pow[static_cast<std::size_t>(e) - 1] * (BigRational(1) - p);
    }

    ExhaustiveMoments result;
    result.n = n;
    result.mean.assign(static_cast<std::size_t>(n), 0);
    result.var.assign(static_cast<std::size_t>(n), 0);
    std::vector<BigRational> second_moment(static_cast<std::size_t>(n), 0);

    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
        GraphSnapshot g;
        g.n = n;
        for (int e = 0; e < slots; ++e)
            if (mask >> e & 1)
                g.edges.push_back(pairs[static_cast<std::size_t>(e)]);
        const int on = std::popcount(mask);
        const BigRational weight =
            p_pow[static_cast<std::size_t>(on)] * q_pow[static_cast<std::size_t>(slots - on)];
        const CliqueTally tally = clique_tally(g, n - 1);
        for (int dim = 0; dim < n; ++dim) {
            const BigRational count = tally.counts[static_cast<std::size_t>(dim)];
            result.mean[static_cast<std::size_t>(dim)] += weight * count;
            second_moment[static_cast<std::size_t>(dim)] += weight * count * count;
        }
    }
    for (int dim = 0; dim < n; ++dim)
        result.var[static_cast<std::size_t>(dim)] =
            second_moment[static_cast<std::size_t>(dim)] -
            result.mean[static_cast<std::size_t>(dim)] * result.mean[static_cast<std::size_t>(dim)];
    return result;
}

}  // namespace dynclique
