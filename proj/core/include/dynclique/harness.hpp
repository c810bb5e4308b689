#pragma once

#include <cstdint>
#include <vector>

#include "dynclique/accumulators.hpp"
#include "dynclique/homology.hpp"
#include "dynclique/params.hpp"

namespace dynclique {

/** What a replicated experiment records per snapshot. */
struct SnapshotRecord {
    std::vector<std::int64_t> tally;  // full clique counts by dimension
    std::vector<std::int64_t> betti;  // reduced Betti numbers (empty if homology off)
    std::int64_t euler = 0;           // alternating tally sum
};

struct ExperimentConfig {
    SimParams params;
    int k = 1;  // tracked clique/homology dimension
    bool compute_homology = true;
    int threads = 1;  // 0 = hardware concurrency
};

/**
 * Replicated trajectories with per-snapshot topology. Replications are
 * independent; records[r][t] covers replication r at grid time t. When
 * homology is on, every snapshot's Euler characteristic is checked against
 * its unreduced alternating Betti sum; a mismatch throws (and no partial
 * result is returned).
 */
struct ExperimentResult {
    SimParams params;
    int k = 1;
    std::vector<std::vector<SnapshotRecord>> records;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

enum class Target { CliqueCount, Euler, Betti };
enum class Normalization { Analytic, Empirical };

/**
 * Values recentred and rescaled to mean 0, variance 1. Analytic
 * normalization uses the closed-form clique-count moments (Target::CliqueCount
 * only); empirical normalization pools every (replication, time) sample,
 * which stationarity makes a consistent choice for any target.
 */
struct NormalizedSeries {
    Target target = Target::CliqueCount;
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // [replication][time]
    double center = 0.0;
    double scale = 1.0;
    // Spacing of the value lattice in normalized units (1/scale for the
    // integer-valued targets here); 0 marks a continuous sample.
    double lattice_spacing = 0.0;
};

NormalizedSeries normalize(const ExperimentResult& result, Target target,
                           Normalization normalization);

/** Cross-replication covariance of the normalized values at two grid times. */
MomentEstimate empirical_covariance(const NormalizedSeries& series, std::size_t t1_index,
                                    std::size_t t2_index);

/** Mean squared increment across a pair of grid times. */
MomentEstimate mean_squared_increment(const NormalizedSeries& series, std::size_t t1_index,
                                      std::size_t t2_index);

/**
 * Two-sided Kolmogorov-Smirnov test against the standard normal law. For a
 * lattice-valued series the empirical CDF is compared at cell midpoints
 * (continuity correction); otherwise sup|F_emp - Phi| is used directly.
 * Without the correction an integer sample can never approach a continuous
 * law closer than half its largest cell mass, which at moderate n swamps
 * the distributional deviation the test is after.
 */
struct KsResult {
    double statistic = 0.0;
    double critical_value = 0.0;
    double level = 0.01;
    std::size_t count = 0;
    bool pass = false;
};
KsResult marginal_normality_test(const NormalizedSeries& series, std::size_t t_index,
                                 double level = 0.01);

/** Upper quantile of the Kolmogorov distribution (asymptotic critical value). */
double kolmogorov_critical(double level);

/**
 * Fraction of snapshots whose positive-dimensional homology is concentrated
 * in dimension k: betti[k] != 0 and betti[j] == 0 for every j >= 1, j != k.
 * The strict variant additionally requires betti[0] == 0 (a connected
 * 1-skeleton), which at moderate n fails for the uninteresting reason that
 * sparse graphs have stray components.
 */
struct DominanceReport {
    double fraction = 0.0;
    double fraction_strict = 0.0;
    std::size_t samples = 0;
};
DominanceReport homology_dominance(const ExperimentResult& result, int k);

/**
 * The two conditional probabilities of seeing first homology at n = 4 a gap
 * t after an all-off (resp. all-on) edge configuration:
 *
 *   all off: 3 p^4 (1 - e^{-lambda t})^4 ((1-p) + p e^{-lambda t})^2
 *   all on:  3 (p + (1-p) e^{-lambda t})^4 (1-p)^2 (1 - e^{-lambda t})^2
 *
 * Their gap being nonzero shows the Betti process remembers more than its
 * current value. Each closed form is recomputed exactly by enumerating all
 * 64 edge configurations with per-edge transition probabilities, and checked
 * against Monte-Carlo conditional frequencies.
 */
struct NonMarkovReport {
    double closed_all_off = 0.0;
    double closed_all_on = 0.0;
    double exact_all_off = 0.0;  // 64-configuration enumeration
    double exact_all_on = 0.0;
    MomentEstimate mc_all_off;
    MomentEstimate mc_all_on;
    double gap = 0.0;  // |closed_all_off - closed_all_on|
};
NonMarkovReport non_markov_demo(double p, double lambda, double t, std::size_t replications,
                                std::uint64_t seed);

/** Squared increments per grid step, and fourth-moment cross products per
 *  equal-gap triple of grid times. */
struct IncrementStats {
    std::vector<double> gaps;                       // t_{i+1} - t_i
    std::vector<MomentEstimate> squared_increment;  // E[(x(t_{i+1}) - x(t_i))^2]
    std::vector<double> triple_gaps;                // h for equal-gap triples
    std::vector<MomentEstimate> cross_fourth;       // E[(x(t+h)-x(t))^2 (x(t)-x(t-h))^2]
};
IncrementStats trajectory_statistics(const NormalizedSeries& series);

}  // namespace dynclique
