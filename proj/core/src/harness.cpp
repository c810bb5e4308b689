#include "dynclique/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dynclique/dynamics.hpp"
#include "dynclique/formulas.hpp"
#include "dynclique/rng.hpp"

namespace dynclique {

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body)
{
    unsigned worker_count = threads > 0 ? static_cast<unsigned>(threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (worker_count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed.store(true);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

SnapshotRecord analyze_snapshot(const GraphSnapshot& g, int max_dim_hint, bool compute_homology,
                                const BettiOptions& betti_opts)
{
    SnapshotRecord rec;
    const CliqueComplex cx = enumerate_cliques_complete(g, max_dim_hint);
    rec.tally = cx.tally().counts;
    rec.euler = cx.tally().euler_characteristic();
    if (compute_homology) {
        const BettiVector bv = betti_numbers(cx, betti_opts);
        rec.betti = bv.betti;
        if (bv.unreduced_alternating_sum() != rec.euler)
            throw std::logic_error("alternating Betti sum disagrees with the Euler characteristic");
    }
    return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.params.validate();
    if (config.k < 1)
        throw std::invalid_argument("tracked dimension k must be >= 1");

    ExperimentResult result;
    result.params = config.params;
    result.k = config.k;
    result.records.resize(config.params.replications);

    BettiOptions betti_opts;
    betti_opts.prime_seed = derive_seed(config.params.seed, {stream_tag::prime});
    const int max_dim_hint = 2 * config.k + 2;

    parallel_for(config.params.replications, config.threads, [&](std::size_t rep) {
        const EdgeTrajectory traj = sample_trajectory_bridge(config.params, rep);
        auto& per_time = result.records[rep];
        per_time.reserve(traj.states.size());
        for (const GraphSnapshot& g : traj.states)
            per_time.push_back(
                analyze_snapshot(g, max_dim_hint, config.compute_homology, betti_opts));
    });
    return result;
}

NormalizedSeries normalize(const ExperimentResult& result, Target target,
                           Normalization normalization)
{
    NormalizedSeries series;
    series.target = target;
    series.times = result.params.times;
    series.values.resize(result.records.size());

    auto raw_value = [&](const SnapshotRecord& rec) -> double {
        switch (target) {
            case Target::CliqueCount: {
                const auto k = static_cast<std::size_t>(result.k);
                return k < rec.tally.size() ? static_cast<double>(rec.tally[k]) : 0.0;
            }
            case Target::Euler:
                return static_cast<double>(rec.euler);
            case Target::Betti: {
                const auto k = static_cast<std::size_t>(result.k);
                return k < rec.betti.size() ? static_cast<double>(rec.betti[k]) : 0.0;
            }
        }
        return 0.0;
    };

    if (normalization == Normalization::Analytic) {
        if (target != Target::CliqueCount)
            throw std::invalid_argument(
                "closed-form moments exist only for clique counts; use empirical normalization");
        series.center = mean_clique_count(result.params.n, result.params.p(), result.k);
        series.scale = std::sqrt(var_clique_count(result.params.n, result.params.p(), result.k));
    } else {
        RunningMoments pooled;
        for (const auto& rep : result.records)
            for (const auto& rec : rep)
                pooled.add(raw_value(rec));
        series.center = pooled.mean();
        series.scale = std::sqrt(pooled.variance());
    }
    if (!(series.scale > 0.0))
        throw std::domain_error("normalization scale is zero; the series is degenerate");

    for (std::size_t r = 0; r < result.records.size(); ++r) {
        series.values[r].reserve(result.records[r].size());
        for (const auto& rec : result.records[r])
            series.values[r].push_back((raw_value(rec) - series.center) / series.scale);
    }
    return series;
}

MomentEstimate empirical_covariance(const NormalizedSeries& series, std::size_t t1_index,
                                    std::size_t t2_index)
{
    if (t1_index >= series.times.size() || t2_index >= series.times.size())
        throw std::out_of_range("grid index outside the sample-time grid");

    RunningMoments first, second;
    for (const auto& rep : series.values) {
        first.add(rep[t1_index]);
        second.add(rep[t2_index]);
    }
    const double m1 = first.mean();
    const double m2 = second.mean();

    RunningMoments products;
    for (const auto& rep : series.values)
        products.add((rep[t1_index] - m1) * (rep[t2_index] - m2));
    return products.estimate();
}

MomentEstimate mean_squared_increment(const NormalizedSeries& series, std::size_t t1_index,
                                      std::size_t t2_index)
{
    if (t1_index >= series.times.size() || t2_index >= series.times.size())
        throw std::out_of_range("grid index outside the sample-time grid");
    RunningMoments acc;
    for (const auto& rep : series.values) {
        const double d = rep[t2_index] - rep[t1_index];
        acc.add(d * d);
    }
    return acc.estimate();
}

double kolmogorov_critical(double level)
{
    if (!(level > 0.0) || !(level < 1.0))
        throw std::domain_error("significance level must lie in (0, 1)");
    auto survival = [](double x) {
        double sum = 0.0;
        for (int k = 1; k <= 200; ++k) {
            const double term = 2.0 * std::exp(-2.0 * k * k * x * x);
            sum += (k % 2 == 1) ? term : -term;
            if (term < 1e-16)
                break;
        }
        return std::clamp(sum, 0.0, 1.0);
    };
    double lo = 0.2, hi = 4.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (survival(mid) > level)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

KsResult marginal_normality_test(const NormalizedSeries& series, std::size_t t_index, double level)
{
    if (t_index >= series.times.size())
        throw std::out_of_range("grid index outside the sample-time grid");
    std::vector<double> sample;
    sample.reserve(series.values.size());
    for (const auto& rep : series.values)
        sample.push_back(rep[t_index]);
    if (sample.size() < 500)
        throw std::invalid_argument("normality test needs at least 500 replications");
    std::sort(sample.begin(), sample.end());

    auto normal_cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    const double count = static_cast<double>(sample.size());
    double statistic = 0.0;
    for (std::size_t idx = 0; idx < sample.size(); ++idx) {
        const double cdf = normal_cdf(sample[idx]);
        const double upper = static_cast<double>(idx + 1) / count - cdf;
        const double lower = cdf - static_cast<double>(idx) / count;
        statistic = std::max({statistic, upper, lower});
    }

    KsResult ks;
    ks.statistic = statistic;
    ks.level = level;
    ks.count = sample.size();
    ks.critical_value = kolmogorov_critical(level) / std::sqrt(count);
    ks.pass = statistic < ks.critical_value;
    return ks;
}

DominanceReport homology_dominance(const ExperimentResult& result, int k)
{
    DominanceReport report;
    std::size_t concentrated = 0, concentrated_strict = 0;
    for (const auto& rep : result.records) {
        for (const auto& rec : rep) {
            ++report.samples;
            if (rec.betti.empty())
                throw std::invalid_argument("dominance requires homology records");
            const auto kk = static_cast<std::size_t>(k);
            bool only_k = kk < rec.betti.size() && rec.betti[kk] != 0;
            for (std::size_t j = 1; only_k && j < rec.betti.size(); ++j)
                if (j != kk && rec.betti[j] != 0)
                    only_k = false;
            if (only_k) {
                ++concentrated;
                if (rec.betti[0] == 0)
                    ++concentrated_strict;
            }
        }
    }
    if (report.samples > 0) {
        report.fraction = static_cast<double>(concentrated) / static_cast<double>(report.samples);
        report.fraction_strict =
            static_cast<double>(concentrated_strict) / static_cast<double>(report.samples);
    }
    return report;
}

namespace {

/** beta_1 of the clique complex of the 4-vertex graph encoded by `mask`. */
bool first_betti_is_one(std::uint64_t mask)
{
    static const std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 2}, {0, 3},
                                                           {1, 2}, {1, 3}, {2, 3}};
    GraphSnapshot g;
    g.n = 4;
    for (int e = 0; e < 6; ++e)
        if (mask >> e & 1)
            g.edges.push_back(pairs[static_cast<std::size_t>(e)]);
    const BettiVector bv = betti_numbers(enumerate_cliques_complete(g, 3));
    return bv.reduced(1) == 1;
}

}  // namespace

NonMarkovReport non_markov_demo(double p, double lambda, double t, std::size_t replications,
                                std::uint64_t seed)
{
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("edge probability must lie in (0, 1)");
    if (!(lambda > 0.0) || !(t >= 0.0))
        throw std::domain_error("require lambda > 0 and t >= 0");

    NonMarkovReport report;
    const double decay = std::exp(-lambda * t);
    report.closed_all_off = 3.0 * std::pow(p, 4) * std::pow(1.0 - decay, 4) *
                            std::pow((1.0 - p) + p * decay, 2);
    report.closed_all_on = 3.0 * std::pow(p + (1.0 - p) * decay, 4) * std::pow(1.0 - p, 2) *
                           std::pow(1.0 - decay, 2);

    // Exact route: every edge flips independently, so sum the 64 outcomes.
    const double on_from_off =
        edge_transition_prob(EdgeState::Off, EdgeState::On, t, p, lambda);
    const double on_from_on = edge_transition_prob(EdgeState::On, EdgeState::On, t, p, lambda);
    std::array<bool, 64> betti_one{};
    for (std::uint64_t mask = 0; mask < 64; ++mask)
        betti_one[mask] = first_betti_is_one(mask);
    auto exact_probability = [&betti_one](double on_prob) {
        double total = 0.0;
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            if (!betti_one[mask])
                continue;
            const int on = std::popcount(mask);
            total += std::pow(on_prob, on) * std::pow(1.0 - on_prob, 6 - on);
        }
        return total;
    };
    report.exact_all_off = exact_probability(on_from_off);
    report.exact_all_on = exact_probability(on_from_on);

    // Monte-Carlo conditional frequencies; conditioning states are the
    // deterministic all-off / all-on configurations.
    RunningMoments mc_off, mc_on;
    for (std::size_t rep = 0; rep < replications; ++rep) {
        SplitMix64 rng = substream(seed, {stream_tag::demo, rep});
        std::uint64_t mask_off = 0, mask_on = 0;
        for (int e = 0; e < 6; ++e) {
            if (rng.bernoulli(on_from_off))
                mask_off |= std::uint64_t{1} << e;
            if (rng.bernoulli(on_from_on))
                mask_on |= std::uint64_t{1} << e;
        }
        mc_off.add(betti_one[mask_off] ? 1.0 : 0.0);
        mc_on.add(betti_one[mask_on] ? 1.0 : 0.0);
    }
    report.mc_all_off = mc_off.estimate();
    report.mc_all_on = mc_on.estimate();
    report.gap = std::abs(report.closed_all_off - report.closed_all_on);
    return report;
}

IncrementStats trajectory_statistics(const NormalizedSeries& series)
{
    IncrementStats stats;
    const std::size_t steps = series.times.size();
    for (std::size_t i = 0; i + 1 < steps; ++i) {
        stats.gaps.push_back(series.times[i + 1] - series.times[i]);
        stats.squared_increment.push_back(mean_squared_increment(series, i, i + 1));
    }
    for (std::size_t i = 1; i + 1 < steps; ++i) {
        const double back = series.times[i] - series.times[i - 1];
        const double forward = series.times[i + 1] - series.times[i];
        if (std::abs(back - forward) > 1e-12 * std::max(1.0, std::abs(back)))
            continue;
        RunningMoments acc;
        for (const auto& rep : series.values) {
            const double d_forward = rep[i + 1] - rep[i];
            const double d_back = rep[i] - rep[i - 1];
            acc.add(d_forward * d_forward * d_back * d_back);
        }
        stats.triple_gaps.push_back(back);
        stats.cross_fourth.push_back(acc.estimate());
    }
    return stats;
}

}  // namespace dynclique
