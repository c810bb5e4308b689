#include "dynclique/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynclique/rng.hpp"

namespace dynclique {

double edge_transition_prob(EdgeState from, EdgeState to, double gap, double p, double lambda)
{
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("edge probability must lie in (0, 1)");
    if (!(lambda > 0.0))
        throw std::domain_error("rate lambda must be positive");
    if (!(gap >= 0.0))
        throw std::domain_error("time gap must be non-negative");

    const double decay = std::exp(-lambda * gap);
    if (from == EdgeState::On) {
        const double on_on = p + (1.0 - p) * decay;
        return to == EdgeState::On ? on_on : 1.0 - on_on;
    }
    const double off_off = (1.0 - p) + p * decay;
    return to == EdgeState::Off ? off_off : 1.0 - off_off;
}

std::size_t EventTrajectory::total_arrivals() const
{
    std::size_t total = 0;
    for (const auto& per_edge : events)
        total += per_edge.size();
    return total;
}

std::size_t EventTrajectory::arrivals_in(double t0, double t1) const
{
    std::size_t total = 0;
    for (const auto& per_edge : events) {
        for (const auto& [time, state] : per_edge) {
            if (time > t0 && time <= t1)
                ++total;
        }
    }
    return total;
}

namespace {

std::vector<std::pair<int, int>> all_pairs(int n)
{
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(pair_count(n)));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    return pairs;
}

}  // namespace

GraphSnapshot sample_initial(const SimParams& params, std::uint64_t replication)
{
    params.validate();
    const double p = params.p();

    GraphSnapshot g;
    g.n = params.n;
    std::uint64_t slot = 0;
    for (int u = 0; u < params.n; ++u) {
        for (int v = u + 1; v < params.n; ++v, ++slot) {
            SplitMix64 rng = substream(params.seed, {stream_tag::bridge, replication, slot});
            if (rng.bernoulli(p))
                g.edges.emplace_back(u, v);
        }
    }
    return g;
}

EdgeTrajectory sample_trajectory_bridge(const SimParams& params, std::uint64_t replication)
{
    params.validate();
    const double p = params.p();
    const std::size_t steps = params.times.size();

    EdgeTrajectory traj;
    traj.n = params.n;
    traj.times = params.times;
    traj.states.resize(steps);
    for (auto& snap : traj.states)
        snap.n = params.n;

    // Precompute the two on-probabilities per grid gap.
    std::vector<double> on_if_on(steps, 1.0), on_if_off(steps, 0.0);
    for (std::size_t s = 1; s < steps; ++s) {
        const double gap = params.times[s] - params.times[s - 1];
        on_if_on[s] = edge_transition_prob(EdgeState::On, EdgeState::On, gap, p, params.lambda);
        on_if_off[s] = edge_transition_prob(EdgeState::Off, EdgeState::On, gap, p, params.lambda);
    }

    const auto pairs = all_pairs(params.n);
    for (std::uint64_t slot = 0; slot < pairs.size(); ++slot) {
        SplitMix64 rng = substream(params.seed, {stream_tag::bridge, replication, slot});
        bool on = rng.bernoulli(p);
        if (on)
            traj.states[0].edges.push_back(pairs[slot]);
        for (std::size_t s = 1; s < steps; ++s) {
            on = rng.bernoulli(on ? on_if_on[s] : on_if_off[s]);
            if (on)
                traj.states[s].edges.push_back(pairs[slot]);
        }
    }
    // Edges were appended in lexicographic pair order, so each snapshot is
    // already canonical.
    return traj;
}

EventTrajectory sample_trajectory_clock(const SimParams& params, double horizon,
                                        std::uint64_t replication)
{
    params.validate();
    if (!(horizon >= params.times.back()))
        throw std::invalid_argument("horizon must cover the sample-time grid");
    const double p = params.p();
    const std::size_t slots = static_cast<std::size_t>(pair_count(params.n));

    EventTrajectory traj;
    traj.n = params.n;
    traj.horizon = horizon;
    traj.initial.resize(slots);
    traj.events.resize(slots);

    for (std::uint64_t slot = 0; slot < slots; ++slot) {
        SplitMix64 rng = substream(params.seed, {stream_tag::clock, replication, slot});
        traj.initial[slot] = rng.bernoulli(p);
        double t = 0.0;
        while (true) {
            t += rng.exponential(params.lambda);
            if (t > horizon)
                break;
            traj.events[slot].emplace_back(t, rng.bernoulli(p));
        }
    }
    return traj;
}

GraphSnapshot snapshot_at(const EventTrajectory& traj, double t)
{
    if (!(t >= 0.0) || t > traj.horizon)
        throw std::out_of_range("snapshot time outside [0, horizon]");

    GraphSnapshot g;
    g.n = traj.n;
    std::size_t slot = 0;
    for (int u = 0; u < traj.n; ++u) {
        for (int v = u + 1; v < traj.n; ++v, ++slot) {
            const auto& per_edge = traj.events[slot];
            bool on = traj.initial[slot];
            // Last arrival at or before t, if any.
            auto it = std::upper_bound(per_edge.begin(), per_edge.end(), t,
                                       [](double value, const auto& ev) { return value < ev.first; });
            if (it != per_edge.begin())
                on = std::prev(it)->second;
            if (on)
                g.edges.emplace_back(u, v);
        }
    }
    return g;
}

}  // namespace dynclique
