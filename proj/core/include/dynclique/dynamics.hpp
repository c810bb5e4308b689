#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dynclique/graph.hpp"
#include "dynclique/params.hpp"

namespace dynclique {

enum class EdgeState : int { Off = 0, On = 1 };

/**
 * Exact transition probability of the two-state edge chain over a time gap:
 * off->on at rate lambda*p, on->off at rate lambda*(1-p), so
 *
 *   P{on -> on}  = p + (1-p) e^{-lambda*gap},
 *   P{off -> off} = (1-p) + p e^{-lambda*gap},
 *
 * with stationary law (p on, 1-p off). Throws std::domain_error when
 * p is outside (0,1), lambda <= 0, or gap < 0.
 */
double edge_transition_prob(EdgeState from, EdgeState to, double gap, double p, double lambda);

/** The graph process sampled at a fixed grid of times. */
struct EdgeTrajectory {
    int n = 0;
    std::vector<double> times;
    std::vector<GraphSnapshot> states;  // one snapshot per grid time
};

/**
 * Event-level description of the same process: per edge, Poisson(lambda)
 * arrival times on (0, horizon] with an independent Bernoulli(p) state drawn
 * at time 0 and at every arrival. The edge holds the state of its most
 * recent draw.
 */
struct EventTrajectory {
    int n = 0;
    double horizon = 0.0;
    std::vector<bool> initial;  // per edge slot (lexicographic pair order)
    std::vector<std::vector<std::pair<double, bool>>> events;  // strictly increasing times

    std::size_t total_arrivals() const;

    /** Number of arrivals with time in (t0, t1], summed over edges. */
    std::size_t arrivals_in(double t0, double t1) const;
};

/**
 * Static snapshot: each of the pair_count(n) edges present independently
 * with probability p. Drawn from the same per-edge streams as
 * sample_trajectory_bridge, so a one-point grid reproduces it exactly.
 */
GraphSnapshot sample_initial(const SimParams& params, std::uint64_t replication);

/**
 * Grid sampler: initial snapshot from the stationary law, then each edge
 * advanced independently across grid gaps with edge_transition_prob. Exact
 * at the grid points; no discretization error.
 */
EdgeTrajectory sample_trajectory_bridge(const SimParams& params, std::uint64_t replication);

/** Event sampler; horizon must cover the params' largest grid time. */
EventTrajectory sample_trajectory_clock(const SimParams& params, double horizon,
                                        std::uint64_t replication);

/** State at time t: last draw at or before t per edge. Throws std::out_of_range. */
GraphSnapshot snapshot_at(const EventTrajectory& traj, double t);

}  // namespace dynclique
