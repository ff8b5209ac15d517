#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "percaniso/lattice.hpp"
#include "percaniso/randomness.hpp"

namespace percaniso {

struct VertexHash {
    std::size_t operator()(const Vertex& v) const
    {
        std::uint64_t h = 0x2545f4914f6cdd1dULL;
        for (std::int64_t c : v) h = mix64(h ^ static_cast<std::uint64_t>(c));
        return static_cast<std::size_t>(h);
    }
};

// Outcome of one truncated exploration of the origin's open cluster.
// `survived` is the finite-volume proxy for an infinite cluster: the
// exploration hit max_vertices or escaped the sup-norm radius.
struct ClusterResult {
    std::int64_t size = 1;
    bool survived = false;
    bool frontier_exhausted = false;
    std::int64_t edges_examined = 0;
};

struct ThetaEstimate {
    double point_estimate = 0.0;
    std::int64_t trials = 0;
    double std_error = 0.0;
    BoxLimits limits;
};

// Empirical law of min(cluster size, cutoff + overflow).
struct SizePmf {
    std::int64_t cutoff = 0;
    std::vector<std::uint64_t> counts;  // counts[k-1] = #{size == k}, back() = overflow
    std::vector<double> mass;           // counts / trials
    std::int64_t trials = 0;
};

// Test instrumentation: called once per Bernoulli edge query.
using EdgeQueryObserver = std::function<void(const Vertex&, Direction)>;

// BFS from the origin. Each incident edge is queried at most once per
// canonical EdgeId: an edge is only examined from the endpoint dequeued
// first, while the other endpoint is still unvisited. Stops when the
// frontier empties, size reaches limits.max_vertices, or a vertex with
// sup-norm >= limits.radius is dequeued (survived in the latter two cases).
ClusterResult explore_cluster(const Params& params, Seed seed, const BoxLimits& limits,
                              const EdgeQueryObserver* observer = nullptr);

// P(|C_0| = 1) = prod_i (1 - p_i)^2; exact oracle for the singleton mass.
double exact_singleton_probability(const Params& params);

// Survived-fraction over trials with seeds (master, 0..trials-1).
// Deterministic given (master, trials, limits); workers only split the
// trial range, merged counts are order-independent.
ThetaEstimate estimate_theta(const Params& params, std::int64_t trials, const BoxLimits& limits,
                             std::uint64_t seed_master, int workers = 0);

SizePmf cluster_size_pmf(const Params& params, std::int64_t trials, std::int64_t cutoff,
                         std::uint64_t seed_master, int workers = 0);

// Fraction of trials with an open left-right crossing of [0,L]x[0,L].
// Requires params.d == 2.
double crossing_probability(const Params& params, std::int64_t L, std::int64_t trials,
                            std::uint64_t seed_master, int workers = 0);

// Bisects homogeneous p on the survived-frequency observable (radius-L
// truncation) crossing level 1/2; the same master seed is reused at every
// probed p, so the observable is monotone trial-by-trial.
double estimate_pc_bisection(int d, std::int64_t L, std::int64_t trials_per_point,
                             double tolerance, std::uint64_t seed_master, int workers = 0);

}  // namespace percaniso
