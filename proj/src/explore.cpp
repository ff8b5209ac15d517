#include "percaniso/explore.hpp"

#include <cmath>
#include <deque>
#include <unordered_set>

#include "percaniso/parallel.hpp"

namespace percaniso {

ClusterResult explore_cluster(const Params& params, Seed seed, const BoxLimits& limits,
                              const EdgeQueryObserver* observer)
{
    validate_params(params);
    if (limits.max_vertices < 1 || limits.radius < 1)
        throw Error("explore_cluster: limits must be strictly positive");

    const int d = params.d;
    const EdgeOracle oracle(seed, params);

    ClusterResult res;
    std::unordered_set<Vertex, VertexHash> visited;
    std::deque<const Vertex*> frontier;  // element addresses are stable under rehash

    const Vertex origin(static_cast<std::size_t>(d), 0);
    frontier.push_back(&*visited.insert(origin).first);
    res.size = 1;
    if (res.size >= limits.max_vertices) {
        res.survived = true;
        return res;
    }

    Vertex scratch;
    while (!frontier.empty()) {
        const Vertex& v = *frontier.front();
        frontier.pop_front();
        if (sup_norm(v) >= limits.radius) {
            res.survived = true;
            return res;
        }
        scratch = v;
        bool stop = false;
        for (int axis = 1; axis <= d && !stop; ++axis) {
            auto& coord = scratch[static_cast<std::size_t>(axis - 1)];
            const std::int64_t saved = coord;
            for (int sign : {+1, -1}) {
                coord = saved + sign;
                if (visited.contains(scratch)) {
                    coord = saved;
                    continue;
                }
                // Query the edge <v, v + sign*e_axis>. The neighbour is
                // unvisited, so this canonical EdgeId has not been queried
                // before and never will be again (once open, the neighbour
                // becomes visited; once closed, v stays the only endpoint
                // that could reach it and v is done after this pass).
                ++res.edges_examined;
                if (observer) (*observer)(v, Direction{axis, sign});
                if (oracle.open_at(v, Direction{axis, sign})) {
                    frontier.push_back(&*visited.insert(scratch).first);
                    ++res.size;
                    if (res.size >= limits.max_vertices) {
                        res.survived = true;
                        stop = true;
                        break;
                    }
                }
                coord = saved;
            }
        }
        if (stop) return res;
    }
    res.frontier_exhausted = true;
    return res;
}

double exact_singleton_probability(const Params& params)
{
    validate_params(params);
    double prod = 1.0;
    for (double pi : params.p) prod *= (1.0 - pi) * (1.0 - pi);
    return prod;
}

ThetaEstimate estimate_theta(const Params& params, std::int64_t trials, const BoxLimits& limits,
                             std::uint64_t seed_master, int workers)
{
    validate_params(params);
    if (trials < 1) throw Error("estimate_theta: trials must be >= 1");

    const int w = effective_workers(workers);
    std::vector<std::int64_t> survived(static_cast<std::size_t>(w), 0);
    for_each_trial(trials, w, [&](int worker, std::int64_t t) {
        const ClusterResult r =
            explore_cluster(params, Seed{seed_master, static_cast<std::uint64_t>(t)}, limits);
        if (r.survived) ++survived[static_cast<std::size_t>(worker)];
    });
    std::int64_t total = 0;
    for (std::int64_t s : survived) total += s;

    ThetaEstimate est;
    est.trials = trials;
    est.limits = limits;
    est.point_estimate = static_cast<double>(total) / static_cast<double>(trials);
    est.std_error =
        std::sqrt(est.point_estimate * (1.0 - est.point_estimate) / static_cast<double>(trials));
    return est;
}

SizePmf cluster_size_pmf(const Params& params, std::int64_t trials, std::int64_t cutoff,
                         std::uint64_t seed_master, int workers)
{
    validate_params(params);
    if (cutoff < 1) throw Error("cluster_size_pmf: cutoff must be >= 1");
    if (trials < 1) throw Error("cluster_size_pmf: trials must be >= 1");

    // max_vertices = cutoff+1 folds everything past the cutoff into the
    // overflow bucket; a path needs radius+1 vertices to escape, so the
    // radius below can never bind.
    const BoxLimits limits{cutoff + 1, cutoff + 2};
    const int w = effective_workers(workers);
    const std::size_t bins = static_cast<std::size_t>(cutoff) + 1;
    std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(w),
                                                   std::vector<std::uint64_t>(bins, 0));
    for_each_trial(trials, w, [&](int worker, std::int64_t t) {
        const ClusterResult r =
            explore_cluster(params, Seed{seed_master, static_cast<std::uint64_t>(t)}, limits);
        const std::size_t bin =
            r.size > cutoff ? bins - 1 : static_cast<std::size_t>(r.size - 1);
        ++counts[static_cast<std::size_t>(worker)][bin];
    });

    SizePmf pmf;
    pmf.cutoff = cutoff;
    pmf.trials = trials;
    pmf.counts.assign(bins, 0);
    for (const auto& c : counts)
        for (std::size_t i = 0; i < bins; ++i) pmf.counts[i] += c[i];
    pmf.mass.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        pmf.mass[i] = static_cast<double>(pmf.counts[i]) / static_cast<double>(trials);
    return pmf;
}

namespace {

// Dense left-right crossing check on [0,L]^2 for one configuration.
bool has_crossing(const EdgeOracle& oracle, std::int64_t L)
{
    const std::size_t side = static_cast<std::size_t>(L) + 1;
    std::vector<std::uint8_t> visited(side * side, 0);
    std::vector<std::pair<std::int64_t, std::int64_t>> stack;
    stack.reserve(side);
    for (std::int64_t y = 0; y <= L; ++y) {
        visited[static_cast<std::size_t>(y)] = 1;  // column x = 0
        stack.emplace_back(0, y);
    }
    Vertex v(2);
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        if (x == L) return true;
        v[0] = x;
        v[1] = y;
        const auto try_step = [&](std::int64_t nx, std::int64_t ny, Direction dir) {
            if (nx < 0 || nx > L || ny < 0 || ny > L) return;
            auto& seen = visited[static_cast<std::size_t>(nx) * side + static_cast<std::size_t>(ny)];
            if (seen) return;
            if (oracle.open_at(v, dir)) {
                seen = 1;
                stack.emplace_back(nx, ny);
            }
        };
        try_step(x + 1, y, Direction{1, +1});
        try_step(x - 1, y, Direction{1, -1});
        try_step(x, y + 1, Direction{2, +1});
        try_step(x, y - 1, Direction{2, -1});
    }
    return false;
}

}  // namespace

double crossing_probability(const Params& params, std::int64_t L, std::int64_t trials,
                            std::uint64_t seed_master, int workers)
{
    validate_params(params);
    if (params.d != 2) throw Error("crossing_probability: requires d == 2");
    if (L < 2) throw Error("crossing_probability: L must be >= 2");
    if (trials < 1) throw Error("crossing_probability: trials must be >= 1");

    const int w = effective_workers(workers);
    std::vector<std::int64_t> crossed(static_cast<std::size_t>(w), 0);
    for_each_trial(trials, w, [&](int worker, std::int64_t t) {
        const EdgeOracle oracle(Seed{seed_master, static_cast<std::uint64_t>(t)}, params);
        if (has_crossing(oracle, L)) ++crossed[static_cast<std::size_t>(worker)];
    });
    std::int64_t total = 0;
    for (std::int64_t c : crossed) total += c;
    return static_cast<double>(total) / static_cast<double>(trials);
}

double estimate_pc_bisection(int d, std::int64_t L, std::int64_t trials_per_point,
                             double tolerance, std::uint64_t seed_master, int workers)
{
    if (d < 2) throw Error("estimate_pc_bisection: requires d >= 2");
    if (!(tolerance > 0.0)) throw Error("estimate_pc_bisection: tolerance must be positive");

    // The shared master seed makes survived(p) monotone per trial, so the
    // survived-frequency is a genuinely monotone function of p here.
    const BoxLimits limits{std::int64_t{1} << 40, L};
    double lo = 0.0;
    double hi = 0.999;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        Params params;
        params.d = d;
        params.p.assign(static_cast<std::size_t>(d), mid);
        const ThetaEstimate est =
            estimate_theta(params, trials_per_point, limits, seed_master, workers);
        if (est.point_estimate >= 0.5)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace percaniso
