#include "percaniso/coupling.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

#include "percaniso/parallel.hpp"

namespace percaniso {

namespace {

std::string vertex_str(const Vertex& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

}  // namespace

std::vector<CouplingQuery> CouplingTrace::queried() const
{
    std::vector<CouplingQuery> out;
    for (const auto& s : steps) out.insert(out.end(), s.queries.begin(), s.queries.end());
    return out;
}

double merged_param(double p_a, double p_b)
{
    if (!(p_a >= 0.0) || p_a >= 1.0 || !(p_b >= 0.0) || p_b >= 1.0)
        throw Error("merged_param: parameters must lie in [0, 1)");
    return 1.0 - (1.0 - p_a) * (1.0 - p_b);
}

Params reduce_params(const Params& params, const Partition& partition)
{
    validate_params(params);
    validate_partition(partition, params.d);
    Params out;
    out.d = partition.m();
    out.p.reserve(partition.blocks.size());
    for (const auto& block : partition.blocks) {
        double closed = 1.0;
        for (int i : block) closed *= 1.0 - params.p[static_cast<std::size_t>(i - 1)];
        out.p.push_back(1.0 - closed);
    }
    return out;
}

CouplingTrace run_coupled_exploration(const Params& params_high, Seed seed,
                                      const BoxLimits& limits)
{
    validate_params(params_high);
    if (params_high.d < 2) throw Error("run_coupled_exploration: requires d+1 >= 2 parameters");
    if (limits.max_vertices < 1 || limits.radius < 1)
        throw Error("run_coupled_exploration: limits must be strictly positive");

    const int d = params_high.d - 1;  // the infection process lives in Z^d
    const EdgeOracle oracle(seed, params_high);

    CouplingTrace trace;
    trace.d_low = d;

    const Vertex origin(static_cast<std::size_t>(d), 0);
    const Vertex origin_high(static_cast<std::size_t>(d) + 1, 0);
    trace.infected.push_back(origin);
    trace.xmap.emplace(origin, origin_high);
    if (static_cast<std::int64_t>(trace.infected.size()) >= limits.max_vertices) {
        trace.terminated_by = Termination::truncation;
        return trace;
    }

    // FIFO over infected vertices; scanning each vertex's 2d directions in
    // order realizes the fixed edge ordering. An edge whose other endpoint
    // is already infected is permanently unavailable, and any previously
    // explored edge incident to v has its other endpoint infected, so the
    // infected check below also subsumes the explored-edge check.
    std::deque<std::size_t> frontier;
    frontier.push_back(0);

    while (!frontier.empty()) {
        const Vertex v = trace.infected[frontier.front()];
        frontier.pop_front();
        if (sup_norm(v) >= limits.radius) {
            trace.terminated_by = Termination::truncation;
            return trace;
        }
        const Vertex x_v = trace.xmap.find(v)->second;

        for (int axis = 1; axis <= d; ++axis) {
            for (int sign : {+1, -1}) {
                Vertex w = v;
                w[static_cast<std::size_t>(axis - 1)] += sign;
                if (trace.xmap.contains(w)) continue;

                CouplingStep step;
                step.zd_edge = canonical_edge(v, Direction{axis, sign});
                step.from = v;
                step.to = w;

                const Direction embedded{axis, sign};
                const bool first_open = oracle.open_at(x_v, embedded);
                step.queries.push_back({canonical_edge(x_v, embedded), first_open});
                if (first_open) {
                    step.infected = true;
                    step.image = x_v;
                    step.image[static_cast<std::size_t>(axis - 1)] += sign;
                } else if (axis == d) {
                    // Second chance: the extra direction of Z^{d+1}, same sign.
                    const Direction extra{d + 1, sign};
                    const bool second_open = oracle.open_at(x_v, extra);
                    step.queries.push_back({canonical_edge(x_v, extra), second_open});
                    if (second_open) {
                        step.infected = true;
                        step.image = x_v;
                        step.image[static_cast<std::size_t>(d)] += sign;
                    }
                }

                const bool infected = step.infected;
                if (infected) {
                    trace.xmap.emplace(w, step.image);
                    trace.infected.push_back(std::move(w));
                    frontier.push_back(trace.infected.size() - 1);
                }
                trace.steps.push_back(std::move(step));
                if (infected
                    && static_cast<std::int64_t>(trace.infected.size()) >= limits.max_vertices) {
                    trace.terminated_by = Termination::truncation;
                    return trace;
                }
            }
        }
    }
    trace.terminated_by = Termination::frontier_empty;
    return trace;
}

VerificationReport verify_trace(const CouplingTrace& trace, const Params& params_high, Seed seed)
{
    VerificationReport rep;
    rep.infected_count = static_cast<std::int64_t>(trace.infected.size());
    const int d = trace.d_low;

    // (a) injectivity of x
    rep.injective = true;
    {
        std::unordered_map<Vertex, const Vertex*, VertexHash> images;
        for (const auto& [w, x] : trace.xmap) {
            auto [it, inserted] = images.emplace(x, &w);
            if (!inserted) {
                rep.injective = false;
                rep.violations.push_back("x not injective: " + vertex_str(w) + " and "
                                         + vertex_str(*it->second) + " both map to "
                                         + vertex_str(x));
            }
        }
    }

    // (b) coordinate identities, and domain(x) == infected
    rep.coords_match = true;
    for (const auto& w : trace.infected) {
        const auto it = trace.xmap.find(w);
        if (it == trace.xmap.end()) {
            rep.coords_match = false;
            rep.violations.push_back("infected vertex " + vertex_str(w) + " missing from xmap");
            continue;
        }
        const Vertex& x = it->second;
        bool ok = static_cast<int>(x.size()) == d + 1;
        for (int i = 0; ok && i < d - 1; ++i) ok = x[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(i)];
        if (ok)
            ok = x[static_cast<std::size_t>(d - 1)] + x[static_cast<std::size_t>(d)]
                 == w[static_cast<std::size_t>(d - 1)];
        if (!ok) {
            rep.coords_match = false;
            rep.violations.push_back("coordinate identity fails at " + vertex_str(w) + " -> "
                                     + vertex_str(x));
        }
    }
    if (trace.xmap.size() != trace.infected.size()) {
        rep.coords_match = false;
        rep.violations.push_back("domain of xmap differs from infected set");
    }

    // (d) no ambient edge queried twice
    rep.no_requery = true;
    const auto queries = trace.queried();
    {
        std::unordered_set<EdgeId, EdgeIdHash> seen;
        for (const auto& q : queries) {
            if (!seen.insert(q.edge).second) {
                rep.no_requery = false;
                rep.violations.push_back("ambient edge queried twice: base "
                                         + vertex_str(q.edge.base) + " axis "
                                         + std::to_string(q.edge.axis));
            }
        }
    }

    // (c) every image vertex reachable from the ambient origin through
    // recorded-open edges; recorded outcomes are also replayed against the
    // configuration, so a trace/seed mismatch surfaces here.
    rep.image_open = true;
    const EdgeOracle oracle(seed, params_high);
    std::unordered_map<Vertex, std::vector<Vertex>, VertexHash> adj;
    for (const auto& q : queries) {
        if (oracle.edge_open(q.edge) != q.open) {
            rep.image_open = false;
            rep.violations.push_back("recorded outcome disagrees with configuration at base "
                                     + vertex_str(q.edge.base) + " axis "
                                     + std::to_string(q.edge.axis));
        }
        if (!q.open) continue;
        Vertex other = q.edge.base;
        other[static_cast<std::size_t>(q.edge.axis - 1)] += 1;
        adj[q.edge.base].push_back(other);
        adj[other].push_back(q.edge.base);
    }
    std::unordered_set<Vertex, VertexHash> reached;
    {
        const Vertex origin_high(static_cast<std::size_t>(d) + 1, 0);
        std::deque<Vertex> bfs{origin_high};
        reached.insert(origin_high);
        while (!bfs.empty()) {
            const Vertex u = bfs.front();
            bfs.pop_front();
            const auto it = adj.find(u);
            if (it == adj.end()) continue;
            for (const auto& nb : it->second)
                if (reached.insert(nb).second) bfs.push_back(nb);
        }
    }
    for (const auto& [w, x] : trace.xmap) {
        if (!reached.contains(x)) {
            rep.image_open = false;
            rep.violations.push_back("image vertex " + vertex_str(x) + " (of " + vertex_str(w)
                                     + ") not connected to the origin via recorded-open edges");
        }
    }
    return rep;
}

std::string format_trace(const CouplingTrace& trace, const Params& params_high, Seed seed)
{
    std::ostringstream os;
    os << "# percaniso coupling trace v1\n# d_high=" << params_high.d << " p=";
    for (std::size_t i = 0; i < params_high.p.size(); ++i)
        os << (i ? "," : "") << params_high.p[i];
    os << " master=" << seed.master << " trial=" << seed.trial << "\n"
       << "# step | explored Z^d edge | ambient queries | result | x assignment\n";
    const auto edge_str = [](const EdgeId& e) {
        std::string s = "<" + vertex_str(e.base) + ",+e" + std::to_string(e.axis) + ">";
        return s;
    };
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        const CouplingStep& s = trace.steps[n];
        os << n << " | " << edge_str(s.zd_edge) << " | ";
        for (std::size_t q = 0; q < s.queries.size(); ++q)
            os << (q ? " " : "") << edge_str(s.queries[q].edge) << "="
               << (s.queries[q].open ? "open" : "closed");
        if (s.infected)
            os << " | infect " << vertex_str(s.to) << " | x" << vertex_str(s.to) << "="
               << vertex_str(s.image);
        else
            os << " | no-infect | -";
        os << "\n";
    }
    os << "# terminated_by="
       << (trace.terminated_by == Termination::frontier_empty ? "frontier_empty" : "truncation")
       << " infected=" << trace.infected.size() << "\n";
    return os.str();
}

SizePmf coupled_size_pmf(const Params& params_high, std::int64_t trials, std::int64_t cutoff,
                         std::uint64_t seed_master, int workers)
{
    validate_params(params_high);
    if (cutoff < 1) throw Error("coupled_size_pmf: cutoff must be >= 1");
    if (trials < 1) throw Error("coupled_size_pmf: trials must be >= 1");

    const BoxLimits limits{cutoff + 1, cutoff + 2};
    const int w = effective_workers(workers);
    const std::size_t bins = static_cast<std::size_t>(cutoff) + 1;
    std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(w),
                                                   std::vector<std::uint64_t>(bins, 0));
    for_each_trial(trials, w, [&](int worker, std::int64_t t) {
        const CouplingTrace trace = run_coupled_exploration(
            params_high, Seed{seed_master, static_cast<std::uint64_t>(t)}, limits);
        const std::int64_t size = static_cast<std::int64_t>(trace.infected.size());
        const std::size_t bin = size > cutoff ? bins - 1 : static_cast<std::size_t>(size - 1);
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

}  // namespace percaniso
