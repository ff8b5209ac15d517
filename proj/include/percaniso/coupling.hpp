#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "percaniso/explore.hpp"
#include "percaniso/lattice.hpp"
#include "percaniso/partition.hpp"
#include "percaniso/randomness.hpp"

namespace percaniso {

struct EdgeIdHash {
    std::size_t operator()(const EdgeId& e) const
    {
        std::uint64_t h = mix64(0x6a09e667f3bcc909ULL ^ static_cast<std::uint64_t>(e.axis));
        for (std::int64_t c : e.base) h = mix64(h ^ static_cast<std::uint64_t>(c));
        return static_cast<std::size_t>(h);
    }
};

// One Bernoulli query against the ambient Z^{d+1} configuration.
struct CouplingQuery {
    EdgeId edge;  // canonical, in Z^{d+1}
    bool open = false;
};

// One step of the infection process: the explored Z^d edge, the one or two
// ambient queries it triggered, and the outcome.
struct CouplingStep {
    EdgeId zd_edge;  // canonical g_n, in Z^d
    Vertex from;     // infected endpoint v_n
    Vertex to;       // candidate v_n + u_n
    std::vector<CouplingQuery> queries;
    bool infected = false;
    Vertex image;  // x(v_n + u_n), set when infected
};

enum class Termination { frontier_empty, truncation };

// Full record of one run of the dimension-reduction infection process on
// Z^d driven by a percolation configuration on Z^{d+1}.
struct CouplingTrace {
    int d_low = 0;  // d; the ambient configuration lives in d+1 dimensions
    std::vector<Vertex> infected;  // insertion order; front() is the origin
    std::unordered_map<Vertex, Vertex, VertexHash> xmap;  // Z^d vertex -> Z^{d+1} vertex
    std::vector<CouplingStep> steps;
    Termination terminated_by = Termination::frontier_empty;

    std::int64_t step_count() const { return static_cast<std::int64_t>(steps.size()); }
    std::vector<CouplingQuery> queried() const;  // flattened, in query order
};

struct VerificationReport {
    bool injective = false;
    bool coords_match = false;
    bool image_open = false;
    bool no_requery = false;
    std::int64_t infected_count = 0;
    std::vector<std::string> violations;

    bool ok() const { return injective && coords_match && image_open && no_requery; }
};

// Merge rule for two directions sharing a seed-level "two chances":
// 1 - (1-p_a)(1-p_b); the q-transform makes this additive.
double merged_param(double p_a, double p_b);

// Collapse each partition block of directions into one, via the closed
// form p~_j = 1 - prod_{i in D_j} (1 - p_i).
Params reduce_params(const Params& params, const Partition& partition);

// Susceptible-infected exploration on Z^d whose infection decisions read
// edge states of the (params_high, seed) configuration on Z^{d+1}.
// Candidate edges are taken FIFO by infection time of the infected
// endpoint, ties by axis 1..d with + before -. Edges along +-e_d get two
// chances: the embedded +-e_d edge first, then +-e_{d+1} with matching
// sign. Truncation (limits) applies to the infected set.
CouplingTrace run_coupled_exploration(const Params& params_high, Seed seed,
                                      const BoxLimits& limits);

// Re-checks the proved trace invariants: injectivity of x, the coordinate
// identities x(w)_i = w_i (i < d) and x(w)_d + x(w)_{d+1} = w_d,
// reachability of every image vertex from the ambient origin through
// recorded-open edges, and that no ambient edge was queried twice.
VerificationReport verify_trace(const CouplingTrace& trace, const Params& params_high, Seed seed);

// Line-oriented replay dump: a header with params and seed, then one
// record per step (step index, explored Z^d edge, ambient queries with
// outcomes, infection result, xmap assignment).
std::string format_trace(const CouplingTrace& trace, const Params& params_high, Seed seed);

// Batch of coupled runs, one per trial seed (master, 0..trials-1).
SizePmf coupled_size_pmf(const Params& params_high, std::int64_t trials, std::int64_t cutoff,
                         std::uint64_t seed_master, int workers = 0);

}  // namespace percaniso
