#pragma once

#include <cstdint>

#include "percaniso/lattice.hpp"

namespace percaniso {

// Indexes one Bernoulli configuration of the infinite lattice. Distinct
// (master, trial) pairs give statistically independent configurations.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t trial = 0;
};

// splitmix64 finalizer (Vigna); full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless per-edge randomness: the uniform attached to an edge is a pure
// hash of (master, trial, axis, canonical base coordinates), so edges can be
// queried in any data-dependent order with a consistent, replayable answer.
//
// Hash construction (stability contract, see README):
//   h = mix64(mix64(master) ^ trial)            -- per-configuration state
//   h = mix64(h ^ axis)                          -- 1-based edge axis
//   h = mix64(h ^ (uint64_t)c_k)  for k = 1..d   -- canonical base coords
//   uniform = (h >> 11) * 2^-53                  -- top 53 bits, in [0,1)
class EdgeOracle {
  public:
    EdgeOracle(Seed seed, Params params)
        : seed_(seed), params_(std::move(params)), state_(mix64(mix64(seed.master) ^ seed.trial))
    {
    }

    const Params& params() const { return params_; }
    const Seed& seed() const { return seed_; }

    double edge_uniform(const EdgeId& e) const
    {
        std::uint64_t h = mix64(state_ ^ static_cast<std::uint64_t>(e.axis));
        for (std::int64_t c : e.base) h = mix64(h ^ static_cast<std::uint64_t>(c));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

    bool edge_open(const EdgeId& e) const
    {
        return edge_uniform(e) < params_.p[static_cast<std::size_t>(e.axis - 1)];
    }

    // Hot-path variants: edge given as (vertex, direction); the canonical
    // base coordinate is adjusted on the fly, no EdgeId is materialized.
    double uniform_at(const Vertex& v, Direction dir) const
    {
        std::uint64_t h = mix64(state_ ^ static_cast<std::uint64_t>(dir.axis));
        const std::size_t k = static_cast<std::size_t>(dir.axis - 1);
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::int64_t c = v[i];
            if (i == k && dir.sign < 0) c -= 1;
            h = mix64(h ^ static_cast<std::uint64_t>(c));
        }
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

    bool open_at(const Vertex& v, Direction dir) const
    {
        return uniform_at(v, dir) < params_.p[static_cast<std::size_t>(dir.axis - 1)];
    }

  private:
    Seed seed_;
    Params params_;
    std::uint64_t state_;
};

}  // namespace percaniso
