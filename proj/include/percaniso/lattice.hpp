#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace percaniso {

// Lattice vertex of Z^d, addressed lazily: only the coordinates touched by
// an exploration ever exist.
using Vertex = std::vector<std::int64_t>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unit step +/- e_axis. Axes are 1-based, matching the parameter indexing.
struct Direction {
    int axis = 1;   // in [1, d]
    int sign = +1;  // +1 or -1
};

// Canonical identity of the edge <x, x +/- e_axis>: base is the endpoint
// with the smaller axis-coordinate, so both traversal orders agree.
struct EdgeId {
    Vertex base;
    int axis = 1;

    bool operator==(const EdgeId& o) const { return axis == o.axis && base == o.base; }
};

struct Params {
    int d = 0;
    std::vector<double> p;  // per-axis open probabilities, each in [0,1)
};

// Truncation of the infinite lattice: exploration stops once this many
// vertices are found or a vertex escapes the sup-norm ball of this radius.
struct BoxLimits {
    std::int64_t max_vertices = 0;
    std::int64_t radius = 0;
};

// Throws Error if d < 1, length(p) != d, or some p_i outside [0,1).
// p_i == 1 is rejected: the supercriticality machinery assumes p_i < 1.
void validate_params(const Params& params);

// The 2d lattice neighbours of v, in fixed order: axis 1..d, + before -.
std::vector<std::pair<Direction, Vertex>> neighbors(const Vertex& v, int d);

// Canonical id of the edge from v along dir.
// canonical_edge(v, +e_i) == canonical_edge(v + e_i, -e_i).
EdgeId canonical_edge(const Vertex& v, Direction dir);

inline std::int64_t sup_norm(const Vertex& v)
{
    std::int64_t m = 0;
    for (std::int64_t c : v) {
        const std::int64_t a = c < 0 ? -c : c;
        if (a > m) m = a;
    }
    return m;
}

}  // namespace percaniso
