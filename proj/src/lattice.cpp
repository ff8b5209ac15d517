#include "percaniso/lattice.hpp"

namespace percaniso {

void validate_params(const Params& params)
{
    if (params.d < 1)
        throw Error("params: d must be >= 1, got " + std::to_string(params.d));
    if (static_cast<int>(params.p.size()) != params.d)
        throw Error("params: expected " + std::to_string(params.d) + " probabilities, got "
                    + std::to_string(params.p.size()));
    for (int i = 0; i < params.d; ++i) {
        const double pi = params.p[static_cast<std::size_t>(i)];
        if (!(pi >= 0.0) || pi >= 1.0)
            throw Error("params: p_" + std::to_string(i + 1) + " = " + std::to_string(pi)
                        + " outside [0,1)");
    }
}

std::vector<std::pair<Direction, Vertex>> neighbors(const Vertex& v, int d)
{
    if (static_cast<int>(v.size()) != d)
        throw Error("neighbors: vertex has " + std::to_string(v.size())
                    + " coordinates, ambient dimension is " + std::to_string(d));
    std::vector<std::pair<Direction, Vertex>> out;
    out.reserve(2 * static_cast<std::size_t>(d));
    for (int axis = 1; axis <= d; ++axis) {
        for (int sign : {+1, -1}) {
            Vertex w = v;
            w[static_cast<std::size_t>(axis - 1)] += sign;
            out.emplace_back(Direction{axis, sign}, std::move(w));
        }
    }
    return out;
}

EdgeId canonical_edge(const Vertex& v, Direction dir)
{
    if (dir.axis < 1 || dir.axis > static_cast<int>(v.size()))
        throw Error("canonical_edge: axis " + std::to_string(dir.axis)
                    + " out of range for dimension " + std::to_string(v.size()));
    EdgeId e;
    e.axis = dir.axis;
    e.base = v;
    if (dir.sign < 0) e.base[static_cast<std::size_t>(dir.axis - 1)] -= 1;
    return e;
}

}  // namespace percaniso
