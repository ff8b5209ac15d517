#include "percaniso/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace percaniso {

double chi_square_sf(double x, double dof)
{
    const boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

ChiSquareResult two_sample_chi_square(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b,
                                      std::uint64_t min_pooled)
{
    if (a.size() != b.size()) throw std::invalid_argument("two_sample_chi_square: bin mismatch");

    // Pool adjacent bins so every cell has enough combined mass.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pooled;
    std::uint64_t pa = 0;
    std::uint64_t pb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa += a[i];
        pb += b[i];
        if (pa + pb >= min_pooled) {
            pooled.emplace_back(pa, pb);
            pa = pb = 0;
        }
    }
    if (pa + pb > 0) {
        if (pooled.empty())
            pooled.emplace_back(pa, pb);
        else {
            pooled.back().first += pa;
            pooled.back().second += pb;
        }
    }

    std::uint64_t na = 0;
    std::uint64_t nb = 0;
    for (const auto& [x, y] : pooled) {
        na += x;
        nb += y;
    }
    ChiSquareResult res;
    res.dof = static_cast<int>(pooled.size()) - 1;
    if (na == 0 || nb == 0 || res.dof < 1) return res;

    const double k1 = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
    const double k2 = std::sqrt(static_cast<double>(na) / static_cast<double>(nb));
    for (const auto& [x, y] : pooled) {
        const double num = k1 * static_cast<double>(x) - k2 * static_cast<double>(y);
        res.statistic += num * num / static_cast<double>(x + y);
    }
    res.p_value = chi_square_sf(res.statistic, static_cast<double>(res.dof));
    return res;
}

}  // namespace percaniso
