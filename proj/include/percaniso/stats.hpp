#pragma once

#include <cstdint>
#include <vector>

namespace percaniso {

// P(X > x) for X ~ chi-square with dof degrees of freedom.
double chi_square_sf(double x, double dof);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Two-sample chi-square for histograms over the same bins. Adjacent bins
// are pooled until each pooled bin holds at least min_pooled observations
// combined; a deficient trailing pool is merged into its predecessor.
ChiSquareResult two_sample_chi_square(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b,
                                      std::uint64_t min_pooled = 10);

}  // namespace percaniso
