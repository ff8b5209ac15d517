#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "percaniso/stats.hpp"

using namespace percaniso;

TEST_CASE("chi_square_sf reference values")
{
    // P(X > x) = exp(-x/2) for 2 degrees of freedom
    CHECK(chi_square_sf(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(chi_square_sf(0.0, 5) == doctest::Approx(1.0).epsilon(1e-12));
    // 1 dof: P(X > x) = 2*(1 - Phi(sqrt(x))); at x = 3.841459 this is ~0.05
    CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("two_sample_chi_square accepts identical histograms")
{
    const std::vector<std::uint64_t> h{100, 50, 25, 12, 6, 3};
    const ChiSquareResult r = two_sample_chi_square(h, h);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("two_sample_chi_square pools sparse tails")
{
    // tail bins individually under min_pooled must be merged, not dropped
    const std::vector<std::uint64_t> a{500, 100, 3, 2, 1, 0, 1};
    const std::vector<std::uint64_t> b{480, 110, 2, 4, 0, 1, 0};
    const ChiSquareResult r = two_sample_chi_square(a, b, 10);
    CHECK(r.dof >= 1);
    CHECK(r.dof <= 3);  // 500s, 100s, and one pooled tail at most
    CHECK(r.p_value > 0.0);
    CHECK(r.p_value <= 1.0);
}

TEST_CASE("two_sample_chi_square separates different laws")
{
    std::mt19937_64 rng(8);
    std::vector<std::uint64_t> a(20, 0);
    std::vector<std::uint64_t> b(20, 0);
    std::geometric_distribution<int> ga(0.5);
    std::geometric_distribution<int> gb(0.35);
    for (int i = 0; i < 20000; ++i) {
        ++a[static_cast<std::size_t>(std::min(ga(rng), 19))];
        ++b[static_cast<std::size_t>(std::min(gb(rng), 19))];
    }
    const ChiSquareResult r = two_sample_chi_square(a, b);
    CHECK(r.p_value < 1e-6);
}

TEST_CASE("two_sample_chi_square has calibrated false-positive rate")
{
    // same law in both samples: p-values should be roughly uniform
    std::mt19937_64 rng(9);
    std::geometric_distribution<int> g(0.4);
    int below_05 = 0;
    const int reps = 200;
    for (int rep = 0; rep < reps; ++rep) {
        std::vector<std::uint64_t> a(15, 0);
        std::vector<std::uint64_t> b(15, 0);
        for (int i = 0; i < 4000; ++i) {
            ++a[static_cast<std::size_t>(std::min(g(rng), 14))];
            ++b[static_cast<std::size_t>(std::min(g(rng), 14))];
        }
        if (two_sample_chi_square(a, b).p_value < 0.05) ++below_05;
    }
    // expect ~10 of 200; allow a wide band
    CHECK(below_05 <= 30);
}

TEST_CASE("two_sample_chi_square rejects mismatched bins")
{
    const std::vector<std::uint64_t> two{1, 2};
    const std::vector<std::uint64_t> three{1, 2, 3};
    CHECK_THROWS_AS(two_sample_chi_square(two, three), std::invalid_argument);
}

TEST_CASE("two_sample_chi_square degenerate inputs")
{
    // everything pools into one bin: no test possible, p = 1
    const std::vector<std::uint64_t> ones{1, 1, 1};
    const ChiSquareResult r = two_sample_chi_square(ones, ones, 1000);
    CHECK(r.dof < 1);
    CHECK(r.p_value == 1.0);
}
