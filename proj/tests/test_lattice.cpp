#include <doctest.h>

#include <random>

#include "percaniso/lattice.hpp"

using namespace percaniso;

TEST_CASE("neighbors enumerates 2d pairs in fixed order")
{
    const auto n2 = neighbors(Vertex{0, 0}, 2);
    REQUIRE(n2.size() == 4);
    CHECK(n2[0].second == Vertex{1, 0});
    CHECK(n2[1].second == Vertex{-1, 0});
    CHECK(n2[2].second == Vertex{0, 1});
    CHECK(n2[3].second == Vertex{0, -1});
    CHECK(n2[0].first.axis == 1);
    CHECK(n2[0].first.sign == +1);

    const auto n1 = neighbors(Vertex{5}, 1);
    REQUIRE(n1.size() == 2);
    CHECK(n1[0].second == Vertex{6});
    CHECK(n1[1].second == Vertex{4});

    const auto n3 = neighbors(Vertex{1, -2, 3}, 3);
    REQUIRE(n3.size() == 6);
    CHECK(n3[0].second == Vertex{2, -2, 3});
    CHECK(n3[0].first.axis == 1);
}

TEST_CASE("neighbors rejects dimension mismatch")
{
    CHECK_THROWS_AS(neighbors(Vertex{0, 0}, 3), Error);
}

TEST_CASE("canonical_edge picks the endpoint with smaller axis coordinate")
{
    const EdgeId a = canonical_edge(Vertex{0, 0}, Direction{2, +1});
    CHECK(a.base == Vertex{0, 0});
    CHECK(a.axis == 2);

    const EdgeId b = canonical_edge(Vertex{0, 1}, Direction{2, -1});
    CHECK(b == a);

    const EdgeId c = canonical_edge(Vertex{-3, 7}, Direction{1, -1});
    CHECK(c.base == Vertex{-4, 7});
    CHECK(c.axis == 1);
}

TEST_CASE("canonical_edge involution property on random vertices")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int it = 0; it < 2000; ++it) {
        const int d = dim(rng);
        Vertex v(static_cast<std::size_t>(d));
        for (auto& c : v) c = coord(rng);
        const int axis = std::uniform_int_distribution<int>(1, d)(rng);
        Vertex w = v;
        w[static_cast<std::size_t>(axis - 1)] += 1;
        CHECK(canonical_edge(v, Direction{axis, +1}) == canonical_edge(w, Direction{axis, -1}));
    }
}

TEST_CASE("neighbors are distinct and at L1 distance 1")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coord(-50, 50);
    for (int it = 0; it < 200; ++it) {
        const int d = std::uniform_int_distribution<int>(1, 5)(rng);
        Vertex v(static_cast<std::size_t>(d));
        for (auto& c : v) c = coord(rng);
        const auto nb = neighbors(v, d);
        CHECK(nb.size() == 2 * static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < nb.size(); ++i) {
            std::int64_t l1 = 0;
            for (std::size_t k = 0; k < v.size(); ++k)
                l1 += std::abs(nb[i].second[k] - v[k]);
            CHECK(l1 == 1);
            for (std::size_t j = i + 1; j < nb.size(); ++j) CHECK(nb[i].second != nb[j].second);
        }
    }
}

TEST_CASE("validate_params")
{
    CHECK_NOTHROW(validate_params(Params{2, {0.3, 0.75}}));
    CHECK_THROWS_WITH_AS(validate_params(Params{2, {0.3, 1.0}}),
                         doctest::Contains("p_2"), Error);
    CHECK_THROWS_AS(validate_params(Params{3, {0.3, 0.2}}), Error);
    CHECK_THROWS_AS(validate_params(Params{0, {}}), Error);
    CHECK_THROWS_AS(validate_params(Params{1, {-0.1}}), Error);
}
