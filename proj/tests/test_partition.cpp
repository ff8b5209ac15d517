#include <doctest.h>

#include <cmath>
#include <random>

#include "percaniso/partition.hpp"

using namespace percaniso;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("q_transform and q_inverse")
{
    CHECK(q_transform(0.0) == 0.0);
    CHECK(q_transform(0.5) == doctest::Approx(kLog2).epsilon(1e-15));
    CHECK(q_inverse(0.0) == 0.0);
    CHECK(q_inverse(2 * kLog2) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(q_transform(1.0), Error);
    CHECK_THROWS_AS(q_transform(-0.2), Error);
    CHECK_THROWS_AS(q_inverse(-1e-9), Error);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 0.999);
    for (int it = 0; it < 2000; ++it) {
        const double p = unif(rng);
        CHECK(std::abs(q_inverse(q_transform(p)) - p) <= 1e-12);
    }
}

TEST_CASE("q additivity under the merge rule")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(0.0, 0.99);
    for (int it = 0; it < 5000; ++it) {
        const double a = unif(rng);
        const double b = unif(rng);
        const double merged = 1.0 - (1.0 - a) * (1.0 - b);
        CHECK(std::abs(q_transform(merged) - (q_transform(a) + q_transform(b))) <= 1e-12);
    }
}

TEST_CASE("q_ratio is 1 at 0 and increasing")
{
    CHECK(q_ratio(0.0) == 1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 0.99);
    for (int it = 0; it < 2000; ++it) {
        double a = unif(rng);
        double b = unif(rng);
        if (a > b) std::swap(a, b);
        CHECK(q_ratio(a) <= q_ratio(b));
    }
}

TEST_CASE("pc_expansion reference values")
{
    CHECK(pc_expansion(10) == doctest::Approx(0.0529375).epsilon(1e-15));
    // asymptotic surrogate: badly undershoots the exact 1/2 at d = 2
    CHECK(pc_expansion(2) == doctest::Approx(0.3671875).epsilon(1e-15));
    CHECK(pc_expansion(2) < 0.5);
    // the d = 10 homogeneous point 0.0525 sits below the truncated expansion
    CHECK(0.0525 < pc_expansion(10));
    CHECK_THROWS_AS(pc_expansion(1), Error);
}

TEST_CASE("qc_upper_bound reference values")
{
    CHECK(qc_upper_bound(2, 1.8) == doctest::Approx(0.70).epsilon(1e-15));
    CHECK(qc_upper_bound(4, 1.8) == doctest::Approx(0.2375).epsilon(1e-15));
    // must dominate the exact q_c(Z^2) = q(1/2) = log 2
    CHECK(qc_upper_bound(2, 1.8) >= kLog2);
    CHECK_THROWS_AS(qc_upper_bound(1, 1.8), Error);
    CHECK_THROWS_AS(qc_upper_bound(4, 0.0), Error);
}

TEST_CASE("m_delta")
{
    CHECK(m_delta(0.9, 1.8) == 4);
    CHECK(m_delta(1.0, 1.8) == 4);
    CHECK(m_delta(1.5, 1.8) == 3);
    CHECK_THROWS_AS(m_delta(0.0, 1.8), Error);
    CHECK_THROWS_AS(m_delta(kLambda, 1.8), Error);
    CHECK_THROWS_AS(m_delta(-0.3, 1.8), Error);

    // the block count keeps the per-block critical bound below (1+delta)/2m
    for (double delta = 0.05; delta < kLambda; delta += 0.05) {
        const int m = m_delta(delta, 1.8);
        CHECK(m >= 2);
        CHECK(qc_upper_bound(m, 1.8) <= (1.0 + delta) / (2.0 * m) + 1e-15);
    }
}

TEST_CASE("derive_constants chain")
{
    const ConstantsBundle b = derive_constants(1.8);
    CHECK(b.lambda == doctest::Approx(3 * kLog2 - 0.5).epsilon(1e-15));
    CHECK(b.c2 == doctest::Approx(3.6 + kLambda).epsilon(1e-15));
    CHECK(b.c2 == doctest::Approx(5.17944).epsilon(1e-5));
    CHECK(b.c3 == doctest::Approx(1.0 / (2.0 * b.c2)).epsilon(1e-15));
    CHECK(b.c3 == doctest::Approx(0.0965355).epsilon(1e-5));
    CHECK(b.c > 0.0);
    CHECK(b.c < b.c3);
    // defining equation of C
    CHECK(std::abs(b.c * q_ratio(b.c * kLambda * kLambda) - b.c3) <= 1e-12);

    // larger C1 shrinks the admissible C
    const double prev = derive_constants(1.0).c;
    CHECK(b.c < prev);
    CHECK(derive_constants(3.0).c < b.c);
    CHECK_THROWS_AS(derive_constants(0.0), Error);
}

TEST_CASE("greedy_partition on homogeneous vectors")
{
    const Params params{6, {0.4, 0.4, 0.4, 0.4, 0.4, 0.4}};
    const QVector qv = QVector::from_params(params);
    const double q04 = q_transform(0.4);

    const Partition part = greedy_partition(qv, 2, kLog2);
    validate_partition(part, 6);
    REQUIRE(part.m() == 2);
    CHECK(part.blocks[0] == std::vector<int>{1, 2});
    CHECK(part.blocks[1] == std::vector<int>{3, 4, 5, 6});
    CHECK(part.block_qsums[0] == doctest::Approx(2 * q04).epsilon(1e-15));
    CHECK(part.block_qsums[1] == doctest::Approx(4 * q04).epsilon(1e-15));
    for (double s : part.block_qsums) CHECK(s > kLog2);

    const Partition three = greedy_partition(qv, 3, 0.5);
    validate_partition(three, 6);
    CHECK(three.blocks[0] == std::vector<int>{1});
    CHECK(three.blocks[1] == std::vector<int>{2});
    CHECK(three.blocks[2] == std::vector<int>{3, 4, 5, 6});
}

TEST_CASE("greedy_partition failure modes name the block")
{
    const QVector thin = QVector::from_params(Params{3, {0.1, 0.1, 0.1}});
    CHECK_THROWS_WITH_AS(greedy_partition(thin, 2, kLog2), doctest::Contains("block 1"), Error);

    // first block swallows everything, leaving block 2 empty
    const QVector two = QVector::from_params(Params{2, {0.4, 0.4}});
    CHECK_THROWS_WITH_AS(greedy_partition(two, 2, 1.0),
                         doctest::Contains("consumed all directions"), Error);
}

TEST_CASE("check_sufficient_sum and the greedy success guarantee")
{
    QVector qv;
    qv.q = {0.8, 0.8, 0.8};
    CHECK(check_sufficient_sum(qv, 2, kLog2));  // 2.4 > (log2 + 0.8) + log2

    QVector small;
    small.q = {0.5, 0.5};
    CHECK_FALSE(check_sufficient_sum(small, 2, kLog2));

    std::mt19937_64 rng(6);
    for (int it = 0; it < 300; ++it) {
        const int d = std::uniform_int_distribution<int>(4, 40)(rng);
        QVector r;
        for (int i = 0; i < d; ++i)
            r.q.push_back(std::uniform_real_distribution<double>(0.01, 0.8)(rng));
        const int m = std::uniform_int_distribution<int>(2, 4)(rng);
        const double qc = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
        if (!check_sufficient_sum(r, m, qc)) continue;
        const Partition part = greedy_partition(r, m, qc);  // must not throw
        validate_partition(part, d);
        REQUIRE(part.m() == m);
        for (int b = 0; b < m; ++b) {
            CHECK(part.block_qsums[static_cast<std::size_t>(b)] > qc);
            // greedy stops right after crossing qc: non-final blocks overshoot
            // by at most one direction's q
            if (b + 1 < m)
                CHECK(part.block_qsums[static_cast<std::size_t>(b)] <= qc + r.max() + 1e-15);
        }
    }
}

TEST_CASE("check_theorem1 verdicts")
{
    const ConstantsBundle bundle = derive_constants(1.8);

    const Verdict sub = check_theorem1(Params{2, {0.2, 0.2}}, bundle);
    CHECK(sub.applicable_theorem == TheoremVerdict::none);
    CHECK(sub.delta == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(sub.explanation.find("Galton-Watson") != std::string::npos);
    CHECK_FALSE(sub.witness.has_value());

    const Verdict big = check_theorem1(Params{5, {0.45, 0.45, 0.45, 0.45, 0.45}}, bundle);
    CHECK(big.applicable_theorem == TheoremVerdict::none);
    CHECK(big.explanation.find("sum-only") != std::string::npos);

    const Verdict irregular = check_theorem1(Params{2, {0.4, 0.4}}, bundle);
    CHECK(irregular.applicable_theorem == TheoremVerdict::none);
    CHECK(irregular.explanation.find("regularity") != std::string::npos);

    // high-dimensional regular point: delta = 0.9, max p_i well under C*delta^2
    Params hd{4000, std::vector<double>(4000, 3.5e-4)};
    const Verdict ok = check_theorem1(hd, bundle);
    CHECK(ok.applicable_theorem == TheoremVerdict::theorem1);
    REQUIRE(ok.witness.has_value());
    const int m = ok.witness->m();
    CHECK(m == 4);  // m_delta(0.9, 1.8)
    validate_partition(*ok.witness, 4000);
    const double qc = qc_upper_bound(m, bundle.c1);
    for (double s : ok.witness->block_qsums) CHECK(s > qc);
    // blocks are consecutive runs of direction indices
    int expect = 1;
    for (const auto& block : ok.witness->blocks)
        for (int i : block) CHECK(i == expect++);
}

TEST_CASE("theorem2_partition verdicts")
{
    // all below 1/2: prefix split
    const Verdict pre = theorem2_partition(Params{5, {0.45, 0.45, 0.45, 0.45, 0.45}});
    CHECK(pre.applicable_theorem == TheoremVerdict::theorem2);
    REQUIRE(pre.witness.has_value());
    CHECK(pre.witness->blocks[0] == std::vector<int>{1, 2});
    CHECK(pre.witness->blocks[1] == std::vector<int>{3, 4, 5});
    for (double s : pre.witness->block_qsums) CHECK(s > kLog2);

    // a direction at 1/2 or above gets isolated
    const Verdict iso = theorem2_partition(Params{4, {0.6, 0.5, 0.5, 0.5}});
    CHECK(iso.applicable_theorem == TheoremVerdict::theorem2);
    REQUIRE(iso.witness.has_value());
    CHECK(iso.witness->blocks[0] == std::vector<int>{1});
    CHECK(iso.witness->blocks[1] == std::vector<int>{2, 3, 4});
    CHECK(iso.witness->block_qsums[1] == doctest::Approx(3 * kLog2).epsilon(1e-12));

    // d = 3, sum in [1 + log 2, 3 log 2]: weakened branch
    const Verdict weak = theorem2_partition(Params{3, {0.6, 0.55, 0.55}});
    CHECK(weak.applicable_theorem == TheoremVerdict::theorem2_weakened_d34);
    REQUIRE(weak.witness.has_value());
    CHECK(weak.witness->blocks[0] == std::vector<int>{1});
    CHECK(weak.witness->block_qsums[1] > kLog2);

    // weakened bound is only for d in {3, 4}
    const Verdict d5 = theorem2_partition(Params{5, {0.6, 0.3, 0.3, 0.3, 0.3}});
    CHECK(d5.applicable_theorem == TheoremVerdict::none);

    const Verdict none = theorem2_partition(Params{2, {0.4, 0.4}});
    CHECK(none.applicable_theorem == TheoremVerdict::none);
    CHECK_FALSE(none.witness.has_value());
}

TEST_CASE("validate_partition rejects malformed partitions")
{
    Partition dup;
    dup.blocks = {{1}, {1, 2}};
    CHECK_THROWS_WITH_AS(validate_partition(dup, 2), doctest::Contains("twice"), Error);

    Partition gap;
    gap.blocks = {{1}, {3}};
    CHECK_THROWS_AS(validate_partition(gap, 3), Error);

    Partition range;
    range.blocks = {{1}, {2, 4}};
    CHECK_THROWS_AS(validate_partition(range, 3), Error);

    Partition empty;
    empty.blocks = {{1, 2}, {}};
    CHECK_THROWS_AS(validate_partition(empty, 2), Error);

    const QVector qv = QVector::from_params(Params{3, {0.1, 0.2, 0.3}});
    const Partition s = Partition::singletons(3, qv);
    CHECK_NOTHROW(validate_partition(s, 3));
    CHECK(s.block_qsums[2] == doctest::Approx(q_transform(0.3)).epsilon(1e-15));
}
