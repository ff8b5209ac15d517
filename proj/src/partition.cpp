#include "percaniso/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace percaniso {

double q_transform(double p)
{
    if (!(p >= 0.0) || p >= 1.0 - 1e-15)
        throw Error("q_transform: p = " + std::to_string(p) + " outside [0, 1)");
    return -std::log1p(-p);
}

double q_inverse(double q)
{
    if (!(q >= 0.0)) throw Error("q_inverse: q must be nonnegative");
    return -std::expm1(-q);
}

double q_ratio(double p)
{
    if (!(p >= 0.0) || p >= 1.0 - 1e-15)
        throw Error("q_ratio: p = " + std::to_string(p) + " outside [0, 1)");
    if (p == 0.0) return 1.0;  // limit of q(p)/p as p -> 0
    return q_transform(p) / p;
}

QVector QVector::from_params(const Params& params)
{
    validate_params(params);
    QVector qv;
    qv.q.reserve(params.p.size());
    for (double pi : params.p) qv.q.push_back(q_transform(pi));
    return qv;
}

double QVector::sum() const
{
    return std::accumulate(q.begin(), q.end(), 0.0);
}

double QVector::max() const
{
    return q.empty() ? 0.0 : *std::max_element(q.begin(), q.end());
}

Partition Partition::singletons(int d, const QVector& qv)
{
    Partition part;
    for (int i = 1; i <= d; ++i) {
        part.blocks.push_back({i});
        part.block_qsums.push_back(qv.q[static_cast<std::size_t>(i - 1)]);
    }
    return part;
}

void validate_partition(const Partition& partition, int d)
{
    std::vector<char> seen(static_cast<std::size_t>(d) + 1, 0);
    int covered = 0;
    for (const auto& block : partition.blocks) {
        if (block.empty()) throw Error("partition: empty block");
        for (int i : block) {
            if (i < 1 || i > d)
                throw Error("partition: index " + std::to_string(i) + " outside {1.."
                            + std::to_string(d) + "}");
            if (seen[static_cast<std::size_t>(i)])
                throw Error("partition: index " + std::to_string(i) + " appears twice");
            seen[static_cast<std::size_t>(i)] = 1;
            ++covered;
        }
    }
    if (covered != d) throw Error("partition: does not cover {1.." + std::to_string(d) + "}");
}

const char* to_string(TheoremVerdict v)
{
    switch (v) {
        case TheoremVerdict::theorem1: return "theorem1";
        case TheoremVerdict::theorem2: return "theorem2";
        case TheoremVerdict::theorem2_weakened_d34: return "theorem2_weakened_d34";
        case TheoremVerdict::none: return "none";
    }
    return "none";
}

double pc_expansion(int d)
{
    if (d < 2) throw Error("pc_expansion: requires d >= 2");
    const double x = static_cast<double>(d);
    return 1.0 / (2.0 * x) + 1.0 / (4.0 * x * x) + 7.0 / (16.0 * x * x * x);
}

double qc_upper_bound(int m, double c1)
{
    if (m < 2) throw Error("qc_upper_bound: requires m >= 2");
    if (!(c1 > 0.0)) throw Error("qc_upper_bound: requires C1 > 0");
    const double x = static_cast<double>(m);
    return 1.0 / (2.0 * x) + c1 / (x * x);
}

int m_delta(double delta, double c1)
{
    if (!(c1 > 0.0)) throw Error("m_delta: requires C1 > 0");
    if (!(delta > 0.0) || delta >= kLambda)
        throw Error("m_delta: delta = " + std::to_string(delta)
                    + " outside (0, lambda); delta >= lambda is the sum-only regime");
    return static_cast<int>(std::ceil(2.0 * c1 / delta));
}

ConstantsBundle derive_constants(double c1)
{
    if (!(c1 > 0.0)) throw Error("derive_constants: requires C1 > 0");
    ConstantsBundle b;
    b.c1 = c1;
    b.lambda = kLambda;
    b.c2 = 2.0 * c1 + kLambda;
    b.c3 = 1.0 / (2.0 * b.c2);

    // c -> c * r(c*lambda^2) is continuous and increasing, 0 at 0 and
    // > c3 at c3 (r > 1 there), so the root lies in (0, c3).
    const double l2 = kLambda * kLambda;
    const auto f = [&](double c) { return c * q_ratio(c * l2) - b.c3; };
    double lo = 0.0;
    double hi = b.c3;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    b.c = 0.5 * (lo + hi);
    return b;
}

Partition greedy_partition(const QVector& qv, int m, double qc_m)
{
    if (m < 2) throw Error("greedy_partition: requires m >= 2");
    if (!(qc_m > 0.0)) throw Error("greedy_partition: requires qc_m > 0");
    const int d = qv.d();

    Partition part;
    int start = 0;  // 0-based index of the first direction of the next block
    for (int block = 1; block < m; ++block) {
        double acc = 0.0;
        int j = start;
        while (j < d && acc <= qc_m) acc += qv.q[static_cast<std::size_t>(j++)];
        if (acc <= qc_m)
            throw Error("greedy_partition: block " + std::to_string(block)
                        + " cannot reach q-sum > " + std::to_string(qc_m));
        if (j >= d)
            throw Error("greedy_partition: block " + std::to_string(block)
                        + " consumed all directions, block " + std::to_string(block + 1)
                        + " would be empty");
        std::vector<int> indices(static_cast<std::size_t>(j - start));
        std::iota(indices.begin(), indices.end(), start + 1);
        part.blocks.push_back(std::move(indices));
        part.block_qsums.push_back(acc);
        start = j;
    }
    double acc = 0.0;
    for (int j = start; j < d; ++j) acc += qv.q[static_cast<std::size_t>(j)];
    if (acc <= qc_m)
        throw Error("greedy_partition: final block " + std::to_string(m) + " has q-sum "
                    + std::to_string(acc) + " <= " + std::to_string(qc_m));
    std::vector<int> indices(static_cast<std::size_t>(d - start));
    std::iota(indices.begin(), indices.end(), start + 1);
    part.blocks.push_back(std::move(indices));
    part.block_qsums.push_back(acc);
    return part;
}

bool check_sufficient_sum(const QVector& qv, int m, double qc_m)
{
    if (m < 2) throw Error("check_sufficient_sum: requires m >= 2");
    return qv.sum() > (qc_m + qv.max()) * (m - 1) + qc_m;
}

Verdict check_theorem1(const Params& params, const ConstantsBundle& bundle)
{
    validate_params(params);
    const double sum = std::accumulate(params.p.begin(), params.p.end(), 0.0);
    const double maxp = params.p.empty() ? 0.0 : *std::max_element(params.p.begin(), params.p.end());

    Verdict v;
    v.delta = sum - 0.5;
    if (v.delta <= 0.0) {
        v.explanation = "sum of parameters <= 1/2: the cluster is dominated by a subcritical or "
                        "critical Galton-Watson process, so theta = 0";
        return v;
    }
    if (v.delta >= kLambda) {
        v.explanation = "delta >= 3 log 2 - 1/2: outside the regularity regime; the sum-only "
                        "condition applies instead (see theorem2_partition)";
        return v;
    }
    if (maxp > bundle.c * v.delta * v.delta) {
        std::ostringstream os;
        os << "max p_i = " << maxp << " exceeds C*delta^2 = " << bundle.c * v.delta * v.delta
           << ": regularity condition fails";
        v.explanation = os.str();
        return v;
    }

    const int m = std::max(2, m_delta(v.delta, bundle.c1));
    const double qc_m = qc_upper_bound(m, bundle.c1);
    const QVector qv = QVector::from_params(params);
    // Under the two conditions this construction is guaranteed to succeed;
    // a throw here would be a bug, so it is allowed to propagate.
    v.witness = greedy_partition(qv, m, qc_m);
    v.applicable_theorem = TheoremVerdict::theorem1;
    std::ostringstream os;
    os << "delta = " << v.delta << ", max p_i = " << maxp << " <= C*delta^2; greedy " << m
       << "-block witness with every block q-sum > " << qc_m;
    v.explanation = os.str();
    return v;
}

Verdict theorem2_partition(const Params& params)
{
    validate_params(params);
    if (params.d < 2) throw Error("theorem2_partition: requires d >= 2");
    const double log2 = std::log(2.0);
    const double sum = std::accumulate(params.p.begin(), params.p.end(), 0.0);
    const QVector qv = QVector::from_params(params);

    Verdict v;
    v.delta = sum - 0.5;

    int big = 0;  // first index (1-based) with p_i >= 1/2, 0 if none
    for (int i = 1; i <= params.d; ++i) {
        if (params.p[static_cast<std::size_t>(i - 1)] >= 0.5) {
            big = i;
            break;
        }
    }

    const auto split_around = [&](int i) {
        Partition part;
        part.blocks.push_back({i});
        part.block_qsums.push_back(qv.q[static_cast<std::size_t>(i - 1)]);
        std::vector<int> rest;
        double acc = 0.0;
        for (int j = 1; j <= params.d; ++j) {
            if (j == i) continue;
            rest.push_back(j);
            acc += qv.q[static_cast<std::size_t>(j - 1)];
        }
        part.blocks.push_back(std::move(rest));
        part.block_qsums.push_back(acc);
        return part;
    };

    if (sum > 3.0 * log2) {
        if (big > 0) {
            Partition part = split_around(big);
            v.witness = std::move(part);
            v.applicable_theorem = TheoremVerdict::theorem2;
            std::ostringstream os;
            os << "sum p_i = " << sum << " > 3 log 2 with p_" << big
               << " >= 1/2; remaining q-sum " << v.witness->block_qsums[1] << " > log 2";
            v.explanation = os.str();
            return v;
        }
        // All p_i < 1/2: cut after the first prefix whose p-sum exceeds log 2.
        int m = 0;
        double psum = 0.0;
        while (psum <= log2) psum += params.p[static_cast<std::size_t>(m++)];
        Partition part;
        double acc1 = 0.0;
        std::vector<int> d1;
        for (int j = 1; j <= m; ++j) {
            d1.push_back(j);
            acc1 += qv.q[static_cast<std::size_t>(j - 1)];
        }
        double acc2 = 0.0;
        std::vector<int> d2;
        for (int j = m + 1; j <= params.d; ++j) {
            d2.push_back(j);
            acc2 += qv.q[static_cast<std::size_t>(j - 1)];
        }
        part.blocks = {std::move(d1), std::move(d2)};
        part.block_qsums = {acc1, acc2};
        v.witness = std::move(part);
        v.applicable_theorem = TheoremVerdict::theorem2;
        std::ostringstream os;
        os << "sum p_i = " << sum << " > 3 log 2, all p_i < 1/2; prefix split after index " << m
           << " gives block q-sums " << acc1 << ", " << acc2 << " > log 2";
        v.explanation = os.str();
        return v;
    }

    if ((params.d == 3 || params.d == 4) && sum >= 1.0 + log2 && big > 0) {
        Partition part = split_around(big);
        if (part.block_qsums[1] > log2) {
            v.witness = std::move(part);
            v.applicable_theorem = TheoremVerdict::theorem2_weakened_d34;
            std::ostringstream os;
            os << "d = " << params.d << ", sum p_i = " << sum << " >= 1 + log 2 with p_" << big
               << " >= 1/2; weakened two-block split applies";
            v.explanation = os.str();
            return v;
        }
    }

    std::ostringstream os;
    os << "sum p_i = " << sum << " <= 3 log 2"
       << ((params.d == 3 || params.d == 4)
               ? " and the weakened d=3,4 condition does not hold"
               : "")
       << ": no sum-only conclusion";
    v.explanation = os.str();
    return v;
}

}  // namespace percaniso
