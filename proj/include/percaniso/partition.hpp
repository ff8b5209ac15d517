#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "percaniso/lattice.hpp"

namespace percaniso {

// lambda = 3 log 2 - 1/2, the delta threshold separating the two
// supercriticality regimes.
inline const double kLambda = 3.0 * std::log(2.0) - 0.5;

// q(p) = -log(1-p). Turns the two-direction merge rule
// (1-p~) = (1-p_a)(1-p_b) into plain additivity q_a + q_b = q~.
double q_transform(double p);
double q_inverse(double q);

// r(p) = q(p)/p, increasing on [0,1); r(0) = 1 by continuity.
double q_ratio(double p);

struct QVector {
    std::vector<double> q;

    static QVector from_params(const Params& params);
    double sum() const;
    double max() const;
    int d() const { return static_cast<int>(q.size()); }
};

// Ordered partition (D_1..D_m) of the direction indices {1..d}.
// Blocks keep ascending original index order.
struct Partition {
    std::vector<std::vector<int>> blocks;  // 1-based direction indices
    std::vector<double> block_qsums;

    int m() const { return static_cast<int>(blocks.size()); }
    static Partition singletons(int d, const QVector& qv);
};

// Throws if blocks do not cover {1..d} disjointly.
void validate_partition(const Partition& partition, int d);

struct ConstantsBundle {
    double c1 = 0.0;
    double lambda = 0.0;  // 3 log 2 - 1/2
    double c2 = 0.0;      // 2*c1 + lambda
    double c3 = 0.0;      // 1/(2*c2)
    double c = 0.0;       // root of c * r(c * lambda^2) = c3
};

enum class TheoremVerdict { theorem1, theorem2, theorem2_weakened_d34, none };

const char* to_string(TheoremVerdict v);

struct Verdict {
    double delta = 0.0;  // p_1 + ... + p_d - 1/2
    TheoremVerdict applicable_theorem = TheoremVerdict::none;
    std::optional<Partition> witness;
    std::string explanation;
};

// Truncated high-dimension expansion 1/2d + 1/4d^2 + 7/16d^3 of the
// homogeneous critical probability. Asymptotic surrogate: undershoots the
// exact value 1/2 badly at d=2, usable as a reference from d ~ 5 up.
double pc_expansion(int d);

// Upper-bound surrogate 1/2m + C1/m^2 for q_c(Z^m).
double qc_upper_bound(int m, double c1);

// ceil(2*C1/delta); the block count used by the theorem-1 construction.
// Requires delta in (0, lambda).
int m_delta(double delta, double c1);

// Fills the constant chain C1 -> C2 -> C3 -> C; C found by bisection on
// the increasing map c -> c * r(c * lambda^2) over (0, C3].
ConstantsBundle derive_constants(double c1);

// Consecutive greedy blocks: each cut is placed at the first index whose
// running q-sum exceeds qc_m. Throws Error naming the failing block when
// the construction runs out of mass (the sufficient condition below is
// not necessary, so callers may retry with another m).
Partition greedy_partition(const QVector& qv, int m, double qc_m);

// sum q_i > (qc_m + q_max)(m-1) + qc_m; true guarantees greedy success.
bool check_sufficient_sum(const QVector& qv, int m, double qc_m);

// Conditions delta > 0 and max p_i <= C*delta^2, with the greedy witness
// construction run when they hold (its failure there would be a bug, not
// a negative verdict).
Verdict check_theorem1(const Params& params, const ConstantsBundle& bundle);

// Sum-only condition sum p_i > 3 log 2, split into two blocks with q-sum
// > log 2 each; for d in {3,4} the weaker bound sum >= 1 + log 2 applies
// when some p_i >= 1/2.
Verdict theorem2_partition(const Params& params);

}  // namespace percaniso
