#pragma once

#include "lipext/metric_space.hpp"

namespace lipext {

// Element sum_i a_i delta(m_i) of the free space K(M): coefficients over all
// points summing to zero (within chain_balance_rel of the l1 mass).
struct BalancedChain {
    std::vector<double> coefficients;
};

struct TransportPlan {
    struct Entry {
        PointId from, to;
        double amount;
    };
    std::vector<Entry> flows;
    double cost = 0.0;
};

struct KrResult {
    double value = 0.0;
    TransportPlan plan;
    // optimal transportation potentials: u over sources (positive atoms),
    // v over sinks (negative atoms), with u_i + v_j <= d(i, j)
    std::vector<PointId> sources, sinks;
    std::vector<double> source_potentials, sink_potentials;
};

// Kantorovich-Rubinstein norm of a balanced chain: the minimum transport cost
// between its positive and negative parts, solved exactly by transportation
// simplex on the complete bipartite graph. Throws on unbalanced chains.
KrResult kr_norm(const FiniteMetricSpace& space, const BalancedChain& chain);

// Optimal 1-Lipschitz dual witness recovered from the transport potentials by
// infimal convolution over the sinks, normalized to vanish at the basepoint.
// Satisfies sum_i a_i f(m_i) = kr value exactly.
std::vector<double> kr_extremal(const FiniteMetricSpace& space, const KrResult& result,
                                PointId basepoint);

struct KrDualResult {
    double value = 0.0;
    std::vector<double> extremal; // f with L(f) <= 1, f(basepoint) = 0
};

// Independent dual route at oracle scale: maximize sum a_i f_i over f with
// pairwise Lipschitz constraints, as a generic linear program.
KrDualResult kr_norm_dual(const FiniteMetricSpace& space, const BalancedChain& chain,
                          PointId basepoint);

// asserts ||delta(a) - delta(b)|| = d(a, b) for every pair
bool delta_isometry_check(const FiniteMetricSpace& space, double tolerance = 1e-9);

} // namespace lipext
