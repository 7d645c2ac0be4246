#pragma once

#include "lipext/measures.hpp"
#include "lipext/metric_space.hpp"
#include "lipext/whitney.hpp"

#include <cstdint>

namespace lipext {

enum class VectorNorm { l1, l2, linf };

// The simultaneous extension operator as an explicit row-stochastic matrix
// W : M x S. Rows for s in S are indicators (extension identity); rows for
// m in S^c average the Dugundji matrix over the open ball B_{d(m,S)}(m)
// against mu_m. Applying W to boundary data is plain matrix action, so
// linearity, the extension identity and convex-hull containment are exact.
class ExtensionOperator {
public:
    ExtensionOperator(const FiniteMetricSpace& space, std::vector<PointId> subset,
                      std::vector<double> rows);

    const FiniteMetricSpace& space() const { return *space_; }
    const std::vector<PointId>& subset() const { return subset_; }
    std::size_t subset_size() const { return subset_.size(); }
    PointId basepoint() const { return subset_.front(); } // m*, pointed convention
    double row_at(PointId m, std::size_t s_col) const {
        return rows_[m * subset_.size() + s_col];
    }
    const std::vector<double>& rows_flat() const { return rows_; }

    // F = W f for boundary data with k columns; F restricted to S equals f
    std::vector<double> apply(std::span<const double> f_on_subset, std::size_t k = 1) const;

private:
    const FiniteMetricSpace* space_;
    std::vector<PointId> subset_;
    std::vector<double> rows_;
};

ExtensionOperator build_operator(const FiniteMetricSpace& space, std::vector<PointId> subset,
                                 const MeasureFamily& family);

// L(F) = max over pairs of ||F(m) - F(m')|| / d(m, m'), values row-major with
// k components per point
double lipschitz_constant(const FiniteMetricSpace& space, std::span<const double> values,
                          std::size_t k = 1, VectorNorm norm = VectorNorm::linf);

struct OperatorNorm {
    double value = 0.0;
    std::pair<PointId, PointId> attaining{0, 0};
    std::vector<double> dual_extremal; // on S, vanishes at the basepoint
    bool degenerate_subset = false;    // |S| = 1: Lip_0(S) = {0}
};

// Exact operator norm of E : Lip_0(S) -> Lip_0(M) for scalar targets:
// max over pairs (m, m') of ||row_m - row_m'||_{K(S)} / d(m, m'), each free-space
// norm solved as an exact transport problem.
OperatorNorm operator_norm_exact(const ExtensionOperator& op);

// Lower-bound sampling oracle: max of L(Ef)/L(f) over random McShane-smoothed
// boundary data; including the dual extremal of the attaining pair makes it
// match the exact norm.
double operator_norm_sampled(const ExtensionOperator& op, std::size_t trials,
                             std::uint64_t seed, bool include_dual_extremal = true);

// F(m) = min_{s in S} (f(s) + L d(m, s)); requires L >= L(f)
std::vector<double> mcshane_extend(const FiniteMetricSpace& space,
                                   std::span<const PointId> subset,
                                   std::span<const double> f, double lip);

// All constants of the norm estimate, assembled for one instance. The lifted
// certificates are run at n = floor(log2 D) + 6; lifted_norm_bound bounds the
// lifted operator, and is reported next to the measured atomic-space norm
// without asserting an inequality between them.
struct BoundReport {
    double doubling = 1.0;      // D
    double consistency = 0.0;   // C(r_max)
    double r_max = 0.0;
    double uniformity = 1.0;    // K
    int n = 0;                  // floor(log2 D) + 6
    double l = 0.0;             // 1 + 1/n

    double dilation_sup = 0.0;       // certified D_n(l) grid value
    double dilation_bound = 0.0;     // (6/5) e^4
    double consistency_sup = 0.0;    // certified lifted consistency grid value
    double consistency_bound = 0.0;  // (1 + 4e/3) n C
    double radial_sup = 0.0;         // certified radial-regularity grid value
    double radial_bound = 0.0;       // A_n = (6/5) e^4 n
    bool certificates_pass = false;

    double k_n_l = 0.0;        // 42 (A_n + C_n) D_n(l) (l + 3), certified D_n(l)
    double lifted_norm_bound = 0.0;   // 56 A_n + max(14(l+3)/(l-1), K_n(l))
    double shape_bound = 0.0;  // (C + 1)(log2 D + 6)

    double empirical_norm = 0.0; // exact operator norm on the atomic space
    bool degenerate_subset = false;
    double norm_to_shape_ratio = 0.0;

    // hypothesis arithmetic of the net-embedding route, informational:
    // mu R0 = 64 eps with eps the minimal separation of S
    double subset_separation = 0.0;
    double net_embed_r0_unit_mu = 0.0;
};

BoundReport bound_report(const FiniteMetricSpace& space, std::vector<PointId> subset,
                         const MeasureFamily& family, double r_max);

} // namespace lipext
