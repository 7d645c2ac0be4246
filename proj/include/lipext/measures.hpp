#pragma once

#include "lipext/metric_space.hpp"

#include <map>
#include <optional>

namespace lipext {

// A family of atomic measures, one per base point: mu_m = sum_m' w_m(m') d_{m'}.
// Weights are nonnegative with w_m(m) > 0, so every open ball centered at m
// has strictly positive mass. Immutable after construction.
class MeasureFamily {
public:
    // weights flat n*n, row index = center; throws on invariant violation
    MeasureFamily(const FiniteMetricSpace& base, std::vector<double> weights);

    const FiniteMetricSpace& base() const { return *base_; }
    std::size_t size() const { return base_->size(); }
    double weight(PointId center, PointId pt) const { return weights_[center * size() + pt]; }
    const std::vector<double>& weights_flat() const { return weights_; }

    // mu_m(B_R(m')) for the open ball; radius must be > 0
    double ball_mass(PointId measure_of, PointId center, double radius) const;
    double ball_mass(PointId m, double radius) const { return ball_mass(m, m, radius); }

    // total variation |mu_m1 - mu_m2|(B_R(center)), computed coordinatewise
    double tv_ball(PointId m1, PointId m2, PointId center, double radius) const;

private:
    const FiniteMetricSpace* base_;
    std::vector<double> weights_;
};

MeasureFamily counting_family(const FiniteMetricSpace& base);
MeasureFamily identity_family(const FiniteMetricSpace& base);
// w_m(m') = exp(-gamma * d(m, m')); a family with nontrivial D, C and K
MeasureFamily decay_family(const FiniteMetricSpace& base, double gamma);

// sup_R mu_m(B_2R(m)) / mu_m(B_R(m)); exact via the finite critical-radius set
double point_doubling(const MeasureFamily& family, PointId m);

// D = max over centers of point_doubling
double family_doubling(const MeasureFamily& family);

// D(l) = sup_m sup_R mu_m(B_lR(m)) / mu_m(B_R(m)), l > 1; exact
double dilation(const MeasureFamily& family, double l);

// Consistency constant truncated to radii in (0, r_max]:
//   sup |mu_m1 - mu_m2|(B_R(m)) * R / (mu_m(B_R(m)) * d(m1, m2))
// over ordered pairs, m in {m1, m2}. On a finite space the untruncated sup is
// infinite whenever two family measures differ, so r_max (default: diameter)
// is part of the constant and is recorded in every report.
double consistency(const MeasureFamily& family, double r_max);

// K = sup over ordered pairs and radii of mu_m1(B_R(m1)) / mu_m2(B_R(m2)); >= 1
double uniformity(const MeasureFamily& family);

struct FamilyConstants {
    double doubling = 1.0;     // D
    double consistency = 0.0;  // C(r_max)
    double r_max = 0.0;
    double uniformity = 1.0;   // K
    std::map<double, double> dilation_table; // l -> D(l)
};

FamilyConstants compute_constants(const MeasureFamily& family, double r_max,
                                  std::span<const double> dilation_ls);

// Tensor product family on a direct p-product of the factor bases:
// w_(m1..mN)((m1'..mN')) = prod_i w^i_{mi}(mi'). The product space must have
// been built from the same factors with the same point order.
MeasureFamily tensor_family(const FiniteMetricSpace& product,
                            const std::vector<const MeasureFamily*>& factors);

struct ProductCheckReport {
    bool p_is_inf = false;
    double p = 0.0;

    // p = inf: dilation factorization D(l) = prod D_i(l) at each tested l
    struct DilationCheck {
        double l, tensor_value, factor_product;
        bool pass;
    };
    std::vector<DilationCheck> dilation_factorization;

    // any p: doubling of the tensor vs prod D_i
    double tensor_doubling = 0.0;
    double doubling_product = 0.0;
    bool doubling_pass = false;

    // p = inf: consistency of the tensor vs (prod K_i)(sum C_i)
    // p < inf:  lifted consistency sup vs a * (6/5)e^4 * (prod K_i)(sum C_i^q)^{1/q}
    double consistency_sup = 0.0;
    double consistency_bound = 0.0;
    bool consistency_pass = false;
    int lift_dimension = 0; // a, used only for p < inf

    double r_max = 0.0;
    bool all_pass() const;
};

// Certifies the product-measure calculus on the tensor of the given factors.
// For p < inf the consistency route goes through the lifted space
// (M, d_p) (+) l1^a with a = floor(log2 prod D_i) + 6; factor consistency
// constants are computed at (1 + 1/a) * r_max so the chain of inequalities
// stays valid under truncation.
ProductCheckReport product_constant_checks(const std::vector<const MeasureFamily*>& factors,
                                           ProductExponent p);

} // namespace lipext
