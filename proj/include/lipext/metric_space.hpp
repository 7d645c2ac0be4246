#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lipext {

using PointId = std::size_t;

struct TriangleViolation {
    PointId i, j, k; // d(i,k) > d(i,j) + d(j,k) + slack
    double excess;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> format_errors;             // non-square, non-finite
    std::vector<std::pair<PointId, PointId>> entry_violations; // diagonal/symmetry/positivity
    std::vector<TriangleViolation> triangle_violations;
    std::string summary() const;
};

// Checks the finite-metric invariants on a raw matrix: zero diagonal, exact
// symmetry, strictly positive off-diagonal entries, and the triangle
// inequality with an absolute slack of triangle_slack_rel * diameter.
ValidationReport validate_metric(const std::vector<std::vector<double>>& dist);

// A finite metric space: labeled points with a validated distance matrix.
// Immutable after construction; all queries are read-only and safe to call
// concurrently.
class FiniteMetricSpace {
public:
    // throws std::invalid_argument when validation fails
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist_flat);

    static FiniteMetricSpace from_rows(std::vector<std::string> labels,
                                       const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    double dist(PointId i, PointId j) const { return dist_[i * n_ + j]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& dist_flat() const { return dist_; }

    double diameter() const { return diameter_; }
    double min_positive_distance() const { return min_positive_; }

    // min over s in subset of dist(m, s); subset must be nonempty
    double dist_to_set(std::span<const PointId> subset, PointId m) const;

    // open ball: points strictly closer than radius (radius must be > 0)
    std::vector<PointId> open_ball(PointId m, double radius) const;

    // sorted distinct positive distances from m; open-ball content is
    // constant for radii within each interval (r_k, r_{k+1}]
    std::vector<double> critical_radii(PointId m) const;

private:
    std::size_t n_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> dist_;
    double diameter_ = 0.0;
    double min_positive_ = 0.0;
};

// Exponent of a direct p-product; p = infinity is a distinguished symbolic
// value, not a large float.
class ProductExponent {
public:
    static ProductExponent inf() { return ProductExponent(true, 0.0); }
    static ProductExponent of(double p); // throws for p < 1

    bool is_inf() const { return inf_; }
    double value() const { return p_; } // meaningful only when !is_inf()

    // conjugate exponent q with 1/p + 1/q = 1 (inf <-> 1)
    ProductExponent conjugate() const;

    // p-combination of factor distances
    double combine(std::span<const double> ds) const;

    std::string str() const;

private:
    ProductExponent(bool inf, double p) : inf_(inf), p_(p) {}
    bool inf_;
    double p_;
};

// Direct p-product of factor spaces. Point order is row-major in the factor
// indices (first factor most significant); labels are "(a,b,...)".
FiniteMetricSpace product_space(const std::vector<const FiniteMetricSpace*>& factors,
                                ProductExponent p);

// index helpers for product points
std::size_t product_index(std::span<const std::size_t> sizes, std::span<const std::size_t> coords);
std::vector<std::size_t> product_coords(std::span<const std::size_t> sizes, std::size_t index);

} // namespace lipext
