#pragma once

#include "lipext/generators.hpp"
#include "lipext/metric_space.hpp"

#include <functional>

namespace lipext {

// Maximal epsilon-separated net: distinct net points are >= epsilon apart and
// every space point is strictly within epsilon of some net point.
struct Net {
    double epsilon = 0.0;
    std::vector<PointId> points;
};

// Greedy in label order: a point is admitted iff it is >= epsilon from every
// previously admitted point.
Net max_separated_net(const FiniteMetricSpace& space, double epsilon);

// Order of the open cover {B_{radius(a)}(a)}: the largest number of balls
// any single point lies in.
std::size_t cover_order(const FiniteMetricSpace& space, std::span<const PointId> centers,
                        const std::function<double(PointId)>& radius);

struct OrderBoundReport {
    std::size_t net_size = 0;
    std::size_t order = 0;
    double bound = 0.0;           // 4^dim (C0 = 1 for coordinate clouds)
    double whitney_operator_bound = 0.0; // 24 * n0 * C0^2, informational
    bool pass = false;
};

// Builds the maximal net at epsilon, covers with balls of radius epsilon and
// checks the cover order against 4^dim.
OrderBoundReport check_order_bound(const PointCloud& cloud, double epsilon);

} // namespace lipext
