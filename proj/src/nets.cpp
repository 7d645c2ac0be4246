#include "lipext/nets.hpp"

#include <cmath>
#include <stdexcept>

namespace lipext {

Net max_separated_net(const FiniteMetricSpace& space, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("max_separated_net: epsilon must be > 0");
    Net net{epsilon, {}};
    for (PointId m = 0; m < space.size(); ++m) {
        bool admit = true;
        for (PointId a : net.points) {
            if (space.dist(m, a) < epsilon) {
                admit = false;
                break;
            }
        }
        if (admit) net.points.push_back(m);
    }
    return net;
}

std::size_t cover_order(const FiniteMetricSpace& space, std::span<const PointId> centers,
                        const std::function<double(PointId)>& radius) {
    if (centers.empty()) throw std::invalid_argument("cover_order: no centers");
    std::size_t order = 0;
    for (PointId m = 0; m < space.size(); ++m) {
        std::size_t count = 0;
        for (PointId a : centers)
            if (space.dist(m, a) < radius(a)) ++count;
        order = std::max(order, count);
    }
    return order;
}

OrderBoundReport check_order_bound(const PointCloud& cloud, double epsilon) {
    const Net net = max_separated_net(cloud.space, epsilon);
    OrderBoundReport report;
    report.net_size = net.points.size();
    report.order = cover_order(cloud.space, net.points, [&](PointId) { return epsilon; });
    // coordinates witness C0 = 1, n0 = dim
    report.bound = std::pow(4.0, static_cast<double>(cloud.dim));
    report.whitney_operator_bound = 24.0 * static_cast<double>(cloud.dim);
    report.pass = static_cast<double>(report.order) <= report.bound;
    return report;
}

} // namespace lipext
