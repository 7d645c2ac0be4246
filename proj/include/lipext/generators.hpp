#pragma once

#include "lipext/metric_space.hpp"

#include <complex>
#include <cstdint>
#include <optional>

namespace lipext {

// A metric space whose points carry Euclidean coordinates. The coordinates
// witness an isometric embedding into R^dim (C0 = 1), which the cover-order
// check relies on.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords; // size() * dim, row-major
    FiniteMetricSpace space;
};

// path 0-1-...-(n-1) with unit edges
FiniteMetricSpace gen_path(std::size_t n);

// k x k unit-spacing grid in the plane, Euclidean metric
PointCloud gen_grid(std::size_t k);

// complete tree with the given branching and depth, unit-edge path metric
FiniteMetricSpace gen_tree(std::size_t branching, std::size_t depth);

// n points uniform in [0,1]^dim
PointCloud gen_euclidean_cloud(std::size_t n, std::size_t dim, std::uint64_t seed);

// n points on the Poincare disk, uniform in hyperbolic area over the disk of
// the given hyperbolic radius (inverse-CDF in the radial coordinate)
FiniteMetricSpace gen_h2_cloud(std::size_t n, double radius, std::uint64_t seed);

// hyperbolic distance on the Poincare disk:
// cosh d = 1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2))
double h2_distance(std::complex<double> z, std::complex<double> w);

} // namespace lipext
