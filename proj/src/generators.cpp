#include "lipext/generators.hpp"

#include "lipext/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lipext {

namespace {

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return labels;
}

FiniteMetricSpace space_from_coords(std::vector<std::string> labels, std::size_t dim,
                                    const std::vector<double>& coords) {
    const std::size_t n = labels.size();
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double delta = coords[i * dim + d] - coords[j * dim + d];
                s += delta * delta;
            }
            const double v = std::sqrt(s);
            dist[i * n + j] = v;
            dist[j * n + i] = v;
        }
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
}

} // namespace

FiniteMetricSpace gen_path(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gen_path: need n >= 1");
    std::vector<double> dist(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dist[i * n + j] = static_cast<double>(i > j ? i - j : j - i);
    return FiniteMetricSpace(index_labels(n), std::move(dist));
}

PointCloud gen_grid(std::size_t k) {
    if (k == 0) throw std::invalid_argument("gen_grid: need k >= 1");
    const std::size_t n = k * k;
    std::vector<std::string> labels(n);
    std::vector<double> coords(n * 2);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t idx = i * k + j;
            labels[idx] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            coords[idx * 2] = static_cast<double>(i);
            coords[idx * 2 + 1] = static_cast<double>(j);
        }
    }
    auto space = space_from_coords(std::move(labels), 2, coords);
    return PointCloud{2, std::move(coords), std::move(space)};
}

FiniteMetricSpace gen_tree(std::size_t branching, std::size_t depth) {
    if (branching == 0) throw std::invalid_argument("gen_tree: need branching >= 1");
    // nodes in breadth-first order; parent of node i > 0 is (i-1)/branching
    std::size_t n = 1, level = 1;
    for (std::size_t d = 0; d < depth; ++d) {
        level *= branching;
        n += level;
    }
    std::vector<std::size_t> parent(n, 0);
    std::vector<std::size_t> node_depth(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        parent[i] = (i - 1) / branching;
        node_depth[i] = node_depth[parent[i]] + 1;
    }
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t a = i, b = j, hops = 0;
            while (a != b) {
                if (node_depth[a] >= node_depth[b]) {
                    a = parent[a];
                } else {
                    b = parent[b];
                }
                ++hops;
            }
            dist[i * n + j] = static_cast<double>(hops);
            dist[j * n + i] = static_cast<double>(hops);
        }
    }
    return FiniteMetricSpace(index_labels(n), std::move(dist));
}

PointCloud gen_euclidean_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
    if (n == 0 || dim == 0) throw std::invalid_argument("gen_euclidean_cloud: degenerate size");
    Rng rng(seed);
    std::vector<double> coords(n * dim);
    for (double& c : coords) c = rng.uniform();
    // uniform draws collide with probability ~0, but distinctness is an
    // invariant, so re-draw any exact duplicate
    for (std::size_t i = 1; i < n; ++i) {
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t j = 0; j < i; ++j) {
                bool same = true;
                for (std::size_t d = 0; d < dim; ++d)
                    if (coords[i * dim + d] != coords[j * dim + d]) same = false;
                if (same) {
                    for (std::size_t d = 0; d < dim; ++d) coords[i * dim + d] = rng.uniform();
                    again = true;
                    break;
                }
            }
        }
    }
    auto space = space_from_coords(index_labels(n), dim, coords);
    return PointCloud{dim, std::move(coords), std::move(space)};
}

double h2_distance(std::complex<double> z, std::complex<double> w) {
    // cosh d = 1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2)), evaluated in the
    // equivalent asinh form, which stays accurate for nearby points
    const double den = (1.0 - std::norm(z)) * (1.0 - std::norm(w));
    return 2.0 * std::asinh(std::abs(z - w) / std::sqrt(den));
}

FiniteMetricSpace gen_h2_cloud(std::size_t n, double radius, std::uint64_t seed) {
    if (n == 0 || !(radius > 0.0)) throw std::invalid_argument("gen_h2_cloud: degenerate size");
    Rng rng(seed);
    std::vector<std::complex<double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool fresh = false;
        while (!fresh) {
            // hyperbolic area of a disc of radius r is 2 pi (cosh r - 1);
            // invert the radial CDF, then map to the Poincare model
            const double u = rng.uniform();
            const double r = std::acosh(1.0 + u * (std::cosh(radius) - 1.0));
            const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double rho = std::tanh(r / 2.0);
            pts[i] = std::polar(rho, theta);
            fresh = true;
            for (std::size_t j = 0; j < i; ++j)
                if (pts[i] == pts[j]) fresh = false;
        }
    }
    const std::size_t sz = n;
    std::vector<double> dist(sz * sz, 0.0);
    for (std::size_t i = 0; i < sz; ++i) {
        for (std::size_t j = i + 1; j < sz; ++j) {
            const double d = h2_distance(pts[i], pts[j]);
            dist[i * sz + j] = d;
            dist[j * sz + i] = d;
        }
    }
    return FiniteMetricSpace(index_labels(n), std::move(dist));
}

} // namespace lipext
