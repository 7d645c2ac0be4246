#include "lipext/metric_space.hpp"

#include "lipext/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lipext {

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::ostringstream out;
    out << "invalid:";
    if (!format_errors.empty()) out << " " << format_errors.size() << " format error(s)";
    if (!entry_violations.empty()) out << " " << entry_violations.size() << " entry violation(s)";
    if (!triangle_violations.empty())
        out << " " << triangle_violations.size() << " triangle violation(s)";
    return out.str();
}

ValidationReport validate_metric(const std::vector<std::vector<double>>& dist) {
    ValidationReport report;
    const std::size_t n = dist.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) {
            report.format_errors.push_back("row " + std::to_string(i) + " has " +
                                           std::to_string(dist[i].size()) + " entries, expected " +
                                           std::to_string(n));
        }
    }
    if (!report.format_errors.empty()) {
        report.ok = false;
        return report;
    }
    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(dist[i][j])) {
                report.format_errors.push_back("non-finite entry at (" + std::to_string(i) + "," +
                                               std::to_string(j) + ")");
            } else {
                diameter = std::max(diameter, dist[i][j]);
            }
        }
    }
    if (!report.format_errors.empty()) {
        report.ok = false;
        return report;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i][i] != 0.0) report.entry_violations.emplace_back(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist[i][j] != dist[j][i] || dist[i][j] <= 0.0)
                report.entry_violations.emplace_back(i, j);
        }
    }

    const double slack = tol::triangle_slack_rel * diameter;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double excess = dist[i][k] - dist[i][j] - dist[j][k];
                if (excess > slack) report.triangle_violations.push_back({i, j, k, excess});
            }
        }
    }

    report.ok = report.entry_violations.empty() && report.triangle_violations.empty();
    return report;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist_flat)
    : n_(labels.size()), labels_(std::move(labels)), dist_(std::move(dist_flat)) {
    if (n_ == 0) throw std::invalid_argument("metric space needs at least one point");
    if (dist_.size() != n_ * n_)
        throw std::invalid_argument("distance matrix size does not match label count");

    std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) rows[i][j] = dist_[i * n_ + j];
    const ValidationReport report = validate_metric(rows);
    if (!report.ok) throw std::invalid_argument("invalid metric: " + report.summary());

    min_positive_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            diameter_ = std::max(diameter_, dist_[i * n_ + j]);
            if (i != j) min_positive_ = std::min(min_positive_, dist_[i * n_ + j]);
        }
    }
    if (n_ == 1) min_positive_ = 0.0;
}

FiniteMetricSpace FiniteMetricSpace::from_rows(std::vector<std::string> labels,
                                               const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
    return FiniteMetricSpace(std::move(labels), std::move(flat));
}

double FiniteMetricSpace::dist_to_set(std::span<const PointId> subset, PointId m) const {
    if (subset.empty()) throw std::invalid_argument("dist_to_set: empty set");
    double best = std::numeric_limits<double>::infinity();
    for (PointId s : subset) best = std::min(best, dist(m, s));
    return best;
}

std::vector<PointId> FiniteMetricSpace::open_ball(PointId m, double radius) const {
    if (!(radius > 0.0)) throw std::invalid_argument("open_ball: radius must be positive");
    std::vector<PointId> ball;
    for (PointId j = 0; j < n_; ++j)
        if (dist(m, j) < radius) ball.push_back(j);
    return ball;
}

std::vector<double> FiniteMetricSpace::critical_radii(PointId m) const {
    std::vector<double> radii;
    radii.reserve(n_);
    for (PointId j = 0; j < n_; ++j)
        if (dist(m, j) > 0.0) radii.push_back(dist(m, j));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

ProductExponent ProductExponent::of(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("product exponent must satisfy p >= 1");
    return ProductExponent(false, p);
}

ProductExponent ProductExponent::conjugate() const {
    if (inf_) return of(1.0);
    if (p_ == 1.0) return inf();
    return of(p_ / (p_ - 1.0));
}

double ProductExponent::combine(std::span<const double> ds) const {
    if (inf_) {
        double m = 0.0;
        for (double d : ds) m = std::max(m, d);
        return m;
    }
    if (p_ == 1.0) {
        double s = 0.0;
        for (double d : ds) s += d;
        return s;
    }
    double s = 0.0;
    for (double d : ds) s += std::pow(d, p_);
    return std::pow(s, 1.0 / p_);
}

std::string ProductExponent::str() const {
    if (inf_) return "inf";
    std::ostringstream out;
    out << p_;
    return out.str();
}

std::size_t product_index(std::span<const std::size_t> sizes, std::span<const std::size_t> coords) {
    std::size_t idx = 0;
    for (std::size_t f = 0; f < sizes.size(); ++f) idx = idx * sizes[f] + coords[f];
    return idx;
}

std::vector<std::size_t> product_coords(std::span<const std::size_t> sizes, std::size_t index) {
    std::vector<std::size_t> coords(sizes.size());
    for (std::size_t f = sizes.size(); f-- > 0;) {
        coords[f] = index % sizes[f];
        index /= sizes[f];
    }
    return coords;
}

FiniteMetricSpace product_space(const std::vector<const FiniteMetricSpace*>& factors,
                                ProductExponent p) {
    if (factors.empty()) throw std::invalid_argument("product_space: no factors");
    std::vector<std::size_t> sizes;
    std::size_t total = 1;
    for (const auto* f : factors) {
        sizes.push_back(f->size());
        total *= f->size();
    }

    std::vector<std::string> labels(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto coords = product_coords(sizes, idx);
        std::string label = "(";
        for (std::size_t f = 0; f < factors.size(); ++f) {
            if (f) label += ",";
            label += factors[f]->labels()[coords[f]];
        }
        label += ")";
        labels[idx] = std::move(label);
    }

    std::vector<double> dist(total * total, 0.0);
    std::vector<double> parts(factors.size());
    for (std::size_t a = 0; a < total; ++a) {
        const auto ca = product_coords(sizes, a);
        for (std::size_t b = a + 1; b < total; ++b) {
            const auto cb = product_coords(sizes, b);
            for (std::size_t f = 0; f < factors.size(); ++f)
                parts[f] = factors[f]->dist(ca[f], cb[f]);
            const double d = p.combine(parts);
            dist[a * total + b] = d;
            dist[b * total + a] = d;
        }
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
}

} // namespace lipext
