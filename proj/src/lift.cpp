#include "lipext/lift.hpp"

#include "lipext/tolerances.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lipext {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

void require_premise(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("premise violation: " + what);
}

} // namespace

int floor_log2(double x) {
    if (!(x >= 1.0)) throw std::invalid_argument("floor_log2: need x >= 1");
    // exact power-of-two comparisons; floating log2 can misplace the floor
    // right at a power of two
    int k = 0;
    while (std::ldexp(1.0, k + 1) <= x) ++k;
    return k;
}

int choose_n(double doubling) {
    if (!(doubling >= 1.0)) throw std::invalid_argument("choose_n: need D >= 1");
    return floor_log2(doubling) + 6;
}

double cross_polytope_volume(int n) {
    if (n < 1) throw std::invalid_argument("cross_polytope_volume: need n >= 1");
    double v = 1.0;
    for (int i = 1; i <= n; ++i) v *= 2.0 / i;
    return v;
}

double dilation_threshold() { return 1.2 * std::exp(4.0); }
double consistency_threshold_factor() { return 1.0 + 4.0 * std::exp(1.0) / 3.0; }
double radial_regularity_bound(int n) { return dilation_threshold() * n; }

LiftedSpace::LiftedSpace(const MeasureFamily& base, int n) : base_(&base), n_(n) {
    if (n < 2) throw std::invalid_argument("lifted space: need n >= 2");
    gamma_ = cross_polytope_volume(n);
    beta_ = n * gamma_;
    base_doubling_ = family_doubling(base);
}

double LiftedSpace::ball_mass(PointId m, double radius) const {
    if (!(radius > 0.0)) throw std::invalid_argument("lifted ball_mass: radius must be positive");
    const auto& space = base_->base();
    const std::size_t count = space.size();
    double sum = 0.0;
    for (PointId j = 0; j < count; ++j) {
        const double d = space.dist(m, j);
        if (d < radius) sum += base_->weight(m, j) * ipow(radius - d, n_);
    }
    return gamma_ * sum;
}

double LiftedSpace::tv_ball(PointId m1, PointId m2, int center_choice, double radius) const {
    if (!(radius > 0.0)) throw std::invalid_argument("lifted tv_ball: radius must be positive");
    if (center_choice != 1 && center_choice != 2)
        throw std::invalid_argument("lifted tv_ball: center_choice must be 1 or 2");
    const PointId center = center_choice == 1 ? m1 : m2;
    const auto& space = base_->base();
    const std::size_t count = space.size();
    double sum = 0.0;
    for (PointId j = 0; j < count; ++j) {
        const double d = space.dist(center, j);
        if (d < radius)
            sum += std::abs(base_->weight(m1, j) - base_->weight(m2, j)) * ipow(radius - d, n_);
    }
    return gamma_ * sum;
}

std::vector<double> default_radius_grid(const MeasureFamily& family, double r_max,
                                        std::size_t samples) {
    if (!(r_max > 0.0)) throw std::invalid_argument("radius grid: need r_max > 0");
    const auto& space = family.base();
    std::vector<double> grid;
    for (PointId m = 0; m < space.size(); ++m)
        for (double r : space.critical_radii(m))
            if (r <= r_max) grid.push_back(r);

    const double lo = space.size() > 1 ? space.min_positive_distance() / 4.0 : r_max / 64.0;
    if (samples >= 2 && lo < r_max) {
        const double step = std::log(r_max / lo) / static_cast<double>(samples - 1);
        for (std::size_t i = 0; i < samples; ++i) grid.push_back(lo * std::exp(step * i));
    }
    grid.push_back(r_max);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

CertReport certify_dilation(const LiftedSpace& lift, std::span<const double> grid) {
    require_premise(lift.n() >= floor_log2(lift.base_doubling()) + 5,
                    "dilation certificate needs n >= floor(log2 D) + 5");
    const double l = 1.0 + 1.0 / lift.n();
    CertReport report;
    report.bound = dilation_threshold();
    for (PointId m = 0; m < lift.base().size(); ++m) {
        for (double radius : grid) {
            const double denom = lift.ball_mass(m, radius);
            const double numer = lift.ball_mass(m, l * radius);
            report.sup_found = std::max(report.sup_found, numer / denom);
            ++report.evaluations;
        }
    }
    report.pass = report.sup_found <= report.bound + tol::certificate_slack;
    return report;
}

double lifted_consistency_sup(const LiftedSpace& lift, std::span<const double> grid,
                              double r_max) {
    const auto& space = lift.base().base();
    const std::size_t n = space.size();
    std::vector<double> radii;
    for (double radius : grid)
        if (radius <= r_max) radii.push_back(radius);
    if (radii.empty() || n < 2) return 0.0;

    // denominators depend only on (center, radius); hoist them out of the
    // pair loop
    std::vector<double> masses(n * radii.size());
    for (PointId m = 0; m < n; ++m)
        for (std::size_t r = 0; r < radii.size(); ++r)
            masses[m * radii.size() + r] = lift.ball_mass(m, radii[r]);

    // pairs are independent work items; the max-reduction is order-independent
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::min<std::size_t>(
        n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<double> worker_sup(workers, 0.0);
    auto work = [&](std::size_t w) {
        while (true) {
            const PointId m1 = next.fetch_add(1);
            if (m1 >= n) return;
            double sup = worker_sup[w];
            for (PointId m2 = m1 + 1; m2 < n; ++m2) {
                const double d = space.dist(m1, m2);
                for (int choice : {1, 2}) {
                    const PointId center = choice == 1 ? m1 : m2;
                    for (std::size_t r = 0; r < radii.size(); ++r) {
                        const double tv = lift.tv_ball(m1, m2, choice, radii[r]);
                        sup = std::max(sup,
                                       tv * radii[r] / (masses[center * radii.size() + r] * d));
                    }
                }
            }
            worker_sup[w] = sup;
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();

    double sup = 0.0;
    for (double s : worker_sup) sup = std::max(sup, s);
    return sup;
}

CertReport certify_consistency(const LiftedSpace& lift, std::span<const double> grid,
                               double base_consistency, double r_max) {
    require_premise(lift.n() >= floor_log2(lift.base_doubling()) + 5,
                    "consistency certificate needs n >= floor(log2 D) + 5");
    CertReport report;
    report.bound = consistency_threshold_factor() * lift.n() * base_consistency;
    report.sup_found = lifted_consistency_sup(lift, grid, r_max);
    std::size_t within = 0;
    for (double radius : grid)
        if (radius <= r_max) ++within;
    report.evaluations = lift.base().size() * (lift.base().size() - 1) * within;
    report.pass =
        report.sup_found <= report.bound + tol::certificate_slack * std::max(1.0, report.bound);
    return report;
}

CertReport certify_radial_regularity(const LiftedSpace& lift, std::span<const double> grid) {
    require_premise(lift.n() >= floor_log2(lift.base_doubling()) + 6,
                    "radial regularity certificate needs n >= floor(log2 D) + 6");
    CertReport report;
    report.bound = radial_regularity_bound(lift.n());
    // near-coincident companion radii probe the derivative regime
    constexpr double nudge = 1e-6;
    for (PointId m = 0; m < lift.base().size(); ++m) {
        std::vector<double> masses(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) masses[i] = lift.ball_mass(m, grid[i]);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t j = i + 1; j < grid.size(); ++j) {
                const double r1 = grid[i], r2 = grid[j];
                const double ratio = (masses[j] - masses[i]) * r2 / (masses[j] * (r2 - r1));
                report.sup_found = std::max(report.sup_found, ratio);
                ++report.evaluations;
            }
            const double r1 = grid[i], r2 = grid[i] * (1.0 + nudge);
            const double m2 = lift.ball_mass(m, r2);
            const double ratio = (m2 - masses[i]) * r2 / (m2 * (r2 - r1));
            report.sup_found = std::max(report.sup_found, ratio);
            ++report.evaluations;
        }
    }
    report.pass = report.sup_found <= report.bound + tol::certificate_slack;
    return report;
}

} // namespace lipext
