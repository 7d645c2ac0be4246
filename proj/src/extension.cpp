#include "lipext/extension.hpp"

#include "lipext/free_space.hpp"
#include "lipext/lift.hpp"
#include "lipext/rng.hpp"
#include "lipext/tolerances.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace lipext {

namespace {

// induced metric on the subset, labels inherited
FiniteMetricSpace subspace(const FiniteMetricSpace& space, std::span<const PointId> subset) {
    const std::size_t s = subset.size();
    std::vector<std::string> labels(s);
    std::vector<double> dist(s * s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        labels[i] = space.labels()[subset[i]];
        for (std::size_t j = 0; j < s; ++j) dist[i * s + j] = space.dist(subset[i], subset[j]);
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
}

double norm_of_diff(std::span<const double> values, std::size_t k, std::size_t a, std::size_t b,
                    VectorNorm norm) {
    switch (norm) {
    case VectorNorm::l1: {
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) s += std::abs(values[a * k + c] - values[b * k + c]);
        return s;
    }
    case VectorNorm::l2: {
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double d = values[a * k + c] - values[b * k + c];
            s += d * d;
        }
        return std::sqrt(s);
    }
    case VectorNorm::linf:
    default: {
        double s = 0.0;
        for (std::size_t c = 0; c < k; ++c)
            s = std::max(s, std::abs(values[a * k + c] - values[b * k + c]));
        return s;
    }
    }
}

} // namespace

ExtensionOperator::ExtensionOperator(const FiniteMetricSpace& space, std::vector<PointId> subset,
                                     std::vector<double> rows)
    : space_(&space), subset_(std::move(subset)), rows_(std::move(rows)) {
    if (subset_.empty()) throw std::invalid_argument("extension operator: empty subset");
    if (rows_.size() != space.size() * subset_.size())
        throw std::invalid_argument("extension operator: row matrix size mismatch");
}

std::vector<double> ExtensionOperator::apply(std::span<const double> f_on_subset,
                                             std::size_t k) const {
    const std::size_t s = subset_.size();
    if (k == 0 || f_on_subset.size() != s * k)
        throw std::invalid_argument("apply: boundary data size mismatch");
    const std::size_t n = space_->size();
    std::vector<double> out(n * k, 0.0);
    for (PointId m = 0; m < n; ++m) {
        for (std::size_t col = 0; col < s; ++col) {
            const double w = rows_[m * s + col];
            if (w == 0.0) continue;
            for (std::size_t c = 0; c < k; ++c) out[m * k + c] += w * f_on_subset[col * k + c];
        }
    }
    return out;
}

ExtensionOperator build_operator(const FiniteMetricSpace& space, std::vector<PointId> subset,
                                 const MeasureFamily& family) {
    if (&family.base() != &space)
        throw std::invalid_argument("build_operator: family must live on the given space");
    const WhitneyApparatus apparatus = build_whitney(space, std::move(subset));
    const std::size_t s = apparatus.subset.size();

    std::vector<double> rows = apparatus.dugundji; // identity block on S already in place
    for (PointId m : apparatus.complement) {
        const double radius = space.dist_to_set(apparatus.subset, m);
        // the open ball of radius d(m, S) around m contains no point of S
        const auto ball = space.open_ball(m, radius);
        double mass = 0.0;
        for (PointId p : ball) mass += family.weight(m, p);
        if (!(mass > 0.0)) throw std::runtime_error("build_operator: zero-mass averaging ball");
        for (std::size_t col = 0; col < s; ++col) rows[m * s + col] = 0.0;
        for (PointId p : ball) {
            const double coeff = family.weight(m, p) / mass;
            if (coeff == 0.0) continue;
            for (std::size_t col = 0; col < s; ++col)
                rows[m * s + col] += coeff * apparatus.dugundji[p * s + col];
        }
    }
    return ExtensionOperator(space, apparatus.subset, std::move(rows));
}

double lipschitz_constant(const FiniteMetricSpace& space, std::span<const double> values,
                          std::size_t k, VectorNorm norm) {
    if (values.size() != space.size() * k)
        throw std::invalid_argument("lipschitz_constant: value array size mismatch");
    double lip = 0.0;
    for (PointId a = 0; a < space.size(); ++a)
        for (PointId b = a + 1; b < space.size(); ++b)
            lip = std::max(lip, norm_of_diff(values, k, a, b, norm) / space.dist(a, b));
    return lip;
}

OperatorNorm operator_norm_exact(const ExtensionOperator& op) {
    OperatorNorm result;
    const std::size_t s = op.subset_size();
    if (s < 2) {
        // Lip_0(S) = {0}: the operator norm degenerates
        result.degenerate_subset = true;
        result.dual_extremal.assign(s, 0.0);
        return result;
    }
    const auto& space = op.space();
    const std::size_t n = space.size();
    const FiniteMetricSpace sub = subspace(space, op.subset());

    // one transport problem per point pair; pairs sharing the first index form
    // a work item, and the per-item best is reduced in fixed order afterwards
    std::vector<double> best_ratio(n, 0.0);
    std::vector<PointId> best_partner(n, 0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
        BalancedChain chain{std::vector<double>(s, 0.0)};
        try {
            while (true) {
                const PointId a = next.fetch_add(1);
                if (a >= n) return;
                for (PointId b = a + 1; b < n; ++b) {
                    for (std::size_t col = 0; col < s; ++col)
                        chain.coefficients[col] = op.row_at(a, col) - op.row_at(b, col);
                    const double ratio = kr_norm(sub, chain).value / space.dist(a, b);
                    if (ratio > best_ratio[a]) {
                        best_ratio[a] = ratio;
                        best_partner[a] = b;
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    for (PointId a = 0; a < n; ++a) {
        if (best_ratio[a] > result.value) {
            result.value = best_ratio[a];
            result.attaining = {a, best_partner[a]};
        }
    }

    BalancedChain chain{std::vector<double>(s, 0.0)};
    for (std::size_t col = 0; col < s; ++col)
        chain.coefficients[col] =
            op.row_at(result.attaining.first, col) - op.row_at(result.attaining.second, col);
    const KrResult best_kr = kr_norm(sub, chain);
    result.dual_extremal = kr_extremal(sub, best_kr, 0); // column 0 is the basepoint m*
    return result;
}

double operator_norm_sampled(const ExtensionOperator& op, std::size_t trials, std::uint64_t seed,
                             bool include_dual_extremal) {
    const std::size_t s = op.subset_size();
    if (s < 2) return 0.0;
    const auto& space = op.space();
    const FiniteMetricSpace sub = subspace(space, op.subset());
    Rng rng(seed);

    double best = 0.0;
    auto run_one = [&](std::span<const double> f) {
        const double lip_f = lipschitz_constant(sub, f);
        if (!(lip_f > 0.0)) return; // constants carry no information
        const auto extended = op.apply(f);
        best = std::max(best, lipschitz_constant(space, extended) / lip_f);
    };

    std::vector<PointId> anchors;
    std::vector<double> anchor_values;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t count = std::min<std::size_t>(s, 2 + t % 4);
        anchors.clear();
        anchor_values.clear();
        while (anchors.size() < count) {
            const PointId cand = rng.below(s);
            if (std::find(anchors.begin(), anchors.end(), cand) == anchors.end())
                anchors.push_back(cand);
        }
        for (std::size_t i = 0; i < count; ++i)
            anchor_values.push_back(rng.uniform(0.0, std::max(1.0, sub.diameter())));
        double lip = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j)
                lip = std::max(lip, std::abs(anchor_values[i] - anchor_values[j]) /
                                        sub.dist(anchors[i], anchors[j]));
        if (!(lip > 0.0)) continue;
        const auto f = mcshane_extend(sub, anchors, anchor_values, lip);
        run_one(f);
    }
    if (include_dual_extremal) {
        const OperatorNorm exact = operator_norm_exact(op);
        if (!exact.degenerate_subset) run_one(exact.dual_extremal);
    }
    return best;
}

std::vector<double> mcshane_extend(const FiniteMetricSpace& space,
                                   std::span<const PointId> subset, std::span<const double> f,
                                   double lip) {
    if (subset.empty()) throw std::invalid_argument("mcshane_extend: empty subset");
    if (f.size() != subset.size())
        throw std::invalid_argument("mcshane_extend: value count mismatch");
    double lip_f = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            lip_f = std::max(lip_f, std::abs(f[i] - f[j]) / space.dist(subset[i], subset[j]));
    if (lip < lip_f * (1.0 - 1e-15))
        throw std::invalid_argument("mcshane_extend: L below the Lipschitz constant of f");

    std::vector<double> out(space.size());
    for (PointId m = 0; m < space.size(); ++m) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < subset.size(); ++i)
            best = std::min(best, f[i] + lip * space.dist(m, subset[i]));
        out[m] = best;
    }
    return out;
}

BoundReport bound_report(const FiniteMetricSpace& space, std::vector<PointId> subset,
                         const MeasureFamily& family, double r_max) {
    BoundReport report;
    report.doubling = family_doubling(family);
    report.consistency = consistency(family, r_max);
    report.r_max = r_max;
    report.uniformity = uniformity(family);
    report.n = choose_n(report.doubling);
    report.l = 1.0 + 1.0 / report.n;

    const LiftedSpace lift(family, report.n);
    // the full critical-radius union grows quadratically with the point
    // count; the certificates are sampled lower bounds, so the report thins
    // the grid deterministically (the lift CLI keeps the full grid)
    auto grid = default_radius_grid(family, r_max, 256);
    constexpr std::size_t grid_cap = 768;
    if (grid.size() > grid_cap) {
        std::vector<double> thinned;
        thinned.reserve(grid_cap);
        for (std::size_t i = 0; i < grid_cap; ++i)
            thinned.push_back(grid[i * (grid.size() - 1) / (grid_cap - 1)]);
        thinned.erase(std::unique(thinned.begin(), thinned.end()), thinned.end());
        grid = std::move(thinned);
    }
    const CertReport dil = certify_dilation(lift, grid);
    const CertReport cons = certify_consistency(lift, grid, report.consistency, r_max);
    const CertReport rad = certify_radial_regularity(lift, grid);
    report.dilation_sup = dil.sup_found;
    report.dilation_bound = dil.bound;
    report.consistency_sup = cons.sup_found;
    report.consistency_bound = cons.bound;
    report.radial_sup = rad.sup_found;
    report.radial_bound = rad.bound;
    report.certificates_pass = dil.pass && cons.pass && rad.pass;

    // Eq-shape constants at l = 1 + 1/n, with the certified dilation value
    const double a_n = radial_regularity_bound(report.n);
    const double c_n = report.consistency_bound;
    report.k_n_l = 42.0 * (a_n + c_n) * report.dilation_sup * (report.l + 3.0);
    report.lifted_norm_bound =
        56.0 * a_n + std::max(14.0 * (report.l + 3.0) / (report.l - 1.0), report.k_n_l);
    report.shape_bound = (report.consistency + 1.0) * (std::log2(report.doubling) + 6.0);

    const ExtensionOperator op = build_operator(space, std::move(subset), family);
    const OperatorNorm norm = operator_norm_exact(op);
    report.empirical_norm = norm.value;
    report.degenerate_subset = norm.degenerate_subset;
    report.norm_to_shape_ratio = report.empirical_norm / report.shape_bound;

    double separation = 0.0;
    const auto& s = op.subset();
    if (s.size() >= 2) {
        separation = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                separation = std::min(separation, space.dist(s[i], s[j]));
    }
    report.subset_separation = separation;
    report.net_embed_r0_unit_mu = 64.0 * separation;
    return report;
}

} // namespace lipext
