#include "lipext/whitney.hpp"

#include "lipext/rng.hpp"
#include "lipext/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipext {

std::vector<double> WhitneyApparatus::apply(std::span<const double> f_on_subset,
                                            std::size_t k) const {
    const std::size_t s = subset.size();
    if (f_on_subset.size() != s * k)
        throw std::invalid_argument("whitney apply: boundary data size mismatch");
    const std::size_t n = space->size();
    std::vector<double> out(n * k, 0.0);
    for (PointId m = 0; m < n; ++m) {
        for (std::size_t col = 0; col < s; ++col) {
            const double w = dugundji[m * s + col];
            if (w == 0.0) continue;
            for (std::size_t c = 0; c < k; ++c) out[m * k + c] += w * f_on_subset[col * k + c];
        }
    }
    return out;
}

WhitneyApparatus build_whitney(const FiniteMetricSpace& space, std::vector<PointId> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.empty()) throw std::invalid_argument("whitney: subset must be nonempty");
    for (PointId s : subset)
        if (s >= space.size()) throw std::invalid_argument("whitney: subset index out of range");

    WhitneyApparatus app;
    app.space = &space;
    app.subset = std::move(subset);
    const std::size_t n = space.size();
    const std::size_t s = app.subset.size();

    std::vector<std::size_t> subset_col(n, n); // point -> column in S, n = not in S
    for (std::size_t col = 0; col < s; ++col) subset_col[app.subset[col]] = col;
    for (PointId m = 0; m < n; ++m)
        if (subset_col[m] == n) app.complement.push_back(m);

    app.dugundji.assign(n * s, 0.0);
    for (PointId m : app.subset) app.dugundji[m * s + subset_col[m]] = 1.0;

    if (app.complement.empty()) {
        // S = M: the apparatus degenerates to the identity, flagged
        app.identity_convention = true;
        return app;
    }

    const std::size_t c = app.complement.size();
    app.cover_radii.resize(c);
    app.selected_m1.resize(c);
    for (std::size_t a = 0; a < c; ++a) {
        const PointId alpha = app.complement[a];
        const double d_to_s = space.dist_to_set(app.subset, alpha);
        app.cover_radii[a] = d_to_s / 3.0;
        // m2(alpha) = alpha; m1(alpha) = nearest point of S, lowest index on
        // ties, which keeps d(m1, m2) = d(alpha, S) < 2 d(alpha, S)
        PointId nearest = app.subset.front();
        for (PointId cand : app.subset) {
            if (space.dist(alpha, cand) < space.dist(alpha, nearest)) nearest = cand;
        }
        app.selected_m1[a] = nearest;
    }

    // tent partition of unity: phi_alpha(m) = max(0, r_alpha - d(m, alpha));
    // m supports its own tent, so the normalizer is at least r_m > 0
    app.pou.assign(c * c, 0.0);
    for (std::size_t mi = 0; mi < c; ++mi) {
        const PointId m = app.complement[mi];
        double total = 0.0;
        for (std::size_t a = 0; a < c; ++a) {
            const double tent = app.cover_radii[a] - space.dist(m, app.complement[a]);
            if (tent > 0.0) {
                app.pou[mi * c + a] = tent;
                total += tent;
            }
        }
        for (std::size_t a = 0; a < c; ++a) app.pou[mi * c + a] /= total;
    }

    for (std::size_t mi = 0; mi < c; ++mi) {
        const PointId m = app.complement[mi];
        for (std::size_t a = 0; a < c; ++a) {
            const double p = app.pou[mi * c + a];
            if (p > 0.0) app.dugundji[m * s + subset_col[app.selected_m1[a]]] += p;
        }
    }
    return app;
}

namespace {

double scalar_lipschitz_on_subset(const FiniteMetricSpace& space, std::span<const PointId> subset,
                                  std::span<const double> f) {
    double lip = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            lip = std::max(lip, std::abs(f[i] - f[j]) / space.dist(subset[i], subset[j]));
    return lip;
}

} // namespace

Factor7Report certify_factor7(const WhitneyApparatus& apparatus, std::size_t trials,
                              std::uint64_t seed) {
    const auto& space = *apparatus.space;
    const std::size_t n = space.size();
    const std::size_t s = apparatus.subset.size();

    std::vector<double> dist_to_subset(n);
    for (PointId m = 0; m < n; ++m) dist_to_subset[m] = space.dist_to_set(apparatus.subset, m);

    Factor7Report report;
    Rng rng(seed);

    auto run_one = [&](std::span<const double> f) {
        const double lip = scalar_lipschitz_on_subset(space, apparatus.subset, f);
        if (!(lip > 0.0)) return;
        const auto extended = apparatus.apply(f);
        for (PointId m = 0; m < n; ++m) {
            for (PointId m2 = m + 1; m2 < n; ++m2) {
                const double denom =
                    lip * (space.dist(m, m2) + dist_to_subset[m] + dist_to_subset[m2]);
                const double ratio = std::abs(extended[m] - extended[m2]) / denom;
                report.max_ratio = std::max(report.max_ratio, ratio);
            }
        }
        ++report.functions_tested;
    };

    std::vector<double> f(s);
    for (std::size_t t = 0; t < trials; ++t) {
        for (double& v : f) v = rng.uniform();
        run_one(f);
    }
    // distance-to-point candidates, the scalar extremal shape
    const std::size_t candidate_count = std::min<std::size_t>(s, 64);
    for (std::size_t c = 0; c < candidate_count; ++c) {
        const PointId anchor = apparatus.subset[c * s / candidate_count];
        for (std::size_t i = 0; i < s; ++i)
            f[i] = space.dist(apparatus.subset[i], anchor) -
                   space.dist(apparatus.subset.front(), anchor);
        run_one(f);
    }

    report.pass = report.max_ratio <= 7.0 + tol::certificate_slack;
    return report;
}

} // namespace lipext
