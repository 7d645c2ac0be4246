#pragma once

#include "lipext/metric_space.hpp"

#include <cstdint>

namespace lipext {

// The Dugundji-Whitney apparatus for a subset S: a cover of the complement by
// balls of radius d(m, S)/3, a tent partition of unity subordinate to it,
// selected pairs (m1(alpha) in S, m2(alpha) = alpha), and the resulting
// row-stochastic matrix mapping boundary data to the pre-extension.
struct WhitneyApparatus {
    const FiniteMetricSpace* space = nullptr;
    std::vector<PointId> subset;     // S, sorted ascending
    std::vector<PointId> complement; // S^c, sorted ascending
    bool identity_convention = false; // S = M: the apparatus is the identity

    std::vector<double> cover_radii; // r_alpha = d(alpha, S)/3, per complement index
    std::vector<double> pou;         // |S^c| x |S^c| row-major: pou[m][alpha]
    std::vector<PointId> selected_m1; // per complement index; m2(alpha) = alpha

    std::vector<double> dugundji; // |M| x |S| row-major, row-stochastic

    double pou_at(std::size_t comp_m, std::size_t comp_alpha) const {
        return pou[comp_m * complement.size() + comp_alpha];
    }
    double matrix_at(PointId m, std::size_t s_col) const {
        return dugundji[m * subset.size() + s_col];
    }

    // matrix action on boundary data (k columns, row-major over S)
    std::vector<double> apply(std::span<const double> f_on_subset, std::size_t k = 1) const;
};

// Deterministic build: m1(alpha) is the nearest point of S, ties broken by
// lowest index; throws for empty S. S = M is flagged and yields the identity.
WhitneyApparatus build_whitney(const FiniteMetricSpace& space, std::vector<PointId> subset);

struct Factor7Report {
    double max_ratio = 0.0; // over pairs and trial functions
    std::size_t functions_tested = 0;
    bool pass = false;      // max_ratio <= 7 + slack
};

// Certifies |f^(m) - f^(m')| <= 7 L(f) {d(m,m') + d(m,S) + d(m',S)} over random
// Lipschitz boundary functions and the distance-based extremal candidates.
Factor7Report certify_factor7(const WhitneyApparatus& apparatus, std::size_t trials,
                              std::uint64_t seed);

} // namespace lipext
