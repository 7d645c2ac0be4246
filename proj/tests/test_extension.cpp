#include "lipext/extension.hpp"
#include "lipext/free_space.hpp"
#include "lipext/generators.hpp"
#include "lipext/lift.hpp"
#include "lipext/rng.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace lipext;

namespace {

ExtensionOperator p3_operator() {
    static const auto path = gen_path(3);
    static const auto family = counting_family(path);
    return build_operator(path, {0, 2}, family);
}

} // namespace

TEST_CASE("P3 worked instance") {
    const auto op = p3_operator();
    // R = 1 at point 1, B_1(1) = {1}, so the row equals the Dugundji row (1, 0)
    CHECK(op.row_at(1, 0) == 1.0);
    CHECK(op.row_at(1, 1) == 0.0);
    CHECK(op.row_at(0, 0) == 1.0);
    CHECK(op.row_at(2, 1) == 1.0);

    const std::vector<double> f = {0.0, 2.0};
    const auto ef = op.apply(f);
    CHECK(ef == std::vector<double>{0.0, 0.0, 2.0});
    CHECK(lipschitz_constant(op.space(), ef) == doctest::Approx(2.0).epsilon(1e-15));

    const auto norm = operator_norm_exact(op);
    CHECK(norm.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(norm.degenerate_subset);
    // the dual extremal f = (0, 2) on S attains it
    const auto sampled = operator_norm_sampled(op, 40, 17);
    CHECK(sampled == doctest::Approx(norm.value).epsilon(1e-9));
}

TEST_CASE("S = M gives the identity with norm 1") {
    const auto path = gen_path(4);
    const auto family = counting_family(path);
    const auto op = build_operator(path, {0, 1, 2, 3}, family);
    const std::vector<double> f = {0.3, -1.0, 2.0, 0.0};
    CHECK(op.apply(f) == f);
    CHECK(operator_norm_exact(op).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(operator_norm_sampled(op, 10, 3) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("singleton S degenerates with a flag") {
    const auto path = gen_path(4);
    const auto family = counting_family(path);
    const auto op = build_operator(path, {2}, family);
    const auto norm = operator_norm_exact(op);
    CHECK(norm.degenerate_subset);
    CHECK(norm.value == 0.0);
    // constant extension of the single value
    const std::vector<double> f = {5.0};
    for (double v : op.apply(f)) CHECK(v == 5.0);
}

TEST_CASE("extension identity, stochasticity and convex hull across instances") {
    Rng rng(8);
    const auto spaces = std::vector<FiniteMetricSpace>{
        gen_path(9), gen_tree(2, 3), gen_euclidean_cloud(20, 2, 5).space,
        gen_h2_cloud(15, 2.0, 6)};
    for (const auto& space : spaces) {
        for (const auto& family : {counting_family(space), decay_family(space, 1.0)}) {
            const std::vector<PointId> subset = {0, space.size() / 3, space.size() - 1};
            const auto op = build_operator(space, subset, family);

            for (PointId m = 0; m < space.size(); ++m) {
                double sum = 0.0;
                for (std::size_t col = 0; col < op.subset_size(); ++col) {
                    CHECK(op.row_at(m, col) >= 0.0);
                    sum += op.row_at(m, col);
                }
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }

            std::vector<double> f(op.subset_size());
            for (double& v : f) v = rng.uniform(-2.0, 2.0);
            const auto ef = op.apply(f);
            double lo = f[0], hi = f[0];
            for (double v : f) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            for (std::size_t i = 0; i < op.subset_size(); ++i)
                CHECK(ef[op.subset()[i]] == f[i]); // exact extension identity
            for (double v : ef) {
                CHECK(v >= lo - 1e-12);
                CHECK(v <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("apply is linear to machine precision") {
    const auto space = gen_tree(2, 3);
    const auto family = decay_family(space, 1.0);
    const auto op = build_operator(space, {0, 4, 9, 14}, family);
    Rng rng(19);
    std::vector<double> f(4), g(4), combo(4);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
        for (std::size_t i = 0; i < 4; ++i) {
            f[i] = rng.uniform(-1.0, 1.0);
            g[i] = rng.uniform(-1.0, 1.0);
            combo[i] = a * f[i] + b * g[i];
        }
        const auto ef = op.apply(f), eg = op.apply(g), ec = op.apply(combo);
        for (PointId m = 0; m < space.size(); ++m)
            CHECK(ec[m] == doctest::Approx(a * ef[m] + b * eg[m]).epsilon(1e-12));
    }
}

TEST_CASE("basepoint shift identity for stochastic rows") {
    const auto space = gen_path(7);
    const auto family = counting_family(space);
    const auto op = build_operator(space, {1, 4, 6}, family);
    const std::vector<double> f = {0.7, -0.9, 1.4};
    const double shift = f[0]; // value at the basepoint m* = first subset point
    std::vector<double> pointed(f);
    for (double& v : pointed) v -= shift;
    const auto ef = op.apply(f);
    const auto ep = op.apply(pointed);
    for (PointId m = 0; m < space.size(); ++m)
        CHECK(ep[m] + shift == doctest::Approx(ef[m]).epsilon(1e-12));
}

TEST_CASE("lipschitz constants of simple fields") {
    const auto path = gen_path(3);
    CHECK(lipschitz_constant(path, std::vector<double>{4.0, 4.0, 4.0}) == 0.0);
    // distance to a fixed point has constant exactly 1
    std::vector<double> d0 = {0.0, 1.0, 2.0};
    CHECK(lipschitz_constant(path, d0) == 1.0);
    CHECK(lipschitz_constant(path, std::vector<double>{0.0, 0.0, 2.0}) == 2.0);

    // vector-valued: the l_inf norm takes the worst component
    const std::vector<double> field = {0, 0, 1, 0, 2, 0};
    CHECK(lipschitz_constant(path, field, 2, VectorNorm::linf) == 1.0);
    CHECK(lipschitz_constant(path, field, 2, VectorNorm::l1) == 1.0);
}

TEST_CASE("sampled norm brackets the exact norm") {
    Rng rng(23);
    const auto space = gen_euclidean_cloud(14, 2, 40).space;
    for (const auto& family : {counting_family(space), decay_family(space, 1.0)}) {
        const auto op = build_operator(space, {0, 3, 7, 11}, family);
        const auto exact = operator_norm_exact(op);
        const double with_extremal = operator_norm_sampled(op, 30, 7, true);
        const double without = operator_norm_sampled(op, 30, 7, false);
        CHECK(without <= exact.value + 1e-9);
        CHECK(with_extremal <= exact.value + 1e-9);
        CHECK(with_extremal >= exact.value - 1e-9);
    }
}

TEST_CASE("vector contract under the l_inf target norm") {
    const auto space = gen_tree(2, 3);
    const auto family = counting_family(space);
    const auto op = build_operator(space, {0, 5, 10}, family);
    const double norm = operator_norm_exact(op).value;
    Rng rng(3);
    const std::size_t k = 3;
    std::vector<double> f(op.subset_size() * k);
    for (int trial = 0; trial < 20; ++trial) {
        for (double& v : f) v = rng.uniform(-1.0, 1.0);
        const auto sub_lip = [&] {
            // Lipschitz constant of f on the subset under l_inf
            double lip = 0.0;
            const auto& s = op.subset();
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    double diff = 0.0;
                    for (std::size_t c = 0; c < k; ++c)
                        diff = std::max(diff, std::abs(f[i * k + c] - f[j * k + c]));
                    lip = std::max(lip, diff / space.dist(s[i], s[j]));
                }
            return lip;
        }();
        const auto ef = op.apply(f, k);
        CHECK(lipschitz_constant(space, ef, k, VectorNorm::linf) <=
              norm * sub_lip + 1e-9);
    }
}

TEST_CASE("mcshane extension") {
    const auto path = gen_path(3);
    const std::vector<PointId> s = {0, 2};
    const std::vector<double> f = {0.0, 2.0};
    const auto ext = mcshane_extend(path, s, f, 1.0);
    CHECK(ext == std::vector<double>{0.0, 1.0, 2.0}); // F(1) = min(1, 3)
    CHECK(lipschitz_constant(path, ext) == doctest::Approx(1.0));

    // S = M reproduces f when L = L(f)
    const std::vector<PointId> all = {0, 1, 2};
    const std::vector<double> g = {0.0, 0.5, 0.2};
    const auto same = mcshane_extend(path, all, g, lipschitz_constant(path, g));
    for (std::size_t i = 0; i < 3; ++i) CHECK(same[i] == doctest::Approx(g[i]).epsilon(1e-12));

    const std::vector<double> flat = {1.0, 1.0};
    const auto constant = mcshane_extend(path, s, flat, 0.0);
    CHECK(constant == std::vector<double>{1.0, 1.0, 1.0});

    CHECK_THROWS_AS(mcshane_extend(path, s, f, 0.5), std::invalid_argument); // L < L(f)

    // extension property and L(F) <= L in general
    const auto cloud = gen_euclidean_cloud(15, 2, 2).space;
    const std::vector<PointId> sub = {0, 4, 9};
    const std::vector<double> vals = {0.0, 1.0, -0.5};
    const double base_lip = [&] {
        double lip = 0.0;
        for (std::size_t i = 0; i < sub.size(); ++i)
            for (std::size_t j = i + 1; j < sub.size(); ++j)
                lip = std::max(lip, std::abs(vals[i] - vals[j]) / cloud.dist(sub[i], sub[j]));
        return lip;
    }();
    for (double slack : {1.0, 1.5, 3.0}) {
        const auto ext2 = mcshane_extend(cloud, sub, vals, base_lip * slack);
        for (std::size_t i = 0; i < sub.size(); ++i)
            CHECK(ext2[sub[i]] == doctest::Approx(vals[i]).epsilon(1e-12));
        CHECK(lipschitz_constant(cloud, ext2) <= base_lip * slack + 1e-12);
    }
}

TEST_CASE("exact norm agrees with the per-pair LP oracle on small instances") {
    // independent route: for each pair, maximize the row difference against
    // all Lipschitz-1 boundary functions as a linear program
    const auto space = gen_euclidean_cloud(8, 2, 51).space;
    const auto family = decay_family(space, 1.0);
    const auto op = build_operator(space, {0, 2, 5, 7}, family);
    const auto exact = operator_norm_exact(op);

    const auto& s = op.subset();
    FiniteMetricSpace sub = [&] {
        std::vector<std::string> labels;
        std::vector<double> dist;
        for (PointId a : s) labels.push_back(space.labels()[a]);
        for (PointId a : s)
            for (PointId b : s) dist.push_back(space.dist(a, b));
        return FiniteMetricSpace(labels, dist);
    }();
    double oracle_norm = 0.0;
    for (PointId a = 0; a < space.size(); ++a) {
        for (PointId b = a + 1; b < space.size(); ++b) {
            BalancedChain chain{std::vector<double>(s.size(), 0.0)};
            for (std::size_t col = 0; col < s.size(); ++col)
                chain.coefficients[col] = op.row_at(a, col) - op.row_at(b, col);
            oracle_norm =
                std::max(oracle_norm, kr_norm_dual(sub, chain, 0).value / space.dist(a, b));
        }
    }
    CHECK(exact.value == doctest::Approx(oracle_norm).epsilon(1e-9));
}

TEST_CASE("bound report assembles the certified constants") {
    SUBCASE("constant family on P8: C = 0 zeroes the consistency block") {
        const auto path = gen_path(8);
        const auto family = counting_family(path);
        const auto report = bound_report(path, {0, 7}, family, path.diameter());
        CHECK(report.consistency == 0.0);
        CHECK(report.consistency_bound == 0.0);
        CHECK(report.certificates_pass);
        const double a_n = 1.2 * std::exp(4.0) * report.n;
        CHECK(report.k_n_l ==
              doctest::Approx(42.0 * a_n * report.dilation_sup * (report.l + 3.0))
                  .epsilon(1e-12));
        CHECK(report.lifted_norm_bound >= 56.0 * a_n);
        CHECK(report.empirical_norm >= 1.0);
        CHECK(std::isfinite(report.norm_to_shape_ratio));
    }
    SUBCASE("single-atom family: n = 6, l = 7/6, A_6 ~ 393.1") {
        const auto path = gen_path(4);
        const auto family = identity_family(path);
        const auto report = bound_report(path, {0, 3}, family, path.diameter());
        CHECK(report.doubling == 1.0);
        CHECK(report.n == 6);
        CHECK(report.l == doctest::Approx(7.0 / 6.0));
        CHECK(report.radial_bound == doctest::Approx(393.1).epsilon(1e-3));
        CHECK(report.certificates_pass);
    }
    SUBCASE("a 50-point cloud exercises the thinned grid and pair pool") {
        const auto cloud = gen_euclidean_cloud(50, 2, 14).space;
        const auto family = decay_family(cloud, 1.0);
        const auto report =
            bound_report(cloud, {0, 9, 19, 29, 39, 49}, family, cloud.diameter());
        CHECK(report.certificates_pass);
        CHECK(report.empirical_norm >= 1.0);
        CHECK(std::isfinite(report.norm_to_shape_ratio));
        // deterministic across repeated runs
        const auto again =
            bound_report(cloud, {0, 9, 19, 29, 39, 49}, family, cloud.diameter());
        CHECK(report.empirical_norm == again.empirical_norm);
        CHECK(report.consistency_sup == again.consistency_sup);
    }
}
