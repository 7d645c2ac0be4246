#include "lipext/free_space.hpp"
#include "lipext/generators.hpp"
#include "lipext/rng.hpp"
#include "lipext/simplex.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace lipext;

namespace {

BalancedChain delta_chain(std::size_t n, PointId a, PointId b) {
    BalancedChain chain{std::vector<double>(n, 0.0)};
    chain.coefficients[a] = 1.0;
    chain.coefficients[b] = -1.0;
    return chain;
}

} // namespace

TEST_CASE("simplex solves a textbook instance") {
    // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> x = 4, y = 0, value 12
    const auto sol = simplex_maximize({{1, 1}, {1, 3}}, {4, 6}, {3, 2});
    REQUIRE(sol.has_value());
    CHECK(sol->value == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(sol->x[0] == doctest::Approx(4.0).epsilon(1e-12));
    const auto unbounded = simplex_maximize({{-1.0, 0.0}}, {1}, {1, 0});
    CHECK_FALSE(unbounded.has_value());
}

TEST_CASE("kr norm of a delta chain is the distance") {
    const auto path = gen_path(3);
    const auto result = kr_norm(path, delta_chain(3, 0, 2));
    CHECK(result.value == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(result.plan.flows.size() == 1);
    CHECK(result.plan.flows[0].from == 0);
    CHECK(result.plan.flows[0].to == 2);
}

TEST_CASE("zero chain has zero norm") {
    const auto path = gen_path(3);
    const BalancedChain zero{std::vector<double>(3, 0.0)};
    CHECK(kr_norm(path, zero).value == 0.0);
    CHECK(kr_norm_dual(path, zero, 0).value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unbalanced chains are rejected") {
    const auto path = gen_path(3);
    const BalancedChain bad{{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(kr_norm(path, bad), std::invalid_argument);
    CHECK_THROWS_AS(kr_norm_dual(path, bad, 0), std::invalid_argument);
}

TEST_CASE("P3 split chain: transport value 1 by plan enumeration") {
    // chain (1, -1/2, -1/2) at points (1; 0, 2): the only plans route mass
    // from point 1 to both ends, cost 0.5*1 + 0.5*1 = 1
    const auto path = gen_path(3);
    const BalancedChain chain{{-0.5, 1.0, -0.5}};
    const auto result = kr_norm(path, chain);
    CHECK(result.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kr_norm_dual(path, chain, 0).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dual LP matches the flow optimum with a norm-attaining extremal") {
    Rng rng(4242);
    const auto spaces = std::vector<FiniteMetricSpace>{
        gen_path(5), gen_tree(2, 2), gen_euclidean_cloud(9, 2, 2).space,
        gen_h2_cloud(8, 1.5, 3)};
    for (const auto& space : spaces) {
        for (int trial = 0; trial < 25; ++trial) {
            BalancedChain chain{oracle::random_balanced_chain(space.size(), rng)};
            const auto primal = kr_norm(space, chain);
            const auto dual = kr_norm_dual(space, chain, 0);
            CHECK(std::abs(primal.value - dual.value) <= 1e-9);

            // the LP extremal is 1-Lipschitz and attains the value
            double pairing = 0.0;
            for (PointId m = 0; m < space.size(); ++m)
                pairing += chain.coefficients[m] * dual.extremal[m];
            CHECK(pairing == doctest::Approx(primal.value).epsilon(1e-9));
            for (PointId a = 0; a < space.size(); ++a)
                for (PointId b = 0; b < space.size(); ++b)
                    if (a != b)
                        CHECK(dual.extremal[a] - dual.extremal[b] <=
                              space.dist(a, b) + 1e-9);

            // so is the potential-derived extremal from the flow route
            const auto witness = kr_extremal(space, primal, 0);
            double pairing2 = 0.0;
            for (PointId m = 0; m < space.size(); ++m)
                pairing2 += chain.coefficients[m] * witness[m];
            CHECK(pairing2 == doctest::Approx(primal.value).epsilon(1e-9));
            for (PointId a = 0; a < space.size(); ++a)
                for (PointId b = 0; b < space.size(); ++b)
                    if (a != b)
                        CHECK(witness[a] - witness[b] <= space.dist(a, b) + 1e-9);
            CHECK(witness[0] == 0.0);
        }
    }
}

TEST_CASE("dual extremal of a delta chain is the McShane shape") {
    const auto path = gen_path(4);
    const auto dual = kr_norm_dual(path, delta_chain(4, 0, 3), 0);
    CHECK(dual.value == doctest::Approx(3.0).epsilon(1e-9));
    // f = d(., b) - d(m*, b) maximizes; any optimal f matches it on the atoms
    CHECK(dual.extremal[0] - dual.extremal[3] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("norm axioms over random chains") {
    const auto space = gen_euclidean_cloud(8, 2, 31).space;
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_balanced_chain(space.size(), rng);
        const auto b = oracle::random_balanced_chain(space.size(), rng);
        const double scale = rng.uniform(-3.0, 3.0);

        BalancedChain ca{a}, cb{b};
        BalancedChain scaled{a}, sum{a};
        for (std::size_t i = 0; i < a.size(); ++i) {
            scaled.coefficients[i] *= scale;
            sum.coefficients[i] += b[i];
        }
        CHECK(kr_norm(space, scaled).value ==
              doctest::Approx(std::abs(scale) * kr_norm(space, ca).value).epsilon(1e-9));
        CHECK(kr_norm(space, sum).value <=
              kr_norm(space, ca).value + kr_norm(space, cb).value + 1e-9);
    }
}

TEST_CASE("dual value does not depend on the basepoint") {
    const auto space = gen_tree(2, 2);
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        BalancedChain chain{oracle::random_balanced_chain(space.size(), rng)};
        const double v0 = kr_norm_dual(space, chain, 0).value;
        const double v3 = kr_norm_dual(space, chain, 3).value;
        CHECK(v0 == doctest::Approx(v3).epsilon(1e-9));
    }
}

TEST_CASE("flow matches the LP on larger chains than the oracle scale") {
    // protects the sweep-scale solves: 24 atoms, dense constraint LP
    const auto space = gen_euclidean_cloud(24, 2, 90).space;
    Rng rng(91);
    for (int trial = 0; trial < 8; ++trial) {
        BalancedChain chain{oracle::random_balanced_chain(space.size(), rng)};
        const double primal = kr_norm(space, chain).value;
        const double dual = kr_norm_dual(space, chain, 0).value;
        CHECK(std::abs(primal - dual) <= 1e-9 * (1.0 + primal));
    }
}

TEST_CASE("delta isometry holds on every corpus shape") {
    CHECK(delta_isometry_check(gen_path(3)));
    CHECK(delta_isometry_check(gen_tree(2, 2)));
    CHECK(delta_isometry_check(gen_euclidean_cloud(12, 3, 8).space));
    CHECK(delta_isometry_check(gen_h2_cloud(10, 2.0, 9)));
    const auto two = gen_path(2);
    CHECK(delta_isometry_check(two)); // single pair
}
