#include "lipext/generators.hpp"
#include "lipext/lift.hpp"
#include "lipext/measures.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace lipext;

TEST_CASE("family invariants are enforced") {
    const auto path = gen_path(2);
    CHECK_THROWS_AS(MeasureFamily(path, {0.0, 1.0, 1.0, 1.0}), std::invalid_argument); // w_m(m)=0
    CHECK_THROWS_AS(MeasureFamily(path, {1.0, -0.5, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(MeasureFamily(path, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("point doubling trivial cases") {
    const auto single = gen_path(1);
    CHECK(point_doubling(MeasureFamily(single, {3.5}), 0) == 1.0);

    const auto path = gen_path(5);
    const auto identity = identity_family(path);
    for (PointId m = 0; m < path.size(); ++m) CHECK(point_doubling(identity, m) == 1.0);
}

TEST_CASE("counting measure on P8: doubling by enumeration") {
    const auto path = gen_path(8);
    const auto family = counting_family(path);
    // frozen from the independent brute-force sweep: ends 2, interior 3
    CHECK(point_doubling(family, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(point_doubling(family, 7) == doctest::Approx(2.0).epsilon(1e-15));
    for (PointId m = 1; m <= 6; ++m)
        CHECK(point_doubling(family, m) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(family_doubling(family) == doctest::Approx(3.0).epsilon(1e-15));

    // cross-check against the dense-sweep oracle
    for (PointId m = 0; m < path.size(); ++m)
        CHECK(point_doubling(family, m) ==
              doctest::Approx(oracle::point_doubling_brute(family, m)).epsilon(1e-12));
}

TEST_CASE("dilation at 2 equals the doubling constant") {
    const auto p8 = gen_path(8);
    const auto tree = gen_tree(2, 3);
    const auto cloud = gen_euclidean_cloud(15, 2, 4);
    const MeasureFamily families[] = {counting_family(p8), decay_family(tree, 1.0),
                                      identity_family(cloud.space)};
    for (const auto& family : families)
        CHECK(dilation(family, 2.0) == doctest::Approx(family_doubling(family)).epsilon(1e-15));
}

TEST_CASE("dilation basics") {
    const auto path = gen_path(8);
    const auto identity = identity_family(path);
    for (double l : {1.2, 1.5, 3.0, 10.0}) CHECK(dilation(identity, l) == 1.0);

    const auto counting = counting_family(path);
    CHECK(dilation(counting, 1.5) == doctest::Approx(3.0).epsilon(1e-15)); // enumerated sup
    CHECK_THROWS_AS(dilation(counting, 1.0), std::invalid_argument);
}

TEST_CASE("dilation is nondecreasing in l and at least 1") {
    const auto cloud = gen_euclidean_cloud(20, 2, 17);
    const auto family = decay_family(cloud.space, 1.5);
    double prev = 1.0;
    for (double l : {1.05, 1.1, 1.3, 1.7, 2.0, 2.8, 4.0}) {
        const double value = dilation(family, l);
        CHECK(value >= prev - 1e-15);
        CHECK(value >= 1.0);
        prev = value;
    }
}

TEST_CASE("consistency of constant families is zero") {
    const auto spaces = std::vector<FiniteMetricSpace>{gen_path(8), gen_tree(2, 3)};
    for (const auto& space : spaces) {
        const auto counting = counting_family(space);
        CHECK(consistency(counting, space.diameter()) == 0.0);
    }
    const auto single = gen_path(1);
    const MeasureFamily one(single, {2.0});
    CHECK(consistency(one, 1.0) == 0.0);
    CHECK(uniformity(one) == 1.0);
}

TEST_CASE("uniformity compares centered ball masses") {
    // K = 1 needs center-independent ball masses, as for a single atom at the
    // center (the discrete analogue of Lebesgue mass c R^n) or a symmetric
    // two-point space; a constant family on a path picks up boundary effects
    const auto p8 = gen_path(8);
    CHECK(uniformity(identity_family(p8)) == 1.0);
    const auto two = gen_path(2);
    CHECK(uniformity(counting_family(two)) == 1.0);
    // frozen from enumeration: interior B_4 holds 7 points, end B_4 holds 4
    CHECK(uniformity(counting_family(p8)) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(uniformity(decay_family(p8, 1.0)) >= 1.0);
}

TEST_CASE("exp-decay family on P3: enumerated constants") {
    const auto path = gen_path(3);
    const auto family = decay_family(path, 1.0);
    const double e1 = std::exp(-1.0);
    // frozen closed forms from the enumeration: D = 1 + 2/e attained at the
    // center, C = 4(1-1/e)/(1+1/e) at pair (0,1) with R = 2,
    // K = (1+2/e)/(1+1/e)
    CHECK(family_doubling(family) == doctest::Approx(1.0 + 2.0 * e1).epsilon(1e-15));
    CHECK(consistency(family, 2.0) ==
          doctest::Approx(4.0 * (1.0 - e1) / (1.0 + e1)).epsilon(1e-14));
    CHECK(uniformity(family) ==
          doctest::Approx((1.0 + 2.0 * e1) / (1.0 + e1)).epsilon(1e-15));
}

TEST_CASE("uniformity of counting on an unbalanced tree") {
    // path 0-1-2 with an extra leaf 3 attached to 0
    const auto tree = FiniteMetricSpace::from_rows(
        {"0", "1", "2", "3"}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 3}, {1, 2, 3, 0}});
    const auto family = counting_family(tree);
    CHECK(uniformity(family) == doctest::Approx(1.5).epsilon(1e-15)); // enumerated sup
    CHECK(family_doubling(family) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("tensor of single-atom families is a single-atom family") {
    const auto path = gen_path(2);
    const auto identity = identity_family(path);
    const auto prod = product_space({&path, &path}, ProductExponent::inf());
    const auto tensor = tensor_family(prod, {&identity, &identity});
    for (PointId m = 0; m < 4; ++m) {
        for (PointId j = 0; j < 4; ++j) CHECK(tensor.weight(m, j) == (m == j ? 1.0 : 0.0));
    }
}

TEST_CASE("p = inf tensor ball masses factorize at every critical radius") {
    const auto path = gen_path(3);
    const auto f1 = counting_family(path);
    const auto f2 = decay_family(path, 0.7);
    const auto prod = product_space({&path, &path}, ProductExponent::inf());
    const auto tensor = tensor_family(prod, {&f1, &f2});
    const std::size_t sizes[] = {3, 3};
    for (PointId m = 0; m < prod.size(); ++m) {
        const auto cm = product_coords(sizes, m);
        for (double r : prod.critical_radii(m)) {
            for (double radius : {r, r * 1.000001}) {
                const double lhs = tensor.ball_mass(m, radius);
                const double rhs =
                    f1.ball_mass(cm[0], radius) * f2.ball_mass(cm[1], radius);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
    // worked instance: counting x counting at center (1,1), R = 1.5 -> 9
    const auto cc = tensor_family(prod, {&f1, &f1});
    CHECK(cc.ball_mass(4, 1.5) == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("tensor family rejects mismatched product spaces") {
    const auto path = gen_path(3);
    const auto family = counting_family(path);
    const auto wrong = product_space({&path, &path, &path}, ProductExponent::inf());
    CHECK_THROWS_AS(tensor_family(wrong, {&family, &family}), std::invalid_argument);
}

TEST_CASE("product constant checks, p = inf") {
    const auto path = gen_path(3);
    const auto counting = counting_family(path);
    SUBCASE("two constant families stay constant") {
        const auto report = product_constant_checks({&counting, &counting},
                                                    ProductExponent::inf());
        CHECK(report.all_pass());
        CHECK(report.consistency_sup == 0.0);
        CHECK(report.consistency_bound == 0.0);
        for (const auto& d : report.dilation_factorization)
            CHECK(d.tensor_value == doctest::Approx(d.factor_product).epsilon(1e-12));
    }
    SUBCASE("decay factors factorize and obey the consistency bound") {
        const auto decay = decay_family(path, 1.0);
        const auto report =
            product_constant_checks({&decay, &decay}, ProductExponent::inf());
        CHECK(report.all_pass());
        CHECK(report.consistency_sup <= report.consistency_bound + 1e-12);
    }
}

TEST_CASE("product constant checks, p = 2 doubling bound by enumeration") {
    const auto path = gen_path(3);
    const auto counting = counting_family(path);
    const auto report = product_constant_checks({&counting, &counting}, ProductExponent::of(2.0));
    CHECK(report.doubling_pass);
    CHECK(report.tensor_doubling <= report.doubling_product + 1e-12);
    CHECK(report.consistency_pass);
    CHECK(report.lift_dimension == floor_log2(report.doubling_product) + 6);
}

TEST_CASE("log2 doubling of tensors is subadditive on corpus samples") {
    const auto path = gen_path(4);
    const auto tree = gen_tree(2, 2);
    const auto f1 = decay_family(path, 1.0);
    const auto f2 = counting_family(tree);
    for (const auto p : {ProductExponent::of(1.0), ProductExponent::of(2.0),
                         ProductExponent::inf()}) {
        const auto prod = product_space({&path, &tree}, p);
        const auto tensor = tensor_family(prod, {&f1, &f2});
        CHECK(std::log2(family_doubling(tensor)) <=
              std::log2(family_doubling(f1)) + std::log2(family_doubling(f2)) + 1e-9);
    }
}
