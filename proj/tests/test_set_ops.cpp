#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "zonokit/ops.hpp"
#include "zonokit/solve.hpp"

using namespace zonokit;
using testutil::mat;
using testutil::vec;

namespace {

const Matrix kHexG = mat({{1, 0, 1}, {0, 1, 1}});

std::vector<Vector> probe_directions() {
    return {vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({-1, 2}), vec({-0.3, -0.7})};
}

} // namespace

TEST_CASE("linear and affine maps act on the generator blocks") {
    const Set hex = Set::zono(kHexG, vec({0.5, -0.5}));
    const Matrix R = mat({{0.8, -0.6}, {0.6, 0.8}});
    const Set rot = linear_map(R, hex);
    CHECK(rot.kind() == SetKind::Zono);
    CHECK(rot.Gc().isApprox(Matrix(R * kHexG)));
    CHECK(rot.c().isApprox(Vector(R * hex.c())));
    CHECK(structurally_equal(rot, R * hex));

    oracle::Rng rng(11);
    const Set zc = oracle::random_con_zono(rng, 2, 4, 1);
    const Set mapped = linear_map(R, zc);
    for (const Vector& d : probe_directions()) {
        CHECK(support(mapped, d) ==
              doctest::Approx(support(zc, R.transpose() * d)).epsilon(1e-7));
    }

    const Set shifted = translate(hex, vec({2.6, 0.4}));
    CHECK(shifted.c().isApprox(vec({3.1, -0.1})));
    CHECK(support(shifted, vec({1, 0})) ==
          doctest::Approx(support(hex, vec({1, 0})) + 2.6));

    const Set aff = affine_map(R, hex, vec({1, -1}));
    CHECK(structurally_equal(aff, translate(linear_map(R, hex), vec({1, -1}))));

    CHECK_THROWS_AS(linear_map(mat({{1, 0, 0}}), hex), DimensionError);
    CHECK_THROWS_AS(translate(hex, vec({1})), DimensionError);
    CHECK_THROWS_AS(affine_map(R, hex, vec({1})), DimensionError);
}

TEST_CASE("minkowski sum adds factor counts and support values") {
    oracle::Rng rng(23);
    const Set h1 = oracle::random_hyb_zono(rng, 2, 3, 2, 1);
    const Set h2 = oracle::random_hyb_zono(rng, 2, 2, 1, 1);
    const Set sum = minkowski_sum(h1, h2);
    CHECK(sum.kind() == SetKind::HybZono);
    CHECK(sum.num_gen() == h1.num_gen() + h2.num_gen());
    CHECK(sum.num_bin() == h1.num_bin() + h2.num_bin());
    CHECK(sum.num_con() == h1.num_con() + h2.num_con());
    CHECK(sum.c().isApprox(Vector(h1.c() + h2.c())));

    for (int trial = 0; trial < 5; ++trial) {
        const Set a = oracle::random_zono(rng, 2, 3);
        const Set b = oracle::random_con_zono(rng, 2, 4, 1);
        const Set ab = a + b;
        for (const Vector& d : probe_directions()) {
            CHECK(support(ab, d) ==
                  doctest::Approx(support(a, d) + support(b, d)).epsilon(1e-7));
        }
    }

    CHECK_THROWS_AS(minkowski_sum(h1, oracle::random_zono(rng, 3, 2)),
                    DimensionError);
}

TEST_CASE("generalized intersection pins the mapped coordinates") {
    const Set box = Set::box(vec({-1, -1}), vec({1, 1}));
    const Set band = Set::box(vec({0.2}), vec({1.5}));
    const Matrix R = mat({{1, 1}});
    const Set cut = generalized_intersection(box, band, R);
    CHECK(cut.kind() == SetKind::ConZono);
    CHECK(cut.num_gen() == 3);
    CHECK(cut.num_con() == 1);

    oracle::Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const Vector x = rng.vector(2, -1.3, 1.3);
        const double t = x[0] + x[1];
        const bool in_box = x.cwiseAbs().maxCoeff() <= 1.0;
        if (x.cwiseAbs().maxCoeff() > 0.95 && x.cwiseAbs().maxCoeff() < 1.05)
            continue;
        if (t > 0.15 && t < 0.25) continue;
        if (t > 1.45 && t < 1.55) continue;
        const bool expected = in_box && t >= 0.2 && t <= 1.5;
        CHECK(contains_point(cut, x) == expected);
    }

    const Set left = Set::box(vec({-2, -1}), vec({1, 1}));
    const Set right = Set::box(vec({0, -2}), vec({2, 0.5}));
    const Set overlap = intersection(left, right);
    CHECK(overlap.num_gen() == 4);
    CHECK(overlap.num_con() == 2);
    const Box bb = bounding_box(overlap);
    CHECK(bb.lo.isApprox(vec({0, -1}), 1e-6));
    CHECK(bb.hi.isApprox(vec({1, 0.5}), 1e-6));

    CHECK_THROWS_AS(generalized_intersection(box, band, mat({{1, 0, 0}})),
                    DimensionError);
    CHECK_THROWS_AS(generalized_intersection(box, box, R), DimensionError);
    CHECK_THROWS_AS(intersection(box, band), DimensionError);
}

TEST_CASE("halfspace intersection adds one slack per inequality") {
    const Set hex = Set::zono(kHexG, vec({0, 0}));
    const Set slab = halfspace_intersection(hex, mat({{1, 1}}), vec({0.9}));
    CHECK(slab.kind() == SetKind::ConZono);
    CHECK(slab.num_gen() == 4);
    CHECK(slab.num_con() == 1);

    CHECK(contains_point(slab, vec({0, 0})));
    CHECK(contains_point(slab, vec({-1, 1})));
    CHECK_FALSE(contains_point(slab, vec({1, 1})));
    CHECK(support(slab, vec({1, 1})) == doctest::Approx(0.9).epsilon(1e-7));
    CHECK(support(slab, vec({-1, -1})) == doctest::Approx(4.0).epsilon(1e-7));

    const Set xcut = halfspace_intersection(hex, mat({{1}}), vec({0.3}),
                                            mat({{1, 0}}));
    CHECK(support(xcut, vec({1, 0})) == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(support(xcut, vec({0, 1})) == doctest::Approx(2.0).epsilon(1e-7));

    CHECK_THROWS_AS(halfspace_intersection(hex, mat({{1}}), vec({0.3})),
                    DimensionError);
    CHECK_THROWS_AS(halfspace_intersection(hex, mat({{1, 1}}), vec({1, 1})),
                    DimensionError);
}

TEST_CASE("cartesian product stacks every block") {
    oracle::Rng rng(47);
    const Set a = oracle::random_con_zono(rng, 2, 3, 1);
    const Set b = oracle::random_zono(rng, 1, 2);
    const Set pair = cartesian_product(a, b);
    CHECK(pair.kind() == SetKind::ConZono);
    CHECK(pair.dim() == 3);
    CHECK(pair.num_gen() == 5);
    CHECK(pair.num_con() == 1);

    const Vector d = vec({0.4, -1.1, 0.7});
    CHECK(support(pair, d) ==
          doctest::Approx(support(a, d.head(2)) + support(b, d.tail(1)))
              .epsilon(1e-7));

    const auto [va, pa] = support_point(a, vec({1, 0.2}));
    const auto [vb, pb] = support_point(b, vec({-1}));
    Vector stacked(3);
    stacked << pa, pb;
    CHECK(contains_point(pair, stacked));

    CHECK(cartesian_product(b, b).kind() == SetKind::Zono);
}

TEST_CASE("union holds exactly the two operands") {
    const Set a = Set::box(vec({-2.5, -0.5}), vec({-1.5, 0.5}));
    const Set b = Set::box(vec({1.5, -0.5}), vec({2.5, 0.5}));
    const Set u = set_union(a, b);
    CHECK(u.kind() == SetKind::HybZono);
    CHECK(u.num_gen() == 2 * (2 + 2));
    CHECK(u.num_bin() == 1);
    CHECK(u.num_con() == 2 + 2);

    CHECK(contains_point(u, vec({-2, 0})));
    CHECK(contains_point(u, vec({2, 0})));
    CHECK(contains_point(u, vec({-1.5, 0.5})));
    CHECK_FALSE(contains_point(u, vec({0, 0})));
    CHECK_FALSE(contains_point(u, vec({-2, 0.8})));

    oracle::Rng rng(59);
    const Set c1 = oracle::random_con_zono(rng, 2, 3, 1);
    const Set c2 = oracle::random_zono(rng, 2, 2);
    const Set uc = set_union(c1, c2);
    CHECK(uc.num_gen() == 2 * (3 + 2));
    CHECK(uc.num_bin() == 1);
    CHECK(uc.num_con() == 1 + 3 + 2);
    for (const Vector& d : probe_directions()) {
        const double expected = std::max(support(c1, d), support(c2, d));
        CHECK(support(uc, d) == doctest::Approx(expected).epsilon(1e-6));
    }

    CHECK_THROWS_AS(set_union(a, oracle::random_zono(rng, 1, 1)),
                    DimensionError);
}

TEST_CASE("convex hull spans the gap between the operands") {
    const Set a = Set::box(vec({-2.5, -0.5}), vec({-1.5, 0.5}));
    const Set b = Set::box(vec({1.5, -0.5}), vec({2.5, 0.5}));
    const Set hull = convex_hull(a, b);
    CHECK(hull.kind() == SetKind::ConZono);
    CHECK(hull.num_gen() == 3 * (2 + 2) + 1);
    CHECK(hull.num_con() == 2 * (2 + 2));

    CHECK(contains_point(hull, vec({-2, 0})));
    CHECK(contains_point(hull, vec({2, 0})));
    CHECK(contains_point(hull, vec({0, 0})));
    CHECK(contains_point(hull, vec({0, 0.4})));
    CHECK_FALSE(contains_point(hull, vec({0, 0.8})));

    oracle::Rng rng(61);
    const Set c1 = oracle::random_con_zono(rng, 2, 3, 1);
    const Set c2 = oracle::random_con_zono(rng, 2, 4, 2);
    const Set hc = convex_hull(c1, c2);
    CHECK(hc.num_gen() == 3 * (3 + 4) + 1);
    CHECK(hc.num_con() == 1 + 2 + 2 * (3 + 4));
    for (const Vector& d : probe_directions()) {
        const double expected = std::max(support(c1, d), support(c2, d));
        CHECK(support(hc, d) == doctest::Approx(expected).epsilon(1e-6));
    }

    const Set h = Set::hyb_zono(mat({{1}, {0}}), mat({{0}, {1}}), vec({0, 0}),
                                Matrix(), Matrix(), Vector());
    CHECK_THROWS_AS(convex_hull(h, a), RepresentationError);
    CHECK_THROWS_AS(convex_hull(a, h), RepresentationError);
}

TEST_CASE("pontryagin difference erodes by a zonotope") {
    const Set big = Set::box(vec({-1.2, -1.2}), vec({1.2, 1.2}));
    const Set small = Set::box(vec({-0.4, -0.4}), vec({0.4, 0.4}));
    const Set core = pontryagin_difference(big, small);
    CHECK(core.num_gen() == 8);
    CHECK(core.num_con() == 6);
    const Box bb = bounding_box(core);
    CHECK(bb.lo.isApprox(vec({-0.8, -0.8}), 1e-6));
    CHECK(bb.hi.isApprox(vec({0.8, 0.8}), 1e-6));

    // Any point of the difference keeps the subtrahend inside the original.
    const auto [sv, sp] = support_point(core, vec({1, 0.3}));
    for (double sx : {-0.4, 0.4}) {
        for (double sy : {-0.4, 0.4}) {
            CHECK(contains_point(big, sp + vec({sx, sy})));
        }
    }

    // Zero generator columns contribute nothing.
    Matrix Gz(2, 3);
    Gz << 0.4, 0, 0,
          0, 0, 0.4;
    const Set padded = pontryagin_difference(big, Set::zono(Gz, vec({0, 0})));
    CHECK(structurally_equal(padded, core));

    // An off-center subtrahend shifts the difference the other way.
    const Set off = Set::zono(small.Gc(), vec({0.5, 0}));
    const Box ob = bounding_box(pontryagin_difference(big, off));
    CHECK(ob.lo.isApprox(vec({-1.3, -0.8}), 1e-6));
    CHECK(ob.hi.isApprox(vec({0.3, 0.8}), 1e-6));

    CHECK_THROWS_AS(pontryagin_difference(big, lift(small, SetKind::ConZono)),
                    RepresentationError);
    CHECK_THROWS_AS(pontryagin_difference(big, Set::box(vec({0}), vec({1}))),
                    DimensionError);
}

TEST_CASE("projection selects, repeats, and reorders coordinates") {
    oracle::Rng rng(73);
    const Set a = oracle::random_con_zono(rng, 2, 3, 1);
    const Set b = oracle::random_zono(rng, 1, 2);
    const Set pair = cartesian_product(a, b);

    const Set front = projection(pair, {0, 1});
    CHECK(front.dim() == 2);
    CHECK(front.num_gen() == pair.num_gen());
    CHECK(front.num_con() == pair.num_con());
    for (const Vector& d : probe_directions()) {
        CHECK(support(front, d) == doctest::Approx(support(a, d)).epsilon(1e-7));
    }

    const Set swapped = projection(pair, {2, 0});
    CHECK(swapped.Gc().row(0).isApprox(pair.Gc().row(2)));
    CHECK(swapped.c()[1] == pair.c()[0]);

    const Set doubled = projection(b, {0, 0});
    CHECK(doubled.Gc().row(0).isApprox(doubled.Gc().row(1)));

    CHECK_THROWS_AS(projection(pair, {3}), ArgumentError);
    CHECK_THROWS_AS(projection(pair, {-1}), ArgumentError);
}
