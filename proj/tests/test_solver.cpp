#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "zonokit/set.hpp"
#include "zonokit/solve.hpp"

using namespace zonokit;
using testutil::bvec;
using testutil::mat;
using testutil::vec;

namespace {

LinearProgram box_lp(const Vector& cost, const Vector& lo, const Vector& hi) {
    LinearProgram lp;
    lp.cost = cost;
    lp.A = Matrix::Zero(0, cost.size());
    lp.b = Vector();
    lp.lower = lo;
    lp.upper = hi;
    return lp;
}

} // namespace

TEST_CASE("lp agrees with brute force on pure box programs") {
    oracle::Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = rng.uniform_int(1, 8);
        const Vector cost = rng.vector(n, -2.0, 2.0);
        const Vector lo = rng.vector(n, -3.0, 0.0);
        const Vector hi = lo + rng.vector(n, 0.0, 3.0);
        const LpSolution sol = solve_lp(box_lp(cost, lo, hi));
        const oracle::BruteLp ref = oracle::brute_box_lp(cost, lo, hi);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.value == doctest::Approx(ref.value).epsilon(1e-9));
    }

    const LpSolution free_fall =
        solve_lp(box_lp(vec({1}), Vector::Constant(1, -kInf),
                        Vector::Constant(1, kInf)));
    CHECK(free_fall.status == SolveStatus::Unbounded);
}

TEST_CASE("lp agrees with brute force on equality programs") {
    oracle::Rng rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = rng.uniform_int(3, 6);
        const Eigen::Index m = rng.uniform_int(1, 2);
        LinearProgram lp;
        lp.cost = rng.vector(n, -2.0, 2.0);
        lp.A = rng.matrix(m, n, -1.0, 1.0);
        lp.lower = rng.vector(n, -1.5, -0.5);
        lp.upper = rng.vector(n, 0.5, 1.5);
        Vector xi(n);
        for (Eigen::Index i = 0; i < n; ++i)
            xi[i] = lp.lower[i] + (lp.upper[i] - lp.lower[i]) * rng.uniform(0.2, 0.8);
        lp.b = lp.A * xi;
        const LpSolution sol = solve_lp(lp);
        const oracle::BruteLp ref =
            oracle::brute_eq_lp(lp.cost, lp.A, lp.b, lp.lower, lp.upper);
        REQUIRE(ref.feasible);
        REQUIRE(sol.status == SolveStatus::Optimal);
        CHECK(sol.value == doctest::Approx(ref.value).epsilon(1e-6));
        CHECK((lp.A * sol.point - lp.b).cwiseAbs().maxCoeff() < 1e-7);
    }

    LinearProgram infeasible;
    infeasible.cost = Vector::Zero(3);
    infeasible.A = mat({{1, 1, 1}});
    infeasible.b = vec({10});
    infeasible.lower = Vector::Constant(3, -1.0);
    infeasible.upper = Vector::Constant(3, 1.0);
    CHECK(solve_lp(infeasible).status == SolveStatus::Infeasible);

    LinearProgram unbounded;
    unbounded.cost = vec({1, 0});
    unbounded.A = mat({{1, 1}});
    unbounded.b = vec({0});
    unbounded.lower = Vector::Constant(2, -kInf);
    unbounded.upper = Vector::Constant(2, kInf);
    CHECK(solve_lp(unbounded).status == SolveStatus::Unbounded);
}

TEST_CASE("milp optima agree with exhaustive pattern enumeration") {
    oracle::Rng rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = rng.uniform_int(3, 6);
        const Eigen::Index n_b = rng.uniform_int(1, 3);
        const Eigen::Index m = rng.uniform_int(1, 2);

        MixedProgram mp;
        mp.lp.cost = rng.vector(n, -2.0, 2.0);
        mp.lp.A = rng.matrix(m, n, -1.0, 1.0);
        mp.lp.lower = Vector::Constant(n, -1.0);
        mp.lp.upper = Vector::Constant(n, 1.0);
        for (Eigen::Index j = 0; j < n_b; ++j) mp.binaries.push_back(j);

        Vector xi = rng.vector(n, -0.6, 0.6);
        for (Eigen::Index j = 0; j < n_b; ++j)
            xi[j] = static_cast<double>(rng.sign());
        mp.lp.b = mp.lp.A * xi;

        const MilpSolution sol = solve_milp(mp);
        REQUIRE(sol.status == SolveStatus::Optimal);

        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t mask = 0; mask < (1ull << n_b); ++mask) {
            Vector lo = mp.lp.lower;
            Vector hi = mp.lp.upper;
            for (Eigen::Index j = 0; j < n_b; ++j) {
                const double v = (mask >> j) & 1 ? 1.0 : -1.0;
                lo[j] = hi[j] = v;
            }
            const oracle::BruteLp ref =
                oracle::brute_eq_lp(mp.lp.cost, mp.lp.A, mp.lp.b, lo, hi);
            if (ref.feasible) best = std::min(best, ref.value);
        }
        REQUIRE(std::isfinite(best));
        CHECK(sol.value == doctest::Approx(best).epsilon(1e-6));
        for (const Eigen::Index j : mp.binaries)
            CHECK(std::abs(std::abs(sol.point[j]) - 1.0) < 1e-7);
    }
}

TEST_CASE("iteration and node caps surface as resource errors") {
    oracle::Rng rng(109);
    LinearProgram lp;
    lp.cost = rng.vector(6, -2.0, 2.0);
    lp.A = rng.matrix(3, 6, -1.0, 1.0);
    Vector xi = rng.vector(6, -0.5, 0.5);
    lp.b = lp.A * xi;
    lp.lower = Vector::Constant(6, -1.0);
    lp.upper = Vector::Constant(6, 1.0);

    SolverOptions tight;
    tight.max_lp_iterations = 1;
    CHECK_THROWS_WITH_AS(solve_lp(lp, tight),
                         doctest::Contains("simplex iteration cap"),
                         ResourceError);

    MixedProgram mp;
    mp.lp = lp;
    mp.binaries = {0, 1, 2};
    SolverOptions few_nodes;
    few_nodes.max_milp_nodes = 1;
    CHECK_THROWS_WITH_AS(solve_milp(mp, few_nodes),
                         doctest::Contains("branch-and-bound node cap"),
                         ResourceError);
}

TEST_CASE("membership respects the feasibility tolerance") {
    const Set box = Set::box(vec({-1, -1}), vec({1, 1}));
    CHECK(contains_point(box, vec({1.0 + 5e-8, 0})));
    CHECK_FALSE(contains_point(box, vec({1.001, 0})));
    SolverOptions loose;
    loose.feasibility_tol = 1e-2;
    CHECK(contains_point(box, vec({1.001, 0}), loose));
    CHECK_THROWS_AS(contains_point(box, vec({0})), DimensionError);

    const Set slice = Set::con_zono(mat({{1, 0, 1}, {0, 1, 1}}), vec({0, 0}),
                                    mat({{1, 1, 1}}), vec({1}));
    CHECK(contains_point(slice, vec({1.0 / 3.0, 1.0 / 3.0})));
    CHECK_FALSE(contains_point(slice, vec({-2, -2})));

    const Set twins = Set::hyb_zono(mat({{1, 0}, {0, 1}}), mat({{3}, {0}}),
                                    vec({0, 0}), Matrix(), Matrix(), Vector());
    CHECK(contains_point(twins, vec({3.2, 0.5})));
    CHECK(contains_point(twins, vec({-2.4, -0.9})));
    CHECK_FALSE(contains_point(twins, vec({0, 0})));
    CHECK_FALSE(contains_point(twins, vec({-4.2, 0})));
}

TEST_CASE("emptiness and the empty-set guards") {
    oracle::Rng rng(113);
    CHECK_FALSE(is_empty(oracle::random_zono(rng, 2, 3)));
    CHECK_FALSE(is_empty(oracle::random_con_zono(rng, 2, 3, 1)));

    const Set empty = Set::con_zono(mat({{1, 0}, {0, 1}}), vec({0, 0}),
                                    mat({{1, 0}}), vec({5}));
    CHECK(is_empty(empty));
    CHECK_THROWS_AS(support(empty, vec({1, 0})), EmptySetError);
    CHECK_THROWS_AS(bounding_box(empty), EmptySetError);

    const Set empty_h = Set::hyb_zono(mat({{1}}), mat({{1}}), vec({0}),
                                      mat({{1}}), mat({{0}}), vec({3}));
    CHECK(is_empty(empty_h));
}

TEST_CASE("support values, points, and boxes are consistent") {
    oracle::Rng rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        const Set z = oracle::random_zono(rng, 3, 5);
        for (int k = 0; k < 5; ++k) {
            const Vector d = rng.vector(3, -1.0, 1.0);
            CHECK(support(z, d) ==
                  doctest::Approx(oracle::zono_support(z, d)).epsilon(1e-9));
        }
    }

    const Set zc = oracle::random_con_zono(rng, 2, 5, 2);
    for (int k = 0; k < 5; ++k) {
        const Vector d = rng.vector(2, -1.0, 1.0);
        const auto [value, point] = support_point(zc, d);
        CHECK(value == doctest::Approx(support(zc, d)).epsilon(1e-9));
        CHECK(d.dot(point) == doctest::Approx(value).epsilon(1e-7));
        CHECK(contains_point(zc, point));
    }

    const Box bb = bounding_box(zc);
    for (Eigen::Index i = 0; i < 2; ++i) {
        Vector e = Vector::Zero(2);
        e[i] = 1.0;
        CHECK(bb.hi[i] == doctest::Approx(support(zc, e)).epsilon(1e-9));
        CHECK(bb.lo[i] == doctest::Approx(-support(zc, -e)).epsilon(1e-9));
    }
}

TEST_CASE("leaf enumeration matches exhaustive screening, order included") {
    const Set twins = Set::hyb_zono(mat({{1, 0}, {0, 1}}), mat({{3}, {0}}),
                                    vec({0, 0}), Matrix(), Matrix(), Vector());
    const LeafSet both = get_leaves(twins);
    REQUIRE(both.size() == 2);
    CHECK(both.assignments[0] == bvec({-1}));
    CHECK(both.assignments[1] == bvec({1}));

    oracle::Rng rng(131);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n_b = rng.uniform_int(2, 5);
        const Set h = oracle::random_hyb_zono(rng, 2, 3, n_b, 2);
        const LeafSet found = get_leaves(h);
        const auto expected = oracle::brute_patterns(
            h, [&](const BinaryVector& xb) { return is_empty(leaf(h, xb)); });
        REQUIRE(found.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(found.assignments[i] == expected[i]);
    }

    CHECK_THROWS_AS(get_leaves(Set::box(vec({0}), vec({1}))),
                    RepresentationError);

    SolverOptions tiny_pool;
    tiny_pool.max_pool_size = 1;
    CHECK_THROWS_WITH_AS(get_leaves(twins, tiny_pool),
                         doctest::Contains("leaf pool cap"), ResourceError);
}

TEST_CASE("backend registry routes solves and rejects reserved names") {
    CHECK(has_backend("builtin"));
    CHECK_FALSE(has_backend("external-lp"));

    SolverBackend canned;
    canned.lp = [](const LinearProgram&, const SolverOptions&) {
        LpSolution sol;
        sol.status = SolveStatus::Optimal;
        sol.value = 42.0;
        return sol;
    };
    register_backend("external-lp", canned);
    CHECK(has_backend("external-lp"));

    SolverOptions opts;
    opts.backend = "external-lp";
    const LinearProgram lp = box_lp(vec({1}), vec({-1}), vec({1}));
    CHECK(solve_lp(lp, opts).value == 42.0);

    opts.backend = "no-such-backend";
    CHECK_THROWS_AS(solve_lp(lp, opts), ArgumentError);
    CHECK_THROWS_AS(register_backend("builtin", canned), ArgumentError);
}

TEST_CASE("solver counters accumulate and reset") {
    reset_solver_counters();
    CHECK(lp_call_count() == 0);
    CHECK(milp_call_count() == 0);

    const Set box = Set::box(vec({-1}), vec({1}));
    (void)contains_point(box, vec({0.5}));
    CHECK(lp_call_count() >= 1);

    const Set twins = Set::hyb_zono(mat({{1, 0}, {0, 1}}), mat({{3}, {0}}),
                                    vec({0, 0}), Matrix(), Matrix(), Vector());
    (void)contains_point(twins, vec({3, 0}));
    CHECK(milp_call_count() >= 1);

    reset_solver_counters();
    CHECK(lp_call_count() == 0);
    CHECK(milp_call_count() == 0);
}
