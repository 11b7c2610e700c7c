#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "zonokit/approx.hpp"
#include "zonokit/solve.hpp"

using namespace zonokit;
using testutil::mat;
using testutil::vec;

namespace {

UnaryFunctionSpec sine_spec(int n_v) {
    UnaryFunctionSpec spec;
    spec.f = unary_builtin("sin");
    spec.lo = -M_PI;
    spec.hi = M_PI;
    spec.breakpoints = uniform_breakpoints(spec.lo, spec.hi, n_v);
    return spec;
}

UnaryFunctionSpec sat_spec() {
    UnaryFunctionSpec spec;
    spec.f = unary_builtin("sat");
    spec.lo = -3.0;
    spec.hi = 3.0;
    spec.breakpoints = {-3.0, -1.0, 1.0, 3.0};
    return spec;
}

} // namespace

TEST_CASE("builtin scalar functions and uniform breakpoints") {
    CHECK(unary_builtin("sin")(0.5) == doctest::Approx(std::sin(0.5)));
    CHECK(unary_builtin("cos")(1.2) == doctest::Approx(std::cos(1.2)));
    CHECK(unary_builtin("sq")(3.0) == 9.0);
    CHECK(unary_builtin("sat")(2.0) == 1.0);
    CHECK(unary_builtin("sat")(-2.0) == -1.0);
    CHECK(unary_builtin("sat")(0.3) == 0.3);
    CHECK(unary_builtin("tanh")(0.7) == doctest::Approx(std::tanh(0.7)));
    CHECK_THROWS_AS(unary_builtin("exp"), ArgumentError);

    const std::vector<double> pts = uniform_breakpoints(-1.0, 1.0, 5);
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == -1.0);
    CHECK(pts.back() == 1.0);
    CHECK(pts[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(uniform_breakpoints(-1.0, 1.0, 1), ArgumentError);
    CHECK_THROWS_AS(uniform_breakpoints(1.0, -1.0, 4), ArgumentError);
}

TEST_CASE("function specs validate their breakpoints") {
    UnaryFunctionSpec spec = sine_spec(5);
    CHECK_NOTHROW(spec.validate());

    UnaryFunctionSpec no_f = spec;
    no_f.f = nullptr;
    CHECK_THROWS_AS(no_f.validate(), ArgumentError);

    UnaryFunctionSpec flipped = spec;
    flipped.lo = 1.0;
    flipped.hi = -1.0;
    CHECK_THROWS_AS(flipped.validate(), ArgumentError);

    UnaryFunctionSpec sparse = spec;
    sparse.breakpoints = {-M_PI};
    CHECK_THROWS_AS(sparse.validate(), ArgumentError);

    UnaryFunctionSpec unsorted = spec;
    std::swap(unsorted.breakpoints[1], unsorted.breakpoints[2]);
    CHECK_THROWS_AS(unsorted.validate(), ArgumentError);

    UnaryFunctionSpec unpinned = spec;
    unpinned.breakpoints.back() = 2.0;
    CHECK_THROWS_AS(unpinned.validate(), ArgumentError);
}

TEST_CASE("segment graphs chain the breakpoint vertices") {
    const UnaryFunctionSpec spec = sine_spec(5);
    const Set graph = build_segment_graph(spec);
    CHECK(graph.kind() == SetKind::HybZono);
    CHECK(graph.num_gen() == 10);
    CHECK(graph.num_bin() == 4);
    CHECK(graph.num_con() == 7);
    CHECK(get_leaves(graph).size() == 4);

    for (double x : spec.breakpoints) {
        CHECK(contains_point(graph, vec({x, std::sin(x)})));
    }
    std::vector<double> ys;
    for (double x : spec.breakpoints) ys.push_back(std::sin(x));
    for (std::size_t j = 0; j + 1 < spec.breakpoints.size(); ++j) {
        const double xm = 0.5 * (spec.breakpoints[j] + spec.breakpoints[j + 1]);
        const double ym = oracle::interp(spec.breakpoints, ys, xm);
        CHECK(contains_point(graph, vec({xm, ym})));
    }
    CHECK_FALSE(contains_point(graph, vec({0.0, 0.5})));

    UnaryFunctionSpec sqrt_spec;
    sqrt_spec.f = [](double x) { return std::sqrt(x); };
    sqrt_spec.lo = -1.0;
    sqrt_spec.hi = 1.0;
    sqrt_spec.breakpoints = {-1.0, 0.0, 1.0};
    CHECK_THROWS_AS(build_segment_graph(sqrt_spec), EvaluationError);
}

TEST_CASE("error bounds scale the worst chord gap") {
    UnaryFunctionSpec affine;
    affine.f = [](double x) { return 2.0 * x + 1.0; };
    affine.lo = -1.0;
    affine.hi = 1.0;
    affine.breakpoints = uniform_breakpoints(-1.0, 1.0, 3);
    const ErrorBound flat = bound_error(affine);
    for (double r : flat.segment_radii) CHECK(r == 0.0);
    CHECK(flat.E.num_gen() == 0);
    CHECK(structurally_equal(bound_function(affine), build_segment_graph(affine)));

    UnaryFunctionSpec square;
    square.f = unary_builtin("sq");
    square.lo = 0.0;
    square.hi = 2.0;
    square.breakpoints = uniform_breakpoints(0.0, 2.0, 3);
    const ErrorBound eb = bound_error(square);
    REQUIRE(eb.segment_radii.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
        const double chord = oracle::chord_error(
            square.f, square.breakpoints[j], square.breakpoints[j + 1]);
        const double ratio = eb.segment_radii[j] / chord;
        CHECK(ratio >= 1.4);
        CHECK(ratio <= 1.5 + 1e-9);
    }
    CHECK(eb.E.dim() == 2);
    CHECK(eb.E.Gc()(0, 0) == 0.0);
    CHECK(eb.E.Gc()(1, 0) > 0.0);

    CHECK_THROWS_AS(bound_error(square, 1), ArgumentError);
}

TEST_CASE("bounded graphs cover the function at sample resolution") {
    const UnaryFunctionSpec spec = sine_spec(17);
    const Set cover = bound_function(spec);
    oracle::Rng rng(401);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = rng.uniform(-M_PI, M_PI);
        CHECK(contains_point(cover, vec({x, std::sin(x)})));
    }

    const ErrorBound fine = bound_error(sine_spec(17));
    const ErrorBound coarse = bound_error(sine_spec(9));
    const auto peak = [](const std::vector<double>& radii) {
        double top = 0.0;
        for (double r : radii) top = std::max(top, r);
        return top;
    };
    CHECK(peak(fine.segment_radii) < peak(coarse.segment_radii));

    const UnaryFunctionSpec clamp = sat_spec();
    const ErrorBound exact = bound_error(clamp);
    for (double r : exact.segment_radii) CHECK(r == 0.0);
    const Set sat_cover = bound_function(clamp);
    CHECK(structurally_equal(sat_cover, build_segment_graph(clamp)));
    CHECK(contains_point(sat_cover, vec({2.0, 1.0})));
    CHECK(contains_point(sat_cover, vec({0.0, 0.0})));
    CHECK(contains_point(sat_cover, vec({-2.0, -1.0})));
    CHECK_FALSE(contains_point(sat_cover, vec({0.0, 0.5})));
}

TEST_CASE("scalar graphs compose onto domains") {
    const Set domain = Set::box(vec({-2, -2}), vec({2, 2}));
    const Set graph = build_segment_graph(sat_spec());
    const Set composed = compose_scalar_graph(domain, vec({1, 0}), graph);
    CHECK(composed.dim() == 3);
    CHECK(contains_point(composed, vec({1.5, 0.3, 1.0})));
    CHECK(contains_point(composed, vec({0.4, -1.0, 0.4})));
    CHECK(contains_point(composed, vec({-2.0, 2.0, -1.0})));
    CHECK_FALSE(contains_point(composed, vec({1.5, 0.3, 1.5})));
    CHECK_FALSE(contains_point(composed, vec({0.4, -1.0, -0.4})));

    CHECK_THROWS_AS(compose_scalar_graph(domain, vec({1}), graph),
                    DimensionError);
    const Set volume = Set::box(vec({-1, -1, -1}), vec({1, 1, 1}));
    CHECK_THROWS_AS(compose_scalar_graph(domain, vec({1, 0}), volume),
                    DimensionError);
}

TEST_CASE("nonlinear terms lift into update sets") {
    const LinearSystem sys{mat({{1, 0.1}, {0, 1}}), mat({{0}, {0.1}})};
    const Set D = Set::box(vec({-2.5, -2.5, -1}), vec({2.5, 2.5, 1}));

    const StateUpdateSet bare = lift_to_update_set(sys, D, {});
    const StateUpdateSet reference = build_linear_update_set(sys, D);
    CHECK(structurally_equal(bare.set, reference.set));
    const Vector f = vec({0.05, -0.1});
    CHECK(structurally_equal(lift_to_update_set(sys, D, {}, f).set,
                             build_affine_update_set(sys, D, f).set));

    UnaryFunctionSpec swing;
    swing.f = unary_builtin("sin");
    swing.lo = -2.5;
    swing.hi = 2.5;
    swing.breakpoints = uniform_breakpoints(-2.5, 2.5, 9);
    const NonlinearTerm term{bound_function(swing), vec({1, 0, 0}),
                             vec({0, -0.9})};

    const StateUpdateSet psi = lift_to_update_set(sys, D, {term});
    CHECK(psi.set.dim() == 5);
    CHECK(psi.n_state == 2);
    CHECK(psi.n_input == 1);

    oracle::Rng rng(409);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector x = rng.vector(2, -2.0, 2.0);
        const Vector u = rng.vector(1, -1.0, 1.0);
        const Vector y =
            sys.A * x + sys.B * u + term.gain * std::sin(x[0]);
        Vector stacked(5);
        stacked << x, u, y;
        CHECK(contains_point(psi.set, stacked));
    }

    const Set back = projection(psi.set, {0, 1, 2});
    for (const Vector& d : {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}),
                            vec({-1, 0.5, 0.2})}) {
        CHECK(support(back, d) == doctest::Approx(support(D, d)).epsilon(1e-6));
    }

    const NonlinearTerm bad_selector{term.graph, vec({1, 0}), term.gain};
    CHECK_THROWS_AS(lift_to_update_set(sys, D, {bad_selector}), DimensionError);
    const NonlinearTerm bad_gain{term.graph, term.selector, vec({1})};
    CHECK_THROWS_AS(lift_to_update_set(sys, D, {bad_gain}), DimensionError);
    CHECK_THROWS_AS(lift_to_update_set(sys, Set::box(vec({-1}), vec({1})), {}),
                    DimensionError);
}
