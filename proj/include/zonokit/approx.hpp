#ifndef ZONOKIT_APPROX_HPP
#define ZONOKIT_APPROX_HPP

#include <functional>
#include <string>
#include <vector>

#include "zonokit/reach.hpp"
#include "zonokit/set.hpp"

namespace zonokit {

/// Scalar function together with the interval and breakpoints used to
/// approximate it by a chain of segments.
struct UnaryFunctionSpec {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> breakpoints;

    /// @throws ArgumentError unless breakpoints are strictly increasing and
    ///         pinned to [lo, hi]
    void validate() const;
};

/// Named scalar functions usable in scenario files: "sin", "cos", "sq"
/// (square), "sat" (clamp to [-1, 1]), "tanh".
/// @throws ArgumentError for an unknown name
std::function<double(double)> unary_builtin(const std::string& name);

/// n_v equally spaced breakpoints spanning [lo, hi], n_v >= 2.
std::vector<double> uniform_breakpoints(double lo, double hi, int n_v);

/**
 * @brief Union of the segments connecting neighboring graph vertices.
 *
 * Evaluates f at each breakpoint and returns the chain polyline through
 * (x_i, f(x_i)) as a set with n_v - 1 selectable pieces.
 * @throws EvaluationError if f returns a non-finite value
 */
Set build_segment_graph(const UnaryFunctionSpec& spec);

/// Interpolation error data: a vertical interval E in the plane covering
/// f - interpolant, plus the per-segment radii it was built from.
struct ErrorBound {
    Set E;
    std::vector<double> segment_radii;
};

/**
 * @brief Grid-sampled bound on the gap between f and its segment chain.
 *
 * Each segment is sampled at grid_per_segment points; the largest absolute
 * gap per segment, inflated by a safety factor of 1.5, gives that segment's
 * radius. E is a single vertical interval wide enough for every segment,
 * shifted when the gap is one-sided. The bound holds at grid resolution
 * only; it is not a verified enclosure.
 * @throws EvaluationError if f returns a non-finite value
 */
ErrorBound bound_error(const UnaryFunctionSpec& spec, int grid_per_segment = 64);

/// The segment chain fattened by the error interval, Z_v + E, which covers
/// the graph of f over [lo, hi] at grid resolution.
Set bound_function(const UnaryFunctionSpec& spec, int grid_per_segment = 64);

/**
 * @brief Graph {(z, g(s.z)) : z in domain} from a scalar graph set.
 *
 * Attaches the 2-D graph of g to the domain, pins the graph argument to the
 * selector value s.z, and drops the argument coordinate. The result has
 * dim(domain) + 1 dimensions.
 */
Set compose_scalar_graph(const Set& domain, const Vector& selector,
                         const Set& graph);

/// One scalar nonlinearity entering an update map: value = g(selector.(x,u)),
/// contributing gain * value to the successor state.
struct NonlinearTerm {
    Set graph;
    Vector selector;
    Vector gain;
};

/**
 * @brief Update set for x+ = A x + B u + sum_j gain_j g_j(s_j.(x,u)) + f.
 *
 * Each term's scalar graph is attached by Cartesian product, its argument
 * pinned to the selected linear combination, and the successor block
 * assembled by one affine map. With no terms this reduces to
 * build_affine_update_set. Accuracy follows the term graphs: exact graphs
 * give an exact update set, bounded graphs give an over-approximation.
 */
StateUpdateSet lift_to_update_set(const LinearSystem& sys, const Set& D,
                                  const std::vector<NonlinearTerm>& terms,
                                  const Vector& f);

/// lift_to_update_set with a zero affine term.
StateUpdateSet lift_to_update_set(const LinearSystem& sys, const Set& D,
                                  const std::vector<NonlinearTerm>& terms);

} // namespace zonokit

#endif
