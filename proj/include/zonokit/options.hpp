#ifndef ZONOKIT_OPTIONS_HPP
#define ZONOKIT_OPTIONS_HPP

#include <cstdint>
#include <string>

namespace zonokit {

/**
 * @brief Tolerances, caps, and backend selection for LP/MILP solves.
 *
 * The defaults are the contract used throughout: a point is inside a set when
 * the feasibility residual is within feasibility_tol in the infinity norm, and
 * reduced costs within optimality_tol are treated as zero.
 */
struct SolverOptions {
    double feasibility_tol = 1e-7;
    double optimality_tol = 1e-9;

    std::int64_t max_lp_iterations = 50000;  ///< simplex pivots per solve
    std::int64_t max_milp_nodes = 1000000;   ///< branch-and-bound nodes per solve
    std::int64_t max_pool_size = 1000000;    ///< enumerated leaves per query

    /// Registered backend name; "builtin" selects the bundled simplex.
    std::string backend = "builtin";
};

} // namespace zonokit

#endif
