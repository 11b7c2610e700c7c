#ifndef ZONOKIT_SOLVE_HPP
#define ZONOKIT_SOLVE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "zonokit/options.hpp"
#include "zonokit/set.hpp"

namespace zonokit {

constexpr double kInf = std::numeric_limits<double>::infinity();

/**
 * @brief Linear program  min cost.x  s.t.  A x = b,  lower <= x <= upper.
 *
 * Bounds may be +-infinity. Inequality rows are expected to be rewritten with
 * slack variables by the caller; every program the set queries build is of
 * this equality-plus-box form already.
 */
struct LinearProgram {
    Vector cost;
    Matrix A;
    Vector b;
    Vector lower;
    Vector upper;

    Eigen::Index num_vars() const { return cost.size(); }

    /// @throws DimensionError / ArgumentError on malformed data
    void validate() const;
};

/// Linear program plus a list of variables restricted to {-1, +1}.
struct MixedProgram {
    LinearProgram lp;
    std::vector<Eigen::Index> binaries;

    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double value = 0.0;
    Vector point;
    std::int64_t iterations = 0;
};

struct MilpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double value = 0.0;
    Vector point;
    std::int64_t nodes = 0;
};

/**
 * @brief Solve an LP with the backend selected in @p opts.
 *
 * The builtin backend is a bounded-variable primal simplex (phase 1 + 2) that
 * switches to Bland's rule after a degenerate stall. Infeasibility is declared
 * when the phase-1 objective stays above the feasibility tolerance.
 * @throws ResourceError when the iteration cap is hit
 */
LpSolution solve_lp(const LinearProgram& lp,
                    const SolverOptions& opts = SolverOptions());

/**
 * @brief Solve a MILP by depth-first branch and bound over the binaries.
 *
 * Branching fixes binaries in index order, -1 branch first; subtrees whose
 * LP relaxation is infeasible (or cannot beat the incumbent) are pruned.
 * The returned optimum is global within the optimality tolerance.
 * @throws ResourceError when the node cap is hit
 */
MilpSolution solve_milp(const MixedProgram& mp,
                        const SolverOptions& opts = SolverOptions());

/// Adapter entry points an external solver must provide.
struct SolverBackend {
    std::function<LpSolution(const LinearProgram&, const SolverOptions&)> lp;
    std::function<MilpSolution(const MixedProgram&, const SolverOptions&)> milp;
};

/// Register (or replace) a named backend. "builtin" is always present.
void register_backend(const std::string& name, SolverBackend backend);
bool has_backend(const std::string& name);

/// @name Set queries
/// All answers are produced by LPs/MILPs over the factor space.
///@{

/// True when the set contains no points. A Zono is never empty.
bool is_empty(const Set& s, const SolverOptions& opts = SolverOptions());

/**
 * @brief Membership test: feasibility of G xi = x - c over the factor domain.
 *
 * The point is a member when the residual at the feasibility optimum is
 * within the feasibility tolerance in the infinity norm.
 * @throws DimensionError if x has the wrong length
 */
bool contains_point(const Set& s, const Vector& x,
                    const SolverOptions& opts = SolverOptions());

/// Support value  max { d.x : x in s }.
/// @throws EmptySetError on an empty set
double support(const Set& s, const Vector& d,
               const SolverOptions& opts = SolverOptions());

/// Support value together with a maximizing point of the set.
std::pair<double, Vector> support_point(const Set& s, const Vector& d,
                                        const SolverOptions& opts = SolverOptions());

/// Componentwise interval hull [lo, hi].
struct Box {
    Vector lo;
    Vector hi;
};

/// Tight axis-aligned bounding box via 2n support solves.
/// @throws EmptySetError on an empty set
Box bounding_box(const Set& s, const SolverOptions& opts = SolverOptions());

/**
 * @brief The feasible binary assignments of a hybrid zonotope.
 *
 * Assignments are in lexicographic order with -1 before +1 and index 0 most
 * significant, which is the order depth-first enumeration produces.
 */
struct LeafSet {
    std::vector<BinaryVector> assignments;

    std::size_t size() const { return assignments.size(); }
};

/**
 * @brief Enumerate every feasible binary assignment (the leaf list).
 *
 * Depth-first branch and bound; infeasible subtrees are pruned by interval
 * propagation and periodic LP relaxations, and every leaf that survives is
 * certified by its own LP, so the enumeration is exact without visiting all
 * 2^{n_b} patterns.
 * @throws RepresentationError if s is not a HybZono
 * @throws ResourceError when the pool cap is exceeded (message reports the
 *         partial count)
 */
LeafSet get_leaves(const Set& s, const SolverOptions& opts = SolverOptions());

///@}

/// @name Solve counters
/// Totals across all backends since the last reset; used by reports.
///@{
std::int64_t lp_call_count();
std::int64_t milp_call_count();
void reset_solver_counters();
///@}

} // namespace zonokit

#endif
