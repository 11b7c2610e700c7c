#ifndef ZONOKIT_SRC_INTERNAL_HPP
#define ZONOKIT_SRC_INTERNAL_HPP

#include <vector>

#include "zonokit/solve.hpp"

namespace zonokit::detail {

/// Problem data by reference so branch-and-bound nodes can swap bounds
/// without copying the constraint matrix.
struct LpData {
    const Matrix& A;
    const Vector& b;
    const Vector& cost;
    const Vector& lower;
    const Vector& upper;
};

LpSolution simplex_solve(const LpData& data, const SolverOptions& opts);

enum class BnbMode { Optimize, FirstFeasible, Enumerate };

struct BnbResult {
    SolveStatus status = SolveStatus::Infeasible;
    double value = 0.0;
    Vector point;
    std::int64_t nodes = 0;
    std::vector<BinaryVector> pool;
    bool pool_overflow = false;
};

/// Depth-first search over binary assignments; see solve_milp / get_leaves.
BnbResult branch_and_bound(const MixedProgram& mp, const SolverOptions& opts,
                           BnbMode mode);

/// Factor-space program of a set: variables [xi_c; xi_b], rows Ac xi_c + Ab xi_b = b.
MixedProgram factor_program(const Set& s);

/// Append rows Gc xi_c + Gb xi_b = x - c pinning the set point.
void pin_point(MixedProgram& mp, const Set& s, const Vector& x);

/// @throws ArgumentError when the name is not registered
SolverBackend lookup_backend(const std::string& name);

void count_lp_call();
void count_milp_call();

} // namespace zonokit::detail

#endif
