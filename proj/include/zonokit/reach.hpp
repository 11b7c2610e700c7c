#ifndef ZONOKIT_REACH_HPP
#define ZONOKIT_REACH_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "zonokit/ops.hpp"
#include "zonokit/solve.hpp"

namespace zonokit {

/// Discrete-time system x[k+1] = A x[k] + B u[k].
struct LinearSystem {
    Matrix A;
    Matrix B;
};

/**
 * @brief Mixed logical dynamical system.
 *
 * x[k+1] = A x[k] + B_u u[k] + B_w w[k] + B_aff subject to
 * E_x x[k] + E_u u[k] + E_w w[k] <= E_aff, where w collects the auxiliary
 * continuous and binary variables of the logic encoding.
 */
struct MldSystem {
    Matrix A;
    Matrix B_u;
    Matrix B_w;
    Vector B_aff;
    Matrix E_x;
    Matrix E_u;
    Matrix E_w;
    Vector E_aff;
};

/**
 * @brief Set over stacked (x, u, x+) triples, or (x, x+) pairs when closed.
 *
 * Applying the system map once to every point of a domain produces this set;
 * one reachability step is then a generalized intersection with the current
 * set plus a projection, regardless of how involved the underlying map is.
 */
struct StateUpdateSet {
    Set set;
    Eigen::Index n_state;
    Eigen::Index n_input;
};

/// Reachable sets R0..RK with per-step size reports.
struct ReachTube {
    std::vector<Set> sets;
    std::vector<OpComplexityReport> reports;
    std::vector<std::int64_t> leaf_counts; ///< filled only when requested
};

/// One explicit step A*R + B*U.
Set step_linear(const LinearSystem& sys, const Set& R, const Set& U);

/// Update set [[I];[A B]] * D over a domain D of (x, u) pairs.
StateUpdateSet build_linear_update_set(const LinearSystem& sys, const Set& D);

/// As build_linear_update_set with an affine term f added to the successor block.
StateUpdateSet build_affine_update_set(const LinearSystem& sys, const Set& D,
                                       const Vector& f);

/**
 * @brief One reachability step through a state-update set.
 *
 * Computes the projection of psi intersected with R x U on its (x, u)
 * block. Exact whenever R x U lies inside the domain of psi.
 */
Set successor(const StateUpdateSet& psi, const Set& R, const Set& U);

/// Autonomous form for update sets without an input block.
Set successor(const StateUpdateSet& psi, const Set& R);

/// One MLD step: affine images of R, U, W stacked with the inequality rows,
/// the rows clipped against E_aff, and the state block projected out.
Set step_mld(const MldSystem& sys, const Set& R, const Set& U, const Set& W);

/// One PWA step: union of the per-region update sets, then successor.
Set step_pwa(const std::vector<StateUpdateSet>& psis, const Set& R);

/**
 * @brief Fold a state-input map into an update set.
 *
 * theta relates states to admissible inputs over (x, u); the result is the
 * closed-loop update set over (x, x+) with an empty input block.
 */
StateUpdateSet close_loop(const StateUpdateSet& psi, const Set& theta);

/**
 * @brief Iterate a one-step operator K times from R0.
 *
 * Records a size report per set; leaf counts are computed only when
 * requested since they require enumeration. A step failure is rethrown with
 * the step index prepended to the message.
 */
ReachTube reach_tube(const std::function<Set(const Set&)>& step, const Set& R0,
                     Eigen::Index K, bool count_leaves = false,
                     const SolverOptions& opts = SolverOptions());

/// Outcome of a sampled domain-coverage audit.
struct CoverageAudit {
    std::int64_t checked = 0;
    std::int64_t violations = 0;
};

/**
 * @brief Sampled check that a region lies inside the domain of an update set.
 *
 * Points are drawn from the bounding box of the region; those belonging to
 * the region are tested for membership in the update set's domain
 * projection. Exact containment is deliberately not decided here.
 */
CoverageAudit audit_domain_coverage(const StateUpdateSet& psi, const Set& region,
                                    std::int64_t samples, std::uint64_t seed,
                                    const SolverOptions& opts = SolverOptions());

} // namespace zonokit

#endif
