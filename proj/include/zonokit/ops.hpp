#ifndef ZONOKIT_OPS_HPP
#define ZONOKIT_OPS_HPP

#include <string>
#include <vector>

#include "zonokit/set.hpp"

namespace zonokit {

/// Result-size bookkeeping for one operation.
struct OpComplexityReport {
    std::string op;
    Eigen::Index n_g = 0;
    Eigen::Index n_b = 0;
    Eigen::Index n_c = 0;

    bool operator==(const OpComplexityReport&) const = default;
};

/// Report describing an already-computed result set.
OpComplexityReport complexity_of(const Set& s, std::string op_name);

/// Image R*s = <R Gc, R Gb, R c, Ac, Ab, b>. R must have dim(s) columns.
/// The result keeps the operand's tag.
Set linear_map(const Matrix& R, const Set& s);

/// Shift every point of s by t.
Set translate(const Set& s, const Vector& t);

/// R*s + t in one step.
Set affine_map(const Matrix& R, const Set& s, const Vector& t);

/// Minkowski sum; generators concatenate, constraints stay block-diagonal.
Set minkowski_sum(const Set& s, const Set& t);

/**
 * @brief Generalized intersection s inter_R t = { x in s : R x in t }.
 *
 * Factor spaces concatenate and dim(t) coupling rows R Gc_s xi_s - Gc_t xi_t
 * = c_t - R c_s (and the binary analogue) are appended, so
 * n_c = n_c_s + n_c_t + dim(t) with no new generators.
 */
Set generalized_intersection(const Set& s, const Set& t, const Matrix& R);

/// Standard intersection, i.e. generalized intersection with R = I.
Set intersection(const Set& s, const Set& t);

/**
 * @brief Intersection with halfspaces { x : H (R x) <= f }.
 *
 * Each of the n_h inequalities contributes one slack generator and one
 * constraint row; the slack is scaled by half the range of f_i - H_i R x
 * over the factor box, so the result is exact.
 */
Set halfspace_intersection(const Set& s, const Matrix& H, const Vector& f,
                           const Matrix& R);

/// Halfspace intersection with R = I.
Set halfspace_intersection(const Set& s, const Matrix& H, const Vector& f);

/// Cartesian product; every count is the sum of the operand counts.
Set cartesian_product(const Set& s, const Set& t);

/**
 * @brief Exact union of two bounded sets as a hybrid zonotope.
 *
 * One fresh binary factor selects the active operand. Slack rows force the
 * inactive operand's continuous factors to 0 and pin its binary factors, and
 * the operand constraint rows are offset so they hold vacuously when
 * inactive. Exactly one binary factor is added; generators and constraints
 * grow linearly in the operand factor counts.
 */
Set set_union(const Set& s, const Set& t);

/**
 * @brief Convex hull of the union of two Zono/ConZono operands.
 *
 * Interpolation-factor construction: factors of each operand are scaled
 * copies gated by a shared theta in [-1,1], two slack rows per operand
 * generator. O(n_g) growth.
 * @throws RepresentationError for operands with binary factors
 */
Set convex_hull(const Set& s, const Set& t);

/**
 * @brief Pontryagin difference s (-) w = { x : x + w subseteq s }.
 *
 * w must be representable as a zonotope. Realized by recentering and iterated
 * per-generator differences, s (-) <[g],0> = (s - g) inter (s + g); zero
 * generator columns are skipped.
 * @throws RepresentationError for a subtrahend with constraints or binaries
 */
Set pontryagin_difference(const Set& s, const Set& w);

/// Coordinate projection by row selection; dims may repeat or reorder.
Set projection(const Set& s, const std::vector<Eigen::Index>& dims);

inline Set operator+(const Set& a, const Set& b) { return minkowski_sum(a, b); }
inline Set operator*(const Matrix& R, const Set& s) { return linear_map(R, s); }

} // namespace zonokit

#endif
