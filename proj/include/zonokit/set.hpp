#ifndef ZONOKIT_SET_HPP
#define ZONOKIT_SET_HPP

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

#include "zonokit/errors.hpp"
#include "zonokit/options.hpp"

namespace zonokit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using BinaryVector = Eigen::VectorXi; ///< entries restricted to {-1, +1}

/// Representation tag, ordered from least to most expressive.
enum class SetKind { Zono = 0, ConZono = 1, HybZono = 2 };

/// Short lowercase name of a representation tag ("zono", "conZono", "hybZono").
std::string to_string(SetKind kind);

/**
 * @brief Value type for zonotopic sets in generator-constraint form.
 *
 * A set holds the blocks (Gc, Gb, c, Ac, Ab, b) describing
 *   { Gc xi_c + Gb xi_b + c :  Ac xi_c + Ab xi_b = b,
 *     ||xi_c||_inf <= 1,  xi_b in {-1,+1}^{n_b} }
 * together with a representation tag. A Zono has no constraints and no binary
 * factors, a ConZono adds the equality constraints, and a HybZono adds binary
 * factors. Degenerate block counts are permitted in every tag that allows the
 * block at all, so a HybZono with n_b = 0 is structurally identical to its
 * ConZono form.
 *
 * Instances are immutable values: all mutation happens at construction, and
 * operations produce new sets. Sharing across threads is safe.
 */
class Set {
public:
    /// Zonotope <G, c>. G is n x n_g; a zero-column G gives a singleton.
    static Set zono(Matrix G, Vector c);

    /// Constrained zonotope <G, c, A, b> with A xi = b coupling the factors.
    static Set con_zono(Matrix G, Vector c, Matrix A, Vector b);

    /// Hybrid zonotope <Gc, Gb, c, Ac, Ab, b>.
    static Set hyb_zono(Matrix Gc, Matrix Gb, Vector c,
                        Matrix Ac, Matrix Ab, Vector b);

    /// Singleton {c} as a zonotope with no generators.
    static Set point(Vector c);

    /// Axis-aligned box [lo, hi] as a zonotope. Requires lo <= hi elementwise.
    static Set box(const Vector& lo, const Vector& hi);

    /**
     * @brief Hybrid zonotope whose factor data is written over [0,1] / {0,1}.
     *
     * Continuous factors in [0,1] and binary factors in {0,1} are affinely
     * remapped onto the internal [-1,1] / {-1,+1} alphabet.
     */
    static Set from_zero_one_form(const Matrix& Gc, const Matrix& Gb,
                                  const Vector& c, const Matrix& Ac,
                                  const Matrix& Ab, const Vector& b);

    SetKind kind() const { return kind_; }

    Eigen::Index dim() const { return c_.size(); }      ///< ambient dimension n
    Eigen::Index num_gen() const { return Gc_.cols(); } ///< continuous factors n_g
    Eigen::Index num_bin() const { return Gb_.cols(); } ///< binary factors n_b
    Eigen::Index num_con() const { return b_.size(); }  ///< equality constraints n_c

    const Matrix& Gc() const { return Gc_; }
    const Matrix& Gb() const { return Gb_; }
    const Vector& c() const { return c_; }
    const Matrix& Ac() const { return Ac_; }
    const Matrix& Ab() const { return Ab_; }
    const Vector& b() const { return b_; }

private:
    Set() = default;

    SetKind kind_ = SetKind::Zono;
    Matrix Gc_, Gb_, Ac_, Ab_;
    Vector c_, b_;

    friend Set make_set(SetKind kind, Matrix Gc, Matrix Gb, Vector c,
                        Matrix Ac, Matrix Ab, Vector b);
};

/**
 * @brief Build a set with an explicit tag from the six blocks.
 *
 * Zero-sized blocks are conformed to their canonical shapes. The tag must
 * allow the populated blocks (a Zono tag with constraints is rejected).
 * @throws DimensionError on inconsistent block shapes
 * @throws RepresentationError if the tag cannot hold the structure
 * @throws ArgumentError on non-finite entries
 */
Set make_set(SetKind kind, Matrix Gc, Matrix Gb, Vector c,
             Matrix Ac, Matrix Ab, Vector b);

/**
 * @brief Re-tag a set with a more expressive representation.
 *
 * The payload blocks are unchanged; only zero-sized blocks are added. A
 * request for a less expressive tag is rejected even when the structure would
 * permit it (see canonical() for that direction).
 * @throws RepresentationError on downcast requests
 */
Set lift(const Set& s, SetKind target);

/// Least expressive tag consistent with the structure (blocks unchanged).
Set canonical(const Set& s);

/**
 * @brief Structural equality: equal dimensions, factor counts, and blocks.
 *
 * Tags are not compared, so a HybZono with n_b = 0 is structurally equal to
 * its ConZono form. Entries are compared within @p tol (default exact).
 */
bool structurally_equal(const Set& a, const Set& b, double tol = 0.0);

/**
 * @brief Constrained zonotope obtained by fixing the binary factors.
 *
 * For xi_b in {-1,+1}^{n_b} the leaf is
 *   < Gc, c + Gb xi_b, Ac, b - Ab xi_b >.
 * The leaf may be empty; no feasibility check is made here.
 * @throws RepresentationError if s is not a HybZono
 * @throws ArgumentError on wrong length or entries other than +-1
 */
Set leaf(const Set& s, const BinaryVector& xi_b);

/// One polytope {x : H x <= f} of an H-rep union.
struct HrepPiece {
    Matrix H;
    Vector f;
};

/**
 * @brief Constrained zonotope equal to the polytope {x : H x <= f}.
 *
 * The polytope's bounding box is found with 2n support LPs; the box is then
 * intersected with the inequalities, one slack generator per row, each slack
 * scaled by half the row's range over the box.
 * @throws EmptySetError if the polytope is empty
 * @throws UnboundedError if it is unbounded
 */
Set from_hrep(const Matrix& H, const Vector& f,
              const SolverOptions& opts = SolverOptions());

/**
 * @brief Hybrid zonotope equal to the union of H-rep polytopes.
 *
 * Pieces share a global bounding box; a one-hot binary per piece gates that
 * piece's inequalities. Every piece must be nonempty and bounded.
 */
Set from_hrep_union(const std::vector<HrepPiece>& pieces,
                    const SolverOptions& opts = SolverOptions());

/**
 * @brief Union of convex hulls of vertex subsets.
 *
 * V is n x n_v with one vertex per column; M is an n_v x N 0/1 incidence
 * matrix whose column j selects the vertices of piece j. The result is
 * W ( union_j conv{ v_i : M(i,j) = 1 } ) written with barycentric factors
 * gated by one-hot binaries. A single all-ones column yields the plain
 * convex hull as a ConZono.
 * @throws ArgumentError for entries outside {0,1} or an empty piece column
 */
Set from_vertices(const Matrix& V, const Eigen::MatrixXi& M);

std::ostream& operator<<(std::ostream& os, const Set& s);

} // namespace zonokit

#endif
