#ifndef ZONOKIT_GEOMETRY_HPP
#define ZONOKIT_GEOMETRY_HPP

#include <string>
#include <vector>

#include "zonokit/solve.hpp"

namespace zonokit {

/**
 * @brief Vertex/face mesh of a 1D, 2D, or 3D set.
 *
 * v holds one vertex per row (duplicates permitted for zonotope meshes).
 * f holds one face per row, each entry an index into v; rows shorter than
 * the widest face are padded with -1. A face with one index is a point,
 * two a segment, three or more a convex polygon.
 */
struct Mesh {
    Matrix v;
    Eigen::MatrixXi f;

    Eigen::Index num_vertices() const { return v.rows(); }
    Eigen::Index num_faces() const { return f.rows(); }
};

/// Display attributes carried opaquely into the exporters.
struct PlotOptions {
    std::string color = "#1f77b4";
    double opacity = 1.0;
    bool edges = true;
};

/**
 * @brief Closed-form zonotope mesh, no linear programs involved.
 *
 * In 3D the faces are the parallelograms spanned by generator pairs, each
 * placed at the extreme combination of the remaining generators; both sides
 * of each pair are emitted, so generic generators give exactly
 * 2*C(n_g, 2) faces with four fresh vertex rows each. Repeated vertices are
 * not merged. In 2D the generators are sorted by angle and walked into a
 * single convex counterclockwise polygon; in 1D the result is a segment.
 * Near-parallel 3D pairs (cross product below 1e-10) are skipped.
 *
 * @throws DimensionError for sets outside 1 to 3 dimensions (project first)
 * @throws RepresentationError if the set has constraints or binary factors
 */
Mesh mesh_zonotope(const Set& z);

/**
 * @brief Vertex enumeration of a constrained zonotope by support solves.
 *
 * 2D traces the boundary with angular chord refinement; 3D seeds a simplex
 * and expands it face by face, using each face normal as a search direction
 * until no face can be beaten. Ties are broken by lexicographic follow-up
 * solves so every emitted vertex is a true vertex, appearing once. The
 * number of solves grows linearly with the number of vertices found.
 *
 * @throws EmptySetError on an empty set
 * @throws DegeneracyError when the set is flat (support width below 1e-8
 *         along some direction, reported in the message)
 * @throws RepresentationError if the set has binary factors
 */
Mesh mesh_conzonotope(const Set& zc, const SolverOptions& opts = SolverOptions());

/**
 * @brief One mesh per nonempty leaf of a hybrid zonotope.
 *
 * Leaves come from get_leaves and are meshed independently (in parallel when
 * jobs > 1); the list order is the deterministic leaf order regardless of
 * job count. A leaf meshing error is rethrown with the leaf's binary
 * assignment prepended to the message.
 */
std::vector<Mesh> mesh_hybzonotope(const Set& zh,
                                   const SolverOptions& opts = SolverOptions(),
                                   int jobs = 1);

/// Mesh any set: zonotopes in closed form, otherwise per-leaf support solves.
std::vector<Mesh> mesh_set(const Set& s,
                           const SolverOptions& opts = SolverOptions(),
                           int jobs = 1);

/// @name Exporters
/// All exporters are byte-stable: identical inputs give identical text.
///@{

/// JSON object {"v": ..., "f": ..., "options": ...} with -1 face padding.
std::string mesh_to_json(const Mesh& mesh, const PlotOptions& options = {});

/// SVG document with one path per polygon; 2D meshes only.
/// @throws DimensionError for non-2D meshes
std::string meshes_to_svg(const std::vector<Mesh>& meshes,
                          const std::vector<PlotOptions>& options);

/// Wavefront-style text (v/f lines, 1-based indices); 3D meshes only.
/// @throws DimensionError for non-3D meshes
std::string mesh_to_obj(const Mesh& mesh);

///@}

} // namespace zonokit

#endif
