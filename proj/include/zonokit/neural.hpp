#ifndef ZONOKIT_NEURAL_HPP
#define ZONOKIT_NEURAL_HPP

#include <vector>

#include "zonokit/set.hpp"

namespace zonokit {

/// Feed-forward, fully connected network with ReLU hidden layers.
/// weights[l] maps layer l activations to layer l+1 pre-activations; the
/// last pair is the affine output layer and gets no activation.
struct ReluNetwork {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;

    /// @throws DimensionError on inconsistent shapes or an empty layer list
    void validate() const;

    Eigen::Index input_dim() const;
    Eigen::Index output_dim() const;
    Eigen::Index num_hidden_units() const;

    /// Plain forward pass.
    Vector forward(const Vector& x) const;
};

/**
 * @brief Exact graph of one ReLU over [-a, a].
 *
 * The set {(v, max(0, v)) : |v| <= a}, written as two gated segments that
 * share the origin: one binary factor selects the flat or the identity
 * branch, one interpolation factor per branch walks along it, and two slack
 * factors carry the gating rows. Four continuous factors, one binary
 * factor, two constraints.
 * @throws ArgumentError for a <= 0
 */
Set relu_unit_set(double a);

/// Network graph set over stacked (x, y) plus the data that produced it.
struct NetworkGraphSet {
    Set F;
    Set X;
    double activation_bound;
    Eigen::Index n_units;
    bool bound_respected;  ///< interval audit: all pre-activations within [-a, a]
    double worst_margin;   ///< min over units of a - |pre-activation| bound
};

/**
 * @brief Hybrid zonotope holding every input/output pair of the network.
 *
 * Layers are composed by taking the Cartesian product of the running set
 * with one unit graph per neuron, pinning each unit's first coordinate to
 * its affine pre-activation, and projecting the consumed layer away. For a
 * zonotope domain with one generator per input the result has exactly
 * n_x + 4 n_N continuous generators, n_N binary factors, and 3 n_N
 * constraints, with n_N the total hidden unit count.
 *
 * Exactness requires every pre-activation to stay within [-a, a]; an
 * interval-arithmetic audit of that condition is recorded on the result
 * rather than enforced.
 * @throws RepresentationError if X is not a zonotope
 */
NetworkGraphSet encode_network(const ReluNetwork& net, const Set& X, double a);

/// The image set of the network over X: F projected on its output block.
Set output_set(const NetworkGraphSet& gs);

} // namespace zonokit

#endif
