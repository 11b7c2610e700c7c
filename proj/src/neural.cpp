#include "zonokit/neural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "zonokit/ops.hpp"
#include "zonokit/solve.hpp"

namespace zonokit {

void ReluNetwork::validate() const {
    if (weights.empty()) {
        throw DimensionError("network has no layers");
    }
    if (weights.size() != biases.size()) {
        throw DimensionError("network has " + std::to_string(weights.size()) +
                             " weight matrices but " +
                             std::to_string(biases.size()) + " bias vectors");
    }
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (weights[l].rows() == 0 || weights[l].cols() == 0) {
            throw DimensionError("layer " + std::to_string(l) +
                                 " has an empty weight matrix");
        }
        if (biases[l].size() != weights[l].rows()) {
            std::ostringstream os;
            os << "layer " << l << " bias length " << biases[l].size()
               << " does not match weight rows " << weights[l].rows();
            throw DimensionError(os.str());
        }
        if (l + 1 < weights.size() &&
            weights[l + 1].cols() != weights[l].rows()) {
            std::ostringstream os;
            os << "layer " << l + 1 << " expects " << weights[l + 1].cols()
               << " inputs but layer " << l << " produces "
               << weights[l].rows();
            throw DimensionError(os.str());
        }
    }
}

Eigen::Index ReluNetwork::input_dim() const {
    return weights.empty() ? 0 : weights.front().cols();
}

Eigen::Index ReluNetwork::output_dim() const {
    return weights.empty() ? 0 : weights.back().rows();
}

Eigen::Index ReluNetwork::num_hidden_units() const {
    Eigen::Index total = 0;
    for (std::size_t l = 0; l + 1 < weights.size(); ++l) {
        total += weights[l].rows();
    }
    return total;
}

Vector ReluNetwork::forward(const Vector& x) const {
    validate();
    if (x.size() != input_dim()) {
        std::ostringstream os;
        os << "input length " << x.size() << " does not match network input "
           << input_dim();
        throw DimensionError(os.str());
    }
    Vector a = x;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        a = (weights[l] * a + biases[l]).eval();
        if (l + 1 < weights.size()) {
            a = a.cwiseMax(0.0);
        }
    }
    return a;
}

Set relu_unit_set(double a) {
    if (!(a > 0.0)) {
        throw ArgumentError("relu unit bound must be positive");
    }
    // Factors over [0,1] / {0,1}: branch positions t_flat, t_id, slacks
    // p, q, and the selector d. d = 0 walks (-a,0) -> (0,0), d = 1 walks
    // (0,0) -> (a,a); t_flat + d + p = 1 and t_id - d + q = 0 switch off
    // the inactive branch.
    Matrix Gc(2, 4);
    Gc << a, a, 0, 0,
          0, a, 0, 0;
    Matrix Gb(2, 1);
    Gb << a,
          0;
    Vector c(2);
    c << -a, 0;
    Matrix Ac(2, 4);
    Ac << 1, 0, 1, 0,
          0, 1, 0, 1;
    Matrix Ab(2, 1);
    Ab << 1,
          -1;
    Vector b(2);
    b << 1, 0;
    return Set::from_zero_one_form(Gc, Gb, c, Ac, Ab, b);
}

namespace {

struct IntervalAudit {
    bool respected = true;
    double worst_margin = std::numeric_limits<double>::infinity();
};

// Forward interval propagation of the true network over the box of X.
IntervalAudit audit_preactivations(const ReluNetwork& net, const Set& X,
                                   double a) {
    Vector lo = X.c() - X.Gc().cwiseAbs().rowwise().sum();
    Vector hi = X.c() + X.Gc().cwiseAbs().rowwise().sum();
    IntervalAudit audit;
    for (std::size_t l = 0; l + 1 < net.weights.size(); ++l) {
        const Matrix& W = net.weights[l];
        Matrix Wp = W.cwiseMax(0.0);
        Matrix Wn = W.cwiseMin(0.0);
        Vector vlo = Wp * lo + Wn * hi + net.biases[l];
        Vector vhi = Wp * hi + Wn * lo + net.biases[l];
        for (Eigen::Index i = 0; i < vlo.size(); ++i) {
            double reach = std::max(std::abs(vlo(i)), std::abs(vhi(i)));
            audit.worst_margin = std::min(audit.worst_margin, a - reach);
        }
        lo = vlo.cwiseMax(0.0);
        hi = vhi.cwiseMax(0.0);
    }
    audit.respected = audit.worst_margin >= 0.0;
    return audit;
}

} // namespace

NetworkGraphSet encode_network(const ReluNetwork& net, const Set& X,
                               double a) {
    net.validate();
    if (X.kind() != SetKind::Zono) {
        throw RepresentationError(
            "network domain must be a zonotope, got " + to_string(X.kind()));
    }
    if (X.dim() != net.input_dim()) {
        std::ostringstream os;
        os << "domain dimension " << X.dim() << " does not match network input "
           << net.input_dim();
        throw DimensionError(os.str());
    }
    const Eigen::Index n_x = X.dim();
    const std::size_t L = net.weights.size() - 1;

    // Running set over (x, x^l), starting from the graph of the identity.
    Matrix dup(2 * n_x, n_x);
    dup << Matrix::Identity(n_x, n_x),
           Matrix::Identity(n_x, n_x);
    Set S = linear_map(dup, X);
    Eigen::Index n_l = n_x;

    for (std::size_t l = 0; l < L; ++l) {
        const Matrix& W = net.weights[l];
        const Vector& bias = net.biases[l];
        const Eigen::Index k = W.rows();

        // Attach one unit graph (v_i, relu(v_i)) per neuron.
        Set unit = relu_unit_set(a);
        Set T = S;
        for (Eigen::Index i = 0; i < k; ++i) {
            T = cartesian_product(T, unit);
        }

        // Pin each v_i to its pre-activation W_i x^l + b_i.
        Matrix R = Matrix::Zero(k, n_x + n_l + 2 * k);
        R.block(0, n_x, k, n_l) = -W;
        for (Eigen::Index i = 0; i < k; ++i) {
            R(i, n_x + n_l + 2 * i) = 1.0;
        }
        T = generalized_intersection(T, Set::point(bias), R);

        // Keep (x, relu outputs); the consumed layer and the v_i drop out.
        std::vector<Eigen::Index> keep;
        keep.reserve(static_cast<std::size_t>(n_x + k));
        for (Eigen::Index j = 0; j < n_x; ++j) {
            keep.push_back(j);
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            keep.push_back(n_x + n_l + 2 * i + 1);
        }
        S = projection(T, keep);
        n_l = k;
    }

    // Affine output layer on the carried activations.
    const Matrix& Wout = net.weights.back();
    const Vector& bout = net.biases.back();
    Matrix M = Matrix::Zero(n_x + Wout.rows(), n_x + n_l);
    M.topLeftCorner(n_x, n_x) = Matrix::Identity(n_x, n_x);
    M.bottomRightCorner(Wout.rows(), n_l) = Wout;
    Vector t = Vector::Zero(n_x + Wout.rows());
    t.tail(Wout.rows()) = bout;
    Set F = affine_map(M, S, t);

    IntervalAudit audit = audit_preactivations(net, X, a);
    return NetworkGraphSet{std::move(F), X, a, net.num_hidden_units(),
                           audit.respected, audit.worst_margin};
}

Set output_set(const NetworkGraphSet& gs) {
    const Eigen::Index n_x = gs.X.dim();
    const Eigen::Index m = gs.F.dim() - n_x;
    std::vector<Eigen::Index> dims;
    dims.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
        dims.push_back(n_x + j);
    }
    return projection(gs.F, dims);
}

} // namespace zonokit
