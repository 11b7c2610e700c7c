#include "zonokit/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zonokit/ops.hpp"

namespace zonokit {

void UnaryFunctionSpec::validate() const {
    if (!f) {
        throw ArgumentError("function spec has no evaluator");
    }
    if (!(lo < hi)) {
        throw ArgumentError("function domain is not a proper interval");
    }
    if (breakpoints.size() < 2) {
        throw ArgumentError("at least two breakpoints are required");
    }
    for (double x : breakpoints) {
        if (!std::isfinite(x)) {
            throw ArgumentError("breakpoints must be finite");
        }
    }
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i - 1] < breakpoints[i])) {
            std::ostringstream os;
            os << "breakpoints must be strictly increasing, got "
               << breakpoints[i - 1] << " before " << breakpoints[i];
            throw ArgumentError(os.str());
        }
    }
    if (breakpoints.front() != lo || breakpoints.back() != hi) {
        throw ArgumentError("breakpoints must start at lo and end at hi");
    }
}

std::function<double(double)> unary_builtin(const std::string& name) {
    if (name == "sin") return [](double x) { return std::sin(x); };
    if (name == "cos") return [](double x) { return std::cos(x); };
    if (name == "sq") return [](double x) { return x * x; };
    if (name == "sat") {
        return [](double x) { return std::clamp(x, -1.0, 1.0); };
    }
    if (name == "tanh") return [](double x) { return std::tanh(x); };
    throw ArgumentError("unknown builtin function '" + name + "'");
}

std::vector<double> uniform_breakpoints(double lo, double hi, int n_v) {
    if (n_v < 2) {
        throw ArgumentError("uniform breakpoint count must be at least 2");
    }
    if (!(lo < hi)) {
        throw ArgumentError("breakpoint interval is not proper");
    }
    std::vector<double> pts(static_cast<std::size_t>(n_v));
    for (int i = 0; i < n_v; ++i) {
        pts[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / (n_v - 1);
    }
    pts.front() = lo;
    pts.back() = hi;
    return pts;
}

namespace {

double eval_checked(const UnaryFunctionSpec& spec, double x) {
    double y = spec.f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "function evaluated to a non-finite value at x = " << x;
        throw EvaluationError(os.str());
    }
    return y;
}

} // namespace

Set build_segment_graph(const UnaryFunctionSpec& spec) {
    spec.validate();
    const Eigen::Index n_v = static_cast<Eigen::Index>(spec.breakpoints.size());
    Matrix V(2, n_v);
    for (Eigen::Index i = 0; i < n_v; ++i) {
        double x = spec.breakpoints[static_cast<std::size_t>(i)];
        V(0, i) = x;
        V(1, i) = eval_checked(spec, x);
    }
    Eigen::MatrixXi M = Eigen::MatrixXi::Zero(n_v, n_v - 1);
    for (Eigen::Index j = 0; j + 1 < n_v; ++j) {
        M(j, j) = 1;
        M(j + 1, j) = 1;
    }
    return from_vertices(V, M);
}

ErrorBound bound_error(const UnaryFunctionSpec& spec, int grid_per_segment) {
    spec.validate();
    if (grid_per_segment < 2) {
        throw ArgumentError("grid must have at least 2 samples per segment");
    }
    const std::size_t n_seg = spec.breakpoints.size() - 1;
    std::vector<double> radii(n_seg, 0.0);
    double gap_lo = 0.0;
    double gap_hi = 0.0;
    for (std::size_t j = 0; j < n_seg; ++j) {
        double x0 = spec.breakpoints[j];
        double x1 = spec.breakpoints[j + 1];
        double y0 = eval_checked(spec, x0);
        double y1 = eval_checked(spec, x1);
        double worst = 0.0;
        for (int g = 0; g < grid_per_segment; ++g) {
            double t = static_cast<double>(g) / (grid_per_segment - 1);
            double x = x0 + t * (x1 - x0);
            double gap = eval_checked(spec, x) - (y0 + t * (y1 - y0));
            worst = std::max(worst, std::abs(gap));
            gap_lo = std::min(gap_lo, gap);
            gap_hi = std::max(gap_hi, gap);
        }
        radii[j] = 1.5 * worst;
    }
    // interpolation of an affine function leaves rounding dust only
    double radius = radii.empty() ? 0.0
                                  : *std::max_element(radii.begin(), radii.end());
    double bias = 0.75 * (gap_lo + gap_hi);
    if (radius < 1e-12) {
        std::fill(radii.begin(), radii.end(), 0.0);
        radius = 0.0;
        bias = 0.0;
    }
    Vector center(2);
    center << 0.0, bias;
    Set E = Set::point(center);
    if (radius > 0.0) {
        Matrix G(2, 1);
        G << 0.0, radius;
        E = Set::zono(G, center);
    }
    return ErrorBound{std::move(E), std::move(radii)};
}

Set bound_function(const UnaryFunctionSpec& spec, int grid_per_segment) {
    Set Zv = build_segment_graph(spec);
    ErrorBound eb = bound_error(spec, grid_per_segment);
    return minkowski_sum(Zv, eb.E);
}

Set compose_scalar_graph(const Set& domain, const Vector& selector,
                         const Set& graph) {
    if (selector.size() != domain.dim()) {
        std::ostringstream os;
        os << "selector length " << selector.size()
           << " does not match domain dimension " << domain.dim();
        throw DimensionError(os.str());
    }
    if (graph.dim() != 2) {
        throw DimensionError("scalar graph must be 2-dimensional");
    }
    const Eigen::Index n = domain.dim();
    Set T = cartesian_product(domain, graph);
    Matrix R = Matrix::Zero(1, n + 2);
    R.leftCols(n) = -selector.transpose();
    R(0, n) = 1.0;
    T = generalized_intersection(T, Set::point(Vector::Zero(1)), R);
    std::vector<Eigen::Index> keep;
    keep.reserve(static_cast<std::size_t>(n + 1));
    for (Eigen::Index j = 0; j < n; ++j) {
        keep.push_back(j);
    }
    keep.push_back(n + 1);
    return projection(T, keep);
}

StateUpdateSet lift_to_update_set(const LinearSystem& sys, const Set& D,
                                  const std::vector<NonlinearTerm>& terms,
                                  const Vector& f) {
    const Eigen::Index n = sys.A.rows();
    const Eigen::Index m = sys.B.cols();
    if (sys.A.cols() != n || sys.B.rows() != n) {
        throw DimensionError("system matrices must share the state dimension");
    }
    if (D.dim() != n + m) {
        std::ostringstream os;
        os << "domain dimension " << D.dim() << " does not match n + m = "
           << n + m;
        throw DimensionError(os.str());
    }
    if (f.size() != n) {
        throw DimensionError("affine term must have the state dimension");
    }
    const Eigen::Index J = static_cast<Eigen::Index>(terms.size());
    for (const NonlinearTerm& term : terms) {
        if (term.graph.dim() != 2) {
            throw DimensionError("term graphs must be 2-dimensional");
        }
        if (term.selector.size() != n + m) {
            throw DimensionError("term selectors must span (x, u)");
        }
        if (term.gain.size() != n) {
            throw DimensionError("term gains must have the state dimension");
        }
    }

    // (x, u, arg_1, val_1, ..., arg_J, val_J) with each arg pinned.
    Set T = D;
    for (Eigen::Index j = 0; j < J; ++j) {
        const NonlinearTerm& term = terms[static_cast<std::size_t>(j)];
        T = cartesian_product(T, term.graph);
        Matrix R = Matrix::Zero(1, n + m + 2 * (j + 1));
        R.leftCols(n + m) = -term.selector.transpose();
        R(0, n + m + 2 * j) = 1.0;
        T = generalized_intersection(T, Set::point(Vector::Zero(1)), R);
    }

    Matrix M = Matrix::Zero(n + m + n, n + m + 2 * J);
    M.topLeftCorner(n + m, n + m) = Matrix::Identity(n + m, n + m);
    M.block(n + m, 0, n, n) = sys.A;
    M.block(n + m, n, n, m) = sys.B;
    for (Eigen::Index j = 0; j < J; ++j) {
        M.block(n + m, n + m + 2 * j + 1, n, 1) =
            terms[static_cast<std::size_t>(j)].gain;
    }
    Vector t = Vector::Zero(n + m + n);
    t.tail(n) = f;
    return StateUpdateSet{affine_map(M, T, t), n, m};
}

StateUpdateSet lift_to_update_set(const LinearSystem& sys, const Set& D,
                                  const std::vector<NonlinearTerm>& terms) {
    return lift_to_update_set(sys, D, terms, Vector::Zero(sys.A.rows()));
}

} // namespace zonokit
