#include <optional>
#include <sstream>

#include "internal.hpp"

namespace zonokit {

namespace detail {

MixedProgram factor_program(const Set& s) {
    const Eigen::Index n_g = s.num_gen();
    const Eigen::Index n_b = s.num_bin();
    const Eigen::Index n_c = s.num_con();

    MixedProgram mp;
    mp.lp.cost = Vector::Zero(n_g + n_b);
    mp.lp.lower = Vector::Constant(n_g + n_b, -1.0);
    mp.lp.upper = Vector::Constant(n_g + n_b, 1.0);
    mp.lp.A.resize(n_c, n_g + n_b);
    if (n_c > 0) mp.lp.A << s.Ac(), s.Ab();
    mp.lp.b = s.b();
    mp.binaries.reserve(static_cast<std::size_t>(n_b));
    for (Eigen::Index j = 0; j < n_b; ++j) mp.binaries.push_back(n_g + j);
    return mp;
}

void pin_point(MixedProgram& mp, const Set& s, const Vector& x) {
    const Eigen::Index n = s.dim();
    const Eigen::Index rows = mp.lp.A.rows();
    Matrix A(rows + n, mp.lp.A.cols());
    if (rows > 0) A.topRows(rows) = mp.lp.A;
    A.bottomRows(n) << s.Gc(), s.Gb();
    Vector b(rows + n);
    if (rows > 0) b.head(rows) = mp.lp.b;
    b.tail(n) = x - s.c();
    mp.lp.A = std::move(A);
    mp.lp.b = std::move(b);
}

namespace {

/// Feasibility search over the factor program; nullopt when infeasible.
std::optional<Vector> find_factors(const MixedProgram& mp,
                                   const SolverOptions& opts) {
    if (mp.binaries.empty()) {
        const LpSolution sol = solve_lp(mp.lp, opts);
        if (sol.status != SolveStatus::Optimal) return std::nullopt;
        return sol.point;
    }
    const BnbResult r = branch_and_bound(mp, opts, BnbMode::FirstFeasible);
    if (r.status != SolveStatus::Optimal) return std::nullopt;
    return r.point;
}

} // namespace

} // namespace detail

bool is_empty(const Set& s, const SolverOptions& opts) {
    if (s.kind() == SetKind::Zono) return false;
    const MixedProgram mp = detail::factor_program(s);
    return !detail::find_factors(mp, opts).has_value();
}

bool contains_point(const Set& s, const Vector& x, const SolverOptions& opts) {
    if (x.size() != s.dim())
        throw DimensionError("point length differs from set dimension");
    MixedProgram mp = detail::factor_program(s);
    detail::pin_point(mp, s, x);
    return detail::find_factors(mp, opts).has_value();
}

std::pair<double, Vector> support_point(const Set& s, const Vector& d,
                                        const SolverOptions& opts) {
    if (d.size() != s.dim())
        throw DimensionError("direction length differs from set dimension");

    MixedProgram mp = detail::factor_program(s);
    const Eigen::Index n_g = s.num_gen();
    const Eigen::Index n_b = s.num_bin();
    if (n_g > 0) mp.lp.cost.head(n_g) = -(s.Gc().transpose() * d);
    if (n_b > 0) mp.lp.cost.tail(n_b) = -(s.Gb().transpose() * d);

    Vector factors;
    double factor_value;
    if (mp.binaries.empty()) {
        const LpSolution sol = solve_lp(mp.lp, opts);
        if (sol.status != SolveStatus::Optimal)
            throw EmptySetError("support of an empty set");
        factors = sol.point;
        factor_value = sol.value;
    } else {
        const detail::BnbResult r =
            detail::branch_and_bound(mp, opts, detail::BnbMode::Optimize);
        if (r.status != SolveStatus::Optimal)
            throw EmptySetError("support of an empty set");
        factors = r.point;
        factor_value = r.value;
    }

    Vector point = s.c();
    if (n_g > 0) point += s.Gc() * factors.head(n_g);
    if (n_b > 0) point += s.Gb() * factors.tail(n_b);
    return {d.dot(s.c()) - factor_value, point};
}

double support(const Set& s, const Vector& d, const SolverOptions& opts) {
    return support_point(s, d, opts).first;
}

Box bounding_box(const Set& s, const SolverOptions& opts) {
    const Eigen::Index n = s.dim();
    Box box;
    box.lo.resize(n);
    box.hi.resize(n);
    Vector d = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d[i] = 1.0;
        box.hi[i] = support(s, d, opts);
        d[i] = -1.0;
        box.lo[i] = -support(s, d, opts);
        d[i] = 0.0;
    }
    return box;
}

LeafSet get_leaves(const Set& s, const SolverOptions& opts) {
    if (s.kind() != SetKind::HybZono)
        throw RepresentationError("leaf enumeration needs a hybZono");
    const MixedProgram mp = detail::factor_program(s);
    const detail::BnbResult r =
        detail::branch_and_bound(mp, opts, detail::BnbMode::Enumerate);
    if (r.pool_overflow) {
        std::ostringstream os;
        os << "leaf pool cap (" << opts.max_pool_size
           << ") exceeded; enumerated " << r.pool.size() << " leaves so far";
        throw ResourceError(os.str());
    }
    LeafSet leaves;
    leaves.assignments = r.pool;
    return leaves;
}

} // namespace zonokit
