#include "zonokit/reach.hpp"

#include <random>
#include <sstream>
#include <utility>

namespace zonokit {

namespace {

void check_square(const Matrix& A, const char* name) {
    if (A.rows() != A.cols()) {
        std::ostringstream os;
        os << name << " must be square, got " << A.rows() << "x" << A.cols();
        throw DimensionError(os.str());
    }
}

std::vector<Eigen::Index> index_range(Eigen::Index first, Eigen::Index count) {
    std::vector<Eigen::Index> dims(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i)
        dims[static_cast<std::size_t>(i)] = first + i;
    return dims;
}

Matrix leading_selector(Eigen::Index keep, Eigen::Index total) {
    Matrix R = Matrix::Zero(keep, total);
    R.leftCols(keep) = Matrix::Identity(keep, keep);
    return R;
}

template <class E>
[[noreturn]] void rethrow_with_step(const E& e, Eigen::Index k) {
    std::ostringstream os;
    os << "step " << k << ": " << e.what();
    throw E(os.str());
}

} // namespace

Set step_linear(const LinearSystem& sys, const Set& R, const Set& U) {
    check_square(sys.A, "A");
    if (sys.B.rows() != sys.A.rows())
        throw DimensionError("B row count differs from A");
    return minkowski_sum(linear_map(sys.A, R), linear_map(sys.B, U));
}

StateUpdateSet build_linear_update_set(const LinearSystem& sys, const Set& D) {
    check_square(sys.A, "A");
    const Eigen::Index n = sys.A.rows();
    const Eigen::Index m = sys.B.cols();
    if (sys.B.rows() != n) throw DimensionError("B row count differs from A");
    if (D.dim() != n + m)
        throw DimensionError("domain dimension differs from state plus input");

    Matrix T = Matrix::Zero(2 * n + m, n + m);
    T.topRows(n + m) = Matrix::Identity(n + m, n + m);
    T.block(n + m, 0, n, n) = sys.A;
    T.block(n + m, n, n, m) = sys.B;
    return {linear_map(T, D), n, m};
}

StateUpdateSet build_affine_update_set(const LinearSystem& sys, const Set& D,
                                       const Vector& f) {
    StateUpdateSet psi = build_linear_update_set(sys, D);
    if (f.size() != psi.n_state)
        throw DimensionError("affine term length differs from state dimension");
    Vector t = Vector::Zero(psi.set.dim());
    t.tail(psi.n_state) = f;
    psi.set = translate(psi.set, t);
    return psi;
}

Set successor(const StateUpdateSet& psi, const Set& R, const Set& U) {
    const Eigen::Index n = psi.n_state;
    const Eigen::Index m = psi.n_input;
    if (psi.set.dim() != 2 * n + m)
        throw DimensionError("update set dimension disagrees with its partition");
    if (R.dim() != n) throw DimensionError("state set dimension mismatch");
    if (U.dim() != m) throw DimensionError("input set dimension mismatch");

    const Set domain_pin = cartesian_product(R, U);
    const Set matched = generalized_intersection(
        psi.set, domain_pin, leading_selector(n + m, 2 * n + m));
    return projection(matched, index_range(n + m, n));
}

Set successor(const StateUpdateSet& psi, const Set& R) {
    if (psi.n_input != 0)
        throw DimensionError("autonomous successor needs an update set without inputs");
    const Eigen::Index n = psi.n_state;
    if (psi.set.dim() != 2 * n)
        throw DimensionError("update set dimension disagrees with its partition");
    if (R.dim() != n) throw DimensionError("state set dimension mismatch");

    const Set matched =
        generalized_intersection(psi.set, R, leading_selector(n, 2 * n));
    return projection(matched, index_range(n, n));
}

Set step_mld(const MldSystem& sys, const Set& R, const Set& U, const Set& W) {
    check_square(sys.A, "A");
    const Eigen::Index n = sys.A.rows();
    const Eigen::Index m = sys.B_u.cols();
    const Eigen::Index n_w = sys.B_w.cols();
    const Eigen::Index n_e = sys.E_aff.size();
    if (sys.B_u.rows() != n || sys.B_w.rows() != n || sys.B_aff.size() != n)
        throw DimensionError("state update blocks disagree on row count");
    if (sys.E_x.rows() != n_e || sys.E_u.rows() != n_e || sys.E_w.rows() != n_e)
        throw DimensionError("inequality blocks disagree on row count");
    if (sys.E_x.cols() != n || sys.E_u.cols() != m || sys.E_w.cols() != n_w)
        throw DimensionError("inequality blocks disagree on column count");
    if (R.dim() != n || U.dim() != m || W.dim() != n_w)
        throw DimensionError("operand set dimensions disagree with the system");

    auto stacked = [n, n_e](const Matrix& top, const Matrix& bottom) {
        Matrix S(n + n_e, top.cols());
        S.topRows(n) = top;
        S.bottomRows(n_e) = bottom;
        return S;
    };

    Vector aff = Vector::Zero(n + n_e);
    aff.head(n) = sys.B_aff;
    const Set V = minkowski_sum(
        minkowski_sum(linear_map(stacked(sys.B_u, sys.E_u), U),
                      linear_map(stacked(sys.B_w, sys.E_w), W)),
        Set::point(aff));
    const Set Y = minkowski_sum(linear_map(stacked(sys.A, sys.E_x), R), V);

    Matrix tail_sel = Matrix::Zero(n_e, n + n_e);
    tail_sel.rightCols(n_e) = Matrix::Identity(n_e, n_e);
    const Set clipped = halfspace_intersection(
        Y, Matrix::Identity(n_e, n_e), sys.E_aff, tail_sel);
    return projection(clipped, index_range(0, n));
}

Set step_pwa(const std::vector<StateUpdateSet>& psis, const Set& R) {
    if (psis.empty()) throw ArgumentError("pwa step needs at least one region");
    const Eigen::Index n = psis.front().n_state;
    for (const StateUpdateSet& p : psis) {
        if (p.n_input != 0)
            throw DimensionError("pwa step expects autonomous update sets");
        if (p.n_state != n)
            throw DimensionError("pwa regions disagree on state dimension");
    }
    Set folded = psis.front().set;
    for (std::size_t i = 1; i < psis.size(); ++i)
        folded = set_union(folded, psis[i].set);
    return successor(StateUpdateSet{std::move(folded), n, 0}, R);
}

StateUpdateSet close_loop(const StateUpdateSet& psi, const Set& theta) {
    const Eigen::Index n = psi.n_state;
    const Eigen::Index m = psi.n_input;
    if (psi.set.dim() != 2 * n + m)
        throw DimensionError("update set dimension disagrees with its partition");
    if (theta.dim() != n + m)
        throw DimensionError("state-input map dimension mismatch");

    const Set matched = generalized_intersection(
        psi.set, theta, leading_selector(n + m, 2 * n + m));
    std::vector<Eigen::Index> dims = index_range(0, n);
    const std::vector<Eigen::Index> succ = index_range(n + m, n);
    dims.insert(dims.end(), succ.begin(), succ.end());
    return {projection(matched, dims), n, 0};
}

ReachTube reach_tube(const std::function<Set(const Set&)>& step, const Set& R0,
                     Eigen::Index K, bool count_leaves,
                     const SolverOptions& opts) {
    if (K < 0) throw ArgumentError("step count must be nonnegative");
    ReachTube tube;
    tube.sets.reserve(static_cast<std::size_t>(K) + 1);
    tube.sets.push_back(R0);
    for (Eigen::Index k = 1; k <= K; ++k) {
        try {
            tube.sets.push_back(step(tube.sets.back()));
        } catch (const ResourceError& e) {
            rethrow_with_step(e, k);
        } catch (const EmptySetError& e) {
            rethrow_with_step(e, k);
        } catch (const UnboundedError& e) {
            rethrow_with_step(e, k);
        } catch (const DegeneracyError& e) {
            rethrow_with_step(e, k);
        } catch (const EvaluationError& e) {
            rethrow_with_step(e, k);
        } catch (const DimensionError& e) {
            rethrow_with_step(e, k);
        } catch (const RepresentationError& e) {
            rethrow_with_step(e, k);
        } catch (const ArgumentError& e) {
            rethrow_with_step(e, k);
        }
    }
    for (std::size_t k = 0; k < tube.sets.size(); ++k) {
        std::ostringstream os;
        os << "R" << k;
        tube.reports.push_back(complexity_of(tube.sets[k], os.str()));
        if (count_leaves) {
            const Set& s = tube.sets[k];
            tube.leaf_counts.push_back(
                s.kind() == SetKind::HybZono
                    ? static_cast<std::int64_t>(get_leaves(s, opts).size())
                    : 1);
        }
    }
    return tube;
}

CoverageAudit audit_domain_coverage(const StateUpdateSet& psi, const Set& region,
                                    std::int64_t samples, std::uint64_t seed,
                                    const SolverOptions& opts) {
    const Eigen::Index dom_dim = psi.n_state + psi.n_input;
    if (region.dim() != dom_dim)
        throw DimensionError("region dimension differs from the update-set domain");
    const Set domain = projection(psi.set, index_range(0, dom_dim));
    const Box box = bounding_box(region, opts);

    std::mt19937_64 rng(seed);
    auto unit = [&rng] {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    CoverageAudit audit;
    Vector x(dom_dim);
    for (std::int64_t t = 0; t < samples; ++t) {
        for (Eigen::Index i = 0; i < dom_dim; ++i)
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit();
        if (!contains_point(region, x, opts)) continue;
        ++audit.checked;
        if (!contains_point(domain, x, opts)) ++audit.violations;
    }
    return audit;
}

} // namespace zonokit
