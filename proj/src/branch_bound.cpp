#include <algorithm>
#include <cmath>
#include <sstream>

#include "internal.hpp"

namespace zonokit {

namespace {

constexpr double kPropMarginFactor = 1e-6;
constexpr int kPropMaxSweeps = 64;
constexpr double kTinyCoeff = 1e-9;
constexpr int kRelaxStride = 4;

/**
 * Interval contractor over the equality rows. Domains are only ever shrunk
 * when the removed values are infeasible by more than a margin scaled to the
 * row magnitude, so points feasible within the residual tolerance survive.
 */
class Propagator {
public:
    Propagator(const Matrix& A, const Vector& b) : A_(A), b_(b) {
        row_margin_.resize(A.rows());
        for (Eigen::Index r = 0; r < A.rows(); ++r)
            row_margin_[r] = kPropMarginFactor *
                             std::max(1.0, A.row(r).cwiseAbs().sum() + std::abs(b[r]));
    }

    /// Contract [lo, hi]; false means provably infeasible.
    bool run(Vector& lo, Vector& hi, const std::vector<Eigen::Index>& binaries) const {
        if (A_.rows() == 0) return true;
        for (int sweep = 0; sweep < kPropMaxSweeps; ++sweep) {
            double change = 0.0;
            for (Eigen::Index r = 0; r < A_.rows(); ++r)
                if (!contract_row(r, lo, hi, change)) return false;
            if (!snap_binaries(lo, hi, binaries)) return false;
            if (change < 1e-12) break;
        }
        return true;
    }

private:
    const Matrix& A_;
    const Vector& b_;
    Vector row_margin_;

    bool contract_row(Eigen::Index r, Vector& lo, Vector& hi, double& change) const {
        const double margin = row_margin_[r];
        double sum_lo = 0.0, sum_hi = 0.0;
        for (Eigen::Index j = 0; j < A_.cols(); ++j) {
            const double a = A_(r, j);
            if (a == 0.0) continue;
            const double t1 = a * lo[j];
            const double t2 = a * hi[j];
            sum_lo += std::min(t1, t2);
            sum_hi += std::max(t1, t2);
        }
        const double rhs = b_[r];
        if (rhs < sum_lo - margin || rhs > sum_hi + margin) return false;

        for (Eigen::Index j = 0; j < A_.cols(); ++j) {
            const double a = A_(r, j);
            if (std::abs(a) < kTinyCoeff) continue;
            const double t1 = a * lo[j];
            const double t2 = a * hi[j];
            const double rest_lo = sum_lo - std::min(t1, t2);
            const double rest_hi = sum_hi - std::max(t1, t2);
            double p = rhs - rest_hi;
            double q = rhs - rest_lo;
            double new_lo, new_hi;
            if (a > 0.0) {
                new_lo = p / a;
                new_hi = q / a;
            } else {
                new_lo = q / a;
                new_hi = p / a;
            }
            const double slack = margin / std::abs(a);
            new_lo -= slack;
            new_hi += slack;
            if (new_lo > lo[j] + 1e-12) {
                change += new_lo - lo[j];
                lo[j] = new_lo;
            }
            if (new_hi < hi[j] - 1e-12) {
                change += hi[j] - new_hi;
                hi[j] = new_hi;
            }
            if (lo[j] > hi[j] + 1e-12) return false;
        }
        return true;
    }

    static bool snap_binaries(Vector& lo, Vector& hi,
                              const std::vector<Eigen::Index>& binaries) {
        for (const Eigen::Index j : binaries) {
            const bool minus_ok = lo[j] <= -1.0 + 1e-9;
            const bool plus_ok = hi[j] >= 1.0 - 1e-9;
            if (!minus_ok && !plus_ok) return false;
            if (!minus_ok) { lo[j] = 1.0; hi[j] = 1.0; }
            else if (!plus_ok) { lo[j] = -1.0; hi[j] = -1.0; }
        }
        return true;
    }
};

class Dfs {
public:
    Dfs(const MixedProgram& mp, const SolverOptions& opts, detail::BnbMode mode)
        : mp_(mp), opts_(opts), mode_(mode), prop_(mp.lp.A, mp.lp.b) {
        bins_ = mp.binaries;
        std::sort(bins_.begin(), bins_.end());
        bins_.erase(std::unique(bins_.begin(), bins_.end()), bins_.end());
    }

    detail::BnbResult run() {
        Vector lo = mp_.lp.lower;
        Vector hi = mp_.lp.upper;
        for (const Eigen::Index j : bins_) {
            lo[j] = std::max(lo[j], -1.0);
            hi[j] = std::min(hi[j], 1.0);
            if (lo[j] > hi[j]) return res_;
        }
        visit(std::move(lo), std::move(hi), kRelaxStride);
        res_.nodes = nodes_;
        return res_;
    }

private:
    const MixedProgram& mp_;
    const SolverOptions& opts_;
    detail::BnbMode mode_;
    Propagator prop_;
    std::vector<Eigen::Index> bins_;
    detail::BnbResult res_;
    std::int64_t nodes_ = 0;
    bool stop_ = false;
    bool have_incumbent_ = false;

    static const Vector& zero_cost(Eigen::Index n) {
        static thread_local Vector z;
        if (z.size() != n) z = Vector::Zero(n);
        return z;
    }

    LpSolution solve_node(const Vector& lo, const Vector& hi, bool with_cost) const {
        const Vector& cost =
            with_cost ? mp_.lp.cost : zero_cost(mp_.lp.cost.size());
        detail::LpData data{mp_.lp.A, mp_.lp.b, cost, lo, hi};
        return detail::simplex_solve(data, opts_);
    }

    void visit(Vector lo, Vector hi, int since_relax) {
        if (stop_) return;
        if (++nodes_ > opts_.max_milp_nodes) {
            std::ostringstream os;
            os << "branch-and-bound node cap (" << opts_.max_milp_nodes
               << ") exhausted";
            throw ResourceError(os.str());
        }

        if (!prop_.run(lo, hi, bins_)) return;

        // First binary whose both values are still open, in index order.
        Eigen::Index branch_var = -1;
        for (const Eigen::Index j : bins_) {
            if (lo[j] <= -0.5 && hi[j] >= 0.5) {
                branch_var = j;
                break;
            }
        }

        if (branch_var < 0) {
            leaf(lo, hi);
            return;
        }

        // Feasibility-only searches price the relaxation every few levels;
        // interval propagation screens the levels in between and the leaf
        // solve still decides, so the set of surviving leaves is unchanged.
        const bool optimize = (mode_ == detail::BnbMode::Optimize);
        if (optimize || since_relax >= kRelaxStride) {
            const LpSolution relax = solve_node(lo, hi, optimize);
            if (relax.status == SolveStatus::Infeasible) return;
            if (optimize && have_incumbent_ &&
                relax.status == SolveStatus::Optimal &&
                relax.value >= res_.value - opts_.optimality_tol)
                return;
            since_relax = 0;
        }

        Vector lo_minus = lo, hi_minus = hi;
        hi_minus[branch_var] = -1.0;
        visit(std::move(lo_minus), std::move(hi_minus), since_relax + 1);
        if (stop_) return;

        lo[branch_var] = 1.0;
        visit(std::move(lo), std::move(hi), since_relax + 1);
    }

    void leaf(const Vector& lo, const Vector& hi) {
        const LpSolution sol =
            solve_node(lo, hi, mode_ == detail::BnbMode::Optimize);
        if (sol.status == SolveStatus::Infeasible) return;
        if (sol.status == SolveStatus::Unbounded) {
            res_.status = SolveStatus::Unbounded;
            stop_ = true;
            return;
        }

        switch (mode_) {
            case detail::BnbMode::Optimize:
                if (!have_incumbent_ || sol.value < res_.value - 1e-12) {
                    have_incumbent_ = true;
                    res_.status = SolveStatus::Optimal;
                    res_.value = sol.value;
                    res_.point = sol.point;
                }
                break;
            case detail::BnbMode::FirstFeasible:
                res_.status = SolveStatus::Optimal;
                res_.value = sol.value;
                res_.point = sol.point;
                stop_ = true;
                break;
            case detail::BnbMode::Enumerate: {
                if (static_cast<std::int64_t>(res_.pool.size()) >=
                    opts_.max_pool_size) {
                    res_.pool_overflow = true;
                    stop_ = true;
                    return;
                }
                BinaryVector assignment(bins_.size());
                for (std::size_t k = 0; k < bins_.size(); ++k)
                    assignment[static_cast<Eigen::Index>(k)] =
                        lo[bins_[k]] > 0.0 ? 1 : -1;
                res_.pool.push_back(std::move(assignment));
                break;
            }
        }
    }
};

} // namespace

namespace detail {

BnbResult branch_and_bound(const MixedProgram& mp, const SolverOptions& opts,
                           BnbMode mode) {
    mp.validate();
    count_milp_call();
    Dfs dfs(mp, opts, mode);
    return dfs.run();
}

} // namespace detail

MilpSolution solve_milp(const MixedProgram& mp, const SolverOptions& opts) {
    if (!(opts.backend == "builtin" || opts.backend.empty())) {
        mp.validate();
        const SolverBackend backend = detail::lookup_backend(opts.backend);
        if (!backend.milp)
            throw ArgumentError("backend '" + opts.backend + "' has no MILP entry");
        detail::count_milp_call();
        return backend.milp(mp, opts);
    }
    const detail::BnbResult r =
        detail::branch_and_bound(mp, opts, detail::BnbMode::Optimize);
    MilpSolution out;
    out.status = r.status;
    out.value = r.value;
    out.point = r.point;
    out.nodes = r.nodes;
    return out;
}

} // namespace zonokit
