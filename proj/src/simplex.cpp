#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "internal.hpp"

namespace zonokit {

namespace {

std::atomic<std::int64_t> g_lp_calls{0};
std::atomic<std::int64_t> g_milp_calls{0};

std::mutex g_backend_mutex;
std::map<std::string, SolverBackend>& backend_map() {
    static std::map<std::string, SolverBackend> m;
    return m;
}

constexpr double kPivotEps = 1e-11;
constexpr double kStallStep = 1e-11;
constexpr int kStallLimit = 50;
constexpr int kRefactorPeriod = 128;

/**
 * Bounded-variable primal simplex over  min c.x, A x = b, l <= x <= u.
 *
 * One artificial variable per row gives the identity starting basis; phase 1
 * drives the artificial L1 residual to zero, phase 2 optimizes the true cost
 * with the artificials pinned at zero. The basis inverse is kept explicitly
 * and refreshed periodically. Dantzig pricing with a permanent switch to
 * Bland's rule after a degenerate stall keeps the method finite.
 */
class Simplex {
public:
    Simplex(const detail::LpData& d, const SolverOptions& opts)
        : d_(d), opts_(opts), m_(d.A.rows()), n_(d.cost.size()) {}

    LpSolution run() {
        init();
        LpSolution out;

        // Phase 1
        phase1_ = true;
        const SolveStatus ph1 = iterate();
        if (ph1 == SolveStatus::Unbounded) {
            out.status = SolveStatus::Infeasible;
            out.iterations = iterations_;
            return out;
        }
        if (phase1_objective() > opts_.feasibility_tol) {
            out.status = SolveStatus::Infeasible;
            out.iterations = iterations_;
            return out;
        }

        // Pin artificials and optimize the true cost.
        phase1_ = false;
        for (Eigen::Index j = n_; j < total_; ++j) {
            lower_[j] = 0.0;
            upper_[j] = 0.0;
            if (status_[j] != Basic) {
                value_[j] = 0.0;
                status_[j] = AtLower;
            }
        }
        refactor();
        const SolveStatus ph2 = iterate();
        out.status = ph2;
        out.point = value_.head(n_);
        out.value = d_.cost.dot(out.point);
        out.iterations = iterations_;
        return out;
    }

private:
    enum VarStatus : unsigned char { AtLower, AtUpper, Free, Basic };

    const detail::LpData& d_;
    const SolverOptions& opts_;
    Eigen::Index m_, n_, total_ = 0;

    Vector lower_, upper_, value_, phase1_cost_;
    std::vector<VarStatus> status_;
    std::vector<Eigen::Index> basis_;
    Matrix binv_;
    bool phase1_ = true;
    bool bland_ = false;
    int stall_ = 0;
    std::int64_t iterations_ = 0;
    int since_refactor_ = 0;

    double cost_of(Eigen::Index j) const {
        if (phase1_) return phase1_cost_[j];
        return j < n_ ? d_.cost[j] : 0.0;
    }

    Vector column(Eigen::Index j) const {
        if (j < n_) return d_.A.col(j);
        Vector e = Vector::Zero(m_);
        e[j - n_] = 1.0;
        return e;
    }

    void init() {
        total_ = n_ + m_;
        lower_.resize(total_);
        upper_.resize(total_);
        value_ = Vector::Zero(total_);
        phase1_cost_ = Vector::Zero(total_);
        status_.assign(static_cast<std::size_t>(total_), AtLower);
        basis_.resize(static_cast<std::size_t>(m_));

        for (Eigen::Index j = 0; j < n_; ++j) {
            lower_[j] = d_.lower[j];
            upper_[j] = d_.upper[j];
            if (std::isfinite(lower_[j]) &&
                (!std::isfinite(upper_[j]) || std::abs(lower_[j]) <= std::abs(upper_[j]))) {
                status_[j] = AtLower;
                value_[j] = lower_[j];
            } else if (std::isfinite(upper_[j])) {
                status_[j] = AtUpper;
                value_[j] = upper_[j];
            } else {
                status_[j] = Free;
                value_[j] = 0.0;
            }
        }

        Vector residual = d_.b;
        for (Eigen::Index j = 0; j < n_; ++j)
            if (value_[j] != 0.0) residual -= d_.A.col(j) * value_[j];

        for (Eigen::Index i = 0; i < m_; ++i) {
            const Eigen::Index j = n_ + i;
            if (residual[i] >= 0.0) {
                lower_[j] = 0.0;
                upper_[j] = kInf;
                phase1_cost_[j] = 1.0;
            } else {
                lower_[j] = -kInf;
                upper_[j] = 0.0;
                phase1_cost_[j] = -1.0;
            }
            value_[j] = residual[i];
            status_[j] = Basic;
            basis_[static_cast<std::size_t>(i)] = j;
        }
        binv_ = Matrix::Identity(m_, m_);
    }

    double phase1_objective() const {
        double obj = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i) {
            const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
            if (j >= n_) obj += std::abs(value_[j]);
        }
        for (Eigen::Index j = n_; j < total_; ++j)
            if (status_[j] != Basic) obj += std::abs(value_[j]);
        return obj;
    }

    void refactor() {
        Matrix B(m_, m_);
        for (Eigen::Index i = 0; i < m_; ++i)
            B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
        binv_ = B.partialPivLu().inverse();

        Vector rhs = d_.b;
        for (Eigen::Index j = 0; j < total_; ++j)
            if (status_[j] != Basic && value_[j] != 0.0) rhs -= column(j) * value_[j];
        const Vector xb = binv_ * rhs;
        for (Eigen::Index i = 0; i < m_; ++i)
            value_[basis_[static_cast<std::size_t>(i)]] = xb[i];
        since_refactor_ = 0;
    }

    SolveStatus iterate() {
        while (true) {
            if (iterations_ >= opts_.max_lp_iterations) {
                std::ostringstream os;
                os << "simplex iteration cap (" << opts_.max_lp_iterations
                   << ") exhausted";
                throw ResourceError(os.str());
            }

            Vector cb = Vector::Zero(m_);
            bool any_cb = false;
            for (Eigen::Index i = 0; i < m_; ++i) {
                cb[i] = cost_of(basis_[static_cast<std::size_t>(i)]);
                if (cb[i] != 0.0) any_cb = true;
            }
            Vector y = any_cb ? Vector(binv_.transpose() * cb)
                              : Vector(Vector::Zero(m_));
            const Vector yA = any_cb && n_ > 0
                                  ? Vector(d_.A.transpose() * y)
                                  : Vector(Vector::Zero(n_));

            // Entering variable.
            Eigen::Index enter = -1;
            int direction = 0;
            double best = opts_.optimality_tol;
            for (Eigen::Index j = 0; j < total_; ++j) {
                if (status_[j] == Basic) continue;
                if (upper_[j] - lower_[j] <= 0.0 && status_[j] != Free) continue;
                const double dj = cost_of(j) - (j < n_ ? yA[j] : y[j - n_]);
                int dir = 0;
                if ((status_[j] == AtLower || status_[j] == Free) && dj < -opts_.optimality_tol)
                    dir = +1;
                else if ((status_[j] == AtUpper || status_[j] == Free) && dj > opts_.optimality_tol)
                    dir = -1;
                if (dir == 0) continue;
                if (bland_) {
                    enter = j;
                    direction = dir;
                    break;
                }
                if (std::abs(dj) > best) {
                    best = std::abs(dj);
                    enter = j;
                    direction = dir;
                }
            }
            if (enter < 0) return SolveStatus::Optimal;

            ++iterations_;
            const Vector w = enter < n_ ? Vector(binv_ * d_.A.col(enter))
                                        : Vector(binv_.col(enter - n_));

            // Ratio test: how far the entering variable can move.
            double own_range = upper_[enter] - lower_[enter];
            if (!std::isfinite(own_range)) own_range = kInf;
            double limit = own_range;
            Eigen::Index block = -1;

            for (Eigen::Index i = 0; i < m_; ++i) {
                const double q = direction * w[i];
                if (std::abs(q) <= kPivotEps) continue;
                const Eigen::Index bj = basis_[static_cast<std::size_t>(i)];
                double room;
                if (q > 0.0) {
                    if (!std::isfinite(lower_[bj])) continue;
                    room = std::max(value_[bj] - lower_[bj], 0.0) / q;
                } else {
                    if (!std::isfinite(upper_[bj])) continue;
                    room = std::max(upper_[bj] - value_[bj], 0.0) / (-q);
                }
                if (room < limit - 1e-12) {
                    limit = room;
                    block = i;
                } else if (room <= limit + 1e-12 && block >= 0) {
                    if (bland_) {
                        if (bj < basis_[static_cast<std::size_t>(block)]) block = i;
                    } else if (std::abs(w[i]) > std::abs(w[block])) {
                        block = i;
                    }
                } else if (room <= limit + 1e-12 && block < 0 && room < own_range - 1e-12) {
                    limit = room;
                    block = i;
                }
            }

            if (!std::isfinite(limit)) return SolveStatus::Unbounded;

            if (limit <= kStallStep) {
                if (++stall_ >= kStallLimit) bland_ = true;
            } else {
                stall_ = 0;
            }

            // Move the entering variable and update the basic values.
            if (limit > 0.0) {
                for (Eigen::Index i = 0; i < m_; ++i) {
                    const Eigen::Index bj = basis_[static_cast<std::size_t>(i)];
                    value_[bj] -= direction * limit * w[i];
                }
                value_[enter] += direction * limit;
            }

            if (block < 0) {
                // Bound-to-bound flip, no basis change.
                status_[enter] = direction > 0 ? AtUpper : AtLower;
                value_[enter] = direction > 0 ? upper_[enter] : lower_[enter];
                continue;
            }

            const Eigen::Index leave = basis_[static_cast<std::size_t>(block)];
            const double q = direction * w[block];
            if (q > 0.0) {
                value_[leave] = lower_[leave];
                status_[leave] = AtLower;
            } else {
                value_[leave] = upper_[leave];
                status_[leave] = AtUpper;
            }

            basis_[static_cast<std::size_t>(block)] = enter;
            status_[enter] = Basic;

            const double pivot = w[block];
            binv_.row(block) /= pivot;
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (i == block) continue;
                const double factor = w[i];
                if (factor != 0.0) binv_.row(i) -= factor * binv_.row(block);
            }

            if (++since_refactor_ >= kRefactorPeriod) refactor();
        }
    }
};

} // namespace

void LinearProgram::validate() const {
    const Eigen::Index n = cost.size();
    if (A.rows() != b.size()) throw DimensionError("A and b disagree on row count");
    if (A.rows() > 0 && A.cols() != n)
        throw DimensionError("A column count differs from cost length");
    if (lower.size() != n || upper.size() != n)
        throw DimensionError("bound vectors must match variable count");
    if (A.size() > 0 && !A.allFinite()) throw ArgumentError("A must be finite");
    if (b.size() > 0 && !b.allFinite()) throw ArgumentError("b must be finite");
    if (n > 0 && !cost.allFinite()) throw ArgumentError("cost must be finite");
    for (Eigen::Index j = 0; j < n; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]))
            throw ArgumentError("bounds may not be NaN");
        if (lower[j] > upper[j]) throw ArgumentError("lower bound above upper bound");
    }
}

void MixedProgram::validate() const {
    lp.validate();
    for (const Eigen::Index j : binaries) {
        if (j < 0 || j >= lp.num_vars())
            throw ArgumentError("binary index out of range");
    }
}

namespace detail {

LpSolution simplex_solve(const LpData& data, const SolverOptions& opts) {
    count_lp_call();
    Simplex solver(data, opts);
    return solver.run();
}

SolverBackend lookup_backend(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_backend_mutex);
    auto it = backend_map().find(name);
    if (it == backend_map().end())
        throw ArgumentError("unknown solver backend '" + name + "'");
    return it->second;
}

void count_lp_call() { ++g_lp_calls; }
void count_milp_call() { ++g_milp_calls; }

} // namespace detail

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& opts) {
    lp.validate();
    if (opts.backend == "builtin" || opts.backend.empty()) {
        detail::LpData data{lp.A, lp.b, lp.cost, lp.lower, lp.upper};
        return detail::simplex_solve(data, opts);
    }
    SolverBackend backend;
    {
        std::lock_guard<std::mutex> lock(g_backend_mutex);
        auto it = backend_map().find(opts.backend);
        if (it == backend_map().end() || !it->second.lp)
            throw ArgumentError("unknown solver backend '" + opts.backend + "'");
        backend = it->second;
    }
    detail::count_lp_call();
    return backend.lp(lp, opts);
}

void register_backend(const std::string& name, SolverBackend backend) {
    if (name.empty() || name == "builtin")
        throw ArgumentError("backend name is reserved");
    std::lock_guard<std::mutex> lock(g_backend_mutex);
    backend_map()[name] = std::move(backend);
}

bool has_backend(const std::string& name) {
    if (name == "builtin") return true;
    std::lock_guard<std::mutex> lock(g_backend_mutex);
    return backend_map().count(name) > 0;
}

std::int64_t lp_call_count() { return g_lp_calls.load(); }
std::int64_t milp_call_count() { return g_milp_calls.load(); }

void reset_solver_counters() {
    g_lp_calls.store(0);
    g_milp_calls.store(0);
}

} // namespace zonokit
