#include "zonokit/set.hpp"

#include <sstream>

#include "zonokit/solve.hpp"

namespace zonokit {

namespace {

bool all_finite(const Matrix& m) { return m.size() == 0 || m.allFinite(); }
bool all_finite(const Vector& v) { return v.size() == 0 || v.allFinite(); }

// Blocks with no elements are conformed to the canonical shape so callers can
// pass default-constructed matrices for absent parts.
Matrix conform(Matrix m, Eigen::Index rows, Eigen::Index cols, const char* name) {
    if (m.size() == 0 && (m.rows() != rows || m.cols() != cols)) {
        if (m.rows() > 0 && m.rows() != rows && cols > 0) {
            std::ostringstream os;
            os << "block " << name << " has " << m.rows() << " rows, expected " << rows;
            throw DimensionError(os.str());
        }
        return Matrix::Zero(rows, cols);
    }
    if (m.rows() != rows) {
        std::ostringstream os;
        os << "block " << name << " has " << m.rows() << " rows, expected " << rows;
        throw DimensionError(os.str());
    }
    return m;
}

} // namespace

std::string to_string(SetKind kind) {
    switch (kind) {
        case SetKind::Zono: return "zono";
        case SetKind::ConZono: return "conZono";
        case SetKind::HybZono: return "hybZono";
    }
    return "?";
}

Set make_set(SetKind kind, Matrix Gc, Matrix Gb, Vector c,
             Matrix Ac, Matrix Ab, Vector b) {
    const Eigen::Index n = c.size();
    const Eigen::Index n_g = Gc.cols();
    const Eigen::Index n_b = Gb.cols();
    const Eigen::Index n_c = b.size();

    Gc = conform(std::move(Gc), n, n_g, "Gc");
    Gb = conform(std::move(Gb), n, n_b, "Gb");
    Ac = conform(std::move(Ac), n_c, n_g, "Ac");
    Ab = conform(std::move(Ab), n_c, n_b, "Ab");
    if (Ac.cols() != n_g) throw DimensionError("Ac column count differs from Gc");
    if (Ab.cols() != n_b) throw DimensionError("Ab column count differs from Gb");

    if (kind == SetKind::Zono && (n_c > 0 || n_b > 0))
        throw RepresentationError("zono tag cannot hold constraints or binary factors");
    if (kind == SetKind::ConZono && n_b > 0)
        throw RepresentationError("conZono tag cannot hold binary factors");

    if (!all_finite(Gc) || !all_finite(Gb) || !all_finite(c) ||
        !all_finite(Ac) || !all_finite(Ab) || !all_finite(b))
        throw ArgumentError("set blocks must be finite");

    Set s;
    s.kind_ = kind;
    s.Gc_ = std::move(Gc);
    s.Gb_ = std::move(Gb);
    s.c_ = std::move(c);
    s.Ac_ = std::move(Ac);
    s.Ab_ = std::move(Ab);
    s.b_ = std::move(b);
    return s;
}

Set Set::zono(Matrix G, Vector c) {
    return make_set(SetKind::Zono, std::move(G), Matrix(), std::move(c),
                    Matrix(), Matrix(), Vector());
}

Set Set::con_zono(Matrix G, Vector c, Matrix A, Vector b) {
    return make_set(SetKind::ConZono, std::move(G), Matrix(), std::move(c),
                    std::move(A), Matrix(), std::move(b));
}

Set Set::hyb_zono(Matrix Gc, Matrix Gb, Vector c,
                  Matrix Ac, Matrix Ab, Vector b) {
    return make_set(SetKind::HybZono, std::move(Gc), std::move(Gb), std::move(c),
                    std::move(Ac), std::move(Ab), std::move(b));
}

Set Set::point(Vector c) {
    const Eigen::Index n = c.size();
    return zono(Matrix::Zero(n, 0), std::move(c));
}

Set Set::box(const Vector& lo, const Vector& hi) {
    if (lo.size() != hi.size()) throw DimensionError("box bounds differ in length");
    if (((hi - lo).array() < 0).any()) throw ArgumentError("box needs lo <= hi");
    return zono(Matrix(((hi - lo) / 2.0).asDiagonal()), (lo + hi) / 2.0);
}

Set Set::from_zero_one_form(const Matrix& Gc, const Matrix& Gb, const Vector& c,
                            const Matrix& Ac, const Matrix& Ab, const Vector& b) {
    const Vector ones_c = Vector::Ones(Gc.cols());
    const Vector ones_b = Vector::Ones(Gb.cols());
    Vector c2 = c;
    Vector b2 = b;
    if (Gc.cols() > 0) c2 += Gc * ones_c / 2.0;
    if (Gb.cols() > 0) c2 += Gb * ones_b / 2.0;
    if (b.size() > 0 && Ac.cols() > 0) b2 -= Ac * ones_c / 2.0;
    if (b.size() > 0 && Ab.cols() > 0) b2 -= Ab * ones_b / 2.0;
    return make_set(SetKind::HybZono, Gc / 2.0, Gb / 2.0, std::move(c2),
                    Ac / 2.0, Ab / 2.0, std::move(b2));
}

Set lift(const Set& s, SetKind target) {
    if (static_cast<int>(target) < static_cast<int>(s.kind())) {
        throw RepresentationError("cannot lift " + to_string(s.kind()) + " down to " +
                                  to_string(target));
    }
    return make_set(target, s.Gc(), s.Gb(), s.c(), s.Ac(), s.Ab(), s.b());
}

Set canonical(const Set& s) {
    SetKind kind = SetKind::Zono;
    if (s.num_bin() > 0) kind = SetKind::HybZono;
    else if (s.num_con() > 0) kind = SetKind::ConZono;
    return make_set(kind, s.Gc(), s.Gb(), s.c(), s.Ac(), s.Ab(), s.b());
}

bool structurally_equal(const Set& a, const Set& b, double tol) {
    if (a.dim() != b.dim() || a.num_gen() != b.num_gen() ||
        a.num_bin() != b.num_bin() || a.num_con() != b.num_con())
        return false;
    auto close = [tol](const Matrix& x, const Matrix& y) {
        return x.size() == 0 || ((x - y).cwiseAbs().maxCoeff() <= tol);
    };
    return close(a.Gc(), b.Gc()) && close(a.Gb(), b.Gb()) && close(a.c(), b.c()) &&
           close(a.Ac(), b.Ac()) && close(a.Ab(), b.Ab()) && close(a.b(), b.b());
}

Set leaf(const Set& s, const BinaryVector& xi_b) {
    if (s.kind() != SetKind::HybZono)
        throw RepresentationError("leaf extraction needs a hybZono");
    if (xi_b.size() != s.num_bin())
        throw ArgumentError("binary assignment has wrong length");
    for (Eigen::Index i = 0; i < xi_b.size(); ++i)
        if (xi_b[i] != 1 && xi_b[i] != -1)
            throw ArgumentError("binary assignment entries must be +-1");

    const Vector xi = xi_b.cast<double>();
    Vector c = s.c();
    Vector b = s.b();
    if (s.num_bin() > 0) {
        c += s.Gb() * xi;
        if (b.size() > 0) b -= s.Ab() * xi;
    }
    return make_set(SetKind::ConZono, s.Gc(), Matrix(), std::move(c),
                    s.Ac(), Matrix(), std::move(b));
}

namespace {

// Bounding box of {x : H x <= f} by 2n support LPs over x plus one
// nonnegative slack per inequality row.
Box hrep_bounding_box(const Matrix& H, const Vector& f, const SolverOptions& opts) {
    const Eigen::Index n = H.cols();
    const Eigen::Index n_h = H.rows();
    if (f.size() != n_h) throw DimensionError("H and f disagree on row count");
    if (!all_finite(H) || !all_finite(f)) throw ArgumentError("H-rep must be finite");

    LinearProgram lp;
    lp.A.resize(n_h, n + n_h);
    lp.A << H, Matrix::Identity(n_h, n_h);
    lp.b = f;
    lp.lower = Vector::Constant(n + n_h, -kInf);
    lp.upper = Vector::Constant(n + n_h, kInf);
    lp.lower.tail(n_h).setZero();
    lp.cost = Vector::Zero(n + n_h);

    Box box;
    box.lo.resize(n);
    box.hi.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int sign : {+1, -1}) {
            lp.cost.setZero();
            lp.cost[i] = sign;
            const LpSolution sol = solve_lp(lp, opts);
            if (sol.status == SolveStatus::Infeasible)
                throw EmptySetError("H-rep polytope is empty");
            if (sol.status == SolveStatus::Unbounded) {
                std::ostringstream os;
                os << "H-rep polytope is unbounded along dimension " << i;
                throw UnboundedError(os.str());
            }
            if (sign > 0) box.lo[i] = sol.value;
            else box.hi[i] = -sol.value;
        }
    }
    return box;
}

} // namespace

Set from_hrep(const Matrix& H, const Vector& f, const SolverOptions& opts) {
    const Eigen::Index n = H.cols();
    const Eigen::Index n_h = H.rows();
    const Box box = hrep_bounding_box(H, f, opts);

    const Vector c0 = (box.lo + box.hi) / 2.0;
    const Matrix G0 = Matrix(((box.hi - box.lo) / 2.0).asDiagonal());

    const Matrix HG = H * G0;
    const Vector rho = HG.cwiseAbs().rowwise().sum();
    const Vector f_shift = f - H * c0;
    const Vector r = ((f_shift + rho) / 2.0).cwiseMax(0.0);

    Matrix G(n, n + n_h);
    G << G0, Matrix::Zero(n, n_h);
    Matrix A(n_h, n + n_h);
    A << HG, Matrix(r.asDiagonal());
    return make_set(SetKind::ConZono, std::move(G), Matrix(), c0,
                    std::move(A), Matrix(), f_shift - r);
}

Set from_hrep_union(const std::vector<HrepPiece>& pieces, const SolverOptions& opts) {
    const auto N = static_cast<Eigen::Index>(pieces.size());
    if (N == 0) throw ArgumentError("union needs at least one piece");
    const Eigen::Index n = pieces.front().H.cols();

    Eigen::Index total_h = 0;
    std::vector<Box> boxes;
    boxes.reserve(pieces.size());
    for (const auto& p : pieces) {
        if (p.H.cols() != n) throw DimensionError("pieces disagree on dimension");
        boxes.push_back(hrep_bounding_box(p.H, p.f, opts));
        total_h += p.H.rows();
    }

    Box global = boxes.front();
    for (const auto& bx : boxes) {
        global.lo = global.lo.cwiseMin(bx.lo);
        global.hi = global.hi.cwiseMax(bx.hi);
    }
    const Vector c0 = (global.lo + global.hi) / 2.0;
    const Matrix G0 = Matrix(((global.hi - global.lo) / 2.0).asDiagonal());

    const Eigen::Index n_g = n + total_h;
    const Eigen::Index n_c = total_h + 1;
    Matrix Gc = Matrix::Zero(n, n_g);
    Gc.leftCols(n) = G0;
    Matrix Gb = Matrix::Zero(n, N);
    Matrix Ac = Matrix::Zero(n_c, n_g);
    Matrix Ab = Matrix::Zero(n_c, N);
    Vector b(n_c);

    Eigen::Index row = 0;
    for (Eigen::Index p = 0; p < N; ++p) {
        const Matrix HG = pieces[p].H * G0;
        const Vector rho = HG.cwiseAbs().rowwise().sum();
        const Vector f_shift = pieces[p].f - pieces[p].H * c0;
        for (Eigen::Index i = 0; i < HG.rows(); ++i) {
            const double big = std::max(rho[i] - f_shift[i], 0.0);
            const double r = (f_shift[i] + big + rho[i]) / 2.0;
            Ac.block(row, 0, 1, n) = HG.row(i);
            Ac(row, n + row) = r;
            Ab(row, p) = big / 2.0;
            b[row] = f_shift[i] + big / 2.0 - r;
            ++row;
        }
    }
    // One-hot selector over the pieces.
    Ab.row(row).setOnes();
    b[row] = 2.0 - static_cast<double>(N);

    return make_set(SetKind::HybZono, std::move(Gc), std::move(Gb), c0,
                    std::move(Ac), std::move(Ab), std::move(b));
}

Set from_vertices(const Matrix& V, const Eigen::MatrixXi& M) {
    const Eigen::Index n_v = V.cols();
    const Eigen::Index N = M.cols();
    if (M.rows() != n_v) throw DimensionError("incidence rows must match vertex count");
    if (N == 0 || n_v == 0) throw ArgumentError("vertex construction needs data");
    if (!all_finite(V)) throw ArgumentError("vertices must be finite");
    for (Eigen::Index i = 0; i < n_v; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            if (M(i, j) != 0 && M(i, j) != 1)
                throw ArgumentError("incidence entries must be 0 or 1");
    for (Eigen::Index j = 0; j < N; ++j)
        if (M.col(j).sum() == 0)
            throw ArgumentError("incidence column selects no vertices");

    const Eigen::Index n = V.rows();

    if (N == 1) {
        // Plain convex hull of the selected vertices, in barycentric form.
        std::vector<Eigen::Index> sel;
        for (Eigen::Index i = 0; i < n_v; ++i)
            if (M(i, 0) == 1) sel.push_back(i);
        const auto k = static_cast<Eigen::Index>(sel.size());
        Matrix Vs(n, k);
        for (Eigen::Index j = 0; j < k; ++j) Vs.col(j) = V.col(sel[j]);
        Matrix A = Matrix::Ones(1, k);
        Vector b(1);
        b[0] = 2.0 - static_cast<double>(k);
        return make_set(SetKind::ConZono, Vs / 2.0, Matrix(),
                        Vs * Vector::Ones(k) / 2.0, std::move(A), Matrix(),
                        std::move(b));
    }

    // Barycentric weights lambda over [0,1], slack per vertex for the gate
    // lambda_i <= (M delta)_i, one-hot delta over pieces; assembled in 0/1
    // form and remapped.
    const Eigen::Index n_g = 2 * n_v;
    const Eigen::Index n_c = n_v + 2;
    Matrix Gc = Matrix::Zero(n, n_g);
    Gc.leftCols(n_v) = V;
    Matrix Gb = Matrix::Zero(n, N);
    Matrix Ac = Matrix::Zero(n_c, n_g);
    Matrix Ab = Matrix::Zero(n_c, N);
    Vector b = Vector::Zero(n_c);

    for (Eigen::Index i = 0; i < n_v; ++i) {
        Ac(i, i) = 1.0;
        Ac(i, n_v + i) = static_cast<double>(M.row(i).sum());
        for (Eigen::Index j = 0; j < N; ++j) Ab(i, j) = -static_cast<double>(M(i, j));
        b[i] = 0.0;
    }
    Ac.row(n_v).head(n_v).setOnes();
    b[n_v] = 1.0;
    Ab.row(n_v + 1).setOnes();
    b[n_v + 1] = 1.0;

    return Set::from_zero_one_form(Gc, Gb, Vector::Zero(n), Ac, Ab, b);
}

std::ostream& operator<<(std::ostream& os, const Set& s) {
    os << to_string(s.kind()) << "(n=" << s.dim() << ", n_g=" << s.num_gen()
       << ", n_b=" << s.num_bin() << ", n_c=" << s.num_con() << ")";
    return os;
}

} // namespace zonokit
