#include "zonokit/ops.hpp"

#include <sstream>
#include <utility>

namespace zonokit {

namespace {

SetKind promote(SetKind a, SetKind b) { return a < b ? b : a; }

void require_same_dim(const Set& s, const Set& t, const char* op) {
    if (s.dim() != t.dim()) {
        std::ostringstream os;
        os << op << " needs equal dimensions, got " << s.dim() << " and " << t.dim();
        throw DimensionError(os.str());
    }
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

Vector stack(const Vector& a, const Vector& b) {
    Vector v(a.size() + b.size());
    v.head(a.size()) = a;
    v.tail(b.size()) = b;
    return v;
}

Matrix pad_cols(const Matrix& a, Eigen::Index extra) {
    Matrix m = Matrix::Zero(a.rows(), a.cols() + extra);
    m.leftCols(a.cols()) = a;
    return m;
}

} // namespace

OpComplexityReport complexity_of(const Set& s, std::string op_name) {
    OpComplexityReport r;
    r.op = std::move(op_name);
    r.n_g = s.num_gen();
    r.n_b = s.num_bin();
    r.n_c = s.num_con();
    return r;
}

Set linear_map(const Matrix& R, const Set& s) {
    if (R.cols() != s.dim())
        throw DimensionError("map matrix column count differs from set dimension");
    return make_set(s.kind(), R * s.Gc(), R * s.Gb(), R * s.c(),
                    s.Ac(), s.Ab(), s.b());
}

Set translate(const Set& s, const Vector& t) {
    if (t.size() != s.dim())
        throw DimensionError("translation length differs from set dimension");
    return make_set(s.kind(), s.Gc(), s.Gb(), s.c() + t, s.Ac(), s.Ab(), s.b());
}

Set affine_map(const Matrix& R, const Set& s, const Vector& t) {
    if (R.cols() != s.dim())
        throw DimensionError("map matrix column count differs from set dimension");
    if (t.size() != R.rows())
        throw DimensionError("offset length differs from map row count");
    return make_set(s.kind(), R * s.Gc(), R * s.Gb(), R * s.c() + t,
                    s.Ac(), s.Ab(), s.b());
}

Set minkowski_sum(const Set& s, const Set& t) {
    require_same_dim(s, t, "minkowski sum");
    const Eigen::Index n = s.dim();
    Matrix Gc(n, s.num_gen() + t.num_gen());
    Gc.leftCols(s.num_gen()) = s.Gc();
    Gc.rightCols(t.num_gen()) = t.Gc();
    Matrix Gb(n, s.num_bin() + t.num_bin());
    Gb.leftCols(s.num_bin()) = s.Gb();
    Gb.rightCols(t.num_bin()) = t.Gb();
    return make_set(promote(s.kind(), t.kind()), std::move(Gc), std::move(Gb),
                    s.c() + t.c(), block_diag(s.Ac(), t.Ac()),
                    block_diag(s.Ab(), t.Ab()), stack(s.b(), t.b()));
}

Set generalized_intersection(const Set& s, const Set& t, const Matrix& R) {
    if (R.cols() != s.dim())
        throw DimensionError("map matrix column count differs from first operand");
    if (R.rows() != t.dim())
        throw DimensionError("map matrix row count differs from second operand");

    const Eigen::Index m = t.dim();
    const Eigen::Index nc_s = s.num_con();
    const Eigen::Index nc_t = t.num_con();
    const Eigen::Index ng_s = s.num_gen();
    const Eigen::Index ng_t = t.num_gen();
    const Eigen::Index nb_s = s.num_bin();
    const Eigen::Index nb_t = t.num_bin();

    Matrix Ac = Matrix::Zero(nc_s + nc_t + m, ng_s + ng_t);
    Ac.topLeftCorner(nc_s, ng_s) = s.Ac();
    Ac.block(nc_s, ng_s, nc_t, ng_t) = t.Ac();
    Ac.block(nc_s + nc_t, 0, m, ng_s) = R * s.Gc();
    Ac.block(nc_s + nc_t, ng_s, m, ng_t) = -t.Gc();

    Matrix Ab = Matrix::Zero(nc_s + nc_t + m, nb_s + nb_t);
    Ab.topLeftCorner(nc_s, nb_s) = s.Ab();
    Ab.block(nc_s, nb_s, nc_t, nb_t) = t.Ab();
    Ab.block(nc_s + nc_t, 0, m, nb_s) = R * s.Gb();
    Ab.block(nc_s + nc_t, nb_s, m, nb_t) = -t.Gb();

    Vector b(nc_s + nc_t + m);
    b.head(nc_s) = s.b();
    b.segment(nc_s, nc_t) = t.b();
    b.tail(m) = t.c() - R * s.c();

    const SetKind kind = promote(promote(s.kind(), t.kind()), SetKind::ConZono);
    return make_set(kind, pad_cols(s.Gc(), ng_t), pad_cols(s.Gb(), nb_t), s.c(),
                    std::move(Ac), std::move(Ab), std::move(b));
}

Set intersection(const Set& s, const Set& t) {
    require_same_dim(s, t, "intersection");
    return generalized_intersection(s, t, Matrix::Identity(s.dim(), s.dim()));
}

Set halfspace_intersection(const Set& s, const Matrix& H, const Vector& f,
                           const Matrix& R) {
    if (R.cols() != s.dim())
        throw DimensionError("map matrix column count differs from set dimension");
    if (H.cols() != R.rows())
        throw DimensionError("halfspace normals and map matrix disagree");
    if (f.size() != H.rows())
        throw DimensionError("halfspace offsets differ from normal count");

    const Eigen::Index n_h = H.rows();
    const Eigen::Index ng = s.num_gen();
    const Eigen::Index nb = s.num_bin();
    const Eigen::Index nc = s.num_con();

    const Matrix HR = H * R;
    const Matrix hc = HR * s.Gc();
    const Matrix hb = HR * s.Gb();
    const Vector f_shift = f - HR * s.c();
    const Vector rho = hc.cwiseAbs().rowwise().sum() + hb.cwiseAbs().rowwise().sum();
    const Vector r = ((f_shift + rho) / 2.0).cwiseMax(0.0);

    Matrix Ac = Matrix::Zero(nc + n_h, ng + n_h);
    Ac.topLeftCorner(nc, ng) = s.Ac();
    Ac.block(nc, 0, n_h, ng) = hc;
    Ac.block(nc, ng, n_h, n_h) = Matrix(r.asDiagonal());

    Matrix Ab(nc + n_h, nb);
    Ab.topRows(nc) = s.Ab();
    Ab.bottomRows(n_h) = hb;

    const SetKind kind = promote(s.kind(), SetKind::ConZono);
    return make_set(kind, pad_cols(s.Gc(), n_h), s.Gb(), s.c(),
                    std::move(Ac), std::move(Ab), stack(s.b(), f_shift - r));
}

Set halfspace_intersection(const Set& s, const Matrix& H, const Vector& f) {
    return halfspace_intersection(s, H, f, Matrix::Identity(s.dim(), s.dim()));
}

Set cartesian_product(const Set& s, const Set& t) {
    return make_set(promote(s.kind(), t.kind()), block_diag(s.Gc(), t.Gc()),
                    block_diag(s.Gb(), t.Gb()), stack(s.c(), t.c()),
                    block_diag(s.Ac(), t.Ac()), block_diag(s.Ab(), t.Ab()),
                    stack(s.b(), t.b()));
}

Set set_union(const Set& s, const Set& t) {
    require_same_dim(s, t, "union");
    const Eigen::Index n = s.dim();
    const Eigen::Index g1 = s.num_gen(), g2 = t.num_gen();
    const Eigen::Index b1 = s.num_bin(), b2 = t.num_bin();
    const Eigen::Index c1 = s.num_con(), c2 = t.num_con();

    // Assembled over [0,1] / {0,1} factors so the gate "factor <= delta" can
    // switch the inactive operand's contribution off entirely. Continuous
    // columns are [u1 u2 p1 p2 q1 q2] (p, q gate slacks), binary columns
    // [v1 v2 delta] with delta = 1 selecting the first operand.
    const Eigen::Index ng = 2 * (g1 + g2) + b1 + b2;
    const Eigen::Index nbin = b1 + b2 + 1;
    const Eigen::Index ncon = c1 + c2 + g1 + g2 + b1 + b2;

    const Vector off1 = s.c() - s.Gc() * Vector::Ones(g1) - s.Gb() * Vector::Ones(b1);
    const Vector off2 = t.c() - t.Gc() * Vector::Ones(g2) - t.Gb() * Vector::Ones(b2);
    const Vector rhs1 = s.b() + s.Ac() * Vector::Ones(g1) + s.Ab() * Vector::Ones(b1);
    const Vector rhs2 = t.b() + t.Ac() * Vector::Ones(g2) + t.Ab() * Vector::Ones(b2);

    const Eigen::Index p1 = g1 + g2, p2 = p1 + g1;
    const Eigen::Index q1 = 2 * (g1 + g2), q2 = q1 + b1;
    const Eigen::Index v2 = b1, sel = b1 + b2;

    Matrix Gc = Matrix::Zero(n, ng);
    Gc.leftCols(g1) = 2.0 * s.Gc();
    Gc.block(0, g1, n, g2) = 2.0 * t.Gc();
    Matrix Gb = Matrix::Zero(n, nbin);
    Gb.leftCols(b1) = 2.0 * s.Gb();
    Gb.block(0, v2, n, b2) = 2.0 * t.Gb();
    Gb.col(sel) = off1 - off2;

    Matrix Ac = Matrix::Zero(ncon, ng);
    Matrix Ab = Matrix::Zero(ncon, nbin);
    Vector b = Vector::Zero(ncon);

    Ac.topLeftCorner(c1, g1) = 2.0 * s.Ac();
    Ab.topLeftCorner(c1, b1) = 2.0 * s.Ab();
    Ab.block(0, sel, c1, 1) = -rhs1;

    Ac.block(c1, g1, c2, g2) = 2.0 * t.Ac();
    Ab.block(c1, v2, c2, b2) = 2.0 * t.Ab();
    Ab.block(c1, sel, c2, 1) = rhs2;
    b.segment(c1, c2) = rhs2;

    Eigen::Index row = c1 + c2;
    for (Eigen::Index i = 0; i < g1; ++i, ++row) {
        Ac(row, i) = 1.0;
        Ac(row, p1 + i) = 1.0;
        Ab(row, sel) = -1.0;
    }
    for (Eigen::Index i = 0; i < g2; ++i, ++row) {
        Ac(row, g1 + i) = 1.0;
        Ac(row, p2 + i) = 1.0;
        Ab(row, sel) = 1.0;
        b[row] = 1.0;
    }
    for (Eigen::Index j = 0; j < b1; ++j, ++row) {
        Ab(row, j) = 1.0;
        Ac(row, q1 + j) = 1.0;
        Ab(row, sel) = -1.0;
    }
    for (Eigen::Index j = 0; j < b2; ++j, ++row) {
        Ab(row, v2 + j) = 1.0;
        Ac(row, q2 + j) = 1.0;
        Ab(row, sel) = 1.0;
        b[row] = 1.0;
    }

    return Set::from_zero_one_form(Gc, Gb, off2, Ac, Ab, b);
}

Set convex_hull(const Set& s, const Set& t) {
    if (s.kind() == SetKind::HybZono || t.kind() == SetKind::HybZono)
        throw RepresentationError("convex hull is defined for zono and conZono operands");
    require_same_dim(s, t, "convex hull");

    const Eigen::Index n = s.dim();
    const Eigen::Index g1 = s.num_gen(), g2 = t.num_gen();
    const Eigen::Index c1 = s.num_con(), c2 = t.num_con();

    // Interpolation factor theta in [-1,1] blends the operands; each operand
    // factor is a scaled copy bounded by the operand's share (1 +- theta)/2,
    // enforced with two slack rows per generator.
    const Eigen::Index theta = g1 + g2;
    const Eigen::Index slack = theta + 1;
    const Eigen::Index ng = 3 * (g1 + g2) + 1;
    const Eigen::Index ncon = c1 + c2 + 2 * (g1 + g2);

    Matrix G = Matrix::Zero(n, ng);
    G.leftCols(g1) = s.Gc();
    G.block(0, g1, n, g2) = t.Gc();
    G.col(theta) = (s.c() - t.c()) / 2.0;

    Matrix A = Matrix::Zero(ncon, ng);
    Vector b = Vector::Zero(ncon);

    A.topLeftCorner(c1, g1) = s.Ac();
    A.block(0, theta, c1, 1) = -s.b() / 2.0;
    b.head(c1) = s.b() / 2.0;
    A.block(c1, g1, c2, g2) = t.Ac();
    A.block(c1, theta, c2, 1) = t.b() / 2.0;
    b.segment(c1, c2) = t.b() / 2.0;

    Eigen::Index row = c1 + c2;
    Eigen::Index col = slack;
    for (Eigen::Index i = 0; i < g1 + g2; ++i) {
        const double sign = i < g1 ? -0.5 : 0.5;
        A(row, i) = 1.0;
        A(row, theta) = sign;
        A(row, col++) = 1.0;
        b[row++] = -0.5;
        A(row, i) = -1.0;
        A(row, theta) = sign;
        A(row, col++) = 1.0;
        b[row++] = -0.5;
    }

    return make_set(SetKind::ConZono, std::move(G), Matrix(),
                    (s.c() + t.c()) / 2.0, std::move(A), Matrix(), std::move(b));
}

Set pontryagin_difference(const Set& s, const Set& w) {
    if (w.kind() != SetKind::Zono)
        throw RepresentationError("pontryagin subtrahend must be a zono");
    require_same_dim(s, w, "pontryagin difference");

    Set result = translate(s, -w.c());
    for (Eigen::Index j = 0; j < w.num_gen(); ++j) {
        const Vector g = w.Gc().col(j);
        if (g.isZero(0.0)) continue;
        result = intersection(translate(result, -g), translate(result, g));
    }
    return result;
}

Set projection(const Set& s, const std::vector<Eigen::Index>& dims) {
    const Eigen::Index n = s.dim();
    const auto m = static_cast<Eigen::Index>(dims.size());
    for (Eigen::Index d : dims) {
        if (d < 0 || d >= n) {
            std::ostringstream os;
            os << "projection index " << d << " outside [0, " << n << ")";
            throw ArgumentError(os.str());
        }
    }
    Matrix Gc(m, s.num_gen());
    Matrix Gb(m, s.num_bin());
    Vector c(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        Gc.row(k) = s.Gc().row(dims[static_cast<std::size_t>(k)]);
        Gb.row(k) = s.Gb().row(dims[static_cast<std::size_t>(k)]);
        c[k] = s.c()[dims[static_cast<std::size_t>(k)]];
    }
    return make_set(s.kind(), std::move(Gc), std::move(Gb), std::move(c),
                    s.Ac(), s.Ab(), s.b());
}

} // namespace zonokit
