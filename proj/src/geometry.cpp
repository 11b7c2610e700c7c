#include "zonokit/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <list>
#include <sstream>
#include <thread>
#include <utility>

#include "internal.hpp"

namespace zonokit {

namespace {

constexpr double kFlatWidth = 1e-8;
constexpr double kImproveTol = 1e-8;
constexpr double kMergeTol = 1e-6;
constexpr double kParallelTol = 1e-10;
constexpr std::int64_t kProbeCap = 200000;

[[noreturn]] void throw_flat(const Vector& d) {
    std::ostringstream os;
    os << "set is flat along direction (";
    for (Eigen::Index i = 0; i < d.size(); ++i)
        os << (i ? ", " : "") << d[i];
    os << ")";
    throw DegeneracyError(os.str());
}

Mesh point_mesh(const Vector& c) {
    Mesh m;
    m.v = c.transpose();
    m.f = Eigen::MatrixXi::Zero(1, 1);
    return m;
}

Mesh segment_mesh(const Vector& a, const Vector& b) {
    Mesh m;
    m.v.resize(2, a.size());
    m.v.row(0) = a.transpose();
    m.v.row(1) = b.transpose();
    m.f.resize(1, 2);
    m.f << 0, 1;
    return m;
}

/// Support solves over the continuous factor box of a binary-free set.
class SupportSolver {
public:
    SupportSolver(const Set& s, const SolverOptions& opts) : s_(s), opts_(opts) {
        base_.cost = Vector::Zero(s.num_gen());
        base_.A = s.Ac();
        base_.b = s.b();
        base_.lower = Vector::Constant(s.num_gen(), -1.0);
        base_.upper = Vector::Constant(s.num_gen(), 1.0);
    }

    double support(const Vector& d) const {
        LinearProgram lp = base_;
        lp.cost = -(s_.Gc().transpose() * d);
        const LpSolution sol = solve_lp(lp, opts_);
        if (sol.status != SolveStatus::Optimal)
            throw EmptySetError("support of an empty set");
        return d.dot(s_.c()) - sol.value;
    }

    /// Lexicographic support vertex: each later direction breaks the ties
    /// the earlier ones leave, pinned by an extra equality row per stage.
    Vector vertex(const std::vector<Vector>& dirs) const {
        LinearProgram lp = base_;
        Vector xi = Vector::Zero(s_.num_gen());
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            lp.cost = -(s_.Gc().transpose() * dirs[k]);
            const LpSolution sol = solve_lp(lp, opts_);
            if (sol.status != SolveStatus::Optimal)
                throw EmptySetError("support of an empty set");
            xi = sol.point;
            if (k + 1 == dirs.size()) break;
            const Eigen::Index rows = lp.A.rows();
            Matrix A(rows + 1, lp.num_vars());
            A.topRows(rows) = lp.A;
            A.row(rows) = lp.cost.transpose();
            Vector b(rows + 1);
            b.head(rows) = lp.b;
            b[rows] = sol.value;
            lp.A = std::move(A);
            lp.b = std::move(b);
        }
        return s_.c() + s_.Gc() * xi;
    }

private:
    const Set& s_;
    const SolverOptions& opts_;
    LinearProgram base_;
};

Mesh mesh_conzono_1d(const SupportSolver& sp) {
    Vector d(1);
    d << 1.0;
    const double hi = sp.support(d);
    d << -1.0;
    const double lo = -sp.support(d);
    if (hi - lo < kFlatWidth) throw_flat(Vector::Ones(1));
    Vector a(1), b(1);
    a << lo;
    b << hi;
    return segment_mesh(a, b);
}

Vector rot90(const Vector& d) {
    Vector t(2);
    t << -d[1], d[0];
    return t;
}

Mesh mesh_conzono_2d(const SupportSolver& sp) {
    auto vert = [&sp](double x, double y) {
        Vector d(2);
        d << x, y;
        return sp.vertex({d, rot90(d)});
    };

    std::list<Vector> ring;
    const double seeds[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& sd : seeds) {
        Vector v = vert(sd[0], sd[1]);
        if (ring.empty() || (v - ring.back()).norm() > kMergeTol) ring.push_back(v);
    }
    while (ring.size() > 1 && (ring.front() - ring.back()).norm() <= kMergeTol)
        ring.pop_back();

    if (ring.size() == 1) {
        Vector ex(2), ey(2);
        ex << 1, 0;
        ey << 0, 1;
        const double wx = sp.support(ex) + sp.support(-ex);
        const double wy = sp.support(ey) + sp.support(-ey);
        throw_flat(wx <= wy ? ex : ey);
    }

    using It = std::list<Vector>::iterator;
    std::deque<std::pair<It, It>> chords;
    for (auto it = ring.begin(); it != ring.end(); ++it) {
        auto nxt = std::next(it);
        chords.emplace_back(it, nxt == ring.end() ? ring.begin() : nxt);
    }

    std::int64_t probes = 0;
    while (!chords.empty()) {
        if (++probes > kProbeCap)
            throw ResourceError("2D boundary refinement exceeded the probe cap");
        auto [p, q] = chords.front();
        chords.pop_front();
        const Vector e = *q - *p;
        if (e.norm() < 1e-12) continue;
        Vector n(2);
        n << e[1], -e[0];
        n.normalize();
        const double h = sp.support(n);
        if (h <= n.dot(*p) + kImproveTol) continue;
        Vector v = sp.vertex({n, rot90(n)});
        if ((v - *p).norm() <= kMergeTol || (v - *q).norm() <= kMergeTol) continue;
        const It pos = q == ring.begin() ? ring.end() : q;
        const It mid = ring.insert(pos, std::move(v));
        chords.emplace_back(p, mid);
        chords.emplace_back(mid, q);
    }

    if (ring.size() < 3) {
        Vector e = ring.back() - ring.front();
        Vector n(2);
        n << e[1], -e[0];
        throw_flat(n.normalized());
    }

    Mesh m;
    m.v.resize(static_cast<Eigen::Index>(ring.size()), 2);
    m.f.resize(1, static_cast<Eigen::Index>(ring.size()));
    Eigen::Index row = 0;
    for (const Vector& v : ring) {
        m.v.row(row) = v.transpose();
        m.f(0, row) = static_cast<int>(row);
        ++row;
    }
    return m;
}

struct HullFace {
    int a, b, c;
    Eigen::Vector3d n;
    double off;
    bool alive = true;
};

std::vector<Vector> lex_dirs(const Eigen::Vector3d& d) {
    int axis = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(d[k]) < std::abs(d[axis])) axis = k;
    const Eigen::Vector3d t1 = d.cross(Eigen::Vector3d::Unit(axis)).normalized();
    const Eigen::Vector3d t2 = d.cross(t1).normalized();
    return {Vector(d), Vector(t1), Vector(t2)};
}

Mesh mesh_conzono_3d(const SupportSolver& sp) {
    auto vert = [&sp](const Eigen::Vector3d& d) {
        return Eigen::Vector3d(sp.vertex(lex_dirs(d.normalized())));
    };
    auto width = [&sp](const Eigen::Vector3d& d) {
        return sp.support(Vector(d)) + sp.support(Vector(-d));
    };

    std::vector<Eigen::Vector3d> verts;
    verts.push_back(vert(Eigen::Vector3d::UnitX()));
    verts.push_back(vert(-Eigen::Vector3d::UnitX()));
    if ((verts[1] - verts[0]).norm() < kMergeTol) {
        int axis = 0;
        double best = width(Eigen::Vector3d::UnitX());
        for (int k = 1; k < 3; ++k) {
            const double w = width(Eigen::Vector3d::Unit(k));
            if (w < best) {
                best = w;
                axis = k;
            }
        }
        throw_flat(Vector(Eigen::Vector3d::Unit(axis)));
    }

    const Eigen::Vector3d axis_dir = (verts[1] - verts[0]).normalized();
    const auto tangents = lex_dirs(axis_dir);
    const Eigen::Vector3d u = tangents[1];
    const Eigen::Vector3d w = tangents[2];
    Eigen::Vector3d far_point = verts[0];
    double far_dist = 0.0;
    for (const Eigen::Vector3d& d : {u, Eigen::Vector3d(-u), w, Eigen::Vector3d(-w)}) {
        const Eigen::Vector3d p = vert(d);
        const Eigen::Vector3d r = p - verts[0];
        const double dist = (r - axis_dir * axis_dir.dot(r)).norm();
        if (dist > far_dist) {
            far_dist = dist;
            far_point = p;
        }
    }
    if (far_dist < kFlatWidth) throw_flat(Vector(u));
    verts.push_back(far_point);

    Eigen::Vector3d m = (verts[1] - verts[0]).cross(verts[2] - verts[0]).normalized();
    const double above = sp.support(Vector(m)) - m.dot(verts[0]);
    const double below = sp.support(Vector(-m)) + m.dot(verts[0]);
    if (std::max(above, below) < kFlatWidth) throw_flat(Vector(m));
    verts.push_back(vert(above >= below ? m : Eigen::Vector3d(-m)));

    const Eigen::Vector3d centroid =
        (verts[0] + verts[1] + verts[2] + verts[3]) / 4.0;

    std::vector<HullFace> faces;
    std::deque<std::size_t> queue;
    auto push_face = [&](int a, int b, int c) {
        HullFace F{a, b, c, Eigen::Vector3d::Zero(), 0.0, true};
        Eigen::Vector3d n = (verts[b] - verts[a]).cross(verts[c] - verts[a]);
        if (n.norm() < 1e-12) return;
        n.normalize();
        if (n.dot(centroid - verts[a]) > 0) {
            std::swap(F.b, F.c);
            n = -n;
        }
        F.n = n;
        F.off = std::max({n.dot(verts[F.a]), n.dot(verts[F.b]), n.dot(verts[F.c])});
        faces.push_back(F);
        queue.push_back(faces.size() - 1);
    };
    push_face(0, 1, 2);
    push_face(0, 1, 3);
    push_face(0, 2, 3);
    push_face(1, 2, 3);

    std::int64_t probes = 0;
    while (!queue.empty()) {
        if (++probes > kProbeCap)
            throw ResourceError("3D expansion exceeded the probe cap");
        const std::size_t fi = queue.front();
        queue.pop_front();
        if (!faces[fi].alive) continue;
        const Eigen::Vector3d n = faces[fi].n;
        const double h = sp.support(Vector(n));
        if (h <= faces[fi].off + kImproveTol) continue;

        const Eigen::Vector3d p = vert(n);
        int idx = -1;
        for (std::size_t k = 0; k < verts.size(); ++k) {
            if ((verts[k] - p).norm() <= kMergeTol) {
                idx = static_cast<int>(k);
                break;
            }
        }
        if (idx == faces[fi].a || idx == faces[fi].b || idx == faces[fi].c) continue;
        if (idx < 0) {
            idx = static_cast<int>(verts.size());
            verts.push_back(p);
        }

        // Faces the new point sees are replaced by a fan from the horizon.
        std::vector<std::size_t> visible;
        for (std::size_t k = 0; k < faces.size(); ++k) {
            if (faces[k].alive && faces[k].n.dot(p) > faces[k].off + 1e-10)
                visible.push_back(k);
        }
        if (visible.empty()) continue;
        std::vector<std::pair<int, int>> edges;
        for (const std::size_t k : visible) {
            edges.emplace_back(faces[k].a, faces[k].b);
            edges.emplace_back(faces[k].b, faces[k].c);
            edges.emplace_back(faces[k].c, faces[k].a);
        }
        for (const std::size_t k : visible) faces[k].alive = false;
        for (const auto& [ea, eb] : edges) {
            const bool interior =
                std::find(edges.begin(), edges.end(), std::make_pair(eb, ea)) !=
                edges.end();
            if (interior || ea == idx || eb == idx) continue;
            push_face(ea, eb, idx);
        }
    }

    std::vector<int> remap(verts.size(), -1);
    int used = 0;
    for (const HullFace& F : faces) {
        if (!F.alive) continue;
        for (const int vi : {F.a, F.b, F.c})
            if (remap[static_cast<std::size_t>(vi)] < 0)
                remap[static_cast<std::size_t>(vi)] = 1;
    }
    for (std::size_t k = 0; k < verts.size(); ++k)
        if (remap[k] > 0) remap[k] = used++;

    Mesh mesh;
    mesh.v.resize(used, 3);
    for (std::size_t k = 0; k < verts.size(); ++k)
        if (remap[k] >= 0) mesh.v.row(remap[k]) = verts[k].transpose();
    const auto n_alive = std::count_if(faces.begin(), faces.end(),
                                       [](const HullFace& F) { return F.alive; });
    mesh.f.resize(n_alive, 3);
    Eigen::Index frow = 0;
    for (const HullFace& F : faces) {
        if (!F.alive) continue;
        mesh.f(frow, 0) = remap[static_cast<std::size_t>(F.a)];
        mesh.f(frow, 1) = remap[static_cast<std::size_t>(F.b)];
        mesh.f(frow, 2) = remap[static_cast<std::size_t>(F.c)];
        ++frow;
    }
    return mesh;
}

std::string leaf_tag(const BinaryVector& xi) {
    std::ostringstream os;
    os << "leaf [";
    for (Eigen::Index i = 0; i < xi.size(); ++i) os << (i ? " " : "") << xi[i];
    os << "]: ";
    return os.str();
}

} // namespace

Mesh mesh_zonotope(const Set& z) {
    if (z.num_con() > 0 || z.num_bin() > 0)
        throw RepresentationError(
            "zonotope meshing needs a set without constraints or binary factors");
    const Eigen::Index n = z.dim();
    if (n < 1 || n > 3)
        throw DimensionError("meshing supports 1 to 3 dimensions; project first");

    if (n == 1) {
        const double r = z.Gc().cwiseAbs().sum();
        if (r <= 0.0) return point_mesh(z.c());
        Vector a(1), b(1);
        a << z.c()[0] - r;
        b << z.c()[0] + r;
        return segment_mesh(a, b);
    }

    if (n == 2) {
        std::vector<Eigen::Vector2d> gens;
        for (Eigen::Index j = 0; j < z.num_gen(); ++j) {
            Eigen::Vector2d g = z.Gc().col(j);
            if (g.norm() < 1e-12) continue;
            if (g.y() < 0 || (g.y() == 0 && g.x() < 0)) g = -g;
            gens.push_back(g);
        }
        if (gens.empty()) return point_mesh(z.c());
        std::stable_sort(gens.begin(), gens.end(),
                         [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                             return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
                         });
        const auto k = static_cast<Eigen::Index>(gens.size());
        Eigen::Vector2d cursor = z.c();
        for (const auto& g : gens) cursor -= g;
        Mesh m;
        m.v.resize(2 * k, 2);
        m.f.resize(1, 2 * k);
        Eigen::Index row = 0;
        m.v.row(row++) = cursor.transpose();
        for (Eigen::Index i = 0; i < k; ++i) {
            cursor += 2.0 * gens[static_cast<std::size_t>(i)];
            if (row < 2 * k) m.v.row(row++) = cursor.transpose();
        }
        for (Eigen::Index i = 0; i + 1 < k; ++i) {
            cursor -= 2.0 * gens[static_cast<std::size_t>(i)];
            m.v.row(row++) = cursor.transpose();
        }
        for (Eigen::Index i = 0; i < 2 * k; ++i) m.f(0, i) = static_cast<int>(i);
        return m;
    }

    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (Eigen::Index i = 0; i < z.num_gen(); ++i)
        for (Eigen::Index j = i + 1; j < z.num_gen(); ++j) {
            const Eigen::Vector3d gi = z.Gc().col(i);
            const Eigen::Vector3d gj = z.Gc().col(j);
            if (gi.cross(gj).norm() >= kParallelTol) pairs.emplace_back(i, j);
        }
    if (pairs.empty()) {
        Eigen::Index lead = -1;
        for (Eigen::Index j = 0; j < z.num_gen(); ++j)
            if (z.Gc().col(j).norm() >= 1e-12) {
                lead = j;
                break;
            }
        if (lead < 0) return point_mesh(z.c());
        const Vector u = z.Gc().col(lead).normalized();
        const double r = (z.Gc().transpose() * u).cwiseAbs().sum();
        return segment_mesh(z.c() - r * u, z.c() + r * u);
    }

    Mesh m;
    m.v.resize(8 * static_cast<Eigen::Index>(pairs.size()), 3);
    m.f.resize(2 * static_cast<Eigen::Index>(pairs.size()), 4);
    Eigen::Index vrow = 0, frow = 0;
    for (const auto& [i, j] : pairs) {
        const Eigen::Vector3d gi = z.Gc().col(i);
        const Eigen::Vector3d gj = z.Gc().col(j);
        const Eigen::Vector3d w = gi.cross(gj);
        Eigen::Vector3d offset = Eigen::Vector3d::Zero();
        for (Eigen::Index k = 0; k < z.num_gen(); ++k) {
            if (k == i || k == j) continue;
            const Eigen::Vector3d gk = z.Gc().col(k);
            offset += w.dot(gk) >= 0 ? gk : Eigen::Vector3d(-gk);
        }
        for (const int side : {+1, -1}) {
            const Eigen::Vector3d center =
                Eigen::Vector3d(z.c()) + static_cast<double>(side) * offset;
            Eigen::Vector3d quad[4];
            if (side > 0) {
                quad[0] = center + gi + gj;
                quad[1] = center - gi + gj;
                quad[2] = center - gi - gj;
                quad[3] = center + gi - gj;
            } else {
                quad[0] = center + gi + gj;
                quad[1] = center + gi - gj;
                quad[2] = center - gi - gj;
                quad[3] = center - gi + gj;
            }
            for (int t = 0; t < 4; ++t) {
                m.v.row(vrow + t) = quad[t].transpose();
                m.f(frow, t) = static_cast<int>(vrow + t);
            }
            vrow += 4;
            ++frow;
        }
    }
    return m;
}

Mesh mesh_conzonotope(const Set& zc, const SolverOptions& opts) {
    if (zc.num_bin() > 0)
        throw RepresentationError("constrained meshing cannot hold binary factors");
    const Eigen::Index n = zc.dim();
    if (n < 1 || n > 3)
        throw DimensionError("meshing supports 1 to 3 dimensions; project first");
    if (is_empty(zc, opts)) throw EmptySetError("cannot mesh an empty set");

    const SupportSolver sp(zc, opts);
    if (n == 1) return mesh_conzono_1d(sp);
    if (n == 2) return mesh_conzono_2d(sp);
    return mesh_conzono_3d(sp);
}

std::vector<Mesh> mesh_hybzonotope(const Set& zh, const SolverOptions& opts,
                                   int jobs) {
    if (zh.kind() != SetKind::HybZono)
        throw RepresentationError("per-leaf meshing needs a hybZono");
    const LeafSet leaves = get_leaves(zh, opts);
    const std::size_t count = leaves.size();
    std::vector<Mesh> out(count);
    std::vector<std::exception_ptr> errors(count);

    auto work = [&](std::size_t i) {
        const BinaryVector& xi = leaves.assignments[i];
        try {
            out[i] = mesh_conzonotope(leaf(zh, xi), opts);
        } catch (const DegeneracyError& e) {
            errors[i] = std::make_exception_ptr(
                DegeneracyError(leaf_tag(xi) + e.what()));
        } catch (const EmptySetError& e) {
            errors[i] = std::make_exception_ptr(
                EmptySetError(leaf_tag(xi) + e.what()));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        const std::size_t n_threads =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < count;
                     i = next.fetch_add(1))
                    work(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < count; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    return out;
}

std::vector<Mesh> mesh_set(const Set& s, const SolverOptions& opts, int jobs) {
    switch (s.kind()) {
        case SetKind::Zono: return {mesh_zonotope(s)};
        case SetKind::ConZono: return {mesh_conzonotope(s, opts)};
        case SetKind::HybZono: break;
    }
    return mesh_hybzonotope(s, opts, jobs);
}

} // namespace zonokit
