#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zonokit/approx.hpp"
#include "zonokit/geometry.hpp"
#include "zonokit/neural.hpp"
#include "zonokit/ops.hpp"
#include "zonokit/reach.hpp"
#include "zonokit/serialize.hpp"
#include "zonokit/set.hpp"
#include "zonokit/solve.hpp"

namespace zonokit::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b"};

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ArgumentError("scenario field '" + field + "' " + why);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

ordered_json parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot read scenario file '" + path + "'");
    }
    try {
        return ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw ArgumentError("scenario file '" + path +
                            "' is not valid JSON: " + e.what());
    }
}

const ordered_json& require(const ordered_json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end()) fail(field, "is missing");
    return *it;
}

double number_field(const ordered_json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "must be a number");
    return j.get<double>();
}

Eigen::Index index_field(const ordered_json& j, const std::string& field) {
    if (!j.is_number_integer()) fail(field, "must be an integer");
    return j.get<Eigen::Index>();
}

Matrix parse_matrix(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "must be an array of rows");
    const std::size_t rows = j.size();
    if (rows == 0) return Matrix(0, 0);
    if (!j[0].is_array()) fail(field, "must be an array of rows");
    const std::size_t cols = j[0].size();
    Matrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            fail(field, "must have rows of equal length");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                number_field(j[i][k], field);
        }
    }
    return M;
}

Vector parse_vector(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "must be a flat array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = number_field(j[i], field);
    }
    return v;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct RunState {
    fs::path scenario_dir;
    fs::path out_dir;
    SolverOptions opts;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool leaves = false;
    bool timings = false;
    std::vector<std::string> exports;
    std::vector<std::string> mesh_names;
    std::vector<std::pair<std::string, Set>> sets;
    ordered_json set_rows = ordered_json::array();
    ordered_json extras;
    std::vector<std::string> warnings;
    std::vector<std::string> manifest;

    const Set& lookup(const std::string& name) const {
        for (const auto& [n, s] : sets) {
            if (n == name) return s;
        }
        throw ArgumentError("scenario references unknown set '" + name + "'");
    }

    bool has(const std::string& name) const {
        for (const auto& [n, s] : sets) {
            if (n == name) return true;
        }
        return false;
    }

    bool wants(const std::string& kind) const {
        return std::find(exports.begin(), exports.end(), kind) != exports.end();
    }

    void add_row(const std::string& name, const Set& s, double ms,
                 const std::string& op = std::string(),
                 std::int64_t leaf_count = -1) {
        ordered_json row;
        row["name"] = name;
        if (!op.empty()) row["op"] = op;
        row["type"] = to_string(s.kind());
        row["n"] = s.dim();
        row["n_g"] = s.num_gen();
        row["n_b"] = s.num_bin();
        row["n_c"] = s.num_con();
        if (leaves) {
            if (leaf_count < 0) {
                leaf_count = s.kind() == SetKind::HybZono
                                 ? static_cast<std::int64_t>(
                                       get_leaves(s, opts).size())
                                 : 1;
            }
            row["leaves"] = leaf_count;
        }
        if (timings) row["ms"] = ms;
        set_rows.push_back(std::move(row));
    }

    void add_set(const std::string& name, Set s, double ms,
                 const std::string& op = std::string(),
                 std::int64_t leaf_count = -1) {
        add_row(name, s, ms, op, leaf_count);
        sets.emplace_back(name, std::move(s));
    }
};

Set parse_set_ref(const ordered_json& j, const std::string& field,
                  const RunState& state) {
    if (j.is_string()) {
        fs::path p = state.scenario_dir / j.get<std::string>();
        return load_set(p.string());
    }
    if (j.is_object()) {
        return set_from_json(j.dump());
    }
    fail(field, "must be a set document or a file path");
}

std::vector<std::string> parse_name_list(const ordered_json& j,
                                         const std::string& field) {
    if (!j.is_array()) fail(field, "must be an array of names");
    std::vector<std::string> names;
    for (const ordered_json& e : j) {
        if (!e.is_string()) fail(field, "must contain strings");
        names.push_back(e.get<std::string>());
    }
    return names;
}

void load_named_sets(const ordered_json& j, RunState& state) {
    if (!j.is_object() || j.empty()) {
        fail("sets", "must be a nonempty object of named set documents");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        Stopwatch sw;
        Set s = parse_set_ref(it.value(), "sets." + it.key(), state);
        state.add_set(it.key(), std::move(s), sw.ms());
    }
}

// ---- op scenario ----

void run_ops(const ordered_json& j, RunState& state) {
    load_named_sets(require(j, "sets"), state);
    const ordered_json& ops = require(j, "ops");
    if (!ops.is_array()) fail("ops", "must be an array");
    for (const ordered_json& entry : ops) {
        const std::string name = require(entry, "name").get<std::string>();
        const std::string op = require(entry, "op").get<std::string>();
        std::vector<std::string> args;
        if (entry.contains("args")) {
            args = parse_name_list(entry["args"], "ops.args");
        }
        auto arg = [&](std::size_t i) -> const Set& {
            if (i >= args.size()) fail("ops.args", "has too few entries");
            return state.lookup(args[i]);
        };
        Stopwatch sw;
        std::optional<Set> result;
        if (op == "linear_map") {
            result = linear_map(parse_matrix(require(entry, "matrix"), "matrix"),
                                arg(0));
        } else if (op == "translate") {
            result = translate(arg(0),
                               parse_vector(require(entry, "vector"), "vector"));
        } else if (op == "affine_map") {
            result = affine_map(parse_matrix(require(entry, "matrix"), "matrix"),
                                arg(0),
                                parse_vector(require(entry, "vector"), "vector"));
        } else if (op == "minkowski_sum") {
            result = minkowski_sum(arg(0), arg(1));
        } else if (op == "intersection") {
            result = intersection(arg(0), arg(1));
        } else if (op == "generalized_intersection") {
            result = generalized_intersection(
                arg(0), arg(1), parse_matrix(require(entry, "matrix"), "matrix"));
        } else if (op == "halfspace_intersection") {
            Matrix H = parse_matrix(require(entry, "H"), "H");
            Vector f = parse_vector(require(entry, "f"), "f");
            if (entry.contains("matrix")) {
                result = halfspace_intersection(
                    arg(0), H, f, parse_matrix(entry["matrix"], "matrix"));
            } else {
                result = halfspace_intersection(arg(0), H, f);
            }
        } else if (op == "cartesian_product") {
            result = cartesian_product(arg(0), arg(1));
        } else if (op == "union") {
            result = set_union(arg(0), arg(1));
        } else if (op == "convex_hull") {
            result = convex_hull(arg(0), arg(1));
        } else if (op == "pontryagin_difference") {
            result = pontryagin_difference(arg(0), arg(1));
        } else if (op == "projection") {
            const ordered_json& dj = require(entry, "dims");
            if (!dj.is_array()) fail("ops.dims", "must be an array");
            std::vector<Eigen::Index> dims;
            for (const ordered_json& d : dj) {
                dims.push_back(index_field(d, "ops.dims"));
            }
            result = projection(arg(0), dims);
        } else if (op == "lift") {
            const std::string tag = require(entry, "target").get<std::string>();
            SetKind target;
            if (tag == "zono") target = SetKind::Zono;
            else if (tag == "conZono") target = SetKind::ConZono;
            else if (tag == "hybZono") target = SetKind::HybZono;
            else fail("ops.target", "has unknown tag '" + tag + "'");
            result = lift(arg(0), target);
        } else {
            fail("ops.op", "has unknown operation '" + op + "'");
        }
        state.add_set(name, std::move(*result), sw.ms(), op);
    }
}

// ---- reach scenario ----

StateUpdateSet parse_pwa_region(const ordered_json& region, RunState& state,
                                std::size_t idx) {
    const std::string field = "regions[" + std::to_string(idx) + "]";
    Matrix A = parse_matrix(require(region, "A"), field + ".A");
    Set domain = parse_set_ref(require(region, "domain"), field + ".domain",
                               state);
    Vector f = Vector::Zero(A.rows());
    if (region.contains("f")) {
        f = parse_vector(region["f"], field + ".f");
    }
    LinearSystem sys{A, Matrix::Zero(A.rows(), 0)};
    return build_affine_update_set(sys, domain, f);
}

void run_reach(const ordered_json& j, RunState& state) {
    const ordered_json& sysj = require(j, "system");
    const std::string type = require(sysj, "type").get<std::string>();
    Set R0 = parse_set_ref(require(j, "R0"), "R0", state);
    const Eigen::Index steps = index_field(require(j, "steps"), "steps");

    std::function<Set(const Set&)> step;
    if (type == "linear") {
        LinearSystem sys{parse_matrix(require(sysj, "A"), "system.A"),
                         parse_matrix(require(sysj, "B"), "system.B")};
        Set U = parse_set_ref(require(j, "U"), "U", state);
        step = [sys, U](const Set& R) { return step_linear(sys, R, U); };
    } else if (type == "mld") {
        MldSystem sys{parse_matrix(require(sysj, "A"), "system.A"),
                      parse_matrix(require(sysj, "B_u"), "system.B_u"),
                      parse_matrix(require(sysj, "B_w"), "system.B_w"),
                      parse_vector(require(sysj, "B_aff"), "system.B_aff"),
                      parse_matrix(require(sysj, "E_x"), "system.E_x"),
                      parse_matrix(require(sysj, "E_u"), "system.E_u"),
                      parse_matrix(require(sysj, "E_w"), "system.E_w"),
                      parse_vector(require(sysj, "E_aff"), "system.E_aff")};
        Set U = parse_set_ref(require(j, "U"), "U", state);
        Set W = parse_set_ref(require(j, "W"), "W", state);
        step = [sys, U, W](const Set& R) { return step_mld(sys, R, U, W); };
    } else if (type == "pwa") {
        const ordered_json& regions = require(sysj, "regions");
        if (!regions.is_array() || regions.empty()) {
            fail("system.regions", "must be a nonempty array");
        }
        std::vector<StateUpdateSet> psis;
        for (std::size_t i = 0; i < regions.size(); ++i) {
            psis.push_back(parse_pwa_region(regions[i], state, i));
        }
        step = [psis](const Set& R) { return step_pwa(psis, R); };
    } else if (type == "closedloop") {
        LinearSystem sys{parse_matrix(require(sysj, "A"), "system.A"),
                         parse_matrix(require(sysj, "B"), "system.B")};
        Set domain = parse_set_ref(require(j, "domain"), "domain", state);
        Set theta = parse_set_ref(require(j, "theta"), "theta", state);
        StateUpdateSet phi =
            close_loop(build_linear_update_set(sys, domain), theta);
        step = [phi](const Set& R) { return successor(phi, R); };
    } else {
        fail("system.type", "has unknown value '" + type + "'");
    }

    Stopwatch sw;
    ReachTube tube = reach_tube(step, R0, steps, state.leaves, state.opts);
    double total = sw.ms();
    for (std::size_t k = 0; k < tube.sets.size(); ++k) {
        std::int64_t lc =
            state.leaves ? tube.leaf_counts[k] : static_cast<std::int64_t>(-1);
        state.add_set(tube.reports[k].op, tube.sets[k],
                      total / static_cast<double>(tube.sets.size()),
                      k == 0 ? std::string() : "successor", lc);
    }
}

// ---- relunn scenario ----

void run_relunn(const ordered_json& j, RunState& state,
                const Overrides& overrides) {
    const ordered_json& nj = require(j, "network");
    ReluNetwork net;
    if (nj.is_string()) {
        net = load_network((state.scenario_dir / nj.get<std::string>()).string());
    } else if (nj.is_object()) {
        net = network_from_json(nj.dump());
    } else {
        fail("network", "must be a network document or a file path");
    }
    Set X = parse_set_ref(require(j, "X"), "X", state);
    double a = overrides.activation_bound
                   ? *overrides.activation_bound
                   : number_field(require(j, "activation_bound"),
                                  "activation_bound");

    Stopwatch sw;
    NetworkGraphSet gs = encode_network(net, X, a);
    double enc_ms = sw.ms();
    if (!gs.bound_respected) {
        state.warnings.push_back("pre-activation bound exceeded: worst margin " +
                                 fmt(gs.worst_margin));
    }
    std::vector<Eigen::Index> widths;
    widths.push_back(net.input_dim());
    for (const Matrix& W : net.weights) widths.push_back(W.rows());
    state.extras["network"] = {{"widths", widths}, {"n_units", gs.n_units}};
    state.extras["activation_bound"] = a;
    state.extras["bound_respected"] = gs.bound_respected;
    state.extras["worst_margin"] = gs.worst_margin;

    state.add_set("X", std::move(X), 0.0);
    state.add_set("F", gs.F, enc_ms);
    Stopwatch sw2;
    Set Y = output_set(gs);
    state.add_set("Y", std::move(Y), sw2.ms(), "projection");
}

// ---- nonlinear scenario ----

UnaryFunctionSpec parse_function_spec(const ordered_json& j,
                                      const std::string& field) {
    UnaryFunctionSpec spec;
    spec.f = unary_builtin(require(j, "function").get<std::string>());
    spec.lo = number_field(require(j, "lo"), field + ".lo");
    spec.hi = number_field(require(j, "hi"), field + ".hi");
    const ordered_json& bp = require(j, "breakpoints");
    if (bp.is_number_integer()) {
        spec.breakpoints = uniform_breakpoints(
            spec.lo, spec.hi, bp.get<int>());
    } else if (bp.is_array()) {
        Vector v = parse_vector(bp, field + ".breakpoints");
        spec.breakpoints.assign(v.data(), v.data() + v.size());
    } else {
        fail(field + ".breakpoints", "must be a count or an array");
    }
    return spec;
}

int grid_of(const ordered_json& j) {
    return j.contains("grid") ? static_cast<int>(index_field(j["grid"], "grid"))
                              : 64;
}

void run_nonlinear(const ordered_json& j, RunState& state) {
    const ordered_json& sysj = require(j, "system");
    Matrix A = parse_matrix(require(sysj, "A"), "system.A");
    Matrix B = parse_matrix(require(sysj, "B"), "system.B");
    LinearSystem sys{A, B};
    const Eigen::Index n = A.rows();
    Vector f = Vector::Zero(n);
    if (sysj.contains("f")) f = parse_vector(sysj["f"], "system.f");
    Set domain = parse_set_ref(require(j, "domain"), "domain", state);

    std::vector<NonlinearTerm> terms;
    if (j.contains("terms")) {
        const ordered_json& tj = j["terms"];
        if (!tj.is_array()) fail("terms", "must be an array");
        for (std::size_t i = 0; i < tj.size(); ++i) {
            const std::string field = "terms[" + std::to_string(i) + "]";
            UnaryFunctionSpec spec = parse_function_spec(tj[i], field);
            Set graph = bound_function(spec, grid_of(tj[i]));
            terms.push_back(NonlinearTerm{
                std::move(graph),
                parse_vector(require(tj[i], "selector"), field + ".selector"),
                parse_vector(require(tj[i], "gain"), field + ".gain")});
        }
    }
    Stopwatch swp;
    StateUpdateSet psi = lift_to_update_set(sys, domain, terms, f);
    state.add_set("Psi", psi.set, swp.ms());

    Set R0 = parse_set_ref(require(j, "R0"), "R0", state);
    const Eigen::Index steps = index_field(require(j, "steps"), "steps");
    std::int64_t audit_samples = 200;
    if (j.contains("audit_samples")) {
        audit_samples = index_field(j["audit_samples"], "audit_samples");
    }

    std::function<Set(const Set&)> step;
    Set audit_region = R0;
    StateUpdateSet audited = psi;
    if (j.contains("feedback")) {
        const ordered_json& fb = j["feedback"];
        UnaryFunctionSpec spec = parse_function_spec(fb, "feedback");
        Set fgraph = bound_function(spec, grid_of(fb));
        Vector gain = parse_vector(require(fb, "gain"), "feedback.gain");
        std::vector<Eigen::Index> xdims;
        for (Eigen::Index d = 0; d < n; ++d) xdims.push_back(d);
        Set Dx = projection(domain, xdims);
        Stopwatch swt;
        Set theta = compose_scalar_graph(Dx, gain, fgraph);
        state.add_set("Theta", theta, swt.ms());
        Stopwatch swf;
        StateUpdateSet phi = close_loop(psi, theta);
        state.add_set("Phi", phi.set, swf.ms());
        step = [phi](const Set& R) { return successor(phi, R); };
        audited = phi;
    } else {
        Set U = parse_set_ref(require(j, "U"), "U", state);
        step = [psi, U](const Set& R) { return successor(psi, R, U); };
        audit_region = cartesian_product(R0, U);
    }

    CoverageAudit audit = audit_domain_coverage(audited, audit_region,
                                                audit_samples, state.seed,
                                                state.opts);
    state.extras["audit"] = {{"checked", audit.checked},
                             {"violations", audit.violations}};
    if (audit.violations > 0) {
        state.warnings.push_back(
            "domain coverage audit found " + std::to_string(audit.violations) +
            " of " + std::to_string(audit.checked) +
            " sampled points outside the update set domain");
    }

    Stopwatch sw;
    ReachTube tube = reach_tube(step, R0, steps, state.leaves, state.opts);
    double total = sw.ms();
    for (std::size_t k = 0; k < tube.sets.size(); ++k) {
        std::int64_t lc =
            state.leaves ? tube.leaf_counts[k] : static_cast<std::int64_t>(-1);
        state.add_set(tube.reports[k].op, tube.sets[k],
                      total / static_cast<double>(tube.sets.size()),
                      k == 0 ? std::string() : "successor", lc);
    }
}

// ---- exports ----

void write_text(RunState& state, const std::string& filename,
                const std::string& text) {
    fs::path p = state.out_dir / filename;
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw ArgumentError("cannot write output file '" + p.string() + "'");
    }
    out << text;
    state.manifest.push_back(filename);
}

void export_artifacts(RunState& state) {
    if (state.wants("sets")) {
        for (const auto& [name, s] : state.sets) {
            write_text(state, name + ".set.json", set_to_json(s));
        }
    }
    const bool mesh_json = state.wants("mesh-json");
    const bool mesh_svg = state.wants("mesh-svg");
    const bool mesh_obj = state.wants("mesh-obj");
    if (!(mesh_json || mesh_svg || mesh_obj)) return;

    std::vector<Mesh> flats;
    std::vector<PlotOptions> flat_opts;
    int obj_count = 0;
    std::size_t color = 0;
    for (const std::string& name : state.mesh_names) {
        const Set& s = state.lookup(name);
        if (s.dim() < 1 || s.dim() > 3) {
            throw ArgumentError("mesh requested for " +
                                std::to_string(s.dim()) +
                                "-dimensional set '" + name + "'");
        }
        PlotOptions po;
        po.color = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        ++color;
        std::vector<Mesh> meshes = mesh_set(s, state.opts, state.jobs);
        for (std::size_t i = 0; i < meshes.size(); ++i) {
            const Mesh& m = meshes[i];
            std::string base =
                meshes.size() == 1 ? name : name + "." + std::to_string(i);
            if (mesh_json) {
                write_text(state, base + ".mesh.json", mesh_to_json(m, po));
            }
            if (m.v.cols() == 2) {
                flats.push_back(m);
                flat_opts.push_back(po);
            }
            if (mesh_obj && m.v.cols() == 3) {
                write_text(state, base + ".obj", mesh_to_obj(m));
                ++obj_count;
            }
        }
    }
    if (mesh_svg) {
        if (flats.empty()) {
            state.warnings.push_back(
                "mesh-svg requested but no 2-dimensional meshes were produced");
        } else {
            write_text(state, "scene.svg", meshes_to_svg(flats, flat_opts));
        }
    }
    if (mesh_obj && obj_count == 0) {
        state.warnings.push_back(
            "mesh-obj requested but no 3-dimensional meshes were produced");
    }
}

} // namespace

void run_scenario(const std::string& scenario_path, const std::string& out_dir,
                  const Overrides& overrides) {
    ordered_json j = parse_file(scenario_path);
    if (!j.is_object()) {
        throw ArgumentError("scenario document must be a JSON object");
    }
    Stopwatch total;

    RunState state;
    state.scenario_dir = fs::path(scenario_path).parent_path();
    state.out_dir = out_dir;
    state.jobs = overrides.jobs;
    state.timings = overrides.timings;

    const std::string kind = require(j, "kind").get<std::string>();
    if (j.contains("seed")) {
        state.seed = static_cast<std::uint64_t>(
            index_field(j["seed"], "seed"));
    }
    if (overrides.seed) state.seed = *overrides.seed;

    if (j.contains("options")) {
        const ordered_json& oj = j["options"];
        if (!oj.is_object()) fail("options", "must be an object");
        if (oj.contains("feasibility_tol")) {
            state.opts.feasibility_tol =
                number_field(oj["feasibility_tol"], "options.feasibility_tol");
        }
        if (oj.contains("optimality_tol")) {
            state.opts.optimality_tol =
                number_field(oj["optimality_tol"], "options.optimality_tol");
        }
        if (oj.contains("max_pool_size")) {
            state.opts.max_pool_size =
                index_field(oj["max_pool_size"], "options.max_pool_size");
        }
        if (oj.contains("backend")) {
            state.opts.backend = require(oj, "backend").get<std::string>();
        }
    }
    if (overrides.tolerance) state.opts.feasibility_tol = *overrides.tolerance;
    if (overrides.solver) state.opts.backend = *overrides.solver;
    if (!has_backend(state.opts.backend)) {
        throw ArgumentError("unknown solver backend '" + state.opts.backend +
                            "'");
    }

    if (j.contains("leaves")) {
        if (!j["leaves"].is_boolean()) fail("leaves", "must be a boolean");
        state.leaves = j["leaves"].get<bool>();
    }
    if (overrides.leaves) state.leaves = true;

    if (j.contains("exports")) {
        state.exports = parse_name_list(j["exports"], "exports");
    }
    for (const std::string& e : overrides.exports) {
        state.exports.push_back(e);
    }
    for (const std::string& e : state.exports) {
        if (e != "sets" && e != "mesh-json" && e != "mesh-svg" &&
            e != "mesh-obj") {
            fail("exports", "has unknown kind '" + e + "'");
        }
    }

    if (j.contains("mesh")) {
        state.mesh_names = parse_name_list(j["mesh"], "mesh");
    }

    reset_solver_counters();

    if (kind == "setdef") {
        load_named_sets(require(j, "sets"), state);
        if (!j.contains("mesh")) {
            for (const auto& [name, s] : state.sets) {
                state.mesh_names.push_back(name);
            }
        }
    } else if (kind == "op") {
        run_ops(j, state);
    } else if (kind == "reach") {
        run_reach(j, state);
    } else if (kind == "relunn") {
        run_relunn(j, state, overrides);
    } else if (kind == "nonlinear") {
        run_nonlinear(j, state);
    } else {
        fail("kind", "has unknown value '" + kind + "'");
    }

    for (const std::string& name : state.mesh_names) {
        if (!state.has(name)) {
            fail("mesh", "names unknown set '" + name + "'");
        }
    }

    fs::create_directories(state.out_dir);
    export_artifacts(state);

    ordered_json report;
    report["scenario"] = fs::path(scenario_path).filename().string();
    report["kind"] = kind;
    report["seed"] = state.seed;
    report["solver"] = state.opts.backend;
    report["tolerance"] = state.opts.feasibility_tol;
    if (!state.extras.is_null()) {
        for (auto it = state.extras.begin(); it != state.extras.end(); ++it) {
            report[it.key()] = it.value();
        }
    }
    report["warnings"] = state.warnings;
    report["sets"] = state.set_rows;
    report["lp_calls"] = lp_call_count();
    report["milp_calls"] = milp_call_count();
    if (state.timings) report["total_ms"] = total.ms();
    std::sort(state.manifest.begin(), state.manifest.end());
    report["manifest"] = state.manifest;
    write_text(state, "report.json", report.dump(2) + "\n");

    for (const std::string& w : state.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    std::printf("wrote %s\n", (state.out_dir / "report.json").string().c_str());
}

void info_set(const std::string& set_path, bool with_leaves) {
    Set s = load_set(set_path);
    std::printf("%s, n=%lld, n_g=%lld, n_b=%lld, n_c=%lld\n",
                to_string(s.kind()).c_str(),
                static_cast<long long>(s.dim()),
                static_cast<long long>(s.num_gen()),
                static_cast<long long>(s.num_bin()),
                static_cast<long long>(s.num_con()));
    SolverOptions opts;
    const bool empty = is_empty(s, opts);
    std::printf("empty: %s\n", empty ? "true" : "false");
    if (!empty) {
        Box box = bounding_box(s, opts);
        std::string line = "bbox:";
        for (Eigen::Index i = 0; i < box.lo.size(); ++i) {
            line += (i == 0 ? " [" : " x [") + fmt(box.lo(i)) + ", " +
                    fmt(box.hi(i)) + "]";
        }
        std::printf("%s\n", line.c_str());
        if (with_leaves && s.kind() == SetKind::HybZono) {
            std::printf("|T| = %zu\n", get_leaves(s, opts).size());
        }
    }
}

void convert_set(const std::string& set_path, const std::string& target_tag,
                 const std::string& out_path) {
    SetKind target;
    if (target_tag == "zono") target = SetKind::Zono;
    else if (target_tag == "conZono") target = SetKind::ConZono;
    else if (target_tag == "hybZono") target = SetKind::HybZono;
    else {
        throw ArgumentError("unknown target tag '" + target_tag +
                            "' (expected zono, conZono, or hybZono)");
    }
    save_set(lift(load_set(set_path), target), out_path);
}

} // namespace zonokit::cli
