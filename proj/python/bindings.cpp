#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zonokit/approx.hpp"
#include "zonokit/geometry.hpp"
#include "zonokit/neural.hpp"
#include "zonokit/ops.hpp"
#include "zonokit/reach.hpp"
#include "zonokit/serialize.hpp"
#include "zonokit/set.hpp"
#include "zonokit/solve.hpp"

namespace py = pybind11;
using namespace zonokit;

namespace {

std::string set_repr(const Set& s) {
    std::ostringstream os;
    os << "<" << to_string(s.kind()) << " n=" << s.dim() << " n_g="
       << s.num_gen() << " n_b=" << s.num_bin() << " n_c=" << s.num_con()
       << ">";
    return os.str();
}

} // namespace

PYBIND11_MODULE(_zonokit, m) {
    m.doc() = "Zonotope set-operation and reachability toolkit";

    py::enum_<SetKind>(m, "SetKind")
        .value("zono", SetKind::Zono)
        .value("conZono", SetKind::ConZono)
        .value("hybZono", SetKind::HybZono);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("feasibility_tol", &SolverOptions::feasibility_tol)
        .def_readwrite("optimality_tol", &SolverOptions::optimality_tol)
        .def_readwrite("max_lp_iterations", &SolverOptions::max_lp_iterations)
        .def_readwrite("max_milp_nodes", &SolverOptions::max_milp_nodes)
        .def_readwrite("max_pool_size", &SolverOptions::max_pool_size)
        .def_readwrite("backend", &SolverOptions::backend);

    py::class_<Set>(m, "Set")
        .def_static("zono", &Set::zono, py::arg("G"), py::arg("c"),
                    "Zonotope <G, c>.")
        .def_static("con_zono", &Set::con_zono, py::arg("G"), py::arg("c"),
                    py::arg("A"), py::arg("b"),
                    "Constrained zonotope <G, c, A, b>.")
        .def_static("hyb_zono", &Set::hyb_zono, py::arg("Gc"), py::arg("Gb"),
                    py::arg("c"), py::arg("Ac"), py::arg("Ab"), py::arg("b"),
                    "Hybrid zonotope <Gc, Gb, c, Ac, Ab, b>.")
        .def_static("point", &Set::point, py::arg("c"))
        .def_static("box", &Set::box, py::arg("lo"), py::arg("hi"))
        .def_static("from_zero_one_form", &Set::from_zero_one_form,
                    py::arg("Gc"), py::arg("Gb"), py::arg("c"), py::arg("Ac"),
                    py::arg("Ab"), py::arg("b"))
        .def_property_readonly("kind", &Set::kind)
        .def_property_readonly("dim", &Set::dim)
        .def_property_readonly("num_gen", &Set::num_gen)
        .def_property_readonly("num_bin", &Set::num_bin)
        .def_property_readonly("num_con", &Set::num_con)
        .def_property_readonly("Gc", &Set::Gc)
        .def_property_readonly("Gb", &Set::Gb)
        .def_property_readonly("c", &Set::c)
        .def_property_readonly("Ac", &Set::Ac)
        .def_property_readonly("Ab", &Set::Ab)
        .def_property_readonly("b", &Set::b)
        .def("__repr__", &set_repr)
        .def("__add__",
             [](const Set& a, const Set& b) { return minkowski_sum(a, b); })
        .def("__rmul__",
             [](const Set& s, const Matrix& R) { return linear_map(R, s); });

    m.def("to_string", py::overload_cast<SetKind>(&to_string));
    m.def("lift", &lift, py::arg("s"), py::arg("target"),
          "Recast a set to a more expressive representation tag.");
    m.def("canonical", &canonical, py::arg("s"));
    m.def("leaf", &leaf, py::arg("s"), py::arg("xi_b"),
          "Constrained zonotope obtained by fixing the binary factors.");
    m.def("structurally_equal", &structurally_equal, py::arg("s"),
          py::arg("t"), py::arg("tol") = 0.0);
    m.def("from_hrep", &from_hrep, py::arg("H"), py::arg("f"),
          py::arg("opts") = SolverOptions(),
          "Constrained zonotope for the polytope {x : H x <= f}.");
    m.def("from_vertices", &from_vertices, py::arg("V"), py::arg("M"),
          "Hybrid zonotope for a union of convex vertex sets. V has one "
          "vertex per column, M one incidence column per piece.");

    m.def("linear_map", &linear_map, py::arg("R"), py::arg("s"));
    m.def("translate", &translate, py::arg("s"), py::arg("t"));
    m.def("affine_map", &affine_map, py::arg("R"), py::arg("s"), py::arg("t"));
    m.def("minkowski_sum", &minkowski_sum, py::arg("s"), py::arg("t"));
    m.def("generalized_intersection", &generalized_intersection, py::arg("s"),
          py::arg("t"), py::arg("R"));
    m.def("intersection", &intersection, py::arg("s"), py::arg("t"));
    m.def("halfspace_intersection",
          py::overload_cast<const Set&, const Matrix&, const Vector&,
                            const Matrix&>(&halfspace_intersection),
          py::arg("s"), py::arg("H"), py::arg("f"), py::arg("R"));
    m.def("halfspace_intersection",
          py::overload_cast<const Set&, const Matrix&, const Vector&>(
              &halfspace_intersection),
          py::arg("s"), py::arg("H"), py::arg("f"));
    m.def("cartesian_product", &cartesian_product, py::arg("s"), py::arg("t"));
    m.def("union", &set_union, py::arg("s"), py::arg("t"));
    m.def("set_union", &set_union, py::arg("s"), py::arg("t"));
    m.def("convex_hull", &convex_hull, py::arg("s"), py::arg("t"));
    m.def("pontryagin_difference", &pontryagin_difference, py::arg("s"),
          py::arg("w"));
    m.def("projection", &projection, py::arg("s"), py::arg("dims"));

    m.def("is_empty", &is_empty, py::arg("s"),
          py::arg("opts") = SolverOptions());
    m.def("contains_point", &contains_point, py::arg("s"), py::arg("x"),
          py::arg("opts") = SolverOptions());
    m.def("support", &support, py::arg("s"), py::arg("d"),
          py::arg("opts") = SolverOptions());
    m.def("support_point", &support_point, py::arg("s"), py::arg("d"),
          py::arg("opts") = SolverOptions());
    m.def(
        "bounding_box",
        [](const Set& s, const SolverOptions& opts) {
            Box box = bounding_box(s, opts);
            return py::make_tuple(box.lo, box.hi);
        },
        py::arg("s"), py::arg("opts") = SolverOptions(),
        "Componentwise interval hull as a (lo, hi) pair.");
    m.def(
        "get_leaves",
        [](const Set& s, const SolverOptions& opts) {
            return get_leaves(s, opts).assignments;
        },
        py::arg("s"), py::arg("opts") = SolverOptions(),
        "Feasible binary assignments in lexicographic order.");
    m.def("lp_call_count", &lp_call_count);
    m.def("milp_call_count", &milp_call_count);
    m.def("reset_solver_counters", &reset_solver_counters);

    py::class_<Mesh>(m, "Mesh")
        .def_readonly("v", &Mesh::v)
        .def_readonly("f", &Mesh::f)
        .def_property_readonly("num_vertices", &Mesh::num_vertices)
        .def_property_readonly("num_faces", &Mesh::num_faces);

    py::class_<PlotOptions>(m, "PlotOptions")
        .def(py::init<>())
        .def_readwrite("color", &PlotOptions::color)
        .def_readwrite("opacity", &PlotOptions::opacity)
        .def_readwrite("edges", &PlotOptions::edges);

    m.def("mesh_set", &mesh_set, py::arg("s"),
          py::arg("opts") = SolverOptions(), py::arg("jobs") = 1,
          "One vertex/face mesh per leaf of the set.");
    m.def("mesh_to_json", &mesh_to_json, py::arg("mesh"),
          py::arg("options") = PlotOptions());
    m.def("meshes_to_svg", &meshes_to_svg, py::arg("meshes"),
          py::arg("options"));
    m.def("mesh_to_obj", &mesh_to_obj, py::arg("mesh"));

    py::class_<LinearSystem>(m, "LinearSystem")
        .def(py::init<Matrix, Matrix>(), py::arg("A"), py::arg("B"))
        .def_readwrite("A", &LinearSystem::A)
        .def_readwrite("B", &LinearSystem::B);

    py::class_<MldSystem>(m, "MldSystem")
        .def(py::init<Matrix, Matrix, Matrix, Vector, Matrix, Matrix, Matrix,
                      Vector>(),
             py::arg("A"), py::arg("B_u"), py::arg("B_w"), py::arg("B_aff"),
             py::arg("E_x"), py::arg("E_u"), py::arg("E_w"), py::arg("E_aff"))
        .def_readwrite("A", &MldSystem::A)
        .def_readwrite("B_u", &MldSystem::B_u)
        .def_readwrite("B_w", &MldSystem::B_w)
        .def_readwrite("B_aff", &MldSystem::B_aff)
        .def_readwrite("E_x", &MldSystem::E_x)
        .def_readwrite("E_u", &MldSystem::E_u)
        .def_readwrite("E_w", &MldSystem::E_w)
        .def_readwrite("E_aff", &MldSystem::E_aff);

    py::class_<StateUpdateSet>(m, "StateUpdateSet")
        .def_readonly("set", &StateUpdateSet::set)
        .def_readonly("n_state", &StateUpdateSet::n_state)
        .def_readonly("n_input", &StateUpdateSet::n_input);

    py::class_<OpComplexityReport>(m, "OpComplexityReport")
        .def_readonly("op", &OpComplexityReport::op)
        .def_readonly("n_g", &OpComplexityReport::n_g)
        .def_readonly("n_b", &OpComplexityReport::n_b)
        .def_readonly("n_c", &OpComplexityReport::n_c);

    py::class_<ReachTube>(m, "ReachTube")
        .def_readonly("sets", &ReachTube::sets)
        .def_readonly("reports", &ReachTube::reports)
        .def_readonly("leaf_counts", &ReachTube::leaf_counts);

    py::class_<CoverageAudit>(m, "CoverageAudit")
        .def_readonly("checked", &CoverageAudit::checked)
        .def_readonly("violations", &CoverageAudit::violations);

    m.def("step_linear", &step_linear, py::arg("sys"), py::arg("R"),
          py::arg("U"));
    m.def("build_linear_update_set", &build_linear_update_set, py::arg("sys"),
          py::arg("D"));
    m.def("build_affine_update_set", &build_affine_update_set, py::arg("sys"),
          py::arg("D"), py::arg("f"));
    m.def("successor",
          py::overload_cast<const StateUpdateSet&, const Set&, const Set&>(
              &successor),
          py::arg("psi"), py::arg("R"), py::arg("U"));
    m.def("successor",
          py::overload_cast<const StateUpdateSet&, const Set&>(&successor),
          py::arg("psi"), py::arg("R"));
    m.def("step_mld", &step_mld, py::arg("sys"), py::arg("R"), py::arg("U"),
          py::arg("W"));
    m.def("step_pwa", &step_pwa, py::arg("psis"), py::arg("R"));
    m.def("close_loop", &close_loop, py::arg("psi"), py::arg("theta"));
    m.def("reach_tube", &reach_tube, py::arg("step"), py::arg("R0"),
          py::arg("K"), py::arg("count_leaves") = false,
          py::arg("opts") = SolverOptions(),
          "Iterate a one-step operator K times from R0.");
    m.def("audit_domain_coverage", &audit_domain_coverage, py::arg("psi"),
          py::arg("region"), py::arg("samples"), py::arg("seed"),
          py::arg("opts") = SolverOptions());

    py::class_<ReluNetwork>(m, "ReluNetwork")
        .def(py::init<>())
        .def(py::init<std::vector<Matrix>, std::vector<Vector>>(),
             py::arg("weights"), py::arg("biases"))
        .def_readwrite("weights", &ReluNetwork::weights)
        .def_readwrite("biases", &ReluNetwork::biases)
        .def("validate", &ReluNetwork::validate)
        .def_property_readonly("input_dim", &ReluNetwork::input_dim)
        .def_property_readonly("output_dim", &ReluNetwork::output_dim)
        .def_property_readonly("num_hidden_units",
                               &ReluNetwork::num_hidden_units)
        .def("forward", &ReluNetwork::forward, py::arg("x"));

    py::class_<NetworkGraphSet>(m, "NetworkGraphSet")
        .def_readonly("F", &NetworkGraphSet::F)
        .def_readonly("X", &NetworkGraphSet::X)
        .def_readonly("activation_bound", &NetworkGraphSet::activation_bound)
        .def_readonly("n_units", &NetworkGraphSet::n_units)
        .def_readonly("bound_respected", &NetworkGraphSet::bound_respected)
        .def_readonly("worst_margin", &NetworkGraphSet::worst_margin);

    m.def("relu_unit_set", &relu_unit_set, py::arg("a"),
          "Exact graph of one ReLU over [-a, a].");
    m.def("encode_network", &encode_network, py::arg("net"), py::arg("X"),
          py::arg("a"),
          "Hybrid zonotope holding every input/output pair of the network.");
    m.def("output_set", &output_set, py::arg("gs"));

    py::class_<UnaryFunctionSpec>(m, "UnaryFunctionSpec")
        .def(py::init<>())
        .def(py::init([](std::function<double(double)> f, double lo, double hi,
                         std::vector<double> breakpoints) {
                 return UnaryFunctionSpec{std::move(f), lo, hi,
                                          std::move(breakpoints)};
             }),
             py::arg("f"), py::arg("lo"), py::arg("hi"),
             py::arg("breakpoints"))
        .def_readwrite("f", &UnaryFunctionSpec::f)
        .def_readwrite("lo", &UnaryFunctionSpec::lo)
        .def_readwrite("hi", &UnaryFunctionSpec::hi)
        .def_readwrite("breakpoints", &UnaryFunctionSpec::breakpoints)
        .def("validate", &UnaryFunctionSpec::validate);

    py::class_<ErrorBound>(m, "ErrorBound")
        .def_readonly("E", &ErrorBound::E)
        .def_readonly("segment_radii", &ErrorBound::segment_radii);

    py::class_<NonlinearTerm>(m, "NonlinearTerm")
        .def(py::init([](Set graph, Vector selector, Vector gain) {
                 return NonlinearTerm{std::move(graph), std::move(selector),
                                      std::move(gain)};
             }),
             py::arg("graph"), py::arg("selector"), py::arg("gain"))
        .def_readwrite("graph", &NonlinearTerm::graph)
        .def_readwrite("selector", &NonlinearTerm::selector)
        .def_readwrite("gain", &NonlinearTerm::gain);

    m.def("unary_builtin", &unary_builtin, py::arg("name"));
    m.def("uniform_breakpoints", &uniform_breakpoints, py::arg("lo"),
          py::arg("hi"), py::arg("n_v"));
    m.def("build_segment_graph", &build_segment_graph, py::arg("spec"));
    m.def("bound_error", &bound_error, py::arg("spec"),
          py::arg("grid_per_segment") = 64);
    m.def("bound_function", &bound_function, py::arg("spec"),
          py::arg("grid_per_segment") = 64,
          "Segment chain fattened by the sampled error interval.");
    m.def("compose_scalar_graph", &compose_scalar_graph, py::arg("domain"),
          py::arg("selector"), py::arg("graph"));
    m.def("lift_to_update_set",
          py::overload_cast<const LinearSystem&, const Set&,
                            const std::vector<NonlinearTerm>&, const Vector&>(
              &lift_to_update_set),
          py::arg("sys"), py::arg("D"), py::arg("terms"), py::arg("f"));
    m.def("lift_to_update_set",
          py::overload_cast<const LinearSystem&, const Set&,
                            const std::vector<NonlinearTerm>&>(
              &lift_to_update_set),
          py::arg("sys"), py::arg("D"), py::arg("terms"));

    m.def("set_to_json", &set_to_json, py::arg("s"));
    m.def("set_from_json", &set_from_json, py::arg("text"));
    m.def("load_set", &load_set, py::arg("path"));
    m.def("save_set", &save_set, py::arg("s"), py::arg("path"));
    m.def("network_to_json", &network_to_json, py::arg("net"));
    m.def("network_from_json", &network_from_json, py::arg("text"));
    m.def("load_network", &load_network, py::arg("path"));
    m.def("save_network", &save_network, py::arg("net"), py::arg("path"));
}
