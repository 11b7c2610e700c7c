#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "scenario.hpp"
#include "zonokit/errors.hpp"

namespace {

int dispatch(const std::function<void()>& work) {
    try {
        work();
        return 0;
    } catch (const zonokit::ArgumentError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const zonokit::DimensionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const zonokit::RepresentationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const zonokit::ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zonotope set-operation and reachability toolkit"};
    app.require_subcommand(1);

    zonokit::cli::Overrides overrides;
    std::string scenario_path;
    std::string out_dir = "out";
    std::uint64_t seed_value = 0;
    double tolerance_value = 0.0;
    double activation_value = 0.0;

    CLI::App* run = app.add_subcommand("run", "Execute a scenario document");
    run->add_option("scenario", scenario_path, "Scenario JSON file")
        ->required();
    run->add_option("-o,--out", out_dir, "Output directory");
    CLI::Option* seed_opt =
        run->add_option("--seed", seed_value, "Override the scenario seed");
    run->add_option("--solver", overrides.solver,
                    "Solver backend name (default builtin)");
    CLI::Option* tol_opt = run->add_option("--tolerance", tolerance_value,
                                           "Feasibility tolerance override");
    run->add_option("--jobs", overrides.jobs, "Worker threads for leaf meshing")
        ->check(CLI::PositiveNumber);
    run->add_option("--export", overrides.exports,
                    "Additional export kind (sets, mesh-json, mesh-svg, "
                    "mesh-obj); repeatable");
    run->add_flag("--leaves", overrides.leaves,
                  "Report leaf counts (enumeration-priced)");
    run->add_flag("--timings", overrides.timings,
                  "Include wall times in the report");
    CLI::Option* act_opt =
        run->add_option("--activation-bound", activation_value,
                        "Override the ReLU activation bound");

    std::string set_path;
    bool info_leaves = false;
    CLI::App* info = app.add_subcommand("info", "Summarize a set document");
    info->add_option("set", set_path, "Set JSON file")->required();
    info->add_flag("--leaves", info_leaves, "Also count leaves");

    std::string convert_in, convert_tag, convert_out;
    CLI::App* convert =
        app.add_subcommand("convert", "Recast a set to a more expressive tag");
    convert->add_option("set", convert_in, "Set JSON file")->required();
    convert->add_option("target", convert_tag, "zono, conZono, or hybZono")
        ->required();
    convert->add_option("out", convert_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (seed_opt->count() > 0) overrides.seed = seed_value;
    if (tol_opt->count() > 0) overrides.tolerance = tolerance_value;
    if (act_opt->count() > 0) overrides.activation_bound = activation_value;

    if (run->parsed()) {
        return dispatch([&] {
            zonokit::cli::run_scenario(scenario_path, out_dir, overrides);
        });
    }
    if (info->parsed()) {
        return dispatch([&] { zonokit::cli::info_set(set_path, info_leaves); });
    }
    return dispatch([&] {
        zonokit::cli::convert_set(convert_in, convert_tag, convert_out);
    });
}
