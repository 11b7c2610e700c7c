#ifndef ZONOKIT_TOOLS_SCENARIO_HPP
#define ZONOKIT_TOOLS_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zonokit::cli {

/// Command-line values layered over the scenario document's own settings.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> solver;
    std::optional<double> tolerance;
    int jobs = 1;
    std::vector<std::string> exports;
    bool leaves = false;
    bool timings = false;
    std::optional<double> activation_bound;
};

/// Execute a scenario document and write its exports and report under
/// out_dir. Throws the library's error types; the caller maps them to exit
/// codes.
void run_scenario(const std::string& scenario_path, const std::string& out_dir,
                  const Overrides& overrides);

/// Print a summary of a serialized set to stdout.
void info_set(const std::string& set_path, bool with_leaves);

/// Rewrite a set document under a more expressive tag.
void convert_set(const std::string& set_path, const std::string& target_tag,
                 const std::string& out_path);

} // namespace zonokit::cli

#endif
