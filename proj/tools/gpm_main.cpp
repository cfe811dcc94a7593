#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpm/cli.hpp"

// gpm: graph products of right LCM monoids — analysis and certificates.

int main(int argc, char** argv)
{
    CLI::App app{"exact computation in graph products of right LCM monoids"};
    app.require_subcommand(1);
    bool json_output = false;

    std::string graph_path, set_path, sub, mode = "check";
    std::vector<std::string> literals;
    std::optional<int> bound;
    std::string suite = "all", budget = "default";
    std::optional<std::string> verify_graph;

    auto* analyze = app.add_subcommand("analyze", "structure, property (AR), scale, admissibility");
    analyze->add_option("graph", graph_path, "graph JSON file")->required();

    auto* trace = app.add_subcommand("trace", "normal forms and trace queries");
    trace->add_option("subcommand", sub, "one of nf|mul|lcm|orth|len|core|ci")->required();
    trace->add_option("graph", graph_path, "graph JSON file")->required();
    trace->add_option("literals", literals, "trace literals (`vertex[:element]` syllables)")
        ->expected(-1);

    auto* foundation = app.add_subcommand("foundation", "foundation-set verdicts and refinements");
    foundation->add_option("graph", graph_path, "graph JSON file")->required();
    foundation->add_option("set", set_path, "JSON array of trace literals")->required();
    foundation->add_option("--mode", mode, "check|refine|witness")->capture_default_str();
    int bound_value = -1;
    foundation->add_option("--bound", bound_value, "search bound (default: GP_BOUND or sum of lengths + |V| + 2)");

    auto* verify = app.add_subcommand("verify", "run the oracle/property suites");
    std::string verify_graph_path;
    verify->add_option("graph", verify_graph_path, "optional graph JSON file for graph-scoped suites");
    verify->add_option("--suite", suite,
                       "all|nf-oracle|lcm-oracle|core-oracle|components|blocking|rational-independence|scale")
        ->capture_default_str();
    verify->add_option("--budget", budget, "zero|small|default")->capture_default_str();

    for (auto* cmd : {&app, analyze, trace, foundation, verify})
        cmd->add_flag("--json", json_output, "emit the machine-readable report");

    CLI11_PARSE(app, argc, argv);

    gpm::cli::CmdResult result;
    try {
        if (app.got_subcommand(analyze)) {
            result = gpm::cli::cmd_analyze(graph_path);
        } else if (app.got_subcommand(trace)) {
            result = gpm::cli::cmd_trace(graph_path, sub, literals);
        } else if (app.got_subcommand(foundation)) {
            if (bound_value > 0) bound = bound_value;
            result = gpm::cli::cmd_foundation(graph_path, set_path, mode, bound);
        } else if (app.got_subcommand(verify)) {
            if (!verify_graph_path.empty()) verify_graph = verify_graph_path;
            result = gpm::cli::cmd_verify(verify_graph, suite, budget);
        }
    } catch (const gpm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }

    if (json_output)
        std::cout << result.report.dump(2) << "\n";
    else
        std::cout << result.human;
    return result.exit_code;
}
