#ifndef GPM_CLI_HPP
#define GPM_CLI_HPP

#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpm/io.hpp"
#include "gpm/verify.hpp"

// Command implementations behind the gpm binary. Each returns the exit code,
// a machine-readable report, and a human rendering of the same verdicts.
//
// Exit codes: 0 ok / verdict positive; 1 NOT_FOUNDATION or NONE; 2 graph
// parse error; 3 unsupported assignment; 4 literal or set parse error;
// 5 graph/spec mismatch; 6 UNKNOWN verdict; 7 suite failure.

namespace gpm::cli {

struct CmdResult {
    int exit_code = 0;
    Json report;
    std::string human;
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::optional<int> env_bound()
{
    const char* v = std::getenv("GP_BOUND");
    if (!v || !*v) return std::nullopt;
    try {
        return std::stoi(v);
    } catch (...) {
        throw ParseError("GP_BOUND must be an integer");
    }
}

inline CmdResult error_result(int code, const std::string& command, const std::string& what)
{
    CmdResult r;
    r.exit_code = code;
    r.report = Json{{"command", command}, {"error", what}};
    r.human = "error: " + what;
    return r;
}

inline std::string verdict_line(const Json& j, const std::string& key)
{
    return j.contains(key) ? j[key].dump() : "-";
}

} // namespace detail

inline CmdResult cmd_analyze(const std::string& graph_path)
{
    detail::Stopwatch clock;
    GraphPtr g;
    try {
        g = load_graph_file(graph_path);
    } catch (const Error& e) {
        return detail::error_result(2, "analyze", e.what());
    }
    CmdResult r;
    r.report["command"] = "analyze";
    r.report["graph_file"] = graph_path;
    r.report["graph"] = graph_summary_json(*g);
    auto sr = structure_report(*g);
    r.report["structure"] = structure_report_json(sr);
    auto ar = has_property_ar(g);
    r.report["ar"] = ar_verdict_json(ar);

    bool unsupported = false;
    try {
        auto gs = generalised_scale(g);
        r.report["scale"] = scale_json(gs);
        if (!gs.exists && gs.obstruction.kind == ScaleObstruction::Kind::RationallyDependent) {
            if (auto cert = rational_dependence_certificate(gs.component_sizes)) {
                r.report["scale"]["dependence"] =
                    Json{{"bases", cert->left.bases},
                         {"left", cert->left.exponents},
                         {"right", cert->right.exponents}};
            }
        }
        r.report["admissible"] = admissibility_json(is_admissible(g));
    } catch (const Unsupported& e) {
        unsupported = true;
        r.report["scale"] = Json{{"supported", false}, {"error", e.what()}};
        r.report["admissible"] = Json{{"supported", false}};
    }
    r.report["timing_ms"] = clock.ms();

    std::ostringstream out;
    out << "graph: " << g->size() << " vertices, " << g->edges().size() << " edges; "
        << (is_coconnected(*g) ? "coconnected" : "decomposable") << "\n";
    out << "components:";
    for (const auto& comp : g->decomposition().components) {
        out << " {";
        for (size_t i = 0; i < comp.size(); ++i) out << (i ? "," : "") << g->vertex(comp[i]).id;
        out << "}";
    }
    out << "\n";
    out << "structure: units = " << sr.units_description << "\n";
    out << "           core  = " << sr.core_description << "\n";
    out << "           core_factorable=" << sr.core_factorable << " ci_cap_closed=" << sr.ci_cap_closed
        << " alpha_faithful=" << sr.alpha_faithful << " alpha_almost_free=" << sr.alpha_almost_free
        << " finite_propagation_sufficient=" << sr.finite_propagation_sufficient << "\n";
    out << "AR: " << r.report["ar"]["status"].get<std::string>() << " (" << ar.note << ")";
    if (ar.counterexample) out << "  counterexample=" << r.report["ar"]["counterexample"].dump();
    out << "\n";
    if (unsupported) {
        out << "scale: unsupported assignment\n";
        r.exit_code = 3;
    } else {
        out << "scale: " << (r.report["scale"]["exists"].get<bool>() ? "exists" : "absent");
        if (!r.report["scale"]["exists"].get<bool>())
            out << " (" << r.report["scale"]["obstruction"].get<std::string>() << ")";
        else
            out << " sizes=" << r.report["scale"]["component_sizes"].dump();
        out << "\n";
        out << "admissible: " << (r.report["admissible"]["admissible"].get<bool>() ? "yes" : "no") << "\n";
    }
    r.human = out.str();
    return r;
}

inline CmdResult cmd_trace(const std::string& graph_path, const std::string& sub,
                           const std::vector<std::string>& literals)
{
    detail::Stopwatch clock;
    GraphPtr g;
    try {
        g = load_graph_file(graph_path);
    } catch (const Error& e) {
        return detail::error_result(2, "trace", e.what());
    }
    CmdResult r;
    r.report["command"] = "trace";
    r.report["subcommand"] = sub;
    r.report["graph"] = graph_summary_json(*g);
    r.report["inputs"] = literals;

    auto need = [&](size_t n) {
        if (literals.size() != n)
            throw ParseError("subcommand '" + sub + "' expects " + std::to_string(n) + " trace literal(s)");
    };
    std::vector<Trace> traces;
    try {
        for (const auto& lit : literals) traces.push_back(parse_trace_literal(g, lit));
    } catch (const Error& e) {
        return detail::error_result(4, "trace", e.what());
    }

    std::ostringstream out;
    try {
        if (sub == "nf") {
            need(1);
            r.report["result"] = traces[0].format();
            out << traces[0].format();
        } else if (sub == "mul") {
            if (literals.size() < 2) throw ParseError("subcommand 'mul' expects at least 2 trace literals");
            Trace acc = traces[0];
            for (size_t i = 1; i < traces.size(); ++i) acc = multiply(acc, traces[i]);
            r.report["result"] = acc.format();
            out << acc.format();
        } else if (sub == "lcm") {
            need(2);
            auto res = right_lcm(traces[0], traces[1]);
            if (res.orthogonal()) {
                r.report["result"] = "ORTHOGONAL";
                out << "ORTHOGONAL";
            } else {
                r.report["result"] = "EXISTS";
                r.report["lcm"] = res.multiple->format();
                out << "EXISTS " << res.multiple->format();
            }
        } else if (sub == "orth") {
            need(2);
            bool orth = is_orthogonal(traces[0], traces[1]);
            r.report["result"] = orth;
            out << (orth ? "true" : "false");
        } else if (sub == "len") {
            need(1);
            r.report["result"] = traces[0].length();
            out << traces[0].length();
        } else if (sub == "core") {
            need(1);
            bool c = is_core(traces[0]);
            r.report["result"] = c;
            out << (c ? "true" : "false");
        } else if (sub == "ci") {
            need(1);
            bool c = is_core_irreducible(traces[0]);
            r.report["result"] = c;
            out << (c ? "true" : "false");
        } else {
            throw ParseError("unknown trace subcommand '" + sub + "'");
        }
    } catch (const GraphMismatch& e) {
        return detail::error_result(5, "trace", e.what());
    } catch (const SpecMismatch& e) {
        return detail::error_result(5, "trace", e.what());
    } catch (const ParseError& e) {
        return detail::error_result(4, "trace", e.what());
    }
    r.report["timing_ms"] = clock.ms();
    r.human = out.str() + "\n";
    return r;
}

inline CmdResult cmd_foundation(const std::string& graph_path, const std::string& set_path,
                                const std::string& mode, std::optional<int> bound_opt)
{
    detail::Stopwatch clock;
    GraphPtr g;
    try {
        g = load_graph_file(graph_path);
    } catch (const Error& e) {
        return detail::error_result(2, "foundation", e.what());
    }
    FoundationCandidate f;
    try {
        f = load_trace_set_file(g, set_path);
        if (!bound_opt) bound_opt = detail::env_bound();
    } catch (const Error& e) {
        return detail::error_result(4, "foundation", e.what());
    }
    const int bound = bound_opt.value_or(default_foundation_bound(f));

    CmdResult r;
    r.report["command"] = "foundation";
    r.report["mode"] = mode;
    r.report["graph"] = graph_summary_json(*g);
    r.report["set"] = trace_set_json(f);
    r.report["bound"] = bound;

    std::ostringstream out;
    try {
        if (mode == "check") {
            auto v = is_foundation_set(f, bound);
            r.report["verdict"] = foundation_verdict_json(v);
            out << foundation_status_label(v.status);
            if (v.witness) out << "  witness: " << v.witness->format();
            out << "  (" << v.reason << ")";
            r.exit_code = v.status == FoundationStatus::Foundation ? 0
                        : v.status == FoundationStatus::NotFoundation ? 1
                                                                      : 6;
        } else if (mode == "refine") {
            auto ref = accurate_refinement(f, bound);
            if (ref) {
                r.report["refinement"] = trace_set_json(*ref);
                out << "REFINEMENT (" << ref->elements.size() << " elements): " << trace_set_json(*ref).dump();
                r.exit_code = 0;
            } else {
                r.report["refinement"] = nullptr;
                // certificate for the negative verdict: either the edged
                // component characterization or the exhausted bound
                std::string reason = "search exhausted at bound " + std::to_string(bound);
                const auto& dec = g->decomposition();
                std::set<int> comps;
                bool unit_free = true;
                for (const auto& t : f.elements) {
                    if (is_invertible(t)) unit_free = false;
                    for (const auto& sy : t.syllables())
                        comps.insert(dec.component_of[static_cast<size_t>(sy.vertex)]);
                }
                if (unit_free && comps.size() == 1 &&
                    !dec.induced_edges[static_cast<size_t>(*comps.begin())].empty())
                    reason = "unit-free foundation set inside an edged coconnected component: "
                             "no accurate refinement exists";
                r.report["reason"] = reason;
                out << "NONE (" << reason << ")";
                r.exit_code = 1;
            }
        } else if (mode == "witness") {
            auto w = construct_orthogonal_witness(f);
            if (w) {
                r.report["witness"] = w->format();
                out << w->format();
                r.exit_code = 0;
            } else {
                r.report["witness"] = nullptr;
                out << "NONE (blocked set covers every vertex)";
                r.exit_code = 1;
            }
        } else {
            throw ParseError("unknown foundation mode '" + mode + "'");
        }
    } catch (const PreconditionViolation& e) {
        return detail::error_result(4, "foundation", e.what());
    } catch (const ParseError& e) {
        return detail::error_result(4, "foundation", e.what());
    }
    r.report["timing_ms"] = clock.ms();
    r.human = out.str() + "\n";
    return r;
}

inline CmdResult cmd_verify(const std::optional<std::string>& graph_path, const std::string& suite,
                            const std::string& budget_name)
{
    detail::Stopwatch clock;
    Budget budget;
    if (budget_name == "zero")
        budget = Budget::Zero;
    else if (budget_name == "small")
        budget = Budget::Small;
    else if (budget_name == "default")
        budget = Budget::Default;
    else
        return detail::error_result(4, "verify", "unknown budget '" + budget_name + "'");

    GraphPtr g;
    if (graph_path) {
        try {
            g = load_graph_file(*graph_path);
        } catch (const Error& e) {
            return detail::error_result(2, "verify", e.what());
        }
    }

    CmdResult r;
    r.report["command"] = "verify";
    r.report["suite"] = suite;
    r.report["budget"] = budget_name;

    std::vector<SuiteResult> results;
    try {
        results = run_suites(suite, budget, g);
    } catch (const ParseError& e) {
        return detail::error_result(4, "verify", e.what());
    }

    std::ostringstream out;
    size_t total_cases = 0, total_failures = 0;
    Json arr = Json::array();
    for (const auto& s : results) {
        total_cases += s.cases;
        total_failures += s.failures;
        arr.push_back(Json{{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"notes", s.notes}});
        out << (s.failures == 0 ? "[pass] " : "[FAIL] ") << s.name << ": " << s.cases << " cases, "
            << s.failures << " failures\n";
        for (const auto& n : s.notes) out << "         " << n << "\n";
    }
    if (budget == Budget::Zero) out << "warning: zero budget, 0 cases executed\n";
    r.report["suites"] = std::move(arr);
    r.report["total_cases"] = total_cases;
    r.report["total_failures"] = total_failures;
    r.report["timing_ms"] = clock.ms();
    r.exit_code = total_failures == 0 ? 0 : 7;
    r.human = out.str();
    return r;
}

} // namespace gpm::cli

#endif // GPM_CLI_HPP
