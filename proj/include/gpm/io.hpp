#ifndef GPM_IO_HPP
#define GPM_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpm/boundary.hpp"
#include "gpm/graph.hpp"
#include "gpm/scale.hpp"
#include "gpm/structure.hpp"
#include "gpm/trace.hpp"

// JSON graph files, foundation-set files, and report serialization.

namespace gpm {

using Json = nlohmann::json;

// Graph file: {"vertices": [{"id": "...", "monoid": "..."}], "edges": [["a","b"], ...]}
inline GraphPtr load_graph_json(const Json& j)
{
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw ParseError("graph file needs a 'vertices' array");
    std::vector<VertexInfo> verts;
    for (const auto& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("id") || !v.contains("monoid"))
            throw ParseError("vertex entries need 'id' and 'monoid'");
        VertexId id = v["id"].get<std::string>();
        if (id.empty() || id.find(':') != std::string::npos || id.find(' ') != std::string::npos)
            throw ParseError("vertex id '" + id + "' must be nonempty without ':' or spaces");
        verts.push_back({id, VertexMonoidSpec::parse(v["monoid"].get<std::string>())});
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ParseError("'edges' must be an array of pairs");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge entries must be pairs");
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    return make_graph(std::move(verts), std::move(edges));
}

inline Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
}

inline GraphPtr load_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_graph_json(parse_json_text(ss.str()));
}

// Foundation-set file: a JSON array of trace literals.
inline FoundationCandidate load_trace_set_json(const GraphPtr& g, const Json& j)
{
    if (!j.is_array() || j.empty()) throw ParseError("foundation-set file must be a nonempty JSON array");
    std::vector<Trace> elems;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError("foundation-set entries must be trace literals");
        elems.push_back(parse_trace_literal(g, e.get<std::string>()));
    }
    return FoundationCandidate::make(g, std::move(elems));
}

inline FoundationCandidate load_trace_set_file(const GraphPtr& g, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open set file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_trace_set_json(g, parse_json_text(ss.str()));
}

// ---- report rendering -------------------------------------------------------

inline Json graph_summary_json(const Graph& g)
{
    Json j;
    j["vertex_count"] = g.size();
    Json verts = Json::array();
    for (const auto& v : g.vertices()) verts.push_back({{"id", v.id}, {"monoid", v.monoid.code()}});
    j["vertices"] = std::move(verts);
    Json edges = Json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({g.vertex(a).id, g.vertex(b).id});
    j["edges"] = std::move(edges);
    j["coconnected"] = is_coconnected(g);
    Json comps = Json::array();
    for (const auto& comp : g.decomposition().components) {
        Json c = Json::array();
        for (int v : comp) c.push_back(g.vertex(v).id);
        comps.push_back(std::move(c));
    }
    j["coconnected_components"] = std::move(comps);
    auto cls = classify_vertices(g);
    Json uni = Json::array(), iso = Json::array();
    for (int v : cls.universal) uni.push_back(g.vertex(v).id);
    for (int v : cls.isolated) iso.push_back(g.vertex(v).id);
    j["universal_vertices"] = std::move(uni);
    j["isolated_vertices"] = std::move(iso);
    return j;
}

inline Json structure_report_json(const StructureReport& r)
{
    return Json{{"units", r.units_description},
                {"core", r.core_description},
                {"core_irreducibles", r.ci_description},
                {"core_factorable", r.core_factorable},
                {"ci_cap_closed", r.ci_cap_closed},
                {"alpha_faithful", r.alpha_faithful},
                {"alpha_almost_free", r.alpha_almost_free},
                {"finite_propagation_sufficient", r.finite_propagation_sufficient}};
}

inline std::string foundation_status_label(FoundationStatus s)
{
    switch (s) {
    case FoundationStatus::Foundation: return "FOUNDATION";
    case FoundationStatus::NotFoundation: return "NOT_FOUNDATION";
    case FoundationStatus::Unknown: return "UNKNOWN";
    }
    return "?";
}

inline Json foundation_verdict_json(const FoundationVerdict& v)
{
    Json j;
    j["status"] = foundation_status_label(v.status);
    j["bound"] = v.bound;
    j["reason"] = v.reason;
    if (v.witness) j["witness"] = v.witness->format();
    return j;
}

inline Json trace_set_json(const FoundationCandidate& f)
{
    Json arr = Json::array();
    for (const auto& t : f.elements) arr.push_back(t.format());
    return arr;
}

inline Json ar_verdict_json(const ArVerdict& v)
{
    Json j;
    switch (v.status) {
    case ArStatus::HasAr: j["status"] = "HAS_AR"; break;
    case ArStatus::LacksAr: j["status"] = "LACKS_AR"; break;
    case ArStatus::Unknown: j["status"] = "UNKNOWN"; break;
    }
    j["method"] = v.method == ArMethod::Characterization ? "CHARACTERIZATION" : "SEARCH";
    j["note"] = v.note;
    if (v.counterexample) j["counterexample"] = trace_set_json(*v.counterexample);
    return j;
}

inline Json scale_json(const GeneralisedScale& gs)
{
    Json j;
    j["exists"] = gs.exists;
    j["obstruction"] = gs.obstruction.label();
    if (gs.obstruction.kind == ScaleObstruction::Kind::EdgedComponent) {
        const auto& comp = gs.graph->decomposition().components[static_cast<size_t>(gs.obstruction.component)];
        Json c = Json::array();
        for (int v : comp) c.push_back(gs.graph->vertex(v).id);
        j["edged_component"] = std::move(c);
    }
    j["component_sizes"] = gs.component_sizes;
    return j;
}

inline Json admissibility_json(const AdmissibilityReport& r)
{
    Json j;
    j["admissible"] = r.admissible;
    j["core_factorable"] = r.core_factorable;
    j["ci_cap_closed"] = r.ci_cap_closed;
    j["scale_exists"] = r.scale.exists;
    j["irreducibles"] = r.irreducibles;
    j["freely_generated"] = r.freely_generated;
    return j;
}

inline Json scale_axiom_report_json(const ScaleAxiomReport& r)
{
    return Json{{"n", r.n.str()},
                {"class_count", r.class_count},
                {"count_ok", r.count_ok},
                {"values_ok", r.values_ok},
                {"distinct_checked", r.distinct_checked},
                {"distinct_ok", r.distinct_ok},
                {"accurate", r.accurate},
                {"foundation", foundation_status_label(r.foundation)},
                {"ok", r.ok()}};
}

} // namespace gpm

#endif // GPM_IO_HPP
