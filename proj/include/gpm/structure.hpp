#ifndef GPM_STRUCTURE_HPP
#define GPM_STRUCTURE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "gpm/graph.hpp"
#include "gpm/monoid.hpp"
#include "gpm/trace.hpp"

// The distinguished subsemigroups S*, S_c, S_ci and the structural
// predicates computed through the coconnected decomposition.

namespace gpm {

namespace detail {

inline bool vertex_is_universal(const Graph& g, int v)
{
    const auto& d = g.decomposition();
    return d.components[static_cast<size_t>(d.component_of[static_cast<size_t>(v)])].size() == 1;
}

} // namespace detail

// Core membership via the decomposition formula: universal-vertex syllables
// must lie in the vertex core, component syllables must be invertible.
inline bool is_core(const Trace& s)
{
    const Graph& g = *s.graph();
    for (const auto& sy : s.syllables()) {
        if (detail::vertex_is_universal(g, sy.vertex)) {
            if (!v_core_contains(sy.element)) return false;
        } else {
            if (!v_is_invertible(sy.element)) return false;
        }
    }
    return true;
}

// Core irreducibility: non-invertible, and every universal-vertex syllable
// lies in (S_v)_ci u S_v^*; component parts are unconstrained.
inline bool is_core_irreducible(const Trace& s)
{
    if (is_invertible(s)) return false;
    const Graph& g = *s.graph();
    for (const auto& sy : s.syllables())
        if (detail::vertex_is_universal(g, sy.vertex) && !v_ci_prime_contains(sy.element)) return false;
    return true;
}

// s ~ t iff the universal-vertex projections are core related in each S_v
// and each component projection of s lies in t_i * units(S_{Gamma_i}).
inline bool core_related(const Trace& s, const Trace& t)
{
    require_same_graph(s.graph(), t.graph());
    const Graph& g = *s.graph();
    const auto& d = g.decomposition();
    for (size_t i = 0; i < d.components.size(); ++i) {
        Trace si = project(s, static_cast<int>(i));
        Trace ti = project(t, static_cast<int>(i));
        if (d.components[i].size() == 1) {
            const auto& spec = g.vertex(d.components[i][0]).monoid;
            VertexElement xs = si.empty() ? VertexElement::identity(spec) : si.syllables()[0].element;
            VertexElement xt = ti.empty() ? VertexElement::identity(spec) : ti.syllables()[0].element;
            if (!v_core_related(xs, xt)) return false;
        } else {
            if (!left_divides(ti, si) || !is_invertible(left_quotient(ti, si))) return false;
        }
    }
    return true;
}

struct StructureReport {
    std::string units_description;
    std::string core_description;
    std::string ci_description;
    bool core_factorable = false;
    bool ci_cap_closed = false;
    bool alpha_faithful = false;
    bool alpha_almost_free = false;
    bool finite_propagation_sufficient = false;
};

namespace detail {

// Connected components (ordinary adjacency) of the subgraph induced on `vs`.
inline std::vector<std::vector<int>> induced_connected_components(const Graph& g, const std::vector<int>& vs)
{
    std::vector<std::vector<int>> comps;
    std::set<int> todo(vs.begin(), vs.end());
    while (!todo.empty()) {
        std::vector<int> stack{*todo.begin()};
        todo.erase(todo.begin());
        std::vector<int> comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (auto it = todo.begin(); it != todo.end();) {
                if (g.adjacent(v, *it)) {
                    stack.push_back(*it);
                    it = todo.erase(it);
                } else {
                    ++it;
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// One direct summand of the graph product: a universal vertex or an I_2
// component, with the facts feeding the almost-freeness analysis.
struct Summand {
    bool left_reversible = false;
    bool core_trivial = false;
    bool almost_free = false;
};

inline Summand vertex_summand(const VertexMonoidSpec& spec)
{
    auto f = v_flags(spec);
    return {f.is_left_reversible, !f.core_is_whole, f.alpha_almost_free};
}

// Almost freeness for a coconnected component with >= 2 vertices: every
// isolated vertex needs an almost free alpha_v^*, and every connected piece
// of the component must consist of groups only or trivial-unit monoids only.
inline Summand component_summand(const Graph& g, const std::vector<int>& vs)
{
    Summand s;
    s.left_reversible = std::all_of(vs.begin(), vs.end(),
                                    [&](int v) { return v_flags(g.vertex(v).monoid).is_group; });
    s.core_trivial = std::all_of(vs.begin(), vs.end(),
                                 [&](int v) { return v_flags(g.vertex(v).monoid).units_trivial; });
    s.almost_free = true;
    for (int v : vs) {
        bool isolated_in_component = std::all_of(vs.begin(), vs.end(),
                                                 [&](int w) { return w == v || !g.adjacent(v, w); });
        if (isolated_in_component && !v_flags(g.vertex(v).monoid).alpha_star_almost_free) s.almost_free = false;
    }
    for (const auto& piece : induced_connected_components(g, vs)) {
        if (piece.size() < 2) continue;
        bool all_groups = std::all_of(piece.begin(), piece.end(),
                                      [&](int v) { return v_flags(g.vertex(v).monoid).is_group; });
        bool all_trivial_units = std::all_of(piece.begin(), piece.end(),
                                             [&](int v) { return v_flags(g.vertex(v).monoid).units_trivial; });
        if (!all_groups && !all_trivial_units) s.almost_free = false;
    }
    return s;
}

inline std::string vertex_set_label(const Graph& g, const std::vector<int>& vs)
{
    std::string out = "{";
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ",";
        out += g.vertex(vs[i]).id;
    }
    return out + "}";
}

} // namespace detail

inline StructureReport structure_report(const Graph& g)
{
    const auto& d = g.decomposition();
    StructureReport r;

    std::vector<detail::Summand> summands;
    std::vector<std::string> unit_terms, core_terms, ci_terms;
    for (size_t i = 0; i < d.components.size(); ++i) {
        const auto& vs = d.components[i];
        if (vs.size() == 1) {
            const auto& info = g.vertex(vs[0]);
            summands.push_back(detail::vertex_summand(info.monoid));
            auto f = v_flags(info.monoid);
            unit_terms.push_back(info.id + ":" + (f.units_trivial ? "{1}" : info.monoid.code() + "^*"));
            core_terms.push_back(info.id + ":" + (f.core_is_whole ? info.monoid.code() : "{1}"));
            ci_terms.push_back(info.id + ":" + (f.core_is_whole ? "units" : info.monoid.code()));
        } else {
            summands.push_back(detail::component_summand(g, vs));
            auto label = detail::vertex_set_label(g, vs);
            bool units_trivial = summands.back().core_trivial;
            unit_terms.push_back(label + ":" + (units_trivial ? "{1}" : "GP^*"));
            core_terms.push_back(label + ":" + (units_trivial ? "{1}" : "GP^*"));
            ci_terms.push_back(label + ":GP");
        }
    }
    auto join = [](const std::vector<std::string>& terms) {
        std::string out;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) out += " (+) ";
            out += terms[i];
        }
        return out;
    };
    r.units_description = join(unit_terms);
    r.core_description = join(core_terms);
    r.ci_description = join(ci_terms);

    r.core_factorable = true;
    r.ci_cap_closed = true;
    r.alpha_faithful = true;
    r.finite_propagation_sufficient = true;
    for (int v : d.universal_vertices) {
        auto f = v_flags(g.vertex(v).monoid);
        r.core_factorable = r.core_factorable && f.core_factorable;
        r.ci_cap_closed = r.ci_cap_closed && f.ci_cap_closed;
        r.alpha_faithful = r.alpha_faithful && f.alpha_faithful;
        r.finite_propagation_sufficient = r.finite_propagation_sufficient && f.finite_propagation;
    }
    for (int i : d.i2_indices) {
        const auto& vs = d.components[static_cast<size_t>(i)];
        bool has_non_group = std::any_of(vs.begin(), vs.end(),
                                         [&](int v) { return !v_flags(g.vertex(v).monoid).is_group; });
        r.alpha_faithful = r.alpha_faithful && has_non_group;
        for (int v : vs)
            r.finite_propagation_sufficient =
                r.finite_propagation_sufficient && v_flags(g.vertex(v).monoid).units_finite;
    }

    // Almost freeness of a direct sum: vacuous when the core is trivial,
    // immediate when every summand is left reversible (singleton quotient),
    // and otherwise only a lone summand can carry the action.
    bool all_core_trivial = std::all_of(summands.begin(), summands.end(),
                                        [](const detail::Summand& s) { return s.core_trivial; });
    bool all_left_reversible = std::all_of(summands.begin(), summands.end(),
                                           [](const detail::Summand& s) { return s.left_reversible; });
    r.alpha_almost_free =
        all_core_trivial || all_left_reversible || (summands.size() == 1 && summands.front().almost_free);

    return r;
}

// Splits s = ci_part * core_part with ci_part in S_ci^1 and core_part in
// S_c: non-invertible component projections and trivial-core universal
// parts make up the ci factor, the rest is core.
inline std::pair<Trace, Trace> core_factorize(const Trace& s)
{
    const Graph& g = *s.graph();
    if (!structure_report(g).core_factorable)
        throw NotFactorable("graph product is not core factorable");
    const auto& d = g.decomposition();

    std::vector<bool> comp_to_ci(d.components.size(), false);
    for (size_t i = 0; i < d.components.size(); ++i) {
        if (d.components[i].size() == 1) {
            comp_to_ci[i] = !v_flags(g.vertex(d.components[i][0]).monoid).core_is_whole;
        } else {
            comp_to_ci[i] = !is_invertible(project(s, static_cast<int>(i)));
        }
    }
    std::vector<Syllable> ci_syl, core_syl;
    for (const auto& sy : s.syllables()) {
        size_t comp = static_cast<size_t>(d.component_of[static_cast<size_t>(sy.vertex)]);
        (comp_to_ci[comp] ? ci_syl : core_syl).push_back(sy);
    }
    Trace ci_part = Trace::from_syllables(s.graph(), std::move(ci_syl));
    Trace core_part = Trace::from_syllables(s.graph(), std::move(core_syl));
    if (!(multiply(ci_part, core_part) == s))
        throw FactorizationFailure("core factorization failed to re-multiply for '" + s.format() + "'");
    if (!ci_part.empty() && !is_core_irreducible(ci_part))
        throw FactorizationFailure("ci factor is not core irreducible for '" + s.format() + "'");
    if (!is_core(core_part))
        throw FactorizationFailure("core factor is not core for '" + s.format() + "'");
    return {std::move(ci_part), std::move(core_part)};
}

} // namespace gpm

#endif // GPM_STRUCTURE_HPP
