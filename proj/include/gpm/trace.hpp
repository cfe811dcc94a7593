#ifndef GPM_TRACE_HPP
#define GPM_TRACE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpm/errors.hpp"
#include "gpm/graph.hpp"
#include "gpm/monoid.hpp"

// Elements of the graph product: canonical normal forms for reduced
// expressions, multiplication, divisibility, right LCMs and orthogonality.

namespace gpm {

// Hard cap on canonical length so that runaway searches fail loudly.
inline constexpr int kTraceLengthCap = 512;

struct Syllable {
    int vertex = -1;
    VertexElement element;

    bool operator==(const Syllable& o) const = default;
};

class Trace {
public:
    Trace() = default;

    static Trace identity(GraphPtr g) { return Trace(std::move(g), {}); }

    // Canonical normal form of the product of the listed syllables.
    static Trace from_word(GraphPtr g, const std::vector<std::pair<VertexId, VertexElement>>& word)
    {
        std::vector<Syllable> syl;
        for (const auto& [id, el] : word) {
            int v = g->index_of(id);
            if (!(g->vertex(v).monoid == el.spec))
                throw SpecMismatch("element of " + el.spec.code() + " assigned to vertex '" + id + "' of " +
                                   g->vertex(v).monoid.code());
            syl.push_back({v, el});
        }
        return Trace(std::move(g), std::move(syl));
    }

    static Trace from_syllables(GraphPtr g, std::vector<Syllable> syl)
    {
        for (const auto& s : syl) {
            if (s.vertex < 0 || s.vertex >= g->size()) throw UnknownVertex("syllable at unknown vertex index");
            if (!(g->vertex(s.vertex).monoid == s.element.spec))
                throw SpecMismatch("syllable spec mismatch at vertex '" + g->vertex(s.vertex).id + "'");
        }
        return Trace(std::move(g), std::move(syl));
    }

    static Trace single(GraphPtr g, int vertex, VertexElement el)
    {
        return from_syllables(std::move(g), {Syllable{vertex, std::move(el)}});
    }

    const GraphPtr& graph() const { return graph_; }
    const std::vector<Syllable>& syllables() const { return syl_; }
    int length() const { return static_cast<int>(syl_.size()); }
    bool empty() const { return syl_.empty(); }

    bool operator==(const Trace& o) const { return syl_ == o.syl_; }
    bool operator!=(const Trace& o) const { return !(*this == o); }

    // Deterministic total order: by length, then syllablewise.
    bool before(const Trace& o) const
    {
        if (syl_.size() != o.syl_.size()) return syl_.size() < o.syl_.size();
        for (size_t i = 0; i < syl_.size(); ++i) {
            if (syl_[i].vertex != o.syl_[i].vertex) return syl_[i].vertex < o.syl_[i].vertex;
            if (!(syl_[i].element == o.syl_[i].element)) return syl_[i].element.before(o.syl_[i].element);
        }
        return false;
    }

    std::string format() const
    {
        if (syl_.empty()) return "1";
        std::string out;
        for (size_t i = 0; i < syl_.size(); ++i) {
            if (i) out += ' ';
            out += graph_->vertex(syl_[i].vertex).id + ":" + syl_[i].element.format();
        }
        return out;
    }

private:
    Trace(GraphPtr g, std::vector<Syllable> syl) : graph_(std::move(g)), syl_(std::move(syl))
    {
        normalize();
    }

    bool adjacent(int u, int v) const { return graph_->adjacent(u, v); }

    // Merge-to-fixpoint, then greedy lexicographically-least emission.
    void normalize()
    {
        auto& w = syl_;
        w.erase(std::remove_if(w.begin(), w.end(), [](const Syllable& s) { return s.element.is_identity(); }),
                w.end());

        // consolidate same-vertex syllables whenever everything in between
        // commutes with their vertex
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < w.size() && !changed; ++i) {
                const int v = w[i].vertex;
                for (size_t j = i + 1; j < w.size(); ++j) {
                    if (w[j].vertex == v) {
                        w[i].element = v_multiply(w[i].element, w[j].element);
                        w.erase(w.begin() + static_cast<long>(j));
                        if (w[i].element.is_identity()) w.erase(w.begin() + static_cast<long>(i));
                        changed = true;
                        break;
                    }
                    if (!adjacent(w[j].vertex, v)) break;
                }
            }
        }

        if (static_cast<int>(w.size()) > kTraceLengthCap)
            throw LengthCapExceeded("trace length " + std::to_string(w.size()) + " exceeds cap " +
                                    std::to_string(kTraceLengthCap));

        // among shuffle-equivalent reduced expressions, emit the least
        // accessible vertex first
        std::vector<Syllable> out;
        out.reserve(w.size());
        while (!w.empty()) {
            size_t best = 0;
            int best_vertex = -1;
            for (size_t k = 0; k < w.size(); ++k) {
                bool accessible = true;
                for (size_t m = 0; m < k && accessible; ++m)
                    accessible = adjacent(w[m].vertex, w[k].vertex);
                if (accessible && (best_vertex < 0 || w[k].vertex < best_vertex)) {
                    best = k;
                    best_vertex = w[k].vertex;
                }
            }
            out.push_back(std::move(w[best]));
            w.erase(w.begin() + static_cast<long>(best));
        }
        w = std::move(out);
    }

    GraphPtr graph_;
    std::vector<Syllable> syl_;
};

inline Trace identity(GraphPtr g) { return Trace::identity(std::move(g)); }

inline int length(const Trace& s) { return s.length(); }

inline Trace multiply(const Trace& s, const Trace& t)
{
    require_same_graph(s.graph(), t.graph());
    std::vector<Syllable> syl = s.syllables();
    syl.insert(syl.end(), t.syllables().begin(), t.syllables().end());
    return Trace::from_syllables(s.graph(), std::move(syl));
}

inline bool is_invertible(const Trace& s)
{
    return std::all_of(s.syllables().begin(), s.syllables().end(),
                       [](const Syllable& sy) { return v_is_invertible(sy.element); });
}

// Positions whose syllable can be shuffled to the front; their vertices are
// pairwise distinct in a reduced expression.
inline std::vector<size_t> front_accessible(const Trace& t)
{
    std::vector<size_t> out;
    const auto& w = t.syllables();
    for (size_t k = 0; k < w.size(); ++k) {
        bool accessible = true;
        for (size_t m = 0; m < k && accessible; ++m)
            accessible = t.graph()->adjacent(w[m].vertex, w[k].vertex);
        if (accessible) out.push_back(k);
    }
    return out;
}

inline std::optional<size_t> front_accessible_at(const Trace& t, int vertex)
{
    for (size_t k : front_accessible(t))
        if (t.syllables()[k].vertex == vertex) return k;
    return std::nullopt;
}

namespace detail {

inline Trace erase_syllable(const Trace& t, size_t pos)
{
    auto syl = t.syllables();
    syl.erase(syl.begin() + static_cast<long>(pos));
    return Trace::from_syllables(t.graph(), std::move(syl));
}

inline Trace replace_element(const Trace& t, size_t pos, VertexElement el)
{
    auto syl = t.syllables();
    if (el.is_identity()) {
        syl.erase(syl.begin() + static_cast<long>(pos));
    } else {
        syl[pos].element = std::move(el);
    }
    return Trace::from_syllables(t.graph(), std::move(syl));
}

inline Trace prepend(const Trace& t, int vertex, const VertexElement& el)
{
    std::vector<Syllable> syl;
    syl.reserve(t.syllables().size() + 1);
    syl.push_back({vertex, el});
    syl.insert(syl.end(), t.syllables().begin(), t.syllables().end());
    return Trace::from_syllables(t.graph(), std::move(syl));
}

} // namespace detail

// Iterated peeling of the syllables of s out of t. Invertible syllables
// left-divide everything, so they peel by twisting with their inverse.
inline bool peel_quotient(const Trace& s, const Trace& t, Trace* quotient_out)
{
    require_same_graph(s.graph(), t.graph());
    Trace work = t;
    for (const auto& sy : s.syllables()) {
        if (v_is_invertible(sy.element)) {
            work = detail::prepend(work, sy.vertex, v_inverse(sy.element));
            continue;
        }
        auto pos = front_accessible_at(work, sy.vertex);
        if (!pos) return false;
        const VertexElement& y = work.syllables()[*pos].element;
        if (!v_left_divides(sy.element, y)) return false;
        work = detail::replace_element(work, *pos, v_left_quotient(sy.element, y));
    }
    if (quotient_out) *quotient_out = work;
    return true;
}

inline bool left_divides(const Trace& s, const Trace& t) { return peel_quotient(s, t, nullptr); }

inline Trace left_quotient(const Trace& s, const Trace& t)
{
    Trace q;
    if (!peel_quotient(s, t, &q))
        throw NotADivisor("'" + s.format() + "' does not left-divide '" + t.format() + "'");
    return q;
}

// Right multiplication by a unit cannot change the principal right ideal, so
// iteratively drop invertible syllables that shuffle to the back.
inline Trace unit_reduce(const Trace& t)
{
    Trace work = t;
    bool changed = true;
    while (changed) {
        changed = false;
        const auto& w = work.syllables();
        for (size_t k = w.size(); k-- > 0;) {
            if (!v_is_invertible(w[k].element)) continue;
            bool back_accessible = true;
            for (size_t m = k + 1; m < w.size() && back_accessible; ++m)
                back_accessible = work.graph()->adjacent(w[m].vertex, w[k].vertex);
            if (back_accessible) {
                work = detail::erase_syllable(work, k);
                changed = true;
                break;
            }
        }
    }
    return work;
}

struct LcmResult {
    std::optional<Trace> multiple; // empty means orthogonal

    bool orthogonal() const { return !multiple.has_value(); }
};

// Selects which front-accessible syllable of s to resolve next; the result
// must not depend on the choice (exercised by a property test against a
// randomized selector).
using LcmSelector = std::function<size_t(const Trace&, const std::vector<size_t>&)>;

inline size_t canonical_selector(const Trace&, const std::vector<size_t>& accessible)
{
    return accessible.front(); // canonical form puts the least vertex first
}

namespace detail {

LcmResult right_lcm_impl(Trace s, Trace t, const LcmSelector& select, int depth);

// Minimal w' with w <= (v, delta) * w'. The twisted residual of the syllable
// resolution step; w never has a front-accessible v-syllable here.
inline std::optional<Trace> absorb_twist(int vertex, const VertexElement& delta, const Trace& w,
                                         const LcmSelector& select, int depth)
{
    if (delta.is_identity()) return w;
    Trace d = Trace::single(w.graph(), vertex, delta);
    auto res = right_lcm_impl(d, w, select, depth);
    if (res.orthogonal()) return std::nullopt;
    return left_quotient(d, *res.multiple);
}

inline LcmResult right_lcm_impl(Trace s, Trace t, const LcmSelector& select, int depth)
{
    if (depth > 4 * kTraceLengthCap) throw LengthCapExceeded("lcm recursion exceeded depth cap");
    s = unit_reduce(s);
    t = unit_reduce(t);
    if (s.empty()) return {t};
    if (t.empty()) return {s};

    auto accessible = front_accessible(s);
    // invertible front syllables always divide; peel them off s first
    for (size_t k : accessible) {
        const Syllable& sy = s.syllables()[k];
        if (!v_is_invertible(sy.element)) continue;
        auto rec = right_lcm_impl(erase_syllable(s, k), prepend(t, sy.vertex, v_inverse(sy.element)), select,
                                  depth + 1);
        if (rec.orthogonal()) return {std::nullopt};
        return {multiply(Trace::single(s.graph(), sy.vertex, sy.element), *rec.multiple)};
    }

    const size_t pick = select(s, accessible);
    const Syllable a = s.syllables()[pick];
    const int v = a.vertex;
    Trace s2 = erase_syllable(s, pick);

    if (auto pos = front_accessible_at(t, v)) {
        const VertexElement y = t.syllables()[*pos].element;
        auto vl = v_lcm(a.element, y);
        if (vl.orthogonal()) return {std::nullopt};
        const VertexElement z = *vl.multiple;
        Trace t2 = erase_syllable(t, *pos);
        auto s_res = absorb_twist(v, v_left_quotient(a.element, z), s2, select, depth + 1);
        if (!s_res) return {std::nullopt};
        auto t_res = absorb_twist(v, v_left_quotient(y, z), t2, select, depth + 1);
        if (!t_res) return {std::nullopt};
        auto rec = right_lcm_impl(*s_res, *t_res, select, depth + 1);
        if (rec.orthogonal()) return {std::nullopt};
        return {multiply(Trace::single(s.graph(), v, z), *rec.multiple)};
    }

    bool adjacent_to_all = true;
    for (const auto& sy : t.syllables())
        if (sy.vertex == v || !t.graph()->adjacent(sy.vertex, v)) {
            adjacent_to_all = false;
            break;
        }
    if (adjacent_to_all) {
        auto rec = right_lcm_impl(s2, t, select, depth + 1);
        if (rec.orthogonal()) return {std::nullopt};
        return {multiply(Trace::single(s.graph(), v, a.element), *rec.multiple)};
    }
    return {std::nullopt};
}

} // namespace detail

inline LcmResult right_lcm_with_selector(const Trace& s, const Trace& t, const LcmSelector& select)
{
    require_same_graph(s.graph(), t.graph());
    return detail::right_lcm_impl(s, t, select, 0);
}

inline LcmResult right_lcm(const Trace& s, const Trace& t)
{
    return right_lcm_with_selector(s, t, canonical_selector);
}

inline bool is_orthogonal(const Trace& s, const Trace& t) { return right_lcm(s, t).orthogonal(); }

// Subsequence of syllables with vertices in component i, renormalized. The
// result lives over the same graph; within a component the induced and the
// ambient normal forms coincide.
inline Trace project(const Trace& s, int component_index)
{
    const auto& d = s.graph()->decomposition();
    if (component_index < 0 || component_index >= static_cast<int>(d.components.size()))
        throw BadComponent("component index " + std::to_string(component_index) + " out of range");
    std::vector<Syllable> syl;
    for (const auto& sy : s.syllables())
        if (d.component_of[static_cast<size_t>(sy.vertex)] == component_index) syl.push_back(sy);
    return Trace::from_syllables(s.graph(), std::move(syl));
}

// ---- trace literals -------------------------------------------------------
//
// Space-separated syllables `vertex[:element]`; an omitted element denotes
// the monoid's generator atom, so `v1` is `v1:1` over N.

inline Trace parse_trace_literal(const GraphPtr& g, const std::string& text)
{
    std::vector<std::pair<VertexId, VertexElement>> word;
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text + " ") {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    for (const auto& tok : tokens) {
        auto colon = tok.find(':');
        VertexId id = colon == std::string::npos ? tok : tok.substr(0, colon);
        if (!g->has_vertex(id)) throw ParseError("unknown vertex '" + id + "' in trace literal");
        const auto& spec = g->vertex(g->index_of(id)).monoid;
        VertexElement el = colon == std::string::npos ? v_atom(spec) : VertexElement::parse(spec, tok.substr(colon + 1));
        word.emplace_back(std::move(id), std::move(el));
    }
    return Trace::from_word(g, word);
}

// ---- bounded enumeration --------------------------------------------------

// Per-vertex generating atoms; group vertices also contribute the inverse
// atom so that products reach every element.
inline std::vector<Syllable> default_atoms(const GraphPtr& g)
{
    std::vector<Syllable> atoms;
    for (int v = 0; v < g->size(); ++v) {
        for (auto& el : v_generating_atoms(g->vertex(v).monoid)) atoms.push_back({v, el});
        if (v_flags(g->vertex(v).monoid).is_group) {
            auto inv = v_inverse(v_atom(g->vertex(v).monoid));
            if (!inv.is_identity() && !(inv == v_atom(g->vertex(v).monoid))) atoms.push_back({v, inv});
        }
    }
    return atoms;
}

// All products of at most `steps` atoms, BFS order with deterministic
// tie-breaking; the identity comes first.
inline std::vector<Trace> enumerate_traces(const GraphPtr& g, const std::vector<Syllable>& atoms, int steps,
                                           size_t node_cap = 2'000'000)
{
    std::vector<Trace> all{Trace::identity(g)};
    std::vector<Trace> frontier = all;
    auto cmp = [](const Trace& a, const Trace& b) { return a.before(b); };
    std::set<Trace, decltype(cmp)> seen(cmp);
    seen.insert(all.front());
    for (int step = 0; step < steps; ++step) {
        std::vector<Trace> next;
        for (const auto& t : frontier) {
            for (const auto& a : atoms) {
                Trace u = multiply(t, Trace::single(g, a.vertex, a.element));
                if (seen.insert(u).second) next.push_back(u);
                if (seen.size() > node_cap) throw BudgetExceeded("trace enumeration exceeded node cap");
            }
        }
        std::sort(next.begin(), next.end(), cmp);
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return all;
}

} // namespace gpm

#endif // GPM_TRACE_HPP
