#ifndef GPM_VERIFY_HPP
#define GPM_VERIFY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "gpm/boundary.hpp"
#include "gpm/graph.hpp"
#include "gpm/scale.hpp"
#include "gpm/structure.hpp"
#include "gpm/trace.hpp"

// Self-check suites: brute-force oracles run against the implementation.
// The oracles here deliberately avoid the code paths they check (congruence
// closure by single rewrites, common multiples by set intersection of
// right-multiple balls, components by union-find).

namespace gpm {

enum class Budget { Zero, Small, Default };

struct SuiteResult {
    std::string name;
    size_t cases = 0;
    size_t failures = 0;
    std::vector<std::string> notes;

    SuiteResult() = default;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    bool passed() const { return failures == 0; }

    void fail(const std::string& what)
    {
        ++failures;
        if (notes.size() < 25) notes.push_back(what);
    }
};

// ---- built-in example graphs ------------------------------------------------

inline GraphPtr builtin_graph(const std::string& name, const VertexMonoidSpec& spec)
{
    auto verts = [&](int n) {
        std::vector<VertexInfo> out;
        for (int i = 1; i <= n; ++i) out.push_back({"v" + std::to_string(i), spec});
        return out;
    };
    using E = std::vector<std::pair<VertexId, VertexId>>;
    if (name == "p3") return make_graph(verts(3), E{{"v1", "v2"}, {"v2", "v3"}});
    if (name == "p4") return make_graph(verts(4), E{{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}});
    if (name == "c4") return make_graph(verts(4), E{{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v1"}});
    if (name == "k3") return make_graph(verts(3), E{{"v1", "v2"}, {"v2", "v3"}, {"v1", "v3"}});
    if (name == "square_plus_diagonal")
        return make_graph(verts(4), E{{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v1"}, {"v1", "v3"}});
    throw ParseError("unknown builtin graph '" + name + "'");
}

inline const std::vector<std::string>& builtin_graph_names()
{
    static const std::vector<std::string> names{"p3", "p4", "c4", "k3", "square_plus_diagonal"};
    return names;
}

namespace oracle {

// All labeled graphs on vertex ids v1..vn with the given assignment.
inline std::vector<GraphPtr> all_labeled_graphs(int n, const VertexMonoidSpec& spec)
{
    std::vector<std::pair<VertexId, VertexId>> slots;
    std::vector<VertexInfo> verts;
    for (int i = 1; i <= n; ++i) verts.push_back({"v" + std::to_string(i), spec});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(verts[static_cast<size_t>(i)].id, verts[static_cast<size_t>(j)].id);
    std::vector<GraphPtr> out;
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (size_t b = 0; b < slots.size(); ++b)
            if (mask & (1u << b)) edges.push_back(slots[b]);
        out.push_back(make_graph(verts, edges));
    }
    return out;
}

// Connected components of the complement, by plain union-find.
inline std::vector<std::vector<int>> union_find_complement_components(const Graph& g)
{
    std::vector<int> parent(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) parent[static_cast<size_t>(v)] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v)) parent[static_cast<size_t>(find(u))] = find(v);
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < g.size(); ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- congruence-closure normal-form oracle (N assignments) ----------------

using NfWord = std::vector<std::pair<int, int>>; // (vertex, exponent >= 1)

inline void enumerate_nf_words(int n_vertices, int weight_left, NfWord& cur, std::vector<NfWord>& out)
{
    out.push_back(cur);
    for (int v = 0; v < n_vertices; ++v)
        for (int e = 1; e <= weight_left; ++e) {
            cur.emplace_back(v, e);
            enumerate_nf_words(n_vertices, weight_left - e, cur, out);
            cur.pop_back();
        }
}

inline Trace nf_word_trace(const GraphPtr& g, const NfWord& w)
{
    std::vector<Syllable> syl;
    for (const auto& [v, e] : w) syl.push_back({v, VertexElement::nat(e)});
    return Trace::from_syllables(g, std::move(syl));
}

// Union-find closure of single-position rewrites (adjacent swaps and
// same-vertex merges); canonical forms must be constant on classes and
// distinct across classes.
inline void check_nf_congruence(const GraphPtr& g, int max_weight, SuiteResult& r)
{
    std::vector<NfWord> words;
    NfWord cur;
    enumerate_nf_words(g->size(), max_weight, cur, words);
    std::map<NfWord, size_t> index;
    for (size_t i = 0; i < words.size(); ++i) index[words[i]] = i;

    std::vector<size_t> parent(words.size());
    for (size_t i = 0; i < words.size(); ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };

    for (size_t i = 0; i < words.size(); ++i) {
        const auto& w = words[i];
        for (size_t k = 0; k + 1 < w.size(); ++k) {
            if (w[k].first == w[k + 1].first) {
                NfWord merged = w;
                merged[k].second += merged[k + 1].second;
                merged.erase(merged.begin() + static_cast<long>(k) + 1);
                unite(i, index.at(merged));
            } else if (g->adjacent(w[k].first, w[k + 1].first)) {
                NfWord swapped = w;
                std::swap(swapped[k], swapped[k + 1]);
                unite(i, index.at(swapped));
            }
        }
    }

    std::map<size_t, std::string> class_canonical;
    std::map<std::string, size_t> canonical_class;
    for (size_t i = 0; i < words.size(); ++i) {
        ++r.cases;
        std::string canon = nf_word_trace(g, words[i]).format();
        size_t root = find(i);
        auto it = class_canonical.find(root);
        if (it == class_canonical.end()) {
            class_canonical[root] = canon;
            auto jt = canonical_class.find(canon);
            if (jt != canonical_class.end() && jt->second != root)
                r.fail("distinct congruence classes share canonical form '" + canon + "'");
            else
                canonical_class[canon] = root;
        } else if (it->second != canon) {
            r.fail("congruent words disagree: '" + canon + "' vs '" + it->second + "'");
        }
    }
}

// ---- common-multiple oracle ------------------------------------------------

inline long long element_weight(const VertexElement& e)
{
    switch (e.spec.kind) {
    case MonoidKind::Nat: return e.scalar;
    case MonoidKind::Free: return static_cast<long long>(e.vec.size());
    case MonoidKind::FreeAbelian: {
        long long s = 0;
        for (auto v : e.vec) s += v;
        return s;
    }
    default: throw Unsupported("weights are only defined for trivial-unit monoids");
    }
}

inline long long trace_weight(const Trace& t)
{
    long long w = 0;
    for (const auto& sy : t.syllables()) w += element_weight(sy.element);
    return w;
}

// Right-multiple ball: all s * (products of <= depth atoms), deduplicated.
inline std::vector<Trace> multiple_ball(const Trace& s, const std::vector<Syllable>& atoms, int depth)
{
    std::vector<Trace> all{s};
    std::vector<Trace> frontier{s};
    std::set<std::string> seen{s.format()};
    for (int d = 0; d < depth; ++d) {
        std::vector<Trace> next;
        for (const auto& t : frontier)
            for (const auto& a : atoms) {
                Trace u = multiply(t, Trace::single(s.graph(), a.vertex, a.element));
                if (seen.insert(u.format()).second) next.push_back(u);
            }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

// Checks right_lcm against the intersection of right-multiple balls. Any
// common multiple implies one of weight <= weight(s) + weight(t), so empty
// intersection certifies orthogonality.
inline void check_lcm_pair(const Trace& s, const Trace& t, const std::vector<Trace>& ball_s,
                           const std::set<std::string>& ball_t_keys, long long weight_cap, SuiteResult& r)
{
    ++r.cases;
    std::vector<const Trace*> common;
    for (const auto& m : ball_s)
        if (trace_weight(m) <= weight_cap && ball_t_keys.count(m.format())) common.push_back(&m);

    auto res = right_lcm(s, t);
    if (res.orthogonal()) {
        if (!common.empty())
            r.fail("right_lcm says orthogonal but '" + common.front()->format() + "' is a common multiple of '" +
                   s.format() + "' and '" + t.format() + "'");
        return;
    }
    const Trace& m = *res.multiple;
    if (!left_divides(s, m) || !left_divides(t, m)) {
        r.fail("lcm '" + m.format() + "' is not a common multiple of '" + s.format() + "', '" + t.format() + "'");
        return;
    }
    if (common.empty()) {
        r.fail("right_lcm found '" + m.format() + "' but the oracle ball has no common multiple");
        return;
    }
    bool found = false;
    for (const Trace* cm : common) {
        if (*cm == m) found = true;
        if (!left_divides(m, *cm)) {
            r.fail("lcm '" + m.format() + "' does not divide the common multiple '" + cm->format() + "'");
            return;
        }
    }
    if (!found && trace_weight(m) <= weight_cap)
        r.fail("lcm '" + m.format() + "' missing from the oracle ball for '" + s.format() + "', '" + t.format() +
               "'");
}

inline void check_lcm_oracle_on_graph(const GraphPtr& g, int universe_depth, SuiteResult& r,
                                      size_t max_pairs = 1u << 30)
{
    auto atoms = default_atoms(g);
    auto universe = enumerate_traces(g, atoms, universe_depth);
    std::vector<std::vector<Trace>> balls;
    std::vector<std::set<std::string>> keys;
    for (const auto& s : universe) {
        balls.push_back(multiple_ball(s, atoms, universe_depth));
        std::set<std::string> k;
        for (const auto& m : balls.back()) k.insert(m.format());
        keys.push_back(std::move(k));
    }
    size_t done = 0;
    for (size_t i = 0; i < universe.size() && done < max_pairs; ++i)
        for (size_t j = i; j < universe.size() && done < max_pairs; ++j, ++done) {
            long long cap = trace_weight(universe[i]) + trace_weight(universe[j]);
            check_lcm_pair(universe[i], universe[j], balls[i], keys[j], cap, r);
        }
}

} // namespace oracle

// ---- suites -----------------------------------------------------------------

inline SuiteResult suite_nf_oracle(Budget budget)
{
    SuiteResult r{"nf-oracle"};
    if (budget == Budget::Zero) return r;
    int max_vertices = budget == Budget::Small ? 3 : 4;
    int max_weight = budget == Budget::Small ? 3 : 4;
    for (int n = 1; n <= max_vertices; ++n)
        for (const auto& g : oracle::all_labeled_graphs(n, VertexMonoidSpec::nat()))
            oracle::check_nf_congruence(g, max_weight, r);
    return r;
}

inline SuiteResult suite_lcm_oracle(Budget budget)
{
    SuiteResult r{"lcm-oracle"};
    if (budget == Budget::Zero) return r;
    int depth = budget == Budget::Small ? 2 : 3;
    for (const auto& name : builtin_graph_names()) {
        oracle::check_lcm_oracle_on_graph(builtin_graph(name, VertexMonoidSpec::nat()), depth, r);
        oracle::check_lcm_oracle_on_graph(builtin_graph(name, VertexMonoidSpec::free_monoid(2)),
                                          budget == Budget::Small ? 2 : 3, r);
    }
    return r;
}

inline SuiteResult suite_components(Budget budget)
{
    SuiteResult r{"components"};
    if (budget == Budget::Zero) return r;
    int max_vertices = budget == Budget::Small ? 4 : 5;
    for (int n = 1; n <= max_vertices; ++n)
        for (const auto& g : oracle::all_labeled_graphs(n, VertexMonoidSpec::nat())) {
            ++r.cases;
            if (oracle::union_find_complement_components(*g) != g->decomposition().components)
                r.fail("decomposition disagrees with union-find on a graph with " + std::to_string(n) + " vertices");
            // reconstruction: edges = induced component edges + all cross pairs
            std::set<std::pair<int, int>> rebuilt;
            const auto& d = g->decomposition();
            for (const auto& es : d.induced_edges)
                for (auto e : es) rebuilt.insert(e);
            for (int u = 0; u < g->size(); ++u)
                for (int v = u + 1; v < g->size(); ++v)
                    if (d.component_of[static_cast<size_t>(u)] != d.component_of[static_cast<size_t>(v)])
                        rebuilt.emplace(u, v);
            ++r.cases;
            if (rebuilt != g->edges()) r.fail("edge reconstruction from the decomposition failed");
        }
    return r;
}

inline SuiteResult suite_blocking(Budget budget)
{
    SuiteResult r{"blocking"};
    if (budget == Budget::Zero) return r;
    const int rounds = budget == Budget::Small ? 25 : 100;
    std::mt19937 rng(20260810);
    auto N = VertexMonoidSpec::nat();
    int made = 0;
    while (made < rounds) {
        int n = 2 + static_cast<int>(rng() % 9); // up to 10 vertices
        std::vector<VertexInfo> verts;
        for (int i = 0; i < n; ++i) verts.push_back({std::string(1, static_cast<char>('a' + i)), N});
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 3 == 0) edges.emplace_back(verts[static_cast<size_t>(i)].id, verts[static_cast<size_t>(j)].id);
        auto g = make_graph(verts, edges);
        if (!is_coconnected(*g)) continue;
        ++made;

        std::set<int> c;
        int csize = 1 + static_cast<int>(rng() % (n - 1));
        while (static_cast<int>(c.size()) < csize) c.insert(static_cast<int>(rng() % n));
        if (static_cast<int>(c.size()) == n) continue;
        int target = static_cast<int>(rng() % n);
        ++r.cases;
        auto bp = blocking_path(*g, c, target);
        if (!verify_blocking_path(*g, bp)) r.fail("constructed blocking path failed verification");
        if (bp.path.back() != target) r.fail("blocking path does not end at the prescribed target");
        if (static_cast<int>(bp.path.size()) > g->size() * (static_cast<int>(c.size()) + 1))
            r.fail("blocking path exceeds the length bound");
        auto bp_again = blocking_path(*g, c, target);
        ++r.cases;
        if (bp.path != bp_again.path) r.fail("blocking path construction is not deterministic");

        // witness construction on a random unit-free candidate
        auto atoms = default_atoms(g);
        std::vector<Trace> elems;
        int ne = 1 + static_cast<int>(rng() % 3);
        for (int e = 0; e < ne; ++e) {
            Trace t = Trace::identity(g);
            int len = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < len; ++k) {
                const auto& a = atoms[rng() % atoms.size()];
                t = multiply(t, Trace::single(g, a.vertex, a.element));
            }
            if (!t.empty()) elems.push_back(t);
        }
        if (elems.empty()) continue;
        auto cand = FoundationCandidate::make(g, elems);
        ++r.cases;
        try {
            auto w = construct_orthogonal_witness(cand);
            if (w)
                for (const auto& fe : cand.elements)
                    if (!is_orthogonal(*w, fe)) r.fail("witness not orthogonal to '" + fe.format() + "'");
        } catch (const Error& err) {
            r.fail(std::string("witness construction raised: ") + err.what());
        }
    }
    return r;
}

inline SuiteResult suite_rational_independence(Budget budget)
{
    SuiteResult r{"rational-independence"};
    if (budget == Budget::Zero) return r;
    const int rounds = budget == Budget::Small ? 50 : 200;
    std::mt19937 rng(891227);
    for (int round = 0; round < rounds; ++round) {
        size_t len = 1 + rng() % 4;
        std::vector<long long> bases;
        for (size_t i = 0; i < len; ++i) bases.push_back(2 + static_cast<long long>(rng() % 29));
        ++r.cases;

        // brute force: distinct exponent tuples with sum <= 6 give distinct products
        bool dependent = false;
        std::map<BigInt, std::vector<long long>> seen;
        std::vector<long long> tuple(len, 0);
        auto rec = [&](auto&& self, size_t pos, long long left, BigInt product) -> void {
            if (dependent) return;
            if (pos == len) {
                auto [it, fresh] = seen.emplace(product, tuple);
                if (!fresh && it->second != tuple) dependent = true;
                return;
            }
            BigInt p = 1;
            for (long long e = 0; e <= left; ++e) {
                tuple[pos] = e;
                self(self, pos + 1, left - e, product * p);
                p *= bases[pos];
            }
        };
        rec(rec, 0, 6, 1);

        // The bounded oracle is one-sided: a collision certifies dependence,
        // but some dependences only show up beyond the exponent budget. Those
        // must come with an exact product-collision certificate.
        bool independent = rationally_independent(bases);
        auto describe = [&]() {
            std::string what = "[";
            for (auto b : bases) what += std::to_string(b) + ",";
            return what + "]";
        };
        if (dependent && independent) {
            r.fail("oracle found a collision but rationally_independent says true for " + describe());
        } else if (!dependent && !independent) {
            auto cert = rational_dependence_certificate(bases);
            if (!cert) r.fail("dependence claimed without a certificate for " + describe());
        }
    }
    return r;
}

inline SuiteResult suite_core_oracle(Budget budget)
{
    SuiteResult r{"core-oracle"};
    if (budget == Budget::Zero) return r;
    const int small_depth = budget == Budget::Small ? 2 : 3;
    const int big_depth = budget == Budget::Small ? 3 : 4;

    std::vector<GraphPtr> graphs{builtin_graph("p4", VertexMonoidSpec::nat()),
                                 builtin_graph("p4", VertexMonoidSpec::free_monoid(2))};
    {
        auto Z = VertexMonoidSpec::integers();
        auto N = VertexMonoidSpec::nat();
        graphs.push_back(make_graph({{"v1", Z}, {"v2", N}, {"v3", Z}, {"v4", N}},
                                    {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}}));
    }
    for (const auto& g : graphs) {
        auto atoms = default_atoms(g);
        auto small = enumerate_traces(g, atoms, small_depth);
        auto big = enumerate_traces(g, atoms, big_depth);
        for (const auto& a : small) {
            ++r.cases;
            bool def_core = true;
            for (const auto& s : big)
                if (is_orthogonal(a, s)) {
                    def_core = false;
                    break;
                }
            if (def_core != is_core(a))
                r.fail("definition-level core disagreement at '" + a.format() + "'");
            if (is_core(a) != is_invertible(a))
                r.fail("core/invertible disagreement on a coconnected graph at '" + a.format() + "'");
        }
    }
    return r;
}

inline SuiteResult suite_scale(const GraphPtr& g, Budget budget)
{
    SuiteResult r{"scale"};
    if (budget == Budget::Zero) return r;
    const long long n_cap = budget == Budget::Small ? 6 : 12;
    GeneralisedScale gs;
    try {
        gs = generalised_scale(g);
    } catch (const Unsupported& e) {
        ++r.cases;
        r.fail(std::string("unsupported assignment: ") + e.what());
        return r;
    }
    if (!gs.exists) {
        ++r.cases;
        r.notes.push_back("no generalised scale (" + gs.obstruction.label() + "); nothing to verify");
        return r;
    }
    for (long long n = 1; n <= n_cap; ++n) {
        ScaleAxiomReport rep;
        try {
            rep = verify_scale_axioms(gs, n);
        } catch (const NotInImage&) {
            continue;
        }
        ++r.cases;
        if (!rep.ok()) r.fail("scale axiom failed at n = " + std::to_string(n));
    }
    ++r.cases;
    if (!verify_scale_uniqueness(gs, 6).unique) r.fail("generator-value uniqueness probe failed");
    return r;
}

inline std::vector<std::string> suite_names()
{
    return {"nf-oracle", "lcm-oracle", "core-oracle", "components", "blocking", "rational-independence",
            "scale"};
}

inline std::vector<SuiteResult> run_suites(const std::string& which, Budget budget,
                                           const GraphPtr& graph = nullptr)
{
    std::vector<SuiteResult> out;
    auto want = [&](const std::string& name) { return which == "all" || which == name; };
    if (want("nf-oracle")) out.push_back(suite_nf_oracle(budget));
    if (want("lcm-oracle")) out.push_back(suite_lcm_oracle(budget));
    if (want("core-oracle")) out.push_back(suite_core_oracle(budget));
    if (want("components")) out.push_back(suite_components(budget));
    if (want("blocking")) out.push_back(suite_blocking(budget));
    if (want("rational-independence")) out.push_back(suite_rational_independence(budget));
    if (want("scale")) {
        if (graph) {
            out.push_back(suite_scale(graph, budget));
        } else {
            for (const auto& name : builtin_graph_names()) {
                auto s = suite_scale(builtin_graph(name, VertexMonoidSpec::nat()), budget);
                s.name = "scale[" + name + "]";
                out.push_back(std::move(s));
            }
        }
    }
    if (out.empty()) throw ParseError("unknown suite '" + which + "'");
    return out;
}

} // namespace gpm

#endif // GPM_VERIFY_HPP
