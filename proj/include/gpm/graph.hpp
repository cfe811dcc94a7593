#ifndef GPM_GRAPH_HPP
#define GPM_GRAPH_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpm/errors.hpp"
#include "gpm/monoid.hpp"

// Finite simple graphs with a vertex-monoid assignment, their coconnected
// decomposition, and constructive blocking paths.

namespace gpm {

using VertexId = std::string;

struct VertexInfo {
    VertexId id;
    VertexMonoidSpec monoid;
};

// Connected components of the complement graph. Components are sorted by
// smallest member index; universal vertices are exactly the singleton
// components whose vertex is adjacent to everything else.
struct CoconnectedDecomposition {
    std::vector<std::vector<int>> components;                    // the V_i, each sorted
    std::vector<std::vector<std::pair<int, int>>> induced_edges; // the E_i
    std::vector<int> universal_vertices;                         // V_u
    std::vector<int> i2_indices;                                 // { i : |V_i| >= 2 }
    std::vector<int> component_of;                               // vertex index -> component index
};

class Graph {
public:
    static Graph make(std::vector<VertexInfo> vertices, std::vector<std::pair<VertexId, VertexId>> edge_list)
    {
        Graph g;
        std::sort(vertices.begin(), vertices.end(),
                  [](const VertexInfo& a, const VertexInfo& b) { return a.id < b.id; });
        for (size_t i = 0; i + 1 < vertices.size(); ++i)
            if (vertices[i].id == vertices[i + 1].id)
                throw ParseError("duplicate vertex id '" + vertices[i].id + "'");
        if (vertices.empty()) throw ParseError("graph needs at least one vertex");
        g.vertices_ = std::move(vertices);
        const int n = static_cast<int>(g.vertices_.size());
        g.adj_.assign(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
        for (const auto& [a, b] : edge_list) {
            int u = g.index_of(a);
            int v = g.index_of(b);
            if (u == v) throw ParseError("loop edge at vertex '" + a + "'");
            if (g.adj_[u][v]) throw ParseError("duplicate edge (" + a + "," + b + ")");
            g.adj_[u][v] = g.adj_[v][u] = true;
            g.edges_.emplace(std::min(u, v), std::max(u, v));
        }
        g.decompose();
        return g;
    }

    int size() const { return static_cast<int>(vertices_.size()); }
    const VertexInfo& vertex(int i) const { return vertices_.at(static_cast<size_t>(i)); }
    const std::vector<VertexInfo>& vertices() const { return vertices_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    bool adjacent(int u, int v) const { return adj_[static_cast<size_t>(u)][static_cast<size_t>(v)]; }
    const CoconnectedDecomposition& decomposition() const { return decomp_; }

    int index_of(const VertexId& id) const
    {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                                   [](const VertexInfo& v, const VertexId& x) { return v.id < x; });
        if (it == vertices_.end() || it->id != id) throw UnknownVertex("unknown vertex '" + id + "'");
        return static_cast<int>(it - vertices_.begin());
    }

    bool has_vertex(const VertexId& id) const
    {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                                   [](const VertexInfo& v, const VertexId& x) { return v.id < x; });
        return it != vertices_.end() && it->id == id;
    }

    bool same_as(const Graph& o) const
    {
        if (this == &o) return true;
        if (vertices_.size() != o.vertices_.size() || edges_ != o.edges_) return false;
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].id != o.vertices_[i].id || !(vertices_[i].monoid == o.vertices_[i].monoid))
                return false;
        return true;
    }

    bool all_nat() const
    {
        return std::all_of(vertices_.begin(), vertices_.end(),
                           [](const VertexInfo& v) { return v.monoid.kind == MonoidKind::Nat; });
    }

private:
    void decompose()
    {
        const int n = size();
        auto& d = decomp_;
        d.component_of.assign(static_cast<size_t>(n), -1);
        int comp = 0;
        for (int start = 0; start < n; ++start) {
            if (d.component_of[static_cast<size_t>(start)] >= 0) continue;
            std::vector<int> stack{start};
            d.component_of[static_cast<size_t>(start)] = comp;
            std::vector<int> members;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                members.push_back(v);
                for (int w = 0; w < n; ++w) {
                    if (w == v || adjacent(v, w)) continue; // complement edges only
                    if (d.component_of[static_cast<size_t>(w)] < 0) {
                        d.component_of[static_cast<size_t>(w)] = comp;
                        stack.push_back(w);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            d.components.push_back(std::move(members));
            ++comp;
        }
        for (size_t i = 0; i < d.components.size(); ++i) {
            const auto& vs = d.components[i];
            std::vector<std::pair<int, int>> es;
            for (size_t a = 0; a < vs.size(); ++a)
                for (size_t b = a + 1; b < vs.size(); ++b)
                    if (adjacent(vs[a], vs[b])) es.emplace_back(vs[a], vs[b]);
            d.induced_edges.push_back(std::move(es));
            if (vs.size() >= 2) d.i2_indices.push_back(static_cast<int>(i));
            if (vs.size() == 1) d.universal_vertices.push_back(vs[0]);
        }
    }

    std::vector<VertexInfo> vertices_;
    std::vector<std::vector<bool>> adj_;
    std::set<std::pair<int, int>> edges_;
    CoconnectedDecomposition decomp_;
};

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr make_graph(std::vector<VertexInfo> vertices, std::vector<std::pair<VertexId, VertexId>> edges)
{
    return std::make_shared<const Graph>(Graph::make(std::move(vertices), std::move(edges)));
}

inline void require_same_graph(const GraphPtr& a, const GraphPtr& b)
{
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b)) throw GraphMismatch("operands live over different graphs");
}

// Opposite graph: same vertices and monoid assignment, complemented edges.
inline Graph complement(const Graph& g)
{
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (!g.adjacent(u, v)) edges.emplace_back(g.vertex(u).id, g.vertex(v).id);
    return Graph::make(g.vertices(), std::move(edges));
}

inline const CoconnectedDecomposition& coconnected_components(const Graph& g) { return g.decomposition(); }

inline bool is_coconnected(const Graph& g) { return g.decomposition().components.size() == 1; }

struct VertexClassification {
    std::vector<int> universal;
    std::vector<int> isolated;
};

inline VertexClassification classify_vertices(const Graph& g)
{
    VertexClassification c;
    for (int v = 0; v < g.size(); ++v) {
        bool universal = true;
        bool isolated = true;
        for (int w = 0; w < g.size(); ++w) {
            if (w == v) continue;
            if (g.adjacent(v, w))
                isolated = false;
            else
                universal = false;
        }
        if (universal) c.universal.push_back(v);
        if (isolated) c.isolated.push_back(v);
    }
    return c;
}

struct BlockingPath {
    std::vector<int> path;        // w(1), ..., w(n)
    std::vector<int> blocked_set; // C, sorted
};

namespace detail {

// Shortest complement path from `from` to the nearest vertex satisfying
// `goal`, smallest-id tie-breaking. Returns the path excluding `from`
// (empty if `from` itself satisfies the goal).
template <typename Goal>
std::optional<std::vector<int>> complement_bfs(const Graph& g, int from, Goal goal)
{
    if (goal(from)) return std::vector<int>{};
    const int n = g.size();
    std::vector<int> parent(static_cast<size_t>(n), -2);
    parent[static_cast<size_t>(from)] = -1;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w = 0; w < n; ++w) { // increasing id order
            if (w == v || g.adjacent(v, w) || parent[static_cast<size_t>(w)] != -2) continue;
            parent[static_cast<size_t>(w)] = v;
            if (goal(w)) {
                std::vector<int> path;
                for (int x = w; x != from; x = parent[static_cast<size_t>(x)]) path.push_back(x);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

// Coverage walk of the constructive proof: start at the least non-C vertex
// that blocks something, then visit a blocker of every remaining C-element.
inline std::vector<int> blocking_walk(const Graph& g, const std::set<int>& c)
{
    auto blocks = [&](int x) {
        std::vector<int> out;
        for (int u : c)
            if (x != u && !g.adjacent(x, u)) out.push_back(u);
        return out;
    };
    int w1 = -1;
    for (int v = 0; v < g.size(); ++v) {
        if (c.count(v)) continue;
        if (!blocks(v).empty()) {
            w1 = v;
            break;
        }
    }
    if (w1 < 0)
        throw InternalError("coconnected graph must provide a starting blocker");
    std::vector<int> path{w1};
    std::set<int> remaining(c.begin(), c.end());
    for (int u : blocks(w1)) remaining.erase(u);
    // A vertex of C also counts as blocked when the path passes through it.
    remaining.erase(w1);
    while (!remaining.empty()) {
        auto leg = complement_bfs(g, path.back(), [&](int x) {
            if (x != path.back() && remaining.count(x)) return true;
            for (int u : remaining)
                if (x != u && !g.adjacent(x, u)) return true;
            return false;
        });
        if (!leg || leg->empty()) throw InternalError("complement of a coconnected graph must stay connected");
        for (int x : *leg) path.push_back(x);
        int x = path.back();
        remaining.erase(x);
        for (int u : blocks(x)) remaining.erase(u);
    }
    return path;
}

} // namespace detail

// Deterministic construction: visit a blocker of every element of C first,
// then walk in the complement to the prescribed target.
inline BlockingPath blocking_path(const Graph& g, const std::set<int>& c, int target)
{
    if (!is_coconnected(g) || g.size() < 2)
        throw PreconditionViolation("blocking paths need a coconnected graph with >= 2 vertices");
    if (c.empty()) throw PreconditionViolation("blocked set C must be nonempty");
    if (static_cast<int>(c.size()) >= g.size()) throw PreconditionViolation("blocked set C must be a proper subset");
    for (int u : c)
        if (u < 0 || u >= g.size()) throw PreconditionViolation("blocked set contains an unknown vertex");
    if (target < 0 || target >= g.size()) throw PreconditionViolation("unknown target vertex");

    auto path = detail::blocking_walk(g, c);
    auto leg = detail::complement_bfs(g, path.back(), [&](int x) { return x == target; });
    if (!leg) throw InternalError("complement of a coconnected graph must stay connected");
    for (int x : *leg) path.push_back(x);
    return BlockingPath{std::move(path), std::vector<int>(c.begin(), c.end())};
}

// Checks both clauses of the blocking-path definition. An empty C or an
// empty path is rejected rather than treated as vacuously valid.
inline bool verify_blocking_path(const Graph& g, const BlockingPath& bp)
{
    if (bp.path.empty() || bp.blocked_set.empty()) return false;
    for (int v : bp.path)
        if (v < 0 || v >= g.size()) return false;
    for (int u : bp.blocked_set)
        if (u < 0 || u >= g.size()) return false;
    // (a) w(1) outside C, consecutive vertices distinct and non-adjacent
    if (std::count(bp.blocked_set.begin(), bp.blocked_set.end(), bp.path.front())) return false;
    for (size_t k = 0; k + 1 < bp.path.size(); ++k) {
        if (bp.path[k] == bp.path[k + 1]) return false;
        if (g.adjacent(bp.path[k], bp.path[k + 1])) return false;
    }
    // (b) every u in C fails adjacency against some path vertex
    for (int u : bp.blocked_set) {
        bool blocked = false;
        for (int w : bp.path)
            if (w == u || !g.adjacent(w, u)) {
                blocked = true;
                break;
            }
        if (!blocked) return false;
    }
    return true;
}

} // namespace gpm

#endif // GPM_GRAPH_HPP
