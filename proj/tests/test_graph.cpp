#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gpm/graph.hpp"
#include "gpm/verify.hpp"

using namespace gpm;

namespace {

GraphPtr raam(std::vector<VertexId> ids, std::vector<std::pair<VertexId, VertexId>> edges)
{
    std::vector<VertexInfo> verts;
    for (auto& id : ids) verts.push_back({id, VertexMonoidSpec::nat()});
    return make_graph(std::move(verts), std::move(edges));
}

std::set<std::pair<VertexId, VertexId>> edge_ids(const Graph& g)
{
    std::set<std::pair<VertexId, VertexId>> out;
    for (auto [a, b] : g.edges()) out.emplace(g.vertex(a).id, g.vertex(b).id);
    return out;
}

} // namespace

TEST_CASE("graph validation")
{
    CHECK_THROWS_AS(raam({"a", "a"}, {}), ParseError);
    CHECK_THROWS_AS(raam({"a", "b"}, {{"a", "a"}}), ParseError);
    CHECK_THROWS_AS(raam({"a", "b"}, {{"a", "b"}, {"b", "a"}}), ParseError);
    CHECK_THROWS_AS(raam({"a", "b"}, {{"a", "c"}}), UnknownVertex);
}

TEST_CASE("complement")
{
    auto p4 = raam({"v1", "v2", "v3", "v4"}, {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}});
    auto comp = complement(*p4);
    CHECK(edge_ids(comp) ==
          std::set<std::pair<VertexId, VertexId>>{{"v1", "v3"}, {"v1", "v4"}, {"v2", "v4"}});

    auto k3 = raam({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}, {"v1", "v3"}});
    CHECK(complement(*k3).edges().empty());

    CHECK(complement(complement(*p4)).same_as(*p4));
}

TEST_CASE("coconnected decomposition")
{
    auto c4 = raam({"v1", "v2", "v3", "v4"}, {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v1"}});
    const auto& d = coconnected_components(*c4);
    REQUIRE(d.components.size() == 2);
    CHECK(d.components[0] == std::vector<int>{0, 2});
    CHECK(d.components[1] == std::vector<int>{1, 3});
    CHECK(d.universal_vertices.empty());
    CHECK(d.i2_indices == std::vector<int>{0, 1});

    auto p3 = raam({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}});
    const auto& d3 = coconnected_components(*p3);
    REQUIRE(d3.components.size() == 2);
    CHECK(d3.components[0] == std::vector<int>{0, 2});
    CHECK(d3.components[1] == std::vector<int>{1});
    CHECK(d3.universal_vertices == std::vector<int>{1});

    auto pair = raam({"v1", "v2"}, {});
    CHECK(coconnected_components(*pair).components.size() == 1);
}

TEST_CASE("coconnectedness")
{
    CHECK(is_coconnected(*raam({"v1", "v2", "v3", "v4"}, {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}})));
    CHECK_FALSE(is_coconnected(*raam({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}, {"v1", "v3"}})));
    CHECK(is_coconnected(*raam({"v1"}, {})));
}

TEST_CASE("vertex classification")
{
    auto p3 = raam({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}});
    auto c = classify_vertices(*p3);
    CHECK(c.universal == std::vector<int>{1});
    CHECK(c.isolated.empty());

    auto edgeless = raam({"v1", "v2", "v3"}, {});
    auto c2 = classify_vertices(*edgeless);
    CHECK(c2.universal.empty());
    CHECK(c2.isolated == std::vector<int>{0, 1, 2});

    auto k1 = raam({"v1"}, {});
    auto c3 = classify_vertices(*k1);
    CHECK(c3.universal == std::vector<int>{0});
    CHECK(c3.isolated == std::vector<int>{0});
}

TEST_CASE("blocking paths on P4")
{
    auto p4 = raam({"v1", "v2", "v3", "v4"}, {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}});

    auto bp = blocking_path(*p4, {1}, 3);
    CHECK(bp.path == std::vector<int>{3});
    CHECK(verify_blocking_path(*p4, bp));

    auto bp2 = blocking_path(*p4, {1}, 0);
    CHECK(bp2.path == std::vector<int>{3, 0});
    CHECK(verify_blocking_path(*p4, bp2));

    CHECK_THROWS_AS(blocking_path(*p4, {0, 1, 2, 3}, 0), PreconditionViolation);
    CHECK_THROWS_AS(blocking_path(*p4, {}, 0), PreconditionViolation);
    auto k3 = raam({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}, {"v1", "v3"}});
    CHECK_THROWS_AS(blocking_path(*k3, {0}, 1), PreconditionViolation);
}

TEST_CASE("blocking path verification")
{
    auto p4 = raam({"v1", "v2", "v3", "v4"}, {{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}});
    CHECK(verify_blocking_path(*p4, {{3}, {1}}));
    CHECK_FALSE(verify_blocking_path(*p4, {{2}, {1}})); // v3 is adjacent to v2
    CHECK_FALSE(verify_blocking_path(*p4, {{0}, {}}));  // empty C rejected
    CHECK_FALSE(verify_blocking_path(*p4, {{}, {1}}));
    CHECK_FALSE(verify_blocking_path(*p4, {{1, 2}, {0}})); // consecutive adjacent vertices
}

TEST_CASE("components agree with union-find and reconstruct the graph")
{
    auto r = suite_components(Budget::Small);
    INFO((r.notes.empty() ? std::string() : r.notes.front()));
    CHECK(r.failures == 0);
}

TEST_CASE("random blocking paths verify and are deterministic")
{
    auto r = suite_blocking(Budget::Small);
    INFO((r.notes.empty() ? std::string() : r.notes.front()));
    CHECK(r.failures == 0);
}
