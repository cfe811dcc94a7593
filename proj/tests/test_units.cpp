#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "gpm/structure.hpp"
#include "gpm/trace.hpp"
#include "gpm/verify.hpp"

// Graph products with nontrivial unit groups: invertible syllables divide
// everything, cancel across merges, and twist the LCM recursion. These tests
// drive those paths against equality-based oracles.

using namespace gpm;

namespace {

std::vector<GraphPtr> mixed_graphs()
{
    auto Z = VertexMonoidSpec::integers();
    auto N = VertexMonoidSpec::nat();
    auto C3 = VertexMonoidSpec::finite_cyclic(3);
    return {
        make_graph({{"u", Z}, {"w", N}}, {}),                                    // Z * N
        make_graph({{"u", Z}, {"v", N}, {"w", Z}}, {{"u", "v"}}),                // path with a loose Z
        make_graph({{"a", C3}, {"b", N}, {"c", Z}}, {{"a", "b"}, {"b", "c"}}),   // P3, cyclic end
        make_graph({{"a", Z}, {"b", Z}, {"c", N}, {"d", N}},
                   {{"a", "b"}, {"b", "c"}, {"c", "d"}}),                        // mixed P4
    };
}

Trace random_trace(const GraphPtr& g, const std::vector<Syllable>& atoms, std::mt19937& rng, int max_len)
{
    Trace t = Trace::identity(g);
    int len = static_cast<int>(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i) {
        const auto& a = atoms[rng() % atoms.size()];
        t = multiply(t, Trace::single(g, a.vertex, a.element));
    }
    return t;
}

} // namespace

TEST_CASE("multiplication is associative with cancelling syllables")
{
    std::mt19937 rng(2024);
    for (const auto& g : mixed_graphs()) {
        auto atoms = default_atoms(g);
        for (int round = 0; round < 300; ++round) {
            auto a = random_trace(g, atoms, rng, 4);
            auto b = random_trace(g, atoms, rng, 4);
            auto c = random_trace(g, atoms, rng, 4);
            CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        }
    }
}

TEST_CASE("left quotient inverts multiplication over mixed graphs")
{
    std::mt19937 rng(77);
    for (const auto& g : mixed_graphs()) {
        auto atoms = default_atoms(g);
        for (int round = 0; round < 300; ++round) {
            auto s = random_trace(g, atoms, rng, 4);
            auto r = random_trace(g, atoms, rng, 4);
            auto m = multiply(s, r);
            REQUIRE(left_divides(s, m));
            CHECK(left_quotient(s, m) == r);
        }
    }
}

TEST_CASE("invertible traces divide everything")
{
    std::mt19937 rng(31);
    for (const auto& g : mixed_graphs()) {
        auto atoms = default_atoms(g);
        std::vector<Syllable> unit_atoms;
        for (const auto& a : atoms)
            if (v_is_invertible(a.element)) unit_atoms.push_back(a);
        if (unit_atoms.empty()) continue;
        for (int round = 0; round < 200; ++round) {
            auto u = random_trace(g, unit_atoms, rng, 3);
            auto t = random_trace(g, atoms, rng, 4);
            REQUIRE(is_invertible(u));
            CHECK(left_divides(u, t));
            CHECK(multiply(u, left_quotient(u, t)) == t);
            // units are never orthogonal to anything
            CHECK_FALSE(is_orthogonal(u, t));
        }
    }
}

TEST_CASE("lcm with units against the collision oracle")
{
    // Equality-based oracle: any element of ball(s) ∩ ball(t) is a common
    // multiple, so an ORTHOGONAL verdict with a nonempty intersection is a
    // soundness bug, and an EXISTS value must divide the whole intersection.
    std::mt19937 rng(1009);
    for (const auto& g : mixed_graphs()) {
        auto atoms = default_atoms(g);
        auto universe = enumerate_traces(g, atoms, 2);
        std::vector<Trace> pool;
        for (const auto& t : universe) pool.push_back(t);
        if (pool.size() > 40) {
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(40);
        }
        auto ball = [&](const Trace& s) {
            std::set<std::string> keys;
            std::vector<Trace> frontier{s}, all{s};
            keys.insert(s.format());
            for (int d = 0; d < 3; ++d) {
                std::vector<Trace> next;
                for (const auto& t : frontier)
                    for (const auto& a : atoms) {
                        Trace u = multiply(t, Trace::single(g, a.vertex, a.element));
                        if (keys.insert(u.format()).second) next.push_back(u);
                    }
                all.insert(all.end(), next.begin(), next.end());
                frontier = std::move(next);
            }
            return std::pair{all, keys};
        };
        std::vector<std::pair<std::vector<Trace>, std::set<std::string>>> balls;
        for (const auto& s : pool) balls.push_back(ball(s));
        for (size_t i = 0; i < pool.size(); ++i)
            for (size_t j = i; j < pool.size(); ++j) {
                auto res = right_lcm(pool[i], pool[j]);
                if (res.orthogonal()) {
                    for (const auto& m : balls[i].first) {
                        if (balls[j].second.count(m.format())) {
                            INFO("s=" << pool[i].format() << " t=" << pool[j].format()
                                      << " common multiple " << m.format());
                            CHECK_FALSE(balls[j].second.count(m.format()));
                            break;
                        }
                    }
                } else {
                    const Trace& m = *res.multiple;
                    CHECK(left_divides(pool[i], m));
                    CHECK(left_divides(pool[j], m));
                    for (const auto& cm : balls[i].first)
                        if (balls[j].second.count(cm.format())) CHECK(left_divides(m, cm));
                }
            }
    }
}

TEST_CASE("lcm is symmetric")
{
    std::mt19937 rng(555);
    // unit-free assignments: the least common multiple is unique, so the two
    // orders must agree on the nose
    for (auto spec : {VertexMonoidSpec::nat(), VertexMonoidSpec::free_monoid(2)}) {
        auto g = builtin_graph("p4", spec);
        auto atoms = default_atoms(g);
        for (int round = 0; round < 250; ++round) {
            auto s = random_trace(g, atoms, rng, 4);
            auto t = random_trace(g, atoms, rng, 4);
            auto st = right_lcm(s, t);
            auto ts = right_lcm(t, s);
            CHECK(st.orthogonal() == ts.orthogonal());
            if (!st.orthogonal()) CHECK(*st.multiple == *ts.multiple);
        }
    }
    // with units the two orders agree up to mutual divisibility
    for (const auto& g : mixed_graphs()) {
        auto atoms = default_atoms(g);
        for (int round = 0; round < 150; ++round) {
            auto s = random_trace(g, atoms, rng, 3);
            auto t = random_trace(g, atoms, rng, 3);
            auto st = right_lcm(s, t);
            auto ts = right_lcm(t, s);
            CHECK(st.orthogonal() == ts.orthogonal());
            if (!st.orthogonal()) {
                CHECK(left_divides(*st.multiple, *ts.multiple));
                CHECK(left_divides(*ts.multiple, *st.multiple));
            }
        }
    }
}

TEST_CASE("confluence with cancelling merges")
{
    std::mt19937 rng(909);
    for (const auto& g : mixed_graphs()) {
        for (int round = 0; round < 120; ++round) {
            std::vector<Syllable> word;
            int len = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < len; ++i) {
                int v = static_cast<int>(rng() % g->size());
                auto pool = v_enumerate(g->vertex(v).monoid, 2);
                const auto& el = pool[rng() % pool.size()];
                if (!el.is_identity()) word.push_back({v, el});
            }
            Trace reference = Trace::from_syllables(g, word);
            for (int shuffle = 0; shuffle < 6; ++shuffle) {
                auto perm = word;
                for (int step = 0; step < 10; ++step) {
                    if (perm.size() < 2) break;
                    size_t k = rng() % (perm.size() - 1);
                    if (perm[k].vertex != perm[k + 1].vertex &&
                        g->adjacent(perm[k].vertex, perm[k + 1].vertex))
                        std::swap(perm[k], perm[k + 1]);
                }
                CHECK(Trace::from_syllables(g, perm) == reference);
            }
        }
    }
}

TEST_CASE("unit reduction preserves the right ideal")
{
    std::mt19937 rng(404);
    for (const auto& g : mixed_graphs()) {
        auto atoms = default_atoms(g);
        for (int round = 0; round < 200; ++round) {
            auto t = random_trace(g, atoms, rng, 4);
            auto reduced = unit_reduce(t);
            // same principal right ideal: each divides the other by a unit
            CHECK(left_divides(reduced, t));
            CHECK(left_divides(t, reduced));
            CHECK(is_invertible(left_quotient(reduced, t)));
        }
    }
}
