#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gpm/scale.hpp"
#include "gpm/verify.hpp"

using namespace gpm;

namespace {

Trace lit(const GraphPtr& g, const std::string& s) { return parse_trace_literal(g, s); }

} // namespace

TEST_CASE("rational independence")
{
    CHECK(rationally_independent({2, 3}));
    CHECK_FALSE(rationally_independent({2, 4}));
    CHECK_FALSE(rationally_independent({2, 2}));
    CHECK(rationally_independent({6, 10, 15}));
    CHECK_FALSE(rationally_independent({6, 10, 15, 30}));
    CHECK(rationally_independent({2}));
    CHECK(rationally_independent({}));
    CHECK_THROWS_AS(rationally_independent({1, 2}), PreconditionViolation);

    // certificates carry verified product collisions
    auto cert = rational_dependence_certificate({25, 8, 20});
    REQUIRE(cert);
    CHECK(cert->left.product() == cert->right.product());
    CHECK(cert->left.exponents != cert->right.exponents);
    CHECK(cert->left.bases == std::vector<long long>{25, 8, 20});
    CHECK_THROWS_AS(SupernaturalExponents::make({2, 3}, {1}), PreconditionViolation);
    CHECK(SupernaturalExponents::make({2, 3}, {3, 2}).product() == 72);
    CHECK_FALSE(rational_dependence_certificate({2, 3, 5}));
}

TEST_CASE("free monoid scale values")
{
    CHECK(free_monoid_scale(2, VertexElement::free_word(2, "xy")) == 4);
    CHECK(free_monoid_scale(3, VertexElement::identity(VertexMonoidSpec::free_monoid(3))) == 1);
    CHECK(free_monoid_scale(2, VertexElement::free_word(2, "xxx")) == 8);
    CHECK_THROWS_AS(free_monoid_scale(2, VertexElement::free_word(3, "xy")), SpecMismatch);
}

TEST_CASE("scale existence and obstructions")
{
    auto p3 = builtin_graph("p3", VertexMonoidSpec::nat());
    auto g3 = generalised_scale(p3);
    CHECK(g3.exists);
    CHECK(g3.component_sizes == std::vector<long long>{2});

    auto gc4 = generalised_scale(builtin_graph("c4", VertexMonoidSpec::nat()));
    CHECK_FALSE(gc4.exists);
    CHECK(gc4.obstruction.kind == ScaleObstruction::Kind::RationallyDependent);
    CHECK(gc4.component_sizes == std::vector<long long>{2, 2});

    auto gk3 = generalised_scale(builtin_graph("k3", VertexMonoidSpec::nat()));
    CHECK_FALSE(gk3.exists);
    CHECK(gk3.obstruction.kind == ScaleObstruction::Kind::AllUniversal);

    auto gp4 = generalised_scale(builtin_graph("p4", VertexMonoidSpec::nat()));
    CHECK_FALSE(gp4.exists);
    CHECK(gp4.obstruction.kind == ScaleObstruction::Kind::EdgedComponent);

    // free-sum case: star with an F2 center and three N leaves
    auto N = VertexMonoidSpec::nat();
    auto F2 = VertexMonoidSpec::free_monoid(2);
    auto star = make_graph({{"c", F2}, {"l1", N}, {"l2", N}, {"l3", N}},
                           {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}});
    auto gs = generalised_scale(star);
    CHECK(gs.exists);
    CHECK(gs.component_sizes == std::vector<long long>{2, 3});

    // unsupported assignments are refused
    CHECK_THROWS_AS(generalised_scale(builtin_graph("p4", F2)), Unsupported);
    auto Z = VertexMonoidSpec::integers();
    CHECK_THROWS_AS(generalised_scale(make_graph({{"a", Z}, {"b", N}}, {})), Unsupported);
}

TEST_CASE("scale evaluation")
{
    auto p3 = builtin_graph("p3", VertexMonoidSpec::nat());
    auto gs = generalised_scale(p3);
    CHECK(evaluate_scale(gs, lit(p3, "v2:5")) == 1);
    CHECK(evaluate_scale(gs, lit(p3, "v1 v3 v1")) == 8);
    CHECK(evaluate_scale(gs, identity(p3)) == 1);

    auto gc4 = generalised_scale(builtin_graph("c4", VertexMonoidSpec::nat()));
    CHECK_THROWS_AS(evaluate_scale(gc4, identity(gc4.graph)), ScaleAbsent);

    // multiplicative, with kernel exactly the core
    std::mt19937 rng(5150);
    auto atoms = default_atoms(p3);
    auto rand_trace = [&](int len) {
        Trace t = Trace::identity(p3);
        for (int i = 0; i < len; ++i) {
            const auto& a = atoms[rng() % atoms.size()];
            t = multiply(t, Trace::single(p3, a.vertex, a.element));
        }
        return t;
    };
    for (int round = 0; round < 200; ++round) {
        auto s = rand_trace(static_cast<int>(rng() % 5));
        auto t = rand_trace(static_cast<int>(rng() % 5));
        CHECK(evaluate_scale(gs, multiply(s, t)) == evaluate_scale(gs, s) * evaluate_scale(gs, t));
        CHECK((evaluate_scale(gs, s) == 1) == is_core(s));
    }
}

TEST_CASE("scale axioms")
{
    auto p3 = builtin_graph("p3", VertexMonoidSpec::nat());
    auto gs = generalised_scale(p3);

    auto rep2 = verify_scale_axioms(gs, 2);
    CHECK(rep2.class_count == 2);
    CHECK(rep2.ok());
    // the transversal at n = 2 is exactly {a1, a3}
    auto tv = scale_value_transversal(p3, 2);
    REQUIRE(tv.size() == 2);
    CHECK(tv[0] == lit(p3, "v1"));
    CHECK(tv[1] == lit(p3, "v3"));

    auto rep4 = verify_scale_axioms(gs, 4);
    CHECK(rep4.class_count == 4);
    CHECK(rep4.ok());

    CHECK_THROWS_AS(verify_scale_axioms(gs, 3), NotInImage);
    CHECK_THROWS_AS(verify_scale_axioms(gs, BigInt(1) << 40, 100), BudgetExceeded);

    // [2,3] components: n = 6 has the 6 mixed classes
    auto N = VertexMonoidSpec::nat();
    auto g23 = make_graph({{"a1", N}, {"a2", N}, {"b1", N}, {"b2", N}, {"b3", N}},
                          {{"a1", "b1"}, {"a1", "b2"}, {"a1", "b3"},
                           {"a2", "b1"}, {"a2", "b2"}, {"a2", "b3"}});
    auto gs23 = generalised_scale(g23);
    REQUIRE(gs23.exists);
    auto rep6 = verify_scale_axioms(gs23, 6);
    CHECK(rep6.class_count == 6);
    CHECK(rep6.ok());
}

TEST_CASE("failed scale axiom on C4")
{
    // |N^{-1}(2)/~| = 4 >= 2K at K = 2: the size-[2,2] homomorphism is no scale
    auto c4 = builtin_graph("c4", VertexMonoidSpec::nat());
    auto classes = scale_value_transversal(c4, 2);
    REQUIRE(classes.size() == 4);
    for (size_t i = 0; i < classes.size(); ++i)
        for (size_t j = i + 1; j < classes.size(); ++j)
            CHECK_FALSE(core_related(classes[i], classes[j]));
}

TEST_CASE("scale uniqueness probe")
{
    auto p3 = builtin_graph("p3", VertexMonoidSpec::nat());
    auto uq = verify_scale_uniqueness(generalised_scale(p3), 6);
    CHECK(uq.unique);
    REQUIRE(uq.components.size() == 1);
    REQUIRE(uq.components[0].survivors.size() == 1);
    CHECK(uq.components[0].survivors[0] == std::vector<long long>{2, 2});

    auto N = VertexMonoidSpec::nat();
    auto g23 = make_graph({{"a1", N}, {"a2", N}, {"b1", N}, {"b2", N}, {"b3", N}},
                          {{"a1", "b1"}, {"a1", "b2"}, {"a1", "b3"},
                           {"a2", "b1"}, {"a2", "b2"}, {"a2", "b3"}});
    auto uq23 = verify_scale_uniqueness(generalised_scale(g23), 6);
    CHECK(uq23.unique);
    REQUIRE(uq23.components.size() == 2);
    CHECK(uq23.components[0].survivors[0] == std::vector<long long>{2, 2});
    CHECK(uq23.components[1].survivors[0] == std::vector<long long>{3, 3, 3});
}

TEST_CASE("axioms hold on every small Artin graph with a scale")
{
    for (int n = 2; n <= 4; ++n)
        for (const auto& g : oracle::all_labeled_graphs(n, VertexMonoidSpec::nat())) {
            auto gs = generalised_scale(g);
            if (!gs.exists) continue;
            for (long long value = 1; value <= 8; ++value) {
                ScaleAxiomReport rep;
                try {
                    rep = verify_scale_axioms(gs, value);
                } catch (const NotInImage&) {
                    continue;
                }
                INFO("graph with " << n << " vertices, n = " << value);
                CHECK(rep.ok());
            }
        }
}

TEST_CASE("perturbed transversals stay accurate foundation sets")
{
    // representatives may be translated by core elements without breaking
    // the transversal properties
    auto p3 = builtin_graph("p3", VertexMonoidSpec::nat());
    std::mt19937 rng(616);
    for (long long n : {2, 4, 8}) {
        auto canonical = scale_value_transversal(p3, n);
        for (int round = 0; round < 10; ++round) {
            std::vector<Trace> perturbed;
            for (const auto& rep : canonical) {
                auto core_part = lit(p3, "v2:" + std::to_string(rng() % 3));
                perturbed.push_back(multiply(rep, core_part));
            }
            auto cand = FoundationCandidate::make(p3, perturbed);
            REQUIRE(cand.elements.size() == canonical.size());
            CHECK(is_accurate(cand));
            CHECK(is_foundation_set(cand).status == FoundationStatus::Foundation);
            for (size_t i = 0; i < perturbed.size(); ++i)
                CHECK(core_related(perturbed[i], canonical[i]));
        }
    }
}

TEST_CASE("admissibility")
{
    CHECK(is_admissible(builtin_graph("p3", VertexMonoidSpec::nat())).admissible);
    auto c4_rep = is_admissible(builtin_graph("c4", VertexMonoidSpec::nat()));
    CHECK_FALSE(c4_rep.admissible);
    CHECK(c4_rep.core_factorable);
    CHECK(c4_rep.ci_cap_closed);
    CHECK_FALSE(is_admissible(builtin_graph("p4", VertexMonoidSpec::nat())).admissible);
    CHECK_FALSE(is_admissible(builtin_graph("k3", VertexMonoidSpec::nat())).admissible);

    auto p3_rep = is_admissible(builtin_graph("p3", VertexMonoidSpec::nat()));
    CHECK(p3_rep.irreducibles == std::vector<long long>{2});
    CHECK(p3_rep.freely_generated);
}
