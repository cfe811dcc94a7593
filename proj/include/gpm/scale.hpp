#ifndef GPM_SCALE_HPP
#define GPM_SCALE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gpm/boundary.hpp"
#include "gpm/graph.hpp"
#include "gpm/structure.hpp"
#include "gpm/trace.hpp"

// Generalised scales: rational independence, existence and obstructions,
// evaluation, axiom verification, uniqueness probes, admissibility.

namespace gpm {

using BigInt = boost::multiprecision::cpp_int;

// A supernatural number prod m_i^{k_i} as an exponent vector over a fixed
// finite base list.
struct SupernaturalExponents {
    std::vector<long long> bases;     // each >= 2
    std::vector<long long> exponents; // same length, each >= 0

    static SupernaturalExponents make(std::vector<long long> bases, std::vector<long long> exponents)
    {
        if (bases.size() != exponents.size())
            throw PreconditionViolation("base and exponent lists must have equal length");
        for (auto m : bases)
            if (m < 2) throw PreconditionViolation("supernatural bases must be >= 2");
        for (auto k : exponents)
            if (k < 0) throw PreconditionViolation("supernatural exponents must be >= 0");
        return {std::move(bases), std::move(exponents)};
    }

    BigInt product() const
    {
        BigInt out = 1;
        for (size_t i = 0; i < bases.size(); ++i)
            for (long long e = 0; e < exponents[i]; ++e) out *= bases[i];
        return out;
    }
};

// Two exponent tuples k, k' with identical products: a verified certificate
// of rational dependence.
struct DependenceCertificate {
    SupernaturalExponents left;
    SupernaturalExponents right;
};

// Fraction-free elimination of the prime-exponent matrix, augmented so that
// a vanished row hands back the integer combination that produced it.
inline std::optional<DependenceCertificate> rational_dependence_certificate(const std::vector<long long>& bases)
{
    for (auto m : bases)
        if (m < 2) throw PreconditionViolation("scale bases must be >= 2");
    if (bases.empty()) return std::nullopt;

    std::vector<long long> primes;
    std::vector<std::map<long long, long long>> factored;
    for (auto m : bases) {
        std::map<long long, long long> f;
        long long rest = m;
        for (long long p = 2; p * p <= rest; ++p)
            while (rest % p == 0) {
                ++f[p];
                rest /= p;
            }
        if (rest > 1) ++f[rest];
        for (const auto& [p, e] : f)
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
        factored.push_back(std::move(f));
    }
    std::sort(primes.begin(), primes.end());

    const size_t rows = bases.size();
    const size_t cols = primes.size();
    // augmented [M | I]; Bareiss keeps every entry an integer minor
    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols + rows, 0));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
            auto it = factored[i].find(primes[j]);
            if (it != factored[i].end()) m[i][j] = it->second;
        }
        m[i][cols + i] = 1;
    }
    size_t rank = 0;
    BigInt prev = 1;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = 0; j < cols + rows; ++j)
                if (j != col) m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    if (rank == rows) return std::nullopt;

    // any row with a vanished M-part encodes a kernel combination
    for (size_t i = rank; i < rows; ++i) {
        bool zero = true;
        for (size_t j = 0; j < cols && zero; ++j) zero = (m[i][j] == 0);
        if (!zero) continue;
        std::vector<long long> left(rows, 0), right(rows, 0);
        for (size_t k = 0; k < rows; ++k) {
            const BigInt& c = m[i][cols + k];
            if (c > 0)
                left[k] = c.convert_to<long long>();
            else if (c < 0)
                right[k] = (-c).convert_to<long long>();
        }
        DependenceCertificate cert{SupernaturalExponents::make(bases, std::move(left)),
                                   SupernaturalExponents::make(bases, std::move(right))};
        if (cert.left.product() != cert.right.product() || cert.left.exponents == cert.right.exponents)
            throw InternalError("dependence certificate failed its product check");
        return cert;
    }
    throw InternalError("rank deficit without a vanished row");
}

// Prime-exponent vectors of the bases are linearly independent over Q.
inline bool rationally_independent(const std::vector<long long>& bases)
{
    return !rational_dependence_certificate(bases).has_value();
}

// N(w) = k^(word length) on the free monoid with k >= 2 generators.
inline BigInt free_monoid_scale(int rank, const VertexElement& w)
{
    if (rank < 2) throw PreconditionViolation("free monoid scale needs rank >= 2");
    if (w.spec.kind != MonoidKind::Free || w.spec.param != rank)
        throw SpecMismatch("element does not belong to F" + std::to_string(rank));
    BigInt out = 1;
    for (size_t i = 0; i < w.vec.size(); ++i) out *= rank;
    return out;
}

struct ScaleObstruction {
    enum class Kind { None, AllUniversal, EdgedComponent, RationallyDependent };
    Kind kind = Kind::None;
    int component = -1;

    std::string label() const
    {
        switch (kind) {
        case Kind::None: return "NONE";
        case Kind::AllUniversal: return "ALL_UNIVERSAL";
        case Kind::EdgedComponent: return "EDGED_COMPONENT";
        case Kind::RationallyDependent: return "RATIONALLY_DEPENDENT";
        }
        return "?";
    }
};

struct GeneralisedScale {
    GraphPtr graph;
    std::vector<long long> component_sizes; // free-summand ranks; |V_i| in the Artin case
    std::vector<detail::FreeComponentView> free_views;
    bool exists = false;
    ScaleObstruction obstruction;
};

// Existence on right-angled Artin assignments, plus the free-monoid
// direct-sum case (universal N / N^d vertices, F_k vertices, edge-free
// all-N components). Anything else is unsupported.
inline GeneralisedScale generalised_scale(const GraphPtr& g)
{
    const auto& d = g->decomposition();
    GeneralisedScale gs;
    gs.graph = g;
    const bool raam = g->all_nat();

    int edged = -1;
    for (size_t i = 0; i < d.components.size(); ++i) {
        const auto& vs = d.components[i];
        auto cls = detail::classify_component(*g, i);
        switch (cls) {
        case detail::ComponentClass::FreeNat:
        case detail::ComponentClass::FreeSingleton: {
            detail::FreeComponentView fc;
            fc.comp = static_cast<int>(i);
            fc.cls = cls;
            if (cls == detail::ComponentClass::FreeNat) {
                fc.alphabet = vs;
                gs.component_sizes.push_back(static_cast<long long>(vs.size()));
            } else {
                fc.vertex = vs[0];
                for (int k = 0; k < g->vertex(vs[0]).monoid.param; ++k) fc.alphabet.push_back(k);
                gs.component_sizes.push_back(g->vertex(vs[0]).monoid.param);
            }
            gs.free_views.push_back(std::move(fc));
            break;
        }
        case detail::ComponentClass::Inert:
            if (vs.size() == 1 && (g->vertex(vs[0]).monoid.kind == MonoidKind::Nat ||
                                   g->vertex(vs[0]).monoid.kind == MonoidKind::FreeAbelian))
                break; // free abelian kernel part
            if (raam) break; // unreachable: N is never a group
            throw Unsupported("generalised scales are only computed for right-angled Artin or free-sum assignments");
        case detail::ComponentClass::Other:
            if (raam) {
                if (edged < 0 && !d.induced_edges[i].empty()) edged = static_cast<int>(i);
                gs.component_sizes.push_back(static_cast<long long>(vs.size()));
                break;
            }
            throw Unsupported("generalised scales are only computed for right-angled Artin or free-sum assignments");
        }
    }

    if (gs.component_sizes.empty()) {
        gs.obstruction = {ScaleObstruction::Kind::AllUniversal, -1};
    } else if (edged >= 0) {
        gs.obstruction = {ScaleObstruction::Kind::EdgedComponent, edged};
    } else if (!rationally_independent(gs.component_sizes)) {
        gs.obstruction = {ScaleObstruction::Kind::RationallyDependent, -1};
    } else {
        gs.exists = true;
    }
    return gs;
}

inline long long component_word_length(const Trace& s, const detail::FreeComponentView& fc)
{
    const auto& d = s.graph()->decomposition();
    long long len = 0;
    for (const auto& sy : s.syllables()) {
        if (d.component_of[static_cast<size_t>(sy.vertex)] != fc.comp) continue;
        if (fc.cls == detail::ComponentClass::FreeNat)
            len += sy.element.scalar;
        else
            len += static_cast<long long>(sy.element.vec.size());
    }
    return len;
}

inline BigInt evaluate_scale(const GeneralisedScale& gs, const Trace& s)
{
    if (!gs.exists) throw ScaleAbsent("this graph product has no generalised scale");
    require_same_graph(gs.graph, s.graph());
    BigInt out = 1;
    for (size_t c = 0; c < gs.free_views.size(); ++c) {
        long long len = component_word_length(s, gs.free_views[c]);
        for (long long i = 0; i < len; ++i) out *= gs.component_sizes[c];
    }
    return out;
}

namespace detail {

// All traces whose free-summand word lengths multiply to n, one canonical
// representative per core class. Works whether or not the would-be scale is
// rationally independent, which is exactly what the negative probes need.
inline std::vector<Trace> value_transversal(const GraphPtr& g, const std::vector<FreeComponentView>& views,
                                            const std::vector<long long>& sizes, const BigInt& n,
                                            size_t class_budget)
{
    std::vector<Trace> out;
    std::vector<long long> exps(views.size(), 0);
    auto emit_words = [&](auto&& self, size_t c, Trace acc) -> void {
        if (c == views.size()) {
            out.push_back(acc);
            if (out.size() > class_budget) throw BudgetExceeded("class enumeration exceeded the budget");
            return;
        }
        FreeWord word(static_cast<size_t>(exps[c]), 0);
        auto rec = [&](auto&& inner, size_t pos) -> void {
            if (pos == word.size()) {
                self(self, c + 1, multiply(acc, word_to_trace(g, views[c], word)));
                return;
            }
            for (int a : views[c].alphabet) {
                word[pos] = a;
                inner(inner, pos + 1);
            }
        };
        rec(rec, 0);
    };
    auto solve = [&](auto&& self, size_t c, BigInt rest) -> void {
        if (c == views.size()) {
            if (rest == 1) emit_words(emit_words, 0, Trace::identity(g));
            return;
        }
        BigInt power = 1;
        for (long long e = 0;; ++e) {
            if (rest % power != 0) break;
            exps[c] = e;
            self(self, c + 1, rest / power);
            power *= sizes[c];
            if (power > rest) break;
        }
    };
    if (n >= 1) solve(solve, 0, n);
    std::sort(out.begin(), out.end(), [](const Trace& a, const Trace& b) { return a.before(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

// Canonical transversal of N^{-1}(n) modulo the core relation; usable on
// scale-shaped graphs even when the scale fails to exist.
inline std::vector<Trace> scale_value_transversal(const GraphPtr& g, const BigInt& n,
                                                  size_t class_budget = 10'000)
{
    const auto& d = g->decomposition();
    std::vector<detail::FreeComponentView> views;
    std::vector<long long> sizes;
    for (size_t i = 0; i < d.components.size(); ++i) {
        auto cls = detail::classify_component(*g, i);
        if (cls == detail::ComponentClass::FreeNat || cls == detail::ComponentClass::FreeSingleton) {
            detail::FreeComponentView fc;
            fc.comp = static_cast<int>(i);
            fc.cls = cls;
            if (cls == detail::ComponentClass::FreeNat) {
                fc.alphabet = d.components[i];
                sizes.push_back(static_cast<long long>(d.components[i].size()));
            } else {
                fc.vertex = d.components[i][0];
                for (int k = 0; k < g->vertex(fc.vertex).monoid.param; ++k) fc.alphabet.push_back(k);
                sizes.push_back(g->vertex(fc.vertex).monoid.param);
            }
            views.push_back(std::move(fc));
        } else if (cls == detail::ComponentClass::Inert && d.components[i].size() == 1 &&
                   (g->vertex(d.components[i][0]).monoid.kind == MonoidKind::Nat ||
                    g->vertex(d.components[i][0]).monoid.kind == MonoidKind::FreeAbelian)) {
            // kernel part
        } else {
            throw Unsupported("value classes are only enumerated for scale-shaped assignments");
        }
    }
    return detail::value_transversal(g, views, sizes, n, class_budget);
}

struct ScaleAxiomReport {
    BigInt n = 0;
    size_t class_count = 0;
    bool count_ok = false;
    bool values_ok = false;
    bool distinct_ok = false;
    bool distinct_checked = false;
    bool accurate = false;
    FoundationStatus foundation = FoundationStatus::Unknown;

    bool ok() const
    {
        return count_ok && values_ok && (!distinct_checked || distinct_ok) && accurate &&
               foundation == FoundationStatus::Foundation;
    }
};

// Checks |N^{-1}(n)/~| = n and that the canonical transversal is an
// accurate foundation set.
inline ScaleAxiomReport verify_scale_axioms(const GeneralisedScale& gs, const BigInt& n,
                                            size_t class_budget = 10'000)
{
    if (!gs.exists) throw ScaleAbsent("this graph product has no generalised scale");
    ScaleAxiomReport rep;
    rep.n = n;
    auto transversal = scale_value_transversal(gs.graph, n, class_budget);
    if (transversal.empty()) throw NotInImage("value " + n.str() + " is not in the image of the scale");
    rep.class_count = transversal.size();
    rep.count_ok = (BigInt(transversal.size()) == n);
    rep.values_ok = std::all_of(transversal.begin(), transversal.end(),
                                [&](const Trace& t) { return evaluate_scale(gs, t) == n; });
    if (transversal.size() <= 400) {
        rep.distinct_checked = true;
        rep.distinct_ok = true;
        for (size_t i = 0; i < transversal.size() && rep.distinct_ok; ++i)
            for (size_t j = i + 1; j < transversal.size() && rep.distinct_ok; ++j)
                if (core_related(transversal[i], transversal[j])) rep.distinct_ok = false;
    }
    auto cand = FoundationCandidate::make(gs.graph, transversal);
    rep.accurate = is_accurate(cand);
    rep.foundation = is_foundation_set(cand).status;
    return rep;
}

struct UniquenessComponentReport {
    int component = -1;
    long long rank = 0;
    std::vector<std::vector<long long>> survivors; // generator-value assignments passing the axiom probe
};

struct UniquenessReport {
    std::vector<UniquenessComponentReport> components;
    bool unique = false; // every component survives only with the constant assignment (rank, ..., rank)
};

// Replicates the uniqueness argument over a finite window: a generator-value
// assignment survives only if the value-class count matches at every
// generator value, which forces the constant assignment.
inline UniquenessReport verify_scale_uniqueness(const GeneralisedScale& gs, long long bound)
{
    if (!gs.exists) throw ScaleAbsent("this graph product has no generalised scale");
    if (bound < 2) throw PreconditionViolation("uniqueness bound must be >= 2");
    UniquenessReport rep;
    rep.unique = true;
    for (size_t c = 0; c < gs.free_views.size(); ++c) {
        UniquenessComponentReport comp;
        comp.component = gs.free_views[c].comp;
        comp.rank = gs.component_sizes[c];
        const size_t m = gs.free_views[c].alphabet.size();

        std::vector<long long> assign(m, 2);
        auto word_count = [&](long long value) {
            // words over the weighted alphabet whose weight product is value
            std::map<long long, long long> memo{{1, 1}};
            auto rec = [&](auto&& self, long long v) -> long long {
                auto it = memo.find(v);
                if (it != memo.end()) return it->second;
                long long total = 0;
                for (size_t j = 0; j < m; ++j)
                    if (v % assign[j] == 0) total += self(self, v / assign[j]);
                memo[v] = total;
                return total;
            };
            return rec(rec, value);
        };
        auto axiom_holds = [&]() {
            for (size_t j = 0; j < m; ++j)
                if (word_count(assign[j]) != assign[j]) return false;
            return true;
        };
        auto sweep = [&](auto&& self, size_t pos) -> void {
            if (pos == m) {
                if (axiom_holds()) comp.survivors.push_back(assign);
                return;
            }
            for (long long v = 2; v <= bound; ++v) {
                assign[pos] = v;
                self(self, pos + 1);
            }
        };
        sweep(sweep, 0);

        std::vector<long long> expected(m, comp.rank);
        rep.unique = rep.unique && comp.survivors.size() == 1 && comp.survivors[0] == expected;
        rep.components.push_back(std::move(comp));
    }
    return rep;
}

struct AdmissibilityReport {
    bool admissible = false;
    bool core_factorable = false;
    bool ci_cap_closed = false;
    GeneralisedScale scale;
    std::vector<long long> irreducibles; // Irr(N(S)) when the scale exists
    bool freely_generated = false;
};

// Admissibility: core factorable, cap-closed core irreducibles, and a
// generalised scale whose image is freely generated by its irreducibles.
inline AdmissibilityReport is_admissible(const GraphPtr& g)
{
    AdmissibilityReport rep;
    auto sr = structure_report(*g);
    rep.core_factorable = sr.core_factorable;
    rep.ci_cap_closed = sr.ci_cap_closed;
    rep.scale = generalised_scale(g);
    rep.freely_generated = rep.scale.exists; // rational independence gives free generation
    if (rep.scale.exists) {
        rep.irreducibles = rep.scale.component_sizes;
        std::sort(rep.irreducibles.begin(), rep.irreducibles.end());
        rep.irreducibles.erase(std::unique(rep.irreducibles.begin(), rep.irreducibles.end()),
                               rep.irreducibles.end());
    }
    rep.admissible = rep.core_factorable && rep.ci_cap_closed && rep.scale.exists && rep.freely_generated;
    return rep;
}

} // namespace gpm

#endif // GPM_SCALE_HPP
