#ifndef GPM_MONOID_HPP
#define GPM_MONOID_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gpm/errors.hpp"

// Vertex monoid catalogue: N, F<k>, N^<d>, Z, Z/<n>.
// Each entry is a right LCM monoid with decidable multiply/LCM/quotient.

namespace gpm {

enum class MonoidKind { Nat, Free, FreeAbelian, Integers, FiniteCyclic };

struct VertexMonoidSpec {
    MonoidKind kind = MonoidKind::Nat;
    int param = 0; // rank k for Free, dimension d for FreeAbelian, modulus n for FiniteCyclic

    static VertexMonoidSpec nat() { return {MonoidKind::Nat, 0}; }
    static VertexMonoidSpec free_monoid(int k)
    {
        if (k < 2 || k > 26)
            throw ParseError("free monoid rank must be in [2,26], got " + std::to_string(k));
        return {MonoidKind::Free, k};
    }
    static VertexMonoidSpec free_abelian(int d)
    {
        if (d < 1)
            throw ParseError("free abelian dimension must be >= 1, got " + std::to_string(d));
        return {MonoidKind::FreeAbelian, d};
    }
    static VertexMonoidSpec integers() { return {MonoidKind::Integers, 0}; }
    static VertexMonoidSpec finite_cyclic(int n)
    {
        // n = 1 would be the trivial monoid, which the catalogue excludes.
        if (n < 2)
            throw ParseError("cyclic modulus must be >= 2, got " + std::to_string(n));
        return {MonoidKind::FiniteCyclic, n};
    }

    bool operator==(const VertexMonoidSpec& o) const = default;

    // Spec codes used in graph files: "N", "F<k>", "N^<d>", "Z", "Z/<n>".
    std::string code() const
    {
        switch (kind) {
        case MonoidKind::Nat: return "N";
        case MonoidKind::Free: return "F" + std::to_string(param);
        case MonoidKind::FreeAbelian: return "N^" + std::to_string(param);
        case MonoidKind::Integers: return "Z";
        case MonoidKind::FiniteCyclic: return "Z/" + std::to_string(param);
        }
        return "?";
    }

    static VertexMonoidSpec parse(const std::string& code)
    {
        auto parse_int = [&](const std::string& s) -> int {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad monoid code '" + code + "'");
            long v = std::stol(s);
            if (v > 1'000'000) throw ParseError("monoid parameter too large in '" + code + "'");
            return static_cast<int>(v);
        };
        if (code == "N") return nat();
        if (code == "Z") return integers();
        if (code.size() > 1 && code[0] == 'F') return free_monoid(parse_int(code.substr(1)));
        if (code.rfind("N^", 0) == 0) return free_abelian(parse_int(code.substr(2)));
        if (code.rfind("Z/", 0) == 0) return finite_cyclic(parse_int(code.substr(2)));
        throw ParseError("unknown monoid code '" + code + "'");
    }
};

// Letters for free-monoid generators: x, y, z, then a, b, c, ...
inline char free_generator_letter(int index)
{
    static const char* letters = "xyzabcdefghijklmnopqrstuvw";
    if (index < 0 || index >= 26) throw ParseError("free generator index out of range");
    return letters[index];
}

inline int free_generator_index(char c)
{
    static const std::string letters = "xyzabcdefghijklmnopqrstuvw";
    auto pos = letters.find(c);
    if (pos == std::string::npos) throw ParseError(std::string("bad free generator letter '") + c + "'");
    return static_cast<int>(pos);
}

// One element of a vertex monoid. Payload layout by kind:
//   Nat           -> scalar = exponent >= 0
//   Free          -> vec = generator indices (the word, stored verbatim)
//   FreeAbelian   -> vec = d nonnegative entries
//   Integers      -> scalar = value
//   FiniteCyclic  -> scalar = residue in [0, n)
struct VertexElement {
    VertexMonoidSpec spec;
    std::int64_t scalar = 0;
    std::vector<std::int32_t> vec;

    static VertexElement identity(const VertexMonoidSpec& s)
    {
        VertexElement e;
        e.spec = s;
        if (s.kind == MonoidKind::FreeAbelian) e.vec.assign(static_cast<size_t>(s.param), 0);
        return e;
    }

    static VertexElement nat(std::int64_t k)
    {
        if (k < 0) throw ParseError("negative exponent in N");
        VertexElement e;
        e.spec = VertexMonoidSpec::nat();
        e.scalar = k;
        return e;
    }

    static VertexElement integer(std::int64_t v)
    {
        VertexElement e;
        e.spec = VertexMonoidSpec::integers();
        e.scalar = v;
        return e;
    }

    static VertexElement cyclic(int n, std::int64_t v)
    {
        VertexElement e;
        e.spec = VertexMonoidSpec::finite_cyclic(n);
        e.scalar = ((v % n) + n) % n;
        return e;
    }

    static VertexElement free_word(int rank, const std::string& letters)
    {
        VertexElement e;
        e.spec = VertexMonoidSpec::free_monoid(rank);
        for (char c : letters) {
            int idx = free_generator_index(c);
            if (idx >= rank)
                throw ParseError("letter '" + std::string(1, c) + "' outside rank-" + std::to_string(rank) + " alphabet");
            e.vec.push_back(idx);
        }
        return e;
    }

    static VertexElement abelian(int dim, std::vector<std::int32_t> tuple)
    {
        if (static_cast<int>(tuple.size()) != dim) throw ParseError("tuple arity mismatch");
        for (auto v : tuple)
            if (v < 0) throw ParseError("negative entry in N^d tuple");
        VertexElement e;
        e.spec = VertexMonoidSpec::free_abelian(dim);
        e.vec = std::move(tuple);
        return e;
    }

    bool is_identity() const
    {
        switch (spec.kind) {
        case MonoidKind::Nat:
        case MonoidKind::Integers:
        case MonoidKind::FiniteCyclic: return scalar == 0;
        case MonoidKind::Free: return vec.empty();
        case MonoidKind::FreeAbelian:
            return std::all_of(vec.begin(), vec.end(), [](auto v) { return v == 0; });
        }
        return false;
    }

    bool operator==(const VertexElement& o) const = default;

    // Total order used for deterministic enumeration and canonical trace ordering.
    bool before(const VertexElement& o) const
    {
        switch (spec.kind) {
        case MonoidKind::Nat:
        case MonoidKind::FiniteCyclic: return scalar < o.scalar;
        case MonoidKind::Integers: {
            // 0, 1, -1, 2, -2, ...
            auto key = [](std::int64_t v) { return std::pair{v < 0 ? -2 * v : 2 * v, v < 0}; };
            return key(scalar) < key(o.scalar);
        }
        case MonoidKind::Free:
            if (vec.size() != o.vec.size()) return vec.size() < o.vec.size();
            return vec < o.vec;
        case MonoidKind::FreeAbelian: {
            auto sum = [](const std::vector<std::int32_t>& t) {
                return std::accumulate(t.begin(), t.end(), std::int64_t{0});
            };
            auto sa = sum(vec), sb = sum(o.vec);
            if (sa != sb) return sa < sb;
            return vec < o.vec;
        }
        }
        return false;
    }

    std::string format() const
    {
        switch (spec.kind) {
        case MonoidKind::Nat:
        case MonoidKind::Integers:
        case MonoidKind::FiniteCyclic: return std::to_string(scalar);
        case MonoidKind::Free: {
            std::string s;
            for (auto idx : vec) s += free_generator_letter(idx);
            return s.empty() ? "e" : s;
        }
        case MonoidKind::FreeAbelian: {
            std::string s;
            for (size_t i = 0; i < vec.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(vec[i]);
            }
            return s;
        }
        }
        return "?";
    }

    // Parses the element part of a trace literal `vertex:element`.
    static VertexElement parse(const VertexMonoidSpec& s, const std::string& text)
    {
        auto parse_i64 = [&](const std::string& t) -> std::int64_t {
            try {
                size_t pos = 0;
                long long v = std::stoll(t, &pos);
                if (pos != t.size()) throw ParseError("");
                return v;
            } catch (...) {
                throw ParseError("bad integer literal '" + text + "'");
            }
        };
        switch (s.kind) {
        case MonoidKind::Nat: return nat(parse_i64(text));
        case MonoidKind::Integers: return integer(parse_i64(text));
        case MonoidKind::FiniteCyclic: return cyclic(s.param, parse_i64(text));
        case MonoidKind::Free:
            if (text == "e") return identity(s);
            return free_word(s.param, text);
        case MonoidKind::FreeAbelian: {
            std::vector<std::int32_t> tuple;
            std::string cur;
            for (char c : text + ",") {
                if (c == ',') {
                    if (cur.empty()) throw ParseError("bad tuple literal '" + text + "'");
                    auto v = parse_i64(cur);
                    if (v < 0 || v > INT32_MAX) throw ParseError("bad tuple entry '" + cur + "'");
                    tuple.push_back(static_cast<std::int32_t>(v));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            return abelian(s.param, std::move(tuple));
        }
        }
        throw ParseError("unreachable");
    }
};

inline void require_same_spec(const VertexElement& a, const VertexElement& b)
{
    if (!(a.spec == b.spec))
        throw SpecMismatch("vertex elements come from different monoids: " + a.spec.code() + " vs " + b.spec.code());
}

inline VertexElement v_multiply(const VertexElement& a, const VertexElement& b)
{
    require_same_spec(a, b);
    VertexElement r = a;
    switch (a.spec.kind) {
    case MonoidKind::Nat:
    case MonoidKind::Integers: r.scalar = a.scalar + b.scalar; break;
    case MonoidKind::FiniteCyclic: r.scalar = (a.scalar + b.scalar) % a.spec.param; break;
    case MonoidKind::Free: r.vec.insert(r.vec.end(), b.vec.begin(), b.vec.end()); break;
    case MonoidKind::FreeAbelian:
        for (size_t i = 0; i < r.vec.size(); ++i) r.vec[i] += b.vec[i];
        break;
    }
    return r;
}

inline bool v_is_invertible(const VertexElement& a)
{
    switch (a.spec.kind) {
    case MonoidKind::Integers:
    case MonoidKind::FiniteCyclic: return true;
    default: return a.is_identity();
    }
}

inline VertexElement v_inverse(const VertexElement& a)
{
    if (!v_is_invertible(a)) throw PreconditionViolation("element '" + a.format() + "' is not invertible");
    VertexElement r = a;
    switch (a.spec.kind) {
    case MonoidKind::Integers: r.scalar = -a.scalar; break;
    case MonoidKind::FiniteCyclic: r.scalar = (a.spec.param - a.scalar) % a.spec.param; break;
    default: break; // identity in the trivial-unit entries
    }
    return r;
}

// a left-divides m, i.e. m = a * q for some q.
inline bool v_left_divides(const VertexElement& a, const VertexElement& m)
{
    require_same_spec(a, m);
    switch (a.spec.kind) {
    case MonoidKind::Nat: return a.scalar <= m.scalar;
    case MonoidKind::Integers:
    case MonoidKind::FiniteCyclic: return true;
    case MonoidKind::Free:
        return a.vec.size() <= m.vec.size() && std::equal(a.vec.begin(), a.vec.end(), m.vec.begin());
    case MonoidKind::FreeAbelian:
        for (size_t i = 0; i < a.vec.size(); ++i)
            if (a.vec[i] > m.vec[i]) return false;
        return true;
    }
    return false;
}

inline VertexElement v_left_quotient(const VertexElement& a, const VertexElement& m)
{
    if (!v_left_divides(a, m))
        throw NotADivisor("'" + a.format() + "' does not left-divide '" + m.format() + "' in " + a.spec.code());
    VertexElement q = VertexElement::identity(a.spec);
    switch (a.spec.kind) {
    case MonoidKind::Nat:
    case MonoidKind::Integers: q.scalar = m.scalar - a.scalar; break;
    case MonoidKind::FiniteCyclic: q.scalar = ((m.scalar - a.scalar) % a.spec.param + a.spec.param) % a.spec.param; break;
    case MonoidKind::Free: q.vec.assign(m.vec.begin() + static_cast<long>(a.vec.size()), m.vec.end()); break;
    case MonoidKind::FreeAbelian:
        for (size_t i = 0; i < q.vec.size(); ++i) q.vec[i] = m.vec[i] - a.vec[i];
        break;
    }
    return q;
}

struct VertexLcm {
    std::optional<VertexElement> multiple; // empty means orthogonal

    bool orthogonal() const { return !multiple.has_value(); }
};

// Least common right multiple, or orthogonality. In the group entries every
// element is a common multiple; the first argument is the canonical choice.
inline VertexLcm v_lcm(const VertexElement& a, const VertexElement& b)
{
    require_same_spec(a, b);
    switch (a.spec.kind) {
    case MonoidKind::Nat: {
        VertexElement m = a;
        m.scalar = std::max(a.scalar, b.scalar);
        return {m};
    }
    case MonoidKind::FreeAbelian: {
        VertexElement m = a;
        for (size_t i = 0; i < m.vec.size(); ++i) m.vec[i] = std::max(a.vec[i], b.vec[i]);
        return {m};
    }
    case MonoidKind::Free:
        if (v_left_divides(a, b)) return {b};
        if (v_left_divides(b, a)) return {a};
        return {std::nullopt};
    case MonoidKind::Integers:
    case MonoidKind::FiniteCyclic: return {a};
    }
    return {std::nullopt};
}

// Structural facts per catalogue entry, recorded rather than computed.
// Proof notes for the action flags (alpha_v : (S_v)_c acting on S_v / core
// relation; alpha_v^* : S_v^* acting on S_v / S_v^*):
//  - N, N^d, Z, Z/n are left reversible, so their core is the whole monoid
//    and the core-relation quotient is a single class. Hence alpha_v is not
//    faithful (all core elements act identically on one class) but is almost
//    free (each element fixes exactly one class, a finite set).
//  - F_k (k >= 2): x and y have no common right multiple, so not left
//    reversible; the core is trivial, making alpha_v vacuously faithful and
//    almost free.
//  - alpha_v^* acts on a single class whenever S_v^* = S_v or S_v^* = {1}
//    quotients to finitely many classes; for every catalogue entry the
//    quotient S_v/S_v^* is a point (groups) or the fixed sets are finite
//    (trivial units), so alpha_star_almost_free holds throughout.
//  - finite propagation: N, F_k, N^d have trivial units and finite
//    propagation ([ABLS] examples); Z and Z/n are groups, where every
//    propagation orbit is a single coset.
struct MonoidFlags {
    bool is_group = false;
    bool is_left_reversible = false;
    bool core_is_whole = false;
    bool units_trivial = false;
    bool units_finite = false;
    bool core_factorable = false;
    bool ci_cap_closed = false;
    bool alpha_faithful = false;
    bool alpha_almost_free = false;
    bool alpha_star_almost_free = false;
    bool finite_propagation = false;
};

inline MonoidFlags v_flags(const VertexMonoidSpec& s)
{
    MonoidFlags f;
    switch (s.kind) {
    case MonoidKind::Nat:
    case MonoidKind::FreeAbelian:
        f = {false, true, true, true, true, true, true, false, true, true, true};
        break;
    case MonoidKind::Free:
        f = {false, false, false, true, true, true, true, true, true, true, true};
        break;
    case MonoidKind::Integers:
        f = {true, true, true, false, false, true, true, false, true, true, true};
        break;
    case MonoidKind::FiniteCyclic:
        f = {true, true, true, false, true, true, true, false, true, true, true};
        break;
    }
    return f;
}

// Core membership at vertex level: the catalogue cores are either the whole
// monoid (left reversible entries) or the unit group (free monoids).
inline bool v_core_contains(const VertexElement& x)
{
    return v_flags(x.spec).core_is_whole || v_is_invertible(x);
}

// Membership in (S_v)_ci' = (S_v)_ci u S_v^*. Left reversible entries have no
// core-irreducible elements; in a free monoid every non-identity element is
// core irreducible.
inline bool v_ci_prime_contains(const VertexElement& x)
{
    if (v_is_invertible(x)) return true;
    return !v_flags(x.spec).core_is_whole;
}

// Vertex-level core relation: everything is related when the core is the
// whole monoid; otherwise (trivial core, trivial units) it is equality.
inline bool v_core_related(const VertexElement& x, const VertexElement& y)
{
    require_same_spec(x, y);
    if (v_flags(x.spec).is_left_reversible) return true;
    return x == y;
}

// All elements of size <= max_size, identity first, deterministic order.
// Size means exponent (N), word length (F_k), entry sum (N^d), absolute
// value (Z), residue value (Z/n).
inline std::vector<VertexElement> v_enumerate(const VertexMonoidSpec& s, int max_size)
{
    if (max_size < 0) throw PreconditionViolation("max_size must be >= 0");
    std::vector<VertexElement> out;
    switch (s.kind) {
    case MonoidKind::Nat:
        for (std::int64_t k = 0; k <= max_size; ++k) out.push_back(VertexElement::nat(k));
        break;
    case MonoidKind::Integers:
        out.push_back(VertexElement::integer(0));
        for (std::int64_t k = 1; k <= max_size; ++k) {
            out.push_back(VertexElement::integer(k));
            out.push_back(VertexElement::integer(-k));
        }
        break;
    case MonoidKind::FiniteCyclic:
        for (std::int64_t k = 0; k < s.param && k <= max_size; ++k) out.push_back(VertexElement::cyclic(s.param, k));
        break;
    case MonoidKind::Free: {
        std::vector<std::vector<std::int32_t>> level{{}};
        out.push_back(VertexElement::identity(s));
        for (int len = 1; len <= max_size; ++len) {
            std::vector<std::vector<std::int32_t>> next;
            for (const auto& w : level)
                for (int g = 0; g < s.param; ++g) {
                    auto ext = w;
                    ext.push_back(g);
                    next.push_back(ext);
                }
            for (auto& w : next) {
                VertexElement e;
                e.spec = s;
                e.vec = w;
                out.push_back(std::move(e));
            }
            level = std::move(next);
        }
        break;
    }
    case MonoidKind::FreeAbelian: {
        std::vector<std::int32_t> tuple(static_cast<size_t>(s.param), 0);
        // enumerate by total sum, then lexicographically
        for (int total = 0; total <= max_size; ++total) {
            std::vector<std::vector<std::int32_t>> acc;
            std::vector<std::int32_t> cur(static_cast<size_t>(s.param), 0);
            auto rec = [&](auto&& self, int pos, int left) -> void {
                if (pos == s.param - 1) {
                    cur[static_cast<size_t>(pos)] = left;
                    acc.push_back(cur);
                    return;
                }
                for (int v = 0; v <= left; ++v) {
                    cur[static_cast<size_t>(pos)] = v;
                    self(self, pos + 1, left - v);
                }
            };
            rec(rec, 0, total);
            std::sort(acc.begin(), acc.end());
            for (auto& t : acc) out.push_back(VertexElement::abelian(s.param, std::move(t)));
        }
        break;
    }
    }
    return out;
}

// Least non-identity element; used as the default syllable in constructions.
inline VertexElement v_atom(const VertexMonoidSpec& s)
{
    switch (s.kind) {
    case MonoidKind::Nat: return VertexElement::nat(1);
    case MonoidKind::Integers: return VertexElement::integer(1);
    case MonoidKind::FiniteCyclic: return VertexElement::cyclic(s.param, 1);
    case MonoidKind::Free: {
        VertexElement e;
        e.spec = s;
        e.vec = {0};
        return e;
    }
    case MonoidKind::FreeAbelian: {
        std::vector<std::int32_t> t(static_cast<size_t>(s.param), 0);
        t[0] = 1;
        return VertexElement::abelian(s.param, std::move(t));
    }
    }
    throw InternalError("unreachable");
}

// Least non-invertible element; only the non-group entries have one.
inline VertexElement v_noninvertible_atom(const VertexMonoidSpec& s)
{
    if (v_flags(s).is_group)
        throw PreconditionViolation("group monoid " + s.code() + " has no non-invertible element");
    return v_atom(s);
}

// Generating atoms: for F_k all k letters, otherwise the single atom. Any
// non-identity element has one of these as a left divisor.
inline std::vector<VertexElement> v_generating_atoms(const VertexMonoidSpec& s)
{
    if (s.kind == MonoidKind::Free) {
        std::vector<VertexElement> out;
        for (int g = 0; g < s.param; ++g) {
            VertexElement e;
            e.spec = s;
            e.vec = {g};
            out.push_back(std::move(e));
        }
        return out;
    }
    if (s.kind == MonoidKind::FreeAbelian) {
        std::vector<VertexElement> out;
        for (int i = 0; i < s.param; ++i) {
            std::vector<std::int32_t> t(static_cast<size_t>(s.param), 0);
            t[static_cast<size_t>(i)] = 1;
            out.push_back(VertexElement::abelian(s.param, std::move(t)));
        }
        return out;
    }
    return {v_atom(s)};
}

} // namespace gpm

#endif // GPM_MONOID_HPP
