#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wcon/errors.hpp"
#include "wcon/wai.hpp"

namespace wcon {

// ---------------------------------------------------------------------------
// wAC(P) terms. Every atom and every fusion operand carries a typing bracket:
// synchron [.] or trigger [.]'. Fusions are stored flattened n-ary; a nested
// typing bracket is a Typed node whose body is a fusion, and flattening never
// crosses it (associativity fails across typing brackets).

enum class Typing : int { synchron = 0, trigger = 1 };

struct WacTerm;
using WacPtr = std::shared_ptr<const WacTerm>;

/// Atom under a typing bracket: the constants 0 and 1, or a port.
struct WacAtom {
    enum class Kind { zero, one, port };
    Kind kind = Kind::zero;
    std::string name; // port name when kind == port
};

struct WacTyped {
    Typing typing = Typing::synchron;
    std::variant<WacAtom, WacPtr> body;
};

struct WacUnion {
    WacPtr left, right;
};

/// Flattened n-ary weighted fusion; every factor is a WacTyped node (or, in
/// a context, the bare hole).
struct WacFusion {
    std::vector<WacPtr> factors;
};

/// The distinguished hole port of a context. A bare hole takes the
/// substituted connector's own structure (splicing a fusion into the
/// surrounding factor list); a hole under a typing bracket keeps the
/// context's bracket.
struct WacHole {};

struct WacTerm {
    std::variant<WacTyped, WacUnion, WacFusion, WacHole> node;
};

inline bool is_typed(const WacPtr& z) { return std::holds_alternative<WacTyped>(z->node); }
inline bool is_union(const WacPtr& z) { return std::holds_alternative<WacUnion>(z->node); }
inline bool is_fusion(const WacPtr& z) { return std::holds_alternative<WacFusion>(z->node); }
inline bool is_hole(const WacPtr& z) { return std::holds_alternative<WacHole>(z->node); }

namespace wac {

inline WacPtr typed(Typing t, WacAtom atom) {
    return std::make_shared<const WacTerm>(WacTerm{WacTyped{t, std::move(atom)}});
}
inline WacPtr typed(Typing t, WacPtr body) {
    return std::make_shared<const WacTerm>(WacTerm{WacTyped{t, std::move(body)}});
}
inline WacPtr zero(Typing t = Typing::synchron) { return typed(t, WacAtom{WacAtom::Kind::zero, {}}); }
inline WacPtr one(Typing t = Typing::synchron) { return typed(t, WacAtom{WacAtom::Kind::one, {}}); }
inline WacPtr port(std::string name, Typing t = Typing::synchron) {
    return typed(t, WacAtom{WacAtom::Kind::port, std::move(name)});
}
inline WacPtr bare_hole() { return std::make_shared<const WacTerm>(WacTerm{WacHole{}}); }
inline WacPtr hole(Typing t) { return typed(t, bare_hole()); } // bracketed hole [r]^t
inline WacPtr synchron(WacPtr body) { return typed(Typing::synchron, std::move(body)); }
inline WacPtr trigger(WacPtr body) { return typed(Typing::trigger, std::move(body)); }

inline WacPtr unite(WacPtr l, WacPtr r) {
    return std::make_shared<const WacTerm>(WacTerm{WacUnion{std::move(l), std::move(r)}});
}

inline WacPtr fuse(std::vector<WacPtr> factors) {
    if (factors.empty()) throw std::invalid_argument("fusion needs at least one factor");
    for (const WacPtr& f : factors)
        if (!is_typed(f) && !is_hole(f))
            throw std::invalid_argument("every fusion operand must carry a typing bracket");
    return std::make_shared<const WacTerm>(WacTerm{WacFusion{std::move(factors)}});
}
inline WacPtr fuse(WacPtr a, WacPtr b) { return fuse(std::vector<WacPtr>{std::move(a), std::move(b)}); }

/// The connector [0']': a trigger-typed 0 re-typed as a trigger. Neutral for
/// fusion within the triggers subalgebra (up to congruence).
inline WacPtr zero_prime_trigger() { return trigger(zero(Typing::trigger)); }

} // namespace wac

inline std::size_t term_size(const WacPtr& z) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacTyped>) {
                if (const auto* body = std::get_if<WacPtr>(&n.body)) return 1 + term_size(*body);
                return 1;
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                return 1 + term_size(n.left) + term_size(n.right);
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                std::size_t s = 1;
                for (const WacPtr& f : n.factors) s += term_size(f);
                return s;
            } else {
                return 1;
            }
        },
        z->node);
}

inline bool structurally_equal(const WacPtr& a, const WacPtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            const auto& m = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, WacTyped>) {
                if (n.typing != m.typing || n.body.index() != m.body.index()) return false;
                if (const auto* atom = std::get_if<WacAtom>(&n.body)) {
                    const auto& other = std::get<WacAtom>(m.body);
                    return atom->kind == other.kind && atom->name == other.name;
                }
                return structurally_equal(std::get<WacPtr>(n.body), std::get<WacPtr>(m.body));
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                return structurally_equal(n.left, m.left) && structurally_equal(n.right, m.right);
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                if (n.factors.size() != m.factors.size()) return false;
                for (std::size_t i = 0; i < n.factors.size(); ++i)
                    if (!structurally_equal(n.factors[i], m.factors[i])) return false;
                return true;
            } else {
                return true;
            }
        },
        a->node);
}

// ---------------------------------------------------------------------------
// Degrees.

/// Trigger/synchron counts of the top-level fusion structure. For a fusion,
/// counts over its factors; a lone typed connector counts as an arity-1
/// fusion; for a union, the counts are maxima over the summands and
/// strictly_positive records whether every summand has a trigger.
struct Degrees {
    int triggers = 0;
    int synchrons = 0;
    bool strictly_positive = false;
};

inline Degrees degree(const WacPtr& z) {
    return std::visit(
        [&](const auto& n) -> Degrees {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacTyped>) {
                bool trig = n.typing == Typing::trigger;
                return Degrees{trig ? 1 : 0, trig ? 0 : 1, trig};
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                Degrees d;
                for (const WacPtr& f : n.factors) {
                    if (!is_typed(f)) continue; // context holes carry no type
                    if (std::get<WacTyped>(f->node).typing == Typing::trigger)
                        ++d.triggers;
                    else
                        ++d.synchrons;
                }
                d.strictly_positive = d.triggers > 0;
                return d;
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                Degrees l = degree(n.left), r = degree(n.right);
                return Degrees{std::max(l.triggers, r.triggers), std::max(l.synchrons, r.synchrons),
                               l.strictly_positive && r.strictly_positive};
            } else {
                return Degrees{};
            }
        },
        z->node);
}

// ---------------------------------------------------------------------------
// Subalgebra membership: every typing bracket synchron (wAS) / trigger (wAT).

namespace detail {

inline bool all_typings_are(const WacPtr& z, Typing t) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacTyped>) {
                if (n.typing != t) return false;
                if (const auto* body = std::get_if<WacPtr>(&n.body)) return all_typings_are(*body, t);
                return true;
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                return all_typings_are(n.left, t) && all_typings_are(n.right, t);
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                for (const WacPtr& f : n.factors)
                    if (!all_typings_are(f, t)) return false;
                return true;
            } else {
                return false; // a hole belongs to no subalgebra
            }
        },
        z->node);
}

} // namespace detail

inline bool is_was(const WacPtr& z) { return detail::all_typings_are(z, Typing::synchron); }
inline bool is_wat(const WacPtr& z) { return detail::all_typings_are(z, Typing::trigger); }

// ---------------------------------------------------------------------------
// Translation |.| : wAC(P) -> wAI(P).
//
// |[p]| = |[p]'| = p for p in P u {0,1}; brackets over a nested term are
// transparent; union maps to union. An all-synchron fusion maps to the
// synchronization of the translated bodies. A fusion with triggers maps to
// the trigger sum: for each trigger i, |z_i| fused with (1 + |z_k|) over the
// other triggers and (1 + |z_j|) over all synchrons.

namespace detail {

inline WaiPtr translate_body(const WacTyped& typed);

inline WaiPtr translate_term(const WacPtr& z) {
    return std::visit(
        [&](const auto& n) -> WaiPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacHole>) {
                throw context_error("cannot translate a context; substitute the hole first");
            } else if constexpr (std::is_same_v<T, WacTyped>) {
                return translate_body(n);
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                return wai::add(translate_term(n.left), translate_term(n.right));
            } else {
                std::vector<WaiPtr> bodies;
                std::vector<Typing> typings;
                bodies.reserve(n.factors.size());
                for (const WacPtr& f : n.factors) {
                    if (!is_typed(f))
                        throw context_error("cannot translate a context; substitute the hole first");
                    const auto& typed = std::get<WacTyped>(f->node);
                    bodies.push_back(translate_body(typed));
                    typings.push_back(typed.typing);
                }
                bool any_trigger = false;
                for (Typing t : typings) any_trigger |= (t == Typing::trigger);
                if (!any_trigger) {
                    WaiPtr acc = bodies.front();
                    for (std::size_t i = 1; i < bodies.size(); ++i) acc = wai::sync(acc, bodies[i]);
                    return acc;
                }
                WaiPtr sum;
                for (std::size_t i = 0; i < bodies.size(); ++i) {
                    if (typings[i] != Typing::trigger) continue;
                    WaiPtr prod = bodies[i];
                    for (std::size_t k = 0; k < bodies.size(); ++k) {
                        if (k == i || typings[k] != Typing::trigger) continue;
                        prod = wai::sync(prod, wai::add(wai::one(), bodies[k]));
                    }
                    for (std::size_t j = 0; j < bodies.size(); ++j) {
                        if (typings[j] != Typing::synchron) continue;
                        prod = wai::sync(prod, wai::add(wai::one(), bodies[j]));
                    }
                    sum = sum ? wai::add(sum, prod) : prod;
                }
                return sum;
            }
        },
        z->node);
}

inline WaiPtr translate_body(const WacTyped& typed) {
    if (const auto* atom = std::get_if<WacAtom>(&typed.body)) {
        switch (atom->kind) {
        case WacAtom::Kind::zero: return wai::zero();
        case WacAtom::Kind::one: return wai::one();
        default: return wai::port(atom->name);
        }
    }
    return translate_term(std::get<WacPtr>(typed.body));
}

} // namespace detail

inline WaiPtr translate(const WacPtr& z) { return detail::translate_term(z); }

inline void collect_ports(const WacPtr& z, std::vector<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacTyped>) {
                if (const auto* atom = std::get_if<WacAtom>(&n.body)) {
                    if (atom->kind == WacAtom::Kind::port &&
                        std::find(out.begin(), out.end(), atom->name) == out.end())
                        out.push_back(atom->name);
                } else {
                    collect_ports(std::get<WacPtr>(n.body), out);
                }
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                collect_ports(n.left, out);
                collect_ports(n.right, out);
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                for (const WacPtr& f : n.factors) collect_ports(f, out);
            }
        },
        z->node);
}

// ---------------------------------------------------------------------------
// Equivalence: equal translated semantics on every interaction set.

inline bool wac_equiv(const WacPtr& z1, const WacPtr& z2, const PortSet& ports) {
    return wai_equiv(translate(z1), translate(z2), ports);
}

template <Semiring S>
bool wac_equiv_concrete(const WacPtr& z1, const WacPtr& z2, const PortSet& ports, const S& s,
                        const std::vector<typename S::value_type>& weights) {
    return wai_equiv_concrete(translate(z1), translate(z2), ports, s, weights);
}

// ---------------------------------------------------------------------------
// Congruence: the three-condition decision procedure.

/// Appends the trigger [1]' as one more factor of the flattened fusion; a
/// lone typed connector becomes a binary fusion; a union distributes over
/// its summands.
inline WacPtr fuse_trigger_one(const WacPtr& z) {
    return std::visit(
        [&](const auto& n) -> WacPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacUnion>) {
                return wac::unite(fuse_trigger_one(n.left), fuse_trigger_one(n.right));
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                std::vector<WacPtr> factors = n.factors;
                factors.push_back(wac::one(Typing::trigger));
                return wac::fuse(std::move(factors));
            } else {
                return wac::fuse(z, wac::one(Typing::trigger));
            }
        },
        z->node);
}

struct CongruenceReport {
    bool equivalent = false;          // condition 1: z1 == z2
    bool trigger_one_equivalent = false; // condition 2: z1 * [1]' == z2 * [1]'
    bool degree_parity = false;       // condition 3: #_T z1 > 0  <=>  #_T z2 > 0
    bool congruent() const { return equivalent && trigger_one_equivalent && degree_parity; }
};

/// Decides congruence of two connectors: they are interchangeable in every
/// connector context iff they are equivalent, stay equivalent after fusing
/// the trigger [1]', and agree on having a positive trigger degree.
inline CongruenceReport congruent_report(const WacPtr& z1, const WacPtr& z2, const PortSet& ports) {
    CongruenceReport r;
    r.equivalent = wac_equiv(z1, z2, ports);
    r.trigger_one_equivalent = wac_equiv(fuse_trigger_one(z1), fuse_trigger_one(z2), ports);
    r.degree_parity = (degree(z1).triggers > 0) == (degree(z2).triggers > 0);
    return r;
}

inline bool congruent(const WacPtr& z1, const WacPtr& z2, const PortSet& ports) {
    return congruent_report(z1, z2, ports).congruent();
}

// ---------------------------------------------------------------------------
// Contexts and substitution.

inline std::size_t count_holes(const WacPtr& z) {
    return std::visit(
        [&](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacHole>) {
                return 1;
            } else if constexpr (std::is_same_v<T, WacTyped>) {
                if (const auto* body = std::get_if<WacPtr>(&n.body)) return count_holes(*body);
                return 0;
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                return count_holes(n.left) + count_holes(n.right);
            } else {
                std::size_t c = 0;
                for (const WacPtr& f : n.factors) c += count_holes(f);
                return c;
            }
        },
        z->node);
}

namespace detail {

// Substitution follows the textual reading of the congruence definition. A
// hole under a typing bracket keeps the context's bracket: the connector
// nests as its body (a lone typed connector collapses one bracket layer, so
// [r] filled with p stays [p]). A bare hole takes the connector's own
// structure: a typed connector stands as the factor and a fusion splices its
// factors into the surrounding fusion. Fusing an untyped union is undefined
// (fusion operands must carry a typing bracket), so such contexts are
// inapplicable to union-shaped connectors and substitution rejects them.

inline WacPtr substitute_rec(const WacPtr& ctx, const WacPtr& z);

inline WacPtr fill_bare_fusion_hole(const std::vector<WacPtr>& factors, std::size_t at, const WacPtr& z) {
    if (is_union(z))
        throw context_error("context places the hole in a fusion, which is undefined for an untyped union");
    std::vector<WacPtr> out;
    out.reserve(factors.size() + 1);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i != at) {
            out.push_back(factors[i]);
        } else if (const auto* f = std::get_if<WacFusion>(&z->node)) {
            out.insert(out.end(), f->factors.begin(), f->factors.end());
        } else {
            out.push_back(z); // typed connector in factor position
        }
    }
    return wac::fuse(std::move(out));
}

inline WacPtr substitute_rec(const WacPtr& ctx, const WacPtr& z) {
    return std::visit(
        [&](const auto& n) -> WacPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacHole>) {
                return z; // bare hole standing alone or as a union operand
            } else if constexpr (std::is_same_v<T, WacTyped>) {
                const auto* body = std::get_if<WacPtr>(&n.body);
                if (!body) return ctx;
                if (is_hole(*body)) {
                    // bracketed hole [r]^t: the context's bracket stands, and
                    // a typed connector collapses its own top bracket into it
                    if (const auto* inner = std::get_if<WacTyped>(&z->node)) {
                        if (const auto* atom = std::get_if<WacAtom>(&inner->body))
                            return wac::typed(n.typing, *atom);
                        return wac::typed(n.typing, std::get<WacPtr>(inner->body));
                    }
                    return wac::typed(n.typing, z);
                }
                WacPtr filled = substitute_rec(*body, z);
                return filled == *body ? ctx : wac::typed(n.typing, filled);
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                WacPtr l = substitute_rec(n.left, z);
                WacPtr r = substitute_rec(n.right, z);
                return (l == n.left && r == n.right) ? ctx : wac::unite(l, r);
            } else {
                for (std::size_t i = 0; i < n.factors.size(); ++i)
                    if (is_hole(n.factors[i])) return fill_bare_fusion_hole(n.factors, i, z);
                std::vector<WacPtr> factors;
                factors.reserve(n.factors.size());
                bool changed = false;
                for (const WacPtr& f : n.factors) {
                    WacPtr g = substitute_rec(f, z);
                    changed |= (g != f);
                    factors.push_back(std::move(g));
                }
                return changed ? wac::fuse(std::move(factors)) : ctx;
            }
        },
        ctx->node);
}

} // namespace detail

/// Replaces the single hole occurrence in the context by the connector.
inline WacPtr substitute(const WacPtr& context, const WacPtr& z) {
    std::size_t holes = count_holes(context);
    if (holes == 0) throw context_error("context has no hole");
    if (holes > 1) throw context_error("context has " + std::to_string(holes) + " holes; exactly one expected");
    return detail::substitute_rec(context, z);
}

} // namespace wcon
