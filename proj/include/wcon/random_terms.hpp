#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "wcon/interaction.hpp"
#include "wcon/wac.hpp"
#include "wcon/wai.hpp"

namespace wcon {

// Seeded generators for property tests and the congruence oracle. All draws
// go through the supplied engine, so a fixed seed reproduces every term.

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool rand_bool(Rng& rng) { return rand_int(rng, 0, 1) == 1; }

inline std::string rand_port_name(Rng& rng, const PortSet& ports) {
    return ports.name(rand_int(rng, 0, ports.size() - 1));
}

inline WaiPtr random_wai_term(Rng& rng, const PortSet& ports, int max_depth) {
    if (max_depth <= 0 || rand_int(rng, 0, 3) == 0) {
        switch (rand_int(rng, 0, 3)) {
        case 0: return wai::zero();
        case 1: return wai::one();
        default: return wai::port(rand_port_name(rng, ports));
        }
    }
    if (rand_bool(rng))
        return wai::add(random_wai_term(rng, ports, max_depth - 1), random_wai_term(rng, ports, max_depth - 1));
    return wai::sync(random_wai_term(rng, ports, max_depth - 1), random_wai_term(rng, ports, max_depth - 1));
}

inline InteractionSet random_gamma(Rng& rng, const PortSet& ports) {
    std::vector<Interaction> elems;
    const std::uint32_t full = (std::uint32_t{1} << ports.size()) - 1;
    int count = rand_int(rng, 0, 1 << std::min(ports.size(), 3));
    for (int i = 0; i < count; ++i)
        elems.push_back(Interaction{static_cast<std::uint32_t>(rand_int(rng, 0, static_cast<int>(full)))});
    return InteractionSet(std::move(elems));
}

inline Typing random_typing(Rng& rng) { return rand_bool(rng) ? Typing::trigger : Typing::synchron; }

inline WacPtr random_typed_atom(Rng& rng, const PortSet& ports) {
    switch (rand_int(rng, 0, 4)) {
    case 0: return wac::zero(random_typing(rng));
    case 1: return wac::one(random_typing(rng));
    default: return wac::port(rand_port_name(rng, ports), random_typing(rng));
    }
}

inline WacPtr random_wac_term(Rng& rng, const PortSet& ports, int max_depth);

/// A typed operand: an atom, or a bracket over a smaller term.
inline WacPtr random_typed_factor(Rng& rng, const PortSet& ports, int max_depth) {
    if (max_depth <= 0 || rand_int(rng, 0, 2) == 0) return random_typed_atom(rng, ports);
    return wac::typed(random_typing(rng), random_wac_term(rng, ports, max_depth - 1));
}

inline WacPtr random_wac_term(Rng& rng, const PortSet& ports, int max_depth) {
    if (max_depth <= 0) return random_typed_atom(rng, ports);
    switch (rand_int(rng, 0, 3)) {
    case 0: return random_typed_factor(rng, ports, max_depth);
    case 1:
        return wac::unite(random_wac_term(rng, ports, max_depth - 1), random_wac_term(rng, ports, max_depth - 1));
    default: {
        std::vector<WacPtr> factors;
        int arity = rand_int(rng, 2, 3);
        factors.reserve(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) factors.push_back(random_typed_factor(rng, ports, max_depth - 1));
        return wac::fuse(std::move(factors));
    }
    }
}

/// A random context: a connector over P u {r} with exactly one hole, bare or
/// bracketed. The hole is threaded down one branch of the generated tree.
inline WacPtr random_context(Rng& rng, const PortSet& ports, int max_depth) {
    if (max_depth <= 0 || rand_int(rng, 0, 3) == 0)
        return rand_bool(rng) ? wac::bare_hole() : wac::hole(random_typing(rng));
    switch (rand_int(rng, 0, 2)) {
    case 0: // hole inside a typing bracket
        return wac::typed(random_typing(rng), random_context(rng, ports, max_depth - 1));
    case 1: { // hole in one union operand
        WacPtr with_hole = random_context(rng, ports, max_depth - 1);
        WacPtr other = random_wac_term(rng, ports, max_depth - 1);
        return rand_bool(rng) ? wac::unite(with_hole, other) : wac::unite(other, with_hole);
    }
    default: { // hole as one factor of an n-ary fusion
        int arity = rand_int(rng, 2, 4);
        int hole_at = rand_int(rng, 0, arity - 1);
        std::vector<WacPtr> factors;
        factors.reserve(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) {
            if (i == hole_at) {
                // a bare hole factor, a bracketed one, or a bracket with the
                // hole deeper inside
                if (max_depth > 1 && rand_int(rng, 0, 2) == 0)
                    factors.push_back(wac::typed(random_typing(rng), random_context(rng, ports, max_depth - 1)));
                else
                    factors.push_back(rand_bool(rng) ? wac::bare_hole() : wac::hole(random_typing(rng)));
            } else {
                factors.push_back(random_typed_factor(rng, ports, max_depth - 1));
            }
        }
        return wac::fuse(std::move(factors));
    }
    }
}

// ---------------------------------------------------------------------------
// Equivalence-preserving rewriting, used to manufacture pairs z1 == z2 for
// the congruence properties. Every rule below preserves the translated
// semantics over every commutative idempotent semiring.

namespace detail {

// shape_free: the rewrite may change the node's top-level shape (typed to
// union or fusion). Inside a fusion factor position only shape-preserving
// rewrites apply, so factors stay typed.
inline WacPtr rewrite_once(Rng& rng, const WacPtr& z, bool shape_free);

inline WacPtr rewrite_child(Rng& rng, const WacPtr& z) {
    return std::visit(
        [&](const auto& n) -> WacPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacTyped>) {
                if (const auto* body = std::get_if<WacPtr>(&n.body))
                    return wac::typed(n.typing, rewrite_once(rng, *body, true));
                return z;
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                if (rand_bool(rng)) return wac::unite(rewrite_once(rng, n.left, true), n.right);
                return wac::unite(n.left, rewrite_once(rng, n.right, true));
            } else if constexpr (std::is_same_v<T, WacFusion>) {
                std::vector<WacPtr> factors = n.factors;
                std::size_t at = static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(factors.size()) - 1));
                factors[at] = rewrite_once(rng, factors[at], false);
                return wac::fuse(std::move(factors));
            } else {
                return z;
            }
        },
        z->node);
}

inline WacPtr rewrite_once(Rng& rng, const WacPtr& z, bool shape_free) {
    switch (rand_int(rng, 0, 6)) {
    case 0: // [[z]^a]^b == [z]^b : wrap under a fresh inner bracket
        if (is_typed(z)) {
            const auto& typed = std::get<WacTyped>(z->node);
            return wac::typed(typed.typing, wac::typed(random_typing(rng), z));
        }
        break;
    case 1: // [[z]^a]^b == [z]^b : collapse a double bracket
        if (is_typed(z)) {
            const auto& outer = std::get<WacTyped>(z->node);
            if (const auto* body = std::get_if<WacPtr>(&outer.body); body && is_typed(*body)) {
                const auto& inner = std::get<WacTyped>((*body)->node);
                if (const auto* atom = std::get_if<WacAtom>(&inner.body))
                    return wac::typed(outer.typing, *atom);
                return wac::typed(outer.typing, std::get<WacPtr>(inner.body));
            }
        }
        break;
    case 2: // [z1 + z2]^a == [z1]^a + [z2]^a
        if (shape_free && is_typed(z)) {
            const auto& typed = std::get<WacTyped>(z->node);
            if (const auto* body = std::get_if<WacPtr>(&typed.body); body && is_union(*body)) {
                const auto& u = std::get<WacUnion>((*body)->node);
                return wac::unite(wac::typed(typed.typing, u.left), wac::typed(typed.typing, u.right));
            }
        }
        break;
    case 3: // commutativity of union / of fusion over typed operands
        if (is_union(z)) {
            const auto& u = std::get<WacUnion>(z->node);
            return wac::unite(u.right, u.left);
        }
        if (is_fusion(z)) {
            std::vector<WacPtr> factors = std::get<WacFusion>(z->node).factors;
            std::shuffle(factors.begin(), factors.end(), rng);
            return wac::fuse(std::move(factors));
        }
        break;
    case 4: // [1] is neutral for fusion: append or strip it
        if (is_fusion(z)) {
            std::vector<WacPtr> factors = std::get<WacFusion>(z->node).factors;
            if (factors.size() > 1 && rand_bool(rng)) {
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    const auto& t = std::get<WacTyped>(factors[i]->node);
                    const auto* atom = std::get_if<WacAtom>(&t.body);
                    if (atom && atom->kind == WacAtom::Kind::one && t.typing == Typing::synchron) {
                        factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(i));
                        return wac::fuse(std::move(factors));
                    }
                }
            }
            factors.push_back(wac::one(Typing::synchron));
            return wac::fuse(std::move(factors));
        }
        if (shape_free && is_typed(z)) return wac::fuse(z, wac::one(Typing::synchron));
        break;
    case 5: // z + z == z and z + [0] == z
        if (shape_free)
            return rand_bool(rng) ? wac::unite(z, z) : wac::unite(z, wac::zero(random_typing(rng)));
        break;
    default:
        break;
    }
    return rewrite_child(rng, z);
}

} // namespace detail

/// Produces a connector equivalent to z (same translated semantics over
/// every commutative idempotent semiring) by a few random sound rewrites.
inline WacPtr random_equivalent_variant(Rng& rng, const WacPtr& z) {
    WacPtr out = z;
    int steps = rand_int(rng, 1, 3);
    for (int i = 0; i < steps; ++i) out = detail::rewrite_once(rng, out, true);
    return out;
}

} // namespace wcon
