#pragma once

#include <climits>
#include <string>
#include <vector>

#include "wcon/free_value.hpp"
#include "wcon/interaction.hpp"
#include "wcon/wac.hpp"
#include "wcon/wai.hpp"

namespace wcon {

// Pretty printers with canonical spacing and minimal parentheses. Both term
// printers are exact inverses of the parser on ASTs the parser can produce:
// parse(pretty(z)) is structurally equal to z.

namespace detail {

// precedence: union 1 < synchronization/fusion 2 < atoms/brackets 3

inline void print_wai(const WaiPtr& z, int min_prec, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WaiZero>) {
                out += "0";
            } else if constexpr (std::is_same_v<T, WaiOne>) {
                out += "1";
            } else if constexpr (std::is_same_v<T, WaiPort>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, WaiUnion>) {
                bool parens = min_prec > 1;
                if (parens) out += "(";
                print_wai(n.left, 1, out);
                out += " + ";
                print_wai(n.right, 2, out);
                if (parens) out += ")";
            } else {
                bool parens = min_prec > 2;
                if (parens) out += "(";
                print_wai(n.left, 2, out);
                out += " * ";
                print_wai(n.right, 3, out);
                if (parens) out += ")";
            }
        },
        z->node);
}

inline void print_wac(const WacPtr& z, int min_prec, std::string& out);

inline void print_wac_typed(const WacTyped& typed, std::string& out) {
    out += "[";
    if (const auto* atom = std::get_if<WacAtom>(&typed.body)) {
        switch (atom->kind) {
        case WacAtom::Kind::zero: out += "0"; break;
        case WacAtom::Kind::one: out += "1"; break;
        default: out += atom->name; break;
        }
    } else {
        print_wac(std::get<WacPtr>(typed.body), 1, out);
    }
    out += "]";
    if (typed.typing == Typing::trigger) out += "'";
}

inline void print_wac(const WacPtr& z, int min_prec, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WacHole>) {
                out += "r"; // display name of the context hole
            } else if constexpr (std::is_same_v<T, WacTyped>) {
                print_wac_typed(n, out);
            } else if constexpr (std::is_same_v<T, WacUnion>) {
                bool parens = min_prec > 1;
                if (parens) out += "(";
                print_wac(n.left, 1, out);
                out += " + ";
                print_wac(n.right, 2, out);
                if (parens) out += ")";
            } else {
                // factors are typed brackets; an arity-1 fusion prints as its
                // lone factor (the parser never produces arity-1 fusions)
                for (std::size_t i = 0; i < n.factors.size(); ++i) {
                    if (i) out += " * ";
                    print_wac(n.factors[i], 3, out);
                }
            }
        },
        z->node);
}

} // namespace detail

inline std::string pretty(const WaiPtr& z) {
    std::string out;
    detail::print_wai(z, 1, out);
    return out;
}

inline std::string pretty(const WacPtr& z) {
    std::string out;
    detail::print_wac(z, 1, out);
    return out;
}

inline std::string render_interaction(Interaction a, const PortSet& ports) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < ports.size(); ++i) {
        if (!a.contains(i)) continue;
        if (!first) out += ",";
        out += ports.name(i);
        first = false;
    }
    return out + "}";
}

inline std::string render_gamma(const InteractionSet& gamma, const PortSet& ports) {
    std::string out = "{";
    bool first = true;
    for (Interaction a : gamma.elements()) {
        if (!first) out += ",";
        out += render_interaction(a, ports);
        first = false;
    }
    return out + "}";
}

/// Renders a free value in k_p notation: monomials in graded order (length
/// first, then the port-index sequence), generators ordered by port index
/// with multiplicity shown by repetition. Zero and one render as 0 and 1.
inline std::string render_free(const FreeValue& v, const PortSet& ports) {
    if (v.is_zero()) return "0";

    auto gen_index = [&](const std::string& g) { return ports.contains(g) ? ports.index_of(g) : INT_MAX; };
    auto indexed = [&](const Monomial& m) {
        std::vector<std::pair<int, std::string>> keys;
        keys.reserve(m.size());
        for (const std::string& g : m) keys.emplace_back(gen_index(g), g);
        std::sort(keys.begin(), keys.end());
        return keys;
    };

    std::vector<Monomial> monos = v.monomials();
    std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return indexed(a) < indexed(b);
    });

    std::string out;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        if (i) out += " + ";
        if (monos[i].empty()) {
            out += "1";
            continue;
        }
        auto keys = indexed(monos[i]);
        for (std::size_t j = 0; j < keys.size(); ++j) {
            if (j) out += " * ";
            out += "k_" + keys[j].second;
        }
    }
    return out;
}

} // namespace wcon
