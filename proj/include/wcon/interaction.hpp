#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcon/errors.hpp"

namespace wcon {

/// The ambient finite set of ports, in declaration order. Port identifiers
/// are distinct, non-empty, and never the reserved constants "0" and "1".
class PortSet {
public:
    // Interactions are bit masks over port indices.
    static constexpr int max_ports = 20;

    PortSet() = default;

    explicit PortSet(std::vector<std::string> names) : names_(std::move(names)) {
        if (static_cast<int>(names_.size()) > max_ports)
            throw model_error("too many ports: " + std::to_string(names_.size()) + " > " +
                              std::to_string(max_ports));
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const std::string& n = names_[i];
            if (n.empty()) throw model_error("empty port name");
            if (n == "0" || n == "1") throw model_error("'" + n + "' is reserved and cannot name a port");
            auto [it, inserted] = index_.emplace(n, static_cast<int>(i));
            if (!inserted) throw model_error("duplicate port '" + n + "'");
        }
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw eval_error("unknown port '" + name + "'");
        return it->second;
    }
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// An interaction: a subset of the declared ports. The algebra manipulates
/// the empty interaction as well; only system-level interaction declarations
/// require non-emptiness.
struct Interaction {
    std::uint32_t mask = 0;

    bool empty() const { return mask == 0; }
    int size() const { return std::popcount(mask); }
    bool contains(int port_index) const { return (mask >> port_index) & 1u; }

    friend bool operator==(Interaction, Interaction) = default;
};

/// Lexicographic order on the ascending port-index sequences of two subsets;
/// the empty set comes first. This is the deterministic order used wherever
/// subsets or cover pairs are emitted.
inline bool subset_lex_less(Interaction a, Interaction b) {
    std::uint32_t x = a.mask, y = b.mask;
    while (x != 0 && y != 0) {
        int ix = std::countr_zero(x);
        int iy = std::countr_zero(y);
        if (ix != iy) return ix < iy;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

inline bool cover_pair_less(const std::pair<Interaction, Interaction>& p,
                            const std::pair<Interaction, Interaction>& q) {
    if (p.first.mask != q.first.mask) return subset_lex_less(p.first, q.first);
    return subset_lex_less(p.second, q.second);
}

/// A finite, canonical, duplicate-free set of interactions (an element of
/// Gamma(P) = 2^(2^P)). May contain the empty interaction and may be empty.
class InteractionSet {
public:
    InteractionSet() = default;

    explicit InteractionSet(std::vector<Interaction> elements) : elements_(std::move(elements)) {
        std::sort(elements_.begin(), elements_.end(), subset_lex_less);
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    }

    const std::vector<Interaction>& elements() const { return elements_; }
    bool empty() const { return elements_.empty(); }
    std::size_t size() const { return elements_.size(); }

    bool contains(Interaction a) const {
        return std::any_of(elements_.begin(), elements_.end(), [&](Interaction e) { return e == a; });
    }
    bool contains_empty_interaction() const { return contains(Interaction{0}); }

    friend bool operator==(const InteractionSet&, const InteractionSet&) = default;

private:
    std::vector<Interaction> elements_; // sorted by subset_lex_less, unique
};

/// All ordered pairs (a1, a2) with a1 u a2 = a, in deterministic
/// lexicographic order by (a1, a2). There are exactly 3^|a| of them,
/// including the overlapping and degenerate analyses.
inline std::vector<std::pair<Interaction, Interaction>> covers(Interaction a) {
    std::vector<std::pair<Interaction, Interaction>> out;
    // a1 ranges over submasks of a; a2 must contain a \ a1 and stay within a.
    std::uint32_t m = a.mask;
    std::uint32_t a1 = 0;
    while (true) {
        std::uint32_t rest = m & ~a1;
        std::uint32_t t = 0;
        while (true) { // a2 = rest | t for every submask t of a1
            out.push_back({Interaction{a1}, Interaction{rest | t}});
            if (t == a1) break;
            t = (t - a1) & a1;
        }
        if (a1 == m) break;
        a1 = (a1 - m) & m;
    }
    std::sort(out.begin(), out.end(), cover_pair_less);
    return out;
}

/// Enumerates all subsets of the first n ports in the canonical subset order.
inline std::vector<Interaction> all_subsets(int n_ports) {
    std::vector<Interaction> out;
    out.reserve(std::size_t{1} << n_ports);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n_ports); ++m) out.push_back(Interaction{m});
    std::sort(out.begin(), out.end(), subset_lex_less);
    return out;
}

/// Builds an interaction from port names resolved against the port set.
inline Interaction make_interaction(const PortSet& ports, const std::vector<std::string>& members) {
    Interaction a;
    for (const std::string& p : members) a.mask |= std::uint32_t{1} << ports.index_of(p);
    return a;
}

} // namespace wcon
