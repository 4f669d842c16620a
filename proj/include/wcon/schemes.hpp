#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wcon/interaction.hpp"
#include "wcon/semiring.hpp"
#include "wcon/wac.hpp"

namespace wcon {

// ---------------------------------------------------------------------------
// The four coordination schemes, as connectors over a sender port and a
// sequence of receiver ports.

enum class SchemeKind { rendezvous, broadcast, atomic_broadcast, causality_chain };

inline const char* scheme_name(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::rendezvous: return "rendezvous";
    case SchemeKind::broadcast: return "broadcast";
    case SchemeKind::atomic_broadcast: return "atomic-broadcast";
    default: return "causality-chain";
    }
}

inline SchemeKind parse_scheme_kind(const std::string& name) {
    if (name == "rendezvous") return SchemeKind::rendezvous;
    if (name == "broadcast") return SchemeKind::broadcast;
    if (name == "atomic-broadcast") return SchemeKind::atomic_broadcast;
    if (name == "causality-chain") return SchemeKind::causality_chain;
    throw std::invalid_argument("unknown scheme kind '" + name + "'");
}

namespace detail {

inline void check_scheme_ports(const std::string& sender, const std::vector<std::string>& receivers) {
    if (receivers.empty()) throw std::invalid_argument("a scheme needs at least one receiver");
    std::set<std::string> seen{sender};
    if (sender.empty() || sender == "0" || sender == "1")
        throw std::invalid_argument("invalid sender port '" + sender + "'");
    for (const std::string& r : receivers) {
        if (r.empty() || r == "0" || r == "1") throw std::invalid_argument("invalid receiver port '" + r + "'");
        if (!seen.insert(r).second) throw std::invalid_argument("duplicate port '" + r + "' in scheme");
    }
}

} // namespace detail

/// Strong synchronization of the sender with every receiver:
/// [s] * [r1] * ... * [rn].
inline WacPtr rendezvous(const std::string& sender, const std::vector<std::string>& receivers) {
    detail::check_scheme_ports(sender, receivers);
    std::vector<WacPtr> factors{wac::port(sender)};
    for (const std::string& r : receivers) factors.push_back(wac::port(r));
    return wac::fuse(std::move(factors));
}

/// The sender triggers any subset of receivers: [s]' * [r1] * ... * [rn].
inline WacPtr broadcast(const std::string& sender, const std::vector<std::string>& receivers) {
    detail::check_scheme_ports(sender, receivers);
    std::vector<WacPtr> factors{wac::port(sender, Typing::trigger)};
    for (const std::string& r : receivers) factors.push_back(wac::port(r));
    return wac::fuse(std::move(factors));
}

/// All receivers or none: [s]' * [[r1] * ... * [rn]].
inline WacPtr atomic_broadcast(const std::string& sender, const std::vector<std::string>& receivers) {
    detail::check_scheme_ports(sender, receivers);
    WacPtr group;
    if (receivers.size() == 1) {
        group = wac::synchron(wac::port(receivers.front()));
    } else {
        std::vector<WacPtr> inner;
        for (const std::string& r : receivers) inner.push_back(wac::port(r));
        group = wac::synchron(wac::fuse(std::move(inner)));
    }
    return wac::fuse(wac::port(sender, Typing::trigger), group);
}

/// Receiver i participates only if all receivers before it do:
/// [s]' * [[r1]' * [[r2]' * [... [rn]]]], innermost receiver a synchron. The
/// generalization beyond two receivers keeps the right-nesting with trigger
/// typing at every non-terminal receiver; its support is the n+1 prefix-
/// closed interaction sets.
inline WacPtr causality_chain(const std::string& sender, const std::vector<std::string>& receivers) {
    detail::check_scheme_ports(sender, receivers);
    WacPtr chain = wac::port(receivers.back());
    for (std::size_t i = receivers.size() - 1; i-- > 0;) {
        WacPtr tail = is_typed(chain) ? chain : wac::synchron(chain);
        chain = wac::fuse(wac::port(receivers[i], Typing::trigger), tail);
    }
    // a single receiver degenerates to the atomic-broadcast shape [s]' * [[r1]]
    return wac::fuse(wac::port(sender, Typing::trigger), wac::synchron(chain));
}

inline WacPtr make_scheme(SchemeKind kind, const std::string& sender, const std::vector<std::string>& receivers) {
    switch (kind) {
    case SchemeKind::rendezvous: return rendezvous(sender, receivers);
    case SchemeKind::broadcast: return broadcast(sender, receivers);
    case SchemeKind::atomic_broadcast: return atomic_broadcast(sender, receivers);
    default: return causality_chain(sender, receivers);
    }
}

/// The interaction set each scheme is evaluated on: Rendezvous the full
/// interaction; Broadcast every interaction containing the sender; Atomic
/// Broadcast the sender alone or everything; Causality Chain the prefix
/// chain.
inline InteractionSet canonical_gamma(SchemeKind kind, const std::string& sender,
                                      const std::vector<std::string>& receivers, const PortSet& ports) {
    detail::check_scheme_ports(sender, receivers);
    const std::uint32_t s_bit = std::uint32_t{1} << ports.index_of(sender);
    std::vector<std::uint32_t> r_bits;
    for (const std::string& r : receivers) r_bits.push_back(std::uint32_t{1} << ports.index_of(r));

    std::vector<Interaction> elems;
    switch (kind) {
    case SchemeKind::rendezvous: {
        std::uint32_t full = s_bit;
        for (std::uint32_t b : r_bits) full |= b;
        elems.push_back(Interaction{full});
        break;
    }
    case SchemeKind::broadcast: {
        for (std::uint32_t t = 0; t < (std::uint32_t{1} << r_bits.size()); ++t) {
            std::uint32_t m = s_bit;
            for (std::size_t i = 0; i < r_bits.size(); ++i)
                if ((t >> i) & 1u) m |= r_bits[i];
            elems.push_back(Interaction{m});
        }
        break;
    }
    case SchemeKind::atomic_broadcast: {
        std::uint32_t full = s_bit;
        for (std::uint32_t b : r_bits) full |= b;
        elems.push_back(Interaction{s_bit});
        elems.push_back(Interaction{full});
        break;
    }
    default: { // causality chain: prefixes
        std::uint32_t m = s_bit;
        elems.push_back(Interaction{m});
        for (std::uint32_t b : r_bits) {
            m |= b;
            elems.push_back(Interaction{m});
        }
        break;
    }
    }
    return InteractionSet(std::move(elems));
}

// ---------------------------------------------------------------------------
// Weighted component model: components are weighted labelled transition
// systems whose transition weight is the product of the interaction's port
// weights.

template <Semiring S>
struct WltsComponent {
    using value_type = typename S::value_type;

    struct Transition {
        std::string from;
        std::vector<std::string> interaction; // non-empty, within this component's ports
        std::string to;
    };

    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> ports;
    std::map<std::string, value_type> ct; // port weights
    std::vector<Transition> transitions;
};

/// wt((q,a,q')) = product over p in a of ct(p).
template <Semiring S>
typename S::value_type transition_weight(const WltsComponent<S>& c,
                                         const typename WltsComponent<S>::Transition& t, const S& s) {
    if (t.interaction.empty()) throw eval_error("transition interaction must be non-empty");
    auto w = s.one();
    for (const std::string& p : t.interaction) {
        auto it = c.ct.find(p);
        if (it == c.ct.end()) throw eval_error("no weight for port '" + p + "' in component '" + c.name + "'");
        w = s.mul(w, it->second);
    }
    return w;
}

template <Semiring S>
struct WeightedSystem {
    std::vector<WltsComponent<S>> components;
    WacPtr connector; // over the union of all component ports
};

struct ValidationIssue {
    std::string message;
    std::string first;  // offending component
    std::string second; // second component for pairwise violations, else empty
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks pairwise disjointness of (states u ports) across components and
/// that every transition stays within its component: interaction ports
/// declared and weighted, endpoint states declared, interactions non-empty.
template <Semiring S>
ValidationReport validate_system(const WeightedSystem<S>& sys) {
    ValidationReport report;
    for (std::size_t i = 0; i < sys.components.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.components.size(); ++j) {
            const auto& a = sys.components[i];
            const auto& b = sys.components[j];
            std::set<std::string> left(a.states.begin(), a.states.end());
            left.insert(a.ports.begin(), a.ports.end());
            for (const std::string& x : b.states)
                if (left.count(x))
                    report.issues.push_back({"state or port '" + x + "' shared between components", a.name, b.name});
            for (const std::string& x : b.ports)
                if (left.count(x))
                    report.issues.push_back({"state or port '" + x + "' shared between components", a.name, b.name});
        }
    }
    for (const auto& c : sys.components) {
        std::set<std::string> states(c.states.begin(), c.states.end());
        std::set<std::string> ports(c.ports.begin(), c.ports.end());
        for (const auto& t : c.transitions) {
            if (t.interaction.empty())
                report.issues.push_back({"empty transition interaction", c.name, {}});
            if (!states.count(t.from) || !states.count(t.to))
                report.issues.push_back({"transition endpoint outside declared states", c.name, {}});
            for (const std::string& p : t.interaction)
                if (!ports.count(p))
                    report.issues.push_back({"transition uses port '" + p + "' not owned by the component",
                                             c.name, {}});
        }
        for (const std::string& p : c.ports)
            if (!c.ct.count(p)) report.issues.push_back({"port '" + p + "' has no weight", c.name, {}});
    }
    return report;
}

} // namespace wcon
