#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcon/errors.hpp"
#include "wcon/free_value.hpp"
#include "wcon/interaction.hpp"
#include "wcon/printer.hpp"
#include "wcon/schemes.hpp"
#include "wcon/semiring.hpp"
#include "wcon/wac.hpp"
#include "wcon/wai.hpp"

namespace wcon {

/// A semiring bound to a weight assignment for the model's ports; weights
/// are aligned with the port declaration order.
template <Semiring S>
struct Bound {
    S semiring;
    std::vector<typename S::value_type> weights;
};

/// The idempotent semirings a model may declare. The natural semiring is
/// deliberately absent: it fails additive idempotence and model load rejects
/// it (it remains available to the law checker as the negative fixture).
using ModelSemiring = std::variant<Bound<BoolSemiring>, Bound<MinPlusSemiring>, Bound<MaxPlusSemiring>,
                                   Bound<ViterbiSemiring>, Bound<FuzzySemiring>, Bound<PowersetSemiring>>;

struct QueryEval {
    std::string term, gamma;
};
struct QueryEquiv {
    std::string lhs, rhs;
    EquivMode mode = EquivMode::universal;
};
struct QueryCongruent {
    std::string lhs, rhs;
};
struct QueryTable {
    std::string term;
    Interaction interaction;
};
struct QueryScheme {
    SchemeKind kind;
    std::string sender;
    std::vector<std::string> receivers;
};
using Query = std::variant<QueryEval, QueryEquiv, QueryCongruent, QueryTable, QueryScheme>;

/// A parsed .wconn model: one semiring with port weights, named term and
/// connector definitions, named interaction sets, and queries.
struct Model {
    ModelSemiring semiring;
    PortSet ports;
    std::vector<std::pair<std::string, WaiPtr>> wai_defs;
    std::vector<std::pair<std::string, WacPtr>> wac_defs;
    std::vector<std::pair<std::string, InteractionSet>> gammas;
    std::vector<Query> queries;

    std::string semiring_kind() const {
        return std::visit([](const auto& b) { return std::string(std::decay_t<decltype(b.semiring)>::kind_name); },
                          semiring);
    }

    const WaiPtr* find_wai(const std::string& name) const {
        for (const auto& [n, t] : wai_defs)
            if (n == name) return &t;
        return nullptr;
    }
    const WacPtr* find_wac(const std::string& name) const {
        for (const auto& [n, t] : wac_defs)
            if (n == name) return &t;
        return nullptr;
    }
    const InteractionSet* find_gamma(const std::string& name) const {
        for (const auto& [n, g] : gammas)
            if (n == name) return &g;
        return nullptr;
    }

    std::string format_weight(int port_index) const {
        return std::visit(
            [&](const auto& b) { return b.semiring.format(b.weights.at(static_cast<std::size_t>(port_index))); },
            semiring);
    }
};

/// Canonical re-emission of a model as .wconn text.
inline std::string render_model(const Model& m) {
    std::string out = "semiring " + m.semiring_kind();
    if (const auto* p = std::get_if<Bound<PowersetSemiring>>(&m.semiring)) {
        out += " {";
        for (std::size_t i = 0; i < p->semiring.universe.size(); ++i) {
            if (i) out += ",";
            out += p->semiring.universe[i];
        }
        out += "}";
    }
    out += ";\n";
    for (int i = 0; i < m.ports.size(); ++i)
        out += "port " + m.ports.name(i) + " = " + m.format_weight(i) + ";\n";
    for (const auto& [name, term] : m.wai_defs) out += "wai " + name + " = " + pretty(term) + ";\n";
    for (const auto& [name, term] : m.wac_defs) out += "wac " + name + " = " + pretty(term) + ";\n";
    for (const auto& [name, gamma] : m.gammas)
        out += "gamma " + name + " = " + render_gamma(gamma, m.ports) + ";\n";
    for (const Query& q : m.queries) {
        out += "query ";
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, QueryEval>) {
                    out += "eval " + v.term + " over " + v.gamma;
                } else if constexpr (std::is_same_v<T, QueryEquiv>) {
                    out += "equiv " + v.lhs + " " + v.rhs + " " +
                           (v.mode == EquivMode::universal ? "universal" : "concrete");
                } else if constexpr (std::is_same_v<T, QueryCongruent>) {
                    out += "congruent " + v.lhs + " " + v.rhs;
                } else if constexpr (std::is_same_v<T, QueryTable>) {
                    out += "table " + v.term + " " + render_interaction(v.interaction, m.ports);
                } else {
                    out += "scheme " + std::string(scheme_name(v.kind)) + " " + v.sender;
                    for (const std::string& r : v.receivers) out += " " + r;
                }
            },
            q);
        out += ";\n";
    }
    return out;
}

} // namespace wcon
