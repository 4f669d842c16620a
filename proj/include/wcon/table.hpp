#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcon/errors.hpp"
#include "wcon/free_value.hpp"
#include "wcon/interaction.hpp"
#include "wcon/printer.hpp"
#include "wcon/wai.hpp"

namespace wcon {

// Analysis tables: one row per cover pair (a1, a2) of the analyzed
// interaction, with the weights of the two split factors and their product,
// and a trailing total row holding the add-fold of the products (which is
// the weight of the whole term on the singleton {a}).

template <Semiring S>
struct TableRow {
    Interaction a1, a2;
    typename S::value_type left, right, product;
};

template <Semiring S>
struct AnalysisTable {
    WaiPtr term;       // the analyzed term
    WaiPtr left_term;  // factors before the split point
    WaiPtr right_term; // factors after the split point
    Interaction interaction;
    std::vector<TableRow<S>> rows; // in deterministic cover order
    typename S::value_type total;
};

/// Flattens the top-level synchronization spine into its factor list.
inline std::vector<WaiPtr> sync_factors(const WaiPtr& z) {
    if (const auto* s = std::get_if<WaiSync>(&z->node)) {
        std::vector<WaiPtr> out = sync_factors(s->left);
        out.push_back(s->right);
        return out;
    }
    return {z};
}

namespace detail {

inline WaiPtr fold_sync(const std::vector<WaiPtr>& factors, std::size_t from, std::size_t to) {
    WaiPtr acc = factors[from];
    for (std::size_t i = from + 1; i < to; ++i) acc = wai::sync(acc, factors[i]);
    return acc;
}

/// The subterm whose own auxiliary tables are derived next: the term itself
/// when it has a top-level synchronization, otherwise the first such
/// component found under top-level unions.
inline std::optional<WaiPtr> aux_candidate(const WaiPtr& z) {
    if (sync_factors(z).size() >= 2) return z;
    if (const auto* u = std::get_if<WaiUnion>(&z->node)) {
        if (auto l = aux_candidate(u->left)) return l;
        if (auto r = aux_candidate(u->right)) return r;
    }
    return std::nullopt;
}

} // namespace detail

/// Builds the analysis table of z on {a}, splitting the top synchronization
/// spine after `split` factors (default right after the first, as the
/// analyses usually do; any split yields the same total).
template <Semiring S>
AnalysisTable<S> make_analysis_table(const WaiPtr& z, Interaction a, const PortSet& ports, const S& s,
                                     const std::vector<typename S::value_type>& weights, int split = 1) {
    if (ports.size() > max_normalize_ports)
        throw eval_error("port set too large for analysis tables: " + std::to_string(ports.size()) + " > " +
                         std::to_string(max_normalize_ports));
    std::vector<WaiPtr> factors = sync_factors(z);
    if (factors.size() < 2)
        throw eval_error("term '" + pretty(z) + "' has no top-level synchronization to split");
    if (split < 1 || split >= static_cast<int>(factors.size()))
        throw eval_error("split point " + std::to_string(split) + " out of range 1.." +
                         std::to_string(factors.size() - 1));

    AnalysisTable<S> table{z,
                           detail::fold_sync(factors, 0, static_cast<std::size_t>(split)),
                           detail::fold_sync(factors, static_cast<std::size_t>(split), factors.size()),
                           a,
                           {},
                           s.zero()};

    WaiEvaluator<S> left_eval(ports, s, weights);
    WaiEvaluator<S> right_eval(ports, s, weights);
    for (auto [a1, a2] : covers(a)) {
        TableRow<S> row{a1, a2, left_eval.singleton(table.left_term, a1),
                        right_eval.singleton(table.right_term, a2), s.zero()};
        row.product = s.mul(row.left, row.right);
        table.total = s.add(table.total, row.product);
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// The primary table followed, in nested mode, by the auxiliary tables of
/// the right factor (and recursively of its right factor), one per subset
/// of the analyzed interaction in canonical order.
template <Semiring S>
std::vector<AnalysisTable<S>> make_analysis_tables(const WaiPtr& z, Interaction a, const PortSet& ports,
                                                   const S& s,
                                                   const std::vector<typename S::value_type>& weights,
                                                   int split = 1, bool nested = false) {
    std::vector<AnalysisTable<S>> out;
    out.push_back(make_analysis_table(z, a, ports, s, weights, split));
    if (!nested) return out;

    std::vector<Interaction> subsets;
    for (Interaction b : all_subsets(ports.size()))
        if ((b.mask & ~a.mask) == 0) subsets.push_back(b);

    std::optional<WaiPtr> next = detail::aux_candidate(out.front().right_term);
    while (next) {
        const WaiPtr aux = *next;
        for (Interaction b : subsets) out.push_back(make_analysis_table(aux, b, ports, s, weights, 1));
        next = detail::aux_candidate(out.back().right_term);
    }
    return out;
}

inline std::vector<typename FreeSemiring::value_type> make_free_weights(const PortSet& ports) {
    std::vector<FreeValue> weights;
    weights.reserve(static_cast<std::size_t>(ports.size()));
    for (const std::string& name : ports.names()) weights.push_back(FreeValue::generator(name));
    return weights;
}

/// Renders a table as aligned text. `fmt` formats carrier values; symbolic
/// tables pass the k_p renderer, concrete ones the semiring's format.
template <Semiring S, class Fmt>
std::string render_analysis_table(const AnalysisTable<S>& table, const PortSet& ports, Fmt&& fmt) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"a1", "a2", "||" + pretty(table.left_term) + "||({a1})",
                     "||" + pretty(table.right_term) + "||({a2})", "(*)"});
    for (const auto& row : table.rows)
        cells.push_back({render_interaction(row.a1, ports), render_interaction(row.a2, ports), fmt(row.left),
                         fmt(row.right), fmt(row.product)});
    cells.push_back({"(+)", "", "", "", fmt(table.total)});

    std::vector<std::size_t> width(5, 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());

    std::string out = "table: ||" + pretty(table.term) + "||(" + render_interaction(table.interaction, ports) +
                      ")\n";
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < 5; ++c) {
            std::string cell = row[c];
            if (c + 1 < 5) {
                cell.resize(width[c], ' ');
                out += cell + " | ";
            } else {
                out += cell + "\n"; // no padding after the last column
            }
        }
    };
    emit_row(cells[0]);
    for (std::size_t c = 0; c < 5; ++c) {
        out += std::string(width[c], '-');
        out += (c + 1 < 5) ? "-+-" : "\n";
    }
    for (std::size_t i = 1; i + 1 < cells.size(); ++i) emit_row(cells[i]);
    for (std::size_t c = 0; c < 5; ++c) {
        out += std::string(width[c], '-');
        out += (c + 1 < 5) ? "-+-" : "\n";
    }
    emit_row(cells.back());
    return out;
}

} // namespace wcon
