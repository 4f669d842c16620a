#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcon/printer.hpp"
#include "wcon/random_terms.hpp"
#include "wcon/wac.hpp"

namespace wcon {

/// Sampling cross-check for the congruence decision procedure. Never the
/// decision procedure itself: it approximates the universal quantification
/// over contexts with a canonical family (standalone and bracketed holes,
/// union operands, fusion positions including one against the trigger [1]')
/// plus seeded random contexts.
struct OracleOptions {
    int depth = 3;
    int contexts = 500;
    std::uint64_t seed = 0;
};

struct OracleReport {
    bool counterexample_found = false;
    std::string context;               // pretty-printed first distinguishing context
    std::size_t contexts_checked = 0;  // applicable contexts actually compared
    std::size_t contexts_skipped = 0;  // inapplicable (hole in a fusion, connector a union)
};

namespace detail {

inline std::vector<WacPtr> canonical_contexts(Rng& rng, const PortSet& ports, int depth) {
    std::vector<WacPtr> ctxs;
    ctxs.push_back(wac::bare_hole());            // r
    ctxs.push_back(wac::hole(Typing::synchron)); // [r]
    ctxs.push_back(wac::hole(Typing::trigger));  // [r]'
    WacPtr xi1 = random_wac_term(rng, ports, depth - 1);
    WacPtr xi2 = random_wac_term(rng, ports, depth - 1);
    ctxs.push_back(wac::unite(wac::bare_hole(), xi1));                              // r + z
    ctxs.push_back(wac::unite(xi2, wac::bare_hole()));                              // z + r
    ctxs.push_back(wac::fuse(wac::bare_hole(), wac::typed(Typing::synchron, xi1))); // r * [z]
    ctxs.push_back(wac::fuse(wac::bare_hole(), wac::typed(Typing::trigger, xi2)));  // r * [z]'
    ctxs.push_back(wac::fuse(wac::bare_hole(), wac::one(Typing::trigger)));         // r * [1]'
    ctxs.push_back(wac::fuse(wac::bare_hole(), wac::port(ports.name(0))));          // r * [p]
    { // r inside an n-ary fusion with random typed factors
        int arity = rand_int(rng, 3, 4);
        int hole_at = rand_int(rng, 0, arity - 1);
        std::vector<WacPtr> factors;
        for (int i = 0; i < arity; ++i)
            factors.push_back(i == hole_at ? wac::bare_hole() : random_typed_factor(rng, ports, depth - 1));
        ctxs.push_back(wac::fuse(std::move(factors)));
    }
    return ctxs;
}

} // namespace detail

/// Samples contexts E and reports the first with E(z1/r) != E(z2/r), or "no
/// counterexample" after the requested budget. Deterministic for a fixed seed.
inline OracleReport congruence_oracle(const WacPtr& z1, const WacPtr& z2, const PortSet& ports,
                                      const OracleOptions& options = {}) {
    if (options.depth < 1 || options.depth > 3)
        throw std::invalid_argument("oracle depth must be between 1 and 3");
    if (options.contexts < 0 || options.contexts > 10000)
        throw std::invalid_argument("oracle context budget must be between 0 and 10000");

    Rng rng(options.seed);
    OracleReport report;

    auto try_context = [&](const WacPtr& ctx) {
        WacPtr left, right;
        try {
            left = substitute(ctx, z1);
            right = substitute(ctx, z2);
        } catch (const context_error&) {
            // a union cannot stand untyped in a fusion position; the context
            // does not apply to this pair
            ++report.contexts_skipped;
            return false;
        }
        ++report.contexts_checked;
        if (!wac_equiv(left, right, ports)) {
            report.counterexample_found = true;
            report.context = pretty(ctx);
            return true;
        }
        return false;
    };

    for (const WacPtr& ctx : detail::canonical_contexts(rng, ports, options.depth))
        if (try_context(ctx)) return report;

    const std::size_t budget = static_cast<std::size_t>(options.contexts);
    while (report.contexts_checked < budget && report.contexts_skipped < 20 * budget + 100)
        if (try_context(random_context(rng, ports, options.depth))) return report;

    return report;
}

} // namespace wcon
