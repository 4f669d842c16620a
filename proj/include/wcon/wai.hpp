#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "wcon/errors.hpp"
#include "wcon/free_value.hpp"
#include "wcon/interaction.hpp"
#include "wcon/semiring.hpp"

namespace wcon {

// ---------------------------------------------------------------------------
// wAI(P) terms: z ::= 0 | 1 | p | z + z | z * z | (z)
// Grouping is tree shape; there is no parenthesis node.

struct WaiTerm;
using WaiPtr = std::shared_ptr<const WaiTerm>;

struct WaiZero {};
struct WaiOne {};
struct WaiPort {
    std::string name;
};
struct WaiUnion {
    WaiPtr left, right;
};
struct WaiSync {
    WaiPtr left, right;
};

struct WaiTerm {
    std::variant<WaiZero, WaiOne, WaiPort, WaiUnion, WaiSync> node;
};

namespace wai {

inline WaiPtr zero() { return std::make_shared<const WaiTerm>(WaiTerm{WaiZero{}}); }
inline WaiPtr one() { return std::make_shared<const WaiTerm>(WaiTerm{WaiOne{}}); }
inline WaiPtr port(std::string name) { return std::make_shared<const WaiTerm>(WaiTerm{WaiPort{std::move(name)}}); }
inline WaiPtr add(WaiPtr l, WaiPtr r) {
    return std::make_shared<const WaiTerm>(WaiTerm{WaiUnion{std::move(l), std::move(r)}});
}
inline WaiPtr sync(WaiPtr l, WaiPtr r) {
    return std::make_shared<const WaiTerm>(WaiTerm{WaiSync{std::move(l), std::move(r)}});
}

} // namespace wai

inline std::size_t term_size(const WaiPtr& z) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WaiUnion> || std::is_same_v<T, WaiSync>)
                return 1 + term_size(n.left) + term_size(n.right);
            else
                return 1;
        },
        z->node);
}

inline bool structurally_equal(const WaiPtr& a, const WaiPtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            const auto& m = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, WaiPort>)
                return n.name == m.name;
            else if constexpr (std::is_same_v<T, WaiUnion> || std::is_same_v<T, WaiSync>)
                return structurally_equal(n.left, m.left) && structurally_equal(n.right, m.right);
            else
                return true;
        },
        a->node);
}

/// Collects the distinct port names referenced by a term.
inline void collect_ports(const WaiPtr& z, std::vector<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, WaiPort>) {
                if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
            } else if constexpr (std::is_same_v<T, WaiUnion> || std::is_same_v<T, WaiSync>) {
                collect_ports(n.left, out);
                collect_ports(n.right, out);
            }
        },
        z->node);
}

// ---------------------------------------------------------------------------
// Denotational evaluation.
//
// ||0||(g) = 0^;  ||1||(g) = 1^ iff {} in g;  ||p||(g) = k_p iff some a in g
// contains p; union and synchronization reduce g to its singletons, with the
// synchronization clause summing over all covers a = a1 u a2. An empty g
// always evaluates to 0^.

/// Direct evaluator for a fixed semiring and weight assignment. Singleton
/// values are memoized per term node, so repeated subterms and the cover
/// recursion stay polynomial in 2^|P| * term size.
template <Semiring S>
class WaiEvaluator {
public:
    using value_type = typename S::value_type;

    WaiEvaluator(const PortSet& ports, const S& semiring, std::vector<value_type> weights)
        : ports_(ports), sr_(semiring), weights_(std::move(weights)) {
        if constexpr (!S::additively_idempotent)
            throw eval_error(std::string(S::kind_name) + " is not additively idempotent; the algebra requires "
                                                         "a commutative idempotent semiring");
        if (static_cast<int>(weights_.size()) != ports_.size())
            throw eval_error("weight vector does not cover the port set");
    }

    value_type eval(const WaiPtr& z, const InteractionSet& gamma) {
        if (gamma.empty()) return sr_.zero();
        return std::visit(
            [&](const auto& n) -> value_type {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, WaiZero>) {
                    return sr_.zero();
                } else if constexpr (std::is_same_v<T, WaiOne>) {
                    return gamma.contains_empty_interaction() ? sr_.one() : sr_.zero();
                } else if constexpr (std::is_same_v<T, WaiPort>) {
                    int p = ports_.index_of(n.name);
                    for (Interaction a : gamma.elements())
                        if (a.contains(p)) return weights_[static_cast<std::size_t>(p)];
                    return sr_.zero();
                } else if constexpr (std::is_same_v<T, WaiUnion>) {
                    value_type acc = sr_.zero();
                    for (Interaction a : gamma.elements())
                        acc = sr_.add(acc, sr_.add(singleton(n.left, a), singleton(n.right, a)));
                    return acc;
                } else {
                    value_type acc = sr_.zero();
                    for (Interaction a : gamma.elements())
                        for (auto [a1, a2] : covers(a))
                            acc = sr_.add(acc, sr_.mul(singleton(n.left, a1), singleton(n.right, a2)));
                    return acc;
                }
            },
            z->node);
    }

    value_type singleton(const WaiPtr& z, Interaction a) {
        auto& slots = cache_[z.get()];
        if (slots.empty()) slots.resize(std::size_t{1} << ports_.size());
        auto& slot = slots[a.mask];
        if (!slot) {
            InteractionSet g{{a}};
            slot = eval(z, g);
        }
        return *slot;
    }

private:
    const PortSet& ports_;
    const S& sr_;
    std::vector<value_type> weights_;
    std::unordered_map<const WaiTerm*, std::vector<std::optional<value_type>>> cache_;
};

template <Semiring S>
typename S::value_type eval(const WaiPtr& z, const InteractionSet& gamma, const PortSet& ports, const S& s,
                            std::vector<typename S::value_type> weights) {
    WaiEvaluator<S> ev(ports, s, std::move(weights));
    return ev.eval(z, gamma);
}

// ---------------------------------------------------------------------------
// Normal form: the polynomial of free-semiring singleton coefficients.

/// Maximum |P| accepted by normalize/equivalence. 2^12 subsets with up to
/// 3^12 covers each is the desk-scale guarantee; beyond that the call is
/// rejected with a clear error instead of blowing up silently.
inline constexpr int max_normalize_ports = 12;

/// The semantics of a term as a total mapping a -> ||z||({a}) over all
/// a in 2^P, with coefficients in the free commutative idempotent semiring.
/// Any ||z||(gamma) is recoverable as the add-fold of coefficients over
/// a in gamma.
class WaiPolynomial {
public:
    WaiPolynomial(int n_ports, std::vector<FreeValue> coeffs)
        : n_ports_(n_ports), coeffs_(std::move(coeffs)) {}

    int n_ports() const { return n_ports_; }
    const FreeValue& coeff(Interaction a) const { return coeffs_.at(a.mask); }
    const std::vector<FreeValue>& coeffs() const { return coeffs_; }

    /// Subsets with a non-zero coefficient, in canonical subset order.
    std::vector<Interaction> support() const {
        std::vector<Interaction> out;
        for (Interaction a : all_subsets(n_ports_))
            if (!coeff(a).is_zero()) out.push_back(a);
        return out;
    }

    friend bool operator==(const WaiPolynomial&, const WaiPolynomial&) = default;

private:
    int n_ports_;
    std::vector<FreeValue> coeffs_; // indexed by interaction mask
};

namespace detail {

inline std::vector<FreeValue> normalize_coeffs(const WaiPtr& z, const PortSet& ports) {
    const std::size_t n_subsets = std::size_t{1} << ports.size();
    return std::visit(
        [&](const auto& n) -> std::vector<FreeValue> {
            using T = std::decay_t<decltype(n)>;
            std::vector<FreeValue> out(n_subsets, FreeValue::zero());
            if constexpr (std::is_same_v<T, WaiZero>) {
                // all-zero polynomial
            } else if constexpr (std::is_same_v<T, WaiOne>) {
                out[0] = FreeValue::one();
            } else if constexpr (std::is_same_v<T, WaiPort>) {
                int p = ports.index_of(n.name);
                FreeValue gen = FreeValue::generator(n.name);
                for (std::uint32_t m = 0; m < n_subsets; ++m)
                    if ((m >> p) & 1u) out[m] = gen;
            } else if constexpr (std::is_same_v<T, WaiUnion>) {
                auto l = normalize_coeffs(n.left, ports);
                auto r = normalize_coeffs(n.right, ports);
                for (std::uint32_t m = 0; m < n_subsets; ++m) out[m] = free_add(l[m], r[m]);
            } else {
                auto l = normalize_coeffs(n.left, ports);
                auto r = normalize_coeffs(n.right, ports);
                for (std::uint32_t m = 0; m < n_subsets; ++m) {
                    FreeValue acc = FreeValue::zero();
                    // all (a1, a2) with a1 u a2 = m
                    std::uint32_t a1 = 0;
                    while (true) {
                        std::uint32_t rest = m & ~a1;
                        std::uint32_t t = 0;
                        while (true) {
                            acc = free_add(acc, free_mul(l[a1], r[rest | t]));
                            if (t == a1) break;
                            t = (t - a1) & a1;
                        }
                        if (a1 == m) break;
                        a1 = (a1 - m) & m;
                    }
                    out[m] = std::move(acc);
                }
            }
            return out;
        },
        z->node);
}

} // namespace detail

/// Evaluates every singleton {a} with free-semiring arithmetic, bottom-up
/// over the term. Sound and complete for equality in wAI(P) modulo
/// equivalence over every commutative idempotent semiring.
inline WaiPolynomial normalize(const WaiPtr& z, const PortSet& ports) {
    if (ports.size() > max_normalize_ports)
        throw eval_error("port set too large for normalization: " + std::to_string(ports.size()) + " > " +
                         std::to_string(max_normalize_ports));
    return WaiPolynomial(ports.size(), detail::normalize_coeffs(z, ports));
}

/// Recovers ||z||(gamma) from the normal form: add-fold of the evaluated
/// singleton coefficients over a in gamma (empty fold -> zero).
template <Semiring S>
typename S::value_type eval_via_polynomial(const WaiPolynomial& poly, const InteractionSet& gamma, const S& s,
                                           const PortSet& ports,
                                           const std::vector<typename S::value_type>& weights) {
    // by value: vector<bool> hands out proxies, not references
    auto weight = [&](const std::string& gen) -> typename S::value_type {
        return weights.at(static_cast<std::size_t>(ports.index_of(gen)));
    };
    auto acc = s.zero();
    for (Interaction a : gamma.elements()) acc = s.add(acc, eval_free_with(poly.coeff(a), s, weight));
    return acc;
}

// ---------------------------------------------------------------------------
// Equivalence: equal weight on every set of interactions.

enum class EquivMode { universal, concrete };

/// Universal equivalence: the normal forms agree on every subset, hence the
/// terms agree on every gamma over every commutative idempotent semiring.
inline bool wai_equiv(const WaiPtr& z1, const WaiPtr& z2, const PortSet& ports) {
    return normalize(z1, ports) == normalize(z2, ports);
}

/// Concrete equivalence for a fixed semiring and weight assignment. Checking
/// the 2^|P| singletons suffices: any gamma folds to its singletons.
template <Semiring S>
bool wai_equiv_concrete(const WaiPtr& z1, const WaiPtr& z2, const PortSet& ports, const S& s,
                        const std::vector<typename S::value_type>& weights) {
    if (ports.size() > max_normalize_ports)
        throw eval_error("port set too large for equivalence: " + std::to_string(ports.size()) + " > " +
                         std::to_string(max_normalize_ports));
    WaiEvaluator<S> e1(ports, s, weights);
    WaiEvaluator<S> e2(ports, s, weights);
    for (Interaction a : all_subsets(ports.size()))
        if (!s.eq(e1.singleton(z1, a), e2.singleton(z2, a))) return false;
    return true;
}

} // namespace wcon
