#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "wcon/errors.hpp"
#include "wcon/semiring.hpp"

namespace wcon {

/// A monomial of the free commutative idempotent semiring: a finite multiset
/// of generators (port identifiers), stored as a sorted vector with repeats
/// carrying the multiplicity. The product of the empty monomial is one.
using Monomial = std::vector<std::string>;

/// An element of the free commutative idempotent semiring over port-weight
/// generators: a canonical duplicate-free, sorted set of monomials.
///
/// zero <-> empty set of monomials, one <-> { [] }. Addition is set union
/// (idempotent by construction), multiplication the deduplicated pairwise
/// multiset sum. Monomials are multisets, not sets: multiplication is not
/// idempotent in a general commutative idempotent semiring, so k_p (x) k_p
/// stays distinct from k_p.
class FreeValue {
public:
    FreeValue() = default;

    static FreeValue zero() { return FreeValue{}; }
    static FreeValue one() { return FreeValue{{Monomial{}}}; }
    static FreeValue generator(std::string port) { return FreeValue{{Monomial{std::move(port)}}}; }

    bool is_zero() const { return monomials_.empty(); }
    bool is_one() const { return monomials_.size() == 1 && monomials_.front().empty(); }

    const std::vector<Monomial>& monomials() const { return monomials_; }

    bool operator==(const FreeValue&) const = default;
    bool operator<(const FreeValue& other) const { return monomials_ < other.monomials_; }

    friend FreeValue free_add(const FreeValue& x, const FreeValue& y) {
        std::vector<Monomial> merged;
        merged.reserve(x.monomials_.size() + y.monomials_.size());
        std::set_union(x.monomials_.begin(), x.monomials_.end(), y.monomials_.begin(), y.monomials_.end(),
                       std::back_inserter(merged));
        return FreeValue{std::move(merged)};
    }

    friend FreeValue free_mul(const FreeValue& x, const FreeValue& y) {
        std::vector<Monomial> products;
        products.reserve(x.monomials_.size() * y.monomials_.size());
        for (const Monomial& m : x.monomials_) {
            for (const Monomial& n : y.monomials_) {
                Monomial sum;
                sum.reserve(m.size() + n.size());
                std::merge(m.begin(), m.end(), n.begin(), n.end(), std::back_inserter(sum));
                products.push_back(std::move(sum));
            }
        }
        std::sort(products.begin(), products.end());
        products.erase(std::unique(products.begin(), products.end()), products.end());
        return FreeValue{std::move(products)};
    }

private:
    explicit FreeValue(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {}

    std::vector<Monomial> monomials_; // sorted, unique
};

inline FreeValue free_generator(std::string port) { return FreeValue::generator(std::move(port)); }

/// The free commutative idempotent semiring, packaged as a Semiring model.
/// Its elements are the universal-equivalence witnesses: two wAI terms are
/// equivalent over every commutative idempotent semiring iff their free
/// values agree on every singleton interaction set.
struct FreeSemiring {
    using value_type = FreeValue;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "free";

    value_type add(const value_type& a, const value_type& b) const { return free_add(a, b); }
    value_type mul(const value_type& a, const value_type& b) const { return free_mul(a, b); }
    value_type zero() const { return FreeValue::zero(); }
    value_type one() const { return FreeValue::one(); }
    bool eq(const value_type& a, const value_type& b) const { return a == b; }
    void check(const value_type&) const {}
};

static_assert(Semiring<FreeSemiring>);
static_assert(Semiring<BoolSemiring> && Semiring<MinPlusSemiring> && Semiring<MaxPlusSemiring> &&
              Semiring<ViterbiSemiring> && Semiring<FuzzySemiring> && Semiring<PowersetSemiring> &&
              Semiring<NaturalSemiring>);

/// Evaluation homomorphism out of the free semiring: add-fold over monomials
/// of the mul-fold of generator weights (with multiplicity). The empty set of
/// monomials maps to zero, the empty monomial to one.
/// WeightFn: const std::string& -> typename S::value_type.
template <Semiring S, class WeightFn>
typename S::value_type eval_free_with(const FreeValue& v, const S& s, WeightFn&& weight) {
    auto acc = s.zero();
    for (const Monomial& m : v.monomials()) {
        auto term = s.one();
        for (const std::string& gen : m) term = s.mul(term, weight(gen));
        acc = s.add(acc, term);
    }
    return acc;
}

template <Semiring S>
typename S::value_type eval_free(const FreeValue& v, const S& s,
                                 const std::map<std::string, typename S::value_type>& weights) {
    return eval_free_with(v, s, [&](const std::string& gen) -> const typename S::value_type& {
        auto it = weights.find(gen);
        if (it == weights.end()) throw eval_error("no weight for port '" + gen + "'");
        return it->second;
    });
}

} // namespace wcon
