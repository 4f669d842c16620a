#include <catch2/catch_amalgamated.hpp>

#include "wcon/printer.hpp"
#include "wcon/random_terms.hpp"
#include "wcon/wai.hpp"

using namespace wcon;

namespace {

const PortSet kPorts({"s", "r1", "r2"});
const std::vector<double> kWeights{2, 3, 5};

InteractionSet gamma_of(std::initializer_list<std::uint32_t> masks) {
    std::vector<Interaction> v;
    for (auto m : masks) v.push_back(Interaction{m});
    return InteractionSet(std::move(v));
}

} // namespace

TEST_CASE("evaluation of the scheme terms matches the closed forms") {
    MinPlusSemiring mp;
    // s * r1 * r2 on {{s,r1,r2}}: k_s (x) k_r1 (x) k_r2 = 2+3+5
    auto rendezvous = wai::sync(wai::sync(wai::port("s"), wai::port("r1")), wai::port("r2"));
    CHECK(mp.eq(eval(rendezvous, gamma_of({0b111}), kPorts, mp, kWeights), 10));

    // s * (1 + r1) * (1 + r2) on the broadcast gamma in max-plus: max(2,5,7,10)
    MaxPlusSemiring xp;
    auto broadcast = wai::sync(wai::sync(wai::port("s"), wai::add(wai::one(), wai::port("r1"))),
                               wai::add(wai::one(), wai::port("r2")));
    CHECK(xp.eq(eval(broadcast, gamma_of({0b001, 0b011, 0b101, 0b111}), kPorts, xp, kWeights), 10));
}

TEST_CASE("the constant 1 weighs one exactly when gamma contains the empty interaction") {
    FuzzySemiring fz;
    std::vector<double> w{1, 1, 1};
    CHECK(fz.eq(eval(wai::one(), gamma_of({0b000}), kPorts, fz, w), fz.one()));
    CHECK(fz.eq(eval(wai::one(), gamma_of({0b001}), kPorts, fz, w), fz.zero()));
}

TEST_CASE("every term weighs zero on the empty set of interactions") {
    MinPlusSemiring mp;
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        WaiPtr z = random_wai_term(rng, kPorts, 4);
        CHECK(mp.eq(eval(z, InteractionSet{}, kPorts, mp, kWeights), mp.zero()));
    }
}

TEST_CASE("evaluation rejects unknown ports and non-idempotent semirings") {
    MinPlusSemiring mp;
    CHECK_THROWS_AS(eval(wai::port("x"), gamma_of({0b1}), kPorts, mp, kWeights), eval_error);
    NaturalSemiring nat;
    CHECK_THROWS_AS(eval(wai::one(), gamma_of({0b0}), kPorts, nat, {0, 0, 0}), eval_error);
}

TEST_CASE("normal form coefficients") {
    auto rendezvous = wai::sync(wai::sync(wai::port("s"), wai::port("r1")), wai::port("r2"));
    WaiPolynomial poly = normalize(rendezvous, kPorts);
    CHECK(poly.coeff(Interaction{0b111}).monomials() == std::vector<Monomial>{{"r1", "r2", "s"}});
    CHECK(poly.coeff(Interaction{0b011}).is_zero());
    CHECK(poly.support() == std::vector<Interaction>{Interaction{0b111}});

    WaiPolynomial zero_poly = normalize(wai::zero(), kPorts);
    for (Interaction a : all_subsets(kPorts.size())) CHECK(zero_poly.coeff(a).is_zero());

    // s * (1 + r1 * r2) at {s}: total k_s
    auto atomic = wai::sync(wai::port("s"), wai::add(wai::one(), wai::sync(wai::port("r1"), wai::port("r2"))));
    CHECK(normalize(atomic, kPorts).coeff(Interaction{0b001}) == FreeValue::generator("s"));
}

TEST_CASE("normalize enforces the port cap") {
    std::vector<std::string> names;
    for (int i = 0; i < 13; ++i) names.push_back("p" + std::to_string(i));
    PortSet big(names);
    CHECK_THROWS_AS(normalize(wai::one(), big), eval_error);
}

TEST_CASE("universal equivalence") {
    PortSet pq({"p", "q"});
    CHECK(wai_equiv(wai::add(wai::port("p"), wai::port("p")), wai::port("p"), pq));

    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        WaiPtr z = random_wai_term(rng, pq, 4);
        CHECK(wai_equiv(wai::sync(z, wai::one()), z, pq)); // z * 1 == z
    }

    auto lhs = wai::sync(wai::port("p"), wai::add(wai::one(), wai::port("q")));
    auto rhs = wai::sync(wai::port("p"), wai::port("q"));
    CHECK_FALSE(wai_equiv(lhs, rhs, pq));

    // concrete witness: on {{p}} with unit weights, min-plus yields 1 vs inf
    MinPlusSemiring mp;
    std::vector<double> w{1, 1};
    CHECK(mp.eq(eval(lhs, InteractionSet({Interaction{0b01}}), pq, mp, w), 1));
    CHECK(eval(rhs, InteractionSet({Interaction{0b01}}), pq, mp, w) == mp.zero());
    CHECK_FALSE(wai_equiv_concrete(lhs, rhs, pq, mp, w));
}

TEST_CASE("the ten semiring identities hold as universal equivalences") {
    PortSet pq({"p", "q"});
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        WaiPtr z1 = random_wai_term(rng, pq, 3);
        WaiPtr z2 = random_wai_term(rng, pq, 3);
        WaiPtr z3 = random_wai_term(rng, pq, 3);
        CHECK(wai_equiv(wai::add(wai::add(z1, z2), z3), wai::add(z1, wai::add(z2, z3)), pq));
        CHECK(wai_equiv(wai::add(z1, z2), wai::add(z2, z1), pq));
        CHECK(wai_equiv(wai::add(z1, z1), z1, pq));
        CHECK(wai_equiv(wai::add(z1, wai::zero()), z1, pq));
        CHECK(wai_equiv(wai::sync(wai::sync(z1, z2), z3), wai::sync(z1, wai::sync(z2, z3)), pq));
        CHECK(wai_equiv(wai::sync(z1, z2), wai::sync(z2, z1), pq));
        CHECK(wai_equiv(wai::sync(z1, wai::one()), z1, pq));
        CHECK(wai_equiv(wai::sync(z1, wai::zero()), wai::zero(), pq));
        CHECK(wai_equiv(wai::sync(z1, wai::add(z2, z3)), wai::add(wai::sync(z1, z2), wai::sync(z1, z3)), pq));
        CHECK(wai_equiv(wai::sync(wai::add(z1, z2), z3), wai::add(wai::sync(z1, z3), wai::sync(z2, z3)), pq));
    }
}

TEST_CASE("singleton fold equals direct evaluation") {
    PortSet ports({"a", "b", "c", "d"});
    MinPlusSemiring mp;
    FuzzySemiring fz;
    std::vector<double> wm{1, 2, 3, 4};
    std::vector<double> wf{0.1, 0.5, 0.7, 0.9};
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        WaiPtr z = random_wai_term(rng, ports, 4);
        InteractionSet g = random_gamma(rng, ports);

        auto fold_check = [&](auto s, const std::vector<double>& w) {
            WaiEvaluator<decltype(s)> ev(ports, s, w);
            double direct = ev.eval(z, g);
            double fold = s.zero();
            for (Interaction a : g.elements()) fold = s.add(fold, ev.singleton(z, a));
            CHECK(s.eq(direct, fold));
        };
        fold_check(mp, wm);
        fold_check(fz, wf);
    }
}

TEST_CASE("eval_via_polynomial agrees with the direct evaluator") {
    PortSet ports({"a", "b", "c"});
    MinPlusSemiring mp;
    std::vector<double> w{1, 2, 3};
    Rng rng(37);
    for (int i = 0; i < 100; ++i) {
        WaiPtr z = random_wai_term(rng, ports, 4);
        InteractionSet g = random_gamma(rng, ports);
        WaiPolynomial poly = normalize(z, ports);
        CHECK(mp.eq(eval_via_polynomial(poly, g, mp, ports, w), eval(z, g, ports, mp, w)));
    }

    // empty gamma folds to zero; a singleton folds to its coefficient
    WaiPtr z = wai::add(wai::port("a"), wai::sync(wai::port("b"), wai::port("c")));
    WaiPolynomial poly = normalize(z, ports);
    CHECK(eval_via_polynomial(poly, InteractionSet{}, mp, ports, w) == mp.zero());
    Interaction a{0b001};
    std::map<std::string, double> wm{{"a", 1}, {"b", 2}, {"c", 3}};
    CHECK(mp.eq(eval_via_polynomial(poly, InteractionSet({a}), mp, ports, w),
                eval_free(poly.coeff(a), mp, wm)));
}
