#include <catch2/catch_amalgamated.hpp>

#include "wcon/oracle.hpp"
#include "wcon/parser.hpp"
#include "wcon/printer.hpp"
#include "wcon/random_terms.hpp"
#include "wcon/wac.hpp"

using namespace wcon;

namespace {

const PortSet kPQ({"p", "q"});
const PortSet kPQR({"p", "q", "r"});
const PortSet kSR({"s", "r1", "r2"});

WacPtr wc(const std::string& text) { return parse_wac_term(text); }
WaiPtr wi(const std::string& text) { return parse_wai_term(text); }

} // namespace

TEST_CASE("degrees") {
    auto broadcast = wc("[s]' * [r1] * [r2]");
    CHECK(degree(broadcast).triggers == 1);
    CHECK(degree(broadcast).synchrons == 2);
    CHECK(degree(broadcast).strictly_positive);

    auto rendezvous = wc("[s] * [r1] * [r2]");
    CHECK(degree(rendezvous).triggers == 0);
    CHECK(degree(rendezvous).synchrons == 3);
    CHECK_FALSE(degree(rendezvous).strictly_positive);

    // max over union summands; strictly positive needs every summand
    auto u = wc("[p]' * [q] + [p] * [q]");
    CHECK(degree(u).triggers == 1);
    CHECK_FALSE(degree(u).strictly_positive);
}

TEST_CASE("translation clauses") {
    CHECK(structurally_equal(translate(wc("[s] * [r1] * [r2]")), wi("s * r1 * r2")));
    CHECK(structurally_equal(translate(wc("[s]' * [r1] * [r2]")), wi("s * (1 + r1) * (1 + r2)")));
    CHECK(structurally_equal(translate(wc("[s]' * [[r1]' * [r2]]")), wi("s * (1 + r1 * (1 + r2))")));
    CHECK(structurally_equal(translate(wc("[p]'")), wi("p")));
    CHECK(structurally_equal(translate(wc("[0]'")), wi("0")));

    // two triggers: |z1|*(1+|z2|) + |z2|*(1+|z1|)
    CHECK(wai_equiv(translate(wc("[p]' * [q]'")), wi("p * (1 + q) + q * (1 + p)"), kPQ));
}

TEST_CASE("connector equivalence") {
    CHECK(wac_equiv(wc("[p]'"), wc("[p]"), kPQ));
    CHECK_FALSE(wac_equiv(wc("[p]' * [q]"), wc("[p] * [q]"), kPQ));

    // [z1 + z2]^a == [z1]^a + [z2]^a on random terms
    Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        WacPtr z1 = random_wac_term(rng, kPQ, 2);
        WacPtr z2 = random_wac_term(rng, kPQ, 2);
        Typing t = random_typing(rng);
        CHECK(wac_equiv(wac::typed(t, wac::unite(z1, z2)), wac::unite(wac::typed(t, z1), wac::typed(t, z2)), kPQ));
    }

    // incremental broadcast: [s]'*[r1]*[r2] == [[s]'*[r1]]'*[r2]
    CHECK(wac_equiv(wc("[s]' * [r1] * [r2]"), wc("[[s]' * [r1]]' * [r2]"), kSR));
}

TEST_CASE("retyping and commutativity of typed operands") {
    Rng rng(43);
    for (int i = 0; i < 40; ++i) {
        WacPtr z1 = random_wac_term(rng, kPQ, 2);
        WacPtr z2 = random_wac_term(rng, kPQ, 2);
        Typing a = random_typing(rng);
        Typing b = random_typing(rng);
        // [[z]^a]^b == [z]^b
        CHECK(wac_equiv(wac::typed(b, wac::typed(a, z1)), wac::typed(b, z1), kPQ));
        // commutativity of union and fusion over typed operands
        CHECK(wac_equiv(wac::unite(wac::typed(a, z1), wac::typed(b, z2)),
                        wac::unite(wac::typed(b, z2), wac::typed(a, z1)), kPQ));
        CHECK(wac_equiv(wac::fuse(wac::typed(a, z1), wac::typed(b, z2)),
                        wac::fuse(wac::typed(b, z2), wac::typed(a, z1)), kPQ));
    }
}

TEST_CASE("associativity under a uniform typing") {
    Rng rng(47);
    for (int i = 0; i < 30; ++i) {
        WacPtr z1 = random_wac_term(rng, kPQ, 2);
        WacPtr z2 = random_wac_term(rng, kPQ, 2);
        WacPtr z3 = random_wac_term(rng, kPQ, 2);
        auto syn = [](WacPtr z) { return wac::synchron(std::move(z)); };
        auto trg = [](WacPtr z) { return wac::trigger(std::move(z)); };
        // [[z1] * [z2]] * [z3] == [z1] * [[z2] * [z3]]
        CHECK(wac_equiv(wac::fuse(syn(wac::fuse(syn(z1), syn(z2))), syn(z3)),
                        wac::fuse(syn(z1), syn(wac::fuse(syn(z2), syn(z3)))), kPQ));
        // [[z1]' * [z2]']' * [z3]' == [z1]' * [[z2]' * [z3]']'
        CHECK(wac_equiv(wac::fuse(trg(wac::fuse(trg(z1), trg(z2))), trg(z3)),
                        wac::fuse(trg(z1), trg(wac::fuse(trg(z2), trg(z3)))), kPQ));
    }
}

TEST_CASE("[1] is neutral for weighted fusion") {
    Rng rng(53);
    for (int i = 0; i < 40; ++i) {
        WacPtr z = random_wac_term(rng, kPQ, 2);
        WacPtr typed = wac::typed(random_typing(rng), z);
        CHECK(wac_equiv(wac::fuse(typed, wac::one()), typed, kPQ));
        CHECK(wac_equiv(wac::fuse(wac::one(), typed), typed, kPQ));
    }
}

TEST_CASE("fusion absorbed by the full optional product") {
    // |(x)[z_i]^a_i| + (x)(1 + |z_i|) == (x)(1 + |z_i|)
    Rng rng(59);
    for (int i = 0; i < 40; ++i) {
        int n = rand_int(rng, 1, 4);
        std::vector<WacPtr> factors;
        std::vector<WaiPtr> bodies;
        for (int k = 0; k < n; ++k) {
            WacPtr z = random_wac_term(rng, kPQ, 2);
            factors.push_back(wac::typed(random_typing(rng), z));
            bodies.push_back(translate(z));
        }
        WaiPtr fusion = translate(wac::fuse(factors));
        WaiPtr product;
        for (const WaiPtr& b : bodies) {
            WaiPtr f = wai::add(wai::one(), b);
            product = product ? wai::sync(product, f) : f;
        }
        CHECK(wai_equiv(wai::add(fusion, product), product, kPQ));
    }
}

TEST_CASE("non-associativity across typing brackets") {
    auto a = wc("[[p]' * [q]'] * [r]");
    auto b = wc("[p]' * [q]' * [r]");
    auto c = wc("[p]' * [[q]' * [r]]");
    CHECK_FALSE(wac_equiv(a, b, kPQR));
    CHECK_FALSE(wac_equiv(b, c, kPQR));
    CHECK_FALSE(wac_equiv(a, c, kPQR));
}

TEST_CASE("subalgebra membership") {
    CHECK(is_was(wc("[s] * [r1]")));
    CHECK_FALSE(is_wat(wc("[s] * [r1]")));
    CHECK(is_wat(wac::zero_prime_trigger())); // [0']'
    auto mixed = wc("[s]' * [r1]");
    CHECK_FALSE(is_was(mixed));
    CHECK_FALSE(is_wat(mixed));
    CHECK(is_wat(wc("[[p]' * [q]']'")));
}

TEST_CASE("congruence decision") {
    // equivalent but not congruent: degrees differ
    CongruenceReport rep = congruent_report(wc("[p]'"), wc("[p]"), kPQ);
    CHECK(rep.equivalent);
    CHECK(rep.trigger_one_equivalent);
    CHECK_FALSE(rep.degree_parity);
    CHECK_FALSE(rep.congruent());

    CHECK(congruent(wc("[p]"), wc("[p]"), kPQ));

    // similarly typed equivalent connectors are congruent
    Rng rng(61);
    for (int i = 0; i < 40; ++i) {
        WacPtr z = random_wac_term(rng, kPQ, 2);
        WacPtr w = random_equivalent_variant(rng, z);
        REQUIRE(wac_equiv(z, w, kPQ));
        Typing t = random_typing(rng);
        CHECK(congruent(wac::typed(t, z), wac::typed(t, w), kPQ));
    }
}

TEST_CASE("[0']' is neutral in the triggers subalgebra") {
    Rng rng(67);
    int tried = 0;
    while (tried < 40) {
        WacPtr z = random_wac_term(rng, kPQ, 2);
        if (is_union(z) || degree(z).triggers == 0) continue; // neutrality is about fusions
        ++tried;
        std::vector<WacPtr> factors =
            is_fusion(z) ? std::get<WacFusion>(z->node).factors : std::vector<WacPtr>{z};
        factors.push_back(wac::zero_prime_trigger());
        CHECK(congruent(wac::fuse(std::move(factors)), z, kPQ));
    }
}

TEST_CASE("trigger extension laws") {
    Rng rng(71);
    for (int i = 0; i < 40; ++i) {
        WacPtr z1 = random_wac_term(rng, kPQ, 2);
        WacPtr z2 = random_wac_term(rng, kPQ, 2);
        WacPtr z3 = random_wac_term(rng, kPQ, 2);
        auto syn = [](WacPtr z) { return wac::synchron(std::move(z)); };
        auto trg = [](WacPtr z) { return wac::trigger(std::move(z)); };
        // [z1]' * [z2] * [z3]  ~  [z1]' * [[z2]' * [z3]']
        CHECK(congruent(wac::fuse({trg(z1), syn(z2), syn(z3)}),
                        wac::fuse(trg(z1), syn(wac::fuse(trg(z2), trg(z3)))), kPQ));
        // [z1]' * [z2]'  ~  [[z1]' * [z2]']'
        WacPtr pair = wac::fuse(trg(z1), trg(z2));
        CHECK(congruent(pair, wac::trigger(pair), kPQ));
    }
}

TEST_CASE("the trigger-one condition is side-independent") {
    Rng rng(73);
    for (int i = 0; i < 30; ++i) {
        WacPtr z1 = random_wac_term(rng, kPQ, 2);
        WacPtr z2 = random_wac_term(rng, kPQ, 2);
        auto left_fused = [&](const WacPtr& z) {
            if (is_fusion(z)) {
                std::vector<WacPtr> fs{wac::one(Typing::trigger)};
                for (const WacPtr& f : std::get<WacFusion>(z->node).factors) fs.push_back(f);
                return wac::fuse(std::move(fs));
            }
            if (is_typed(z)) return wac::fuse(wac::one(Typing::trigger), z);
            return z;
        };
        if (is_union(z1) || is_union(z2)) continue;
        bool right = wac_equiv(fuse_trigger_one(z1), fuse_trigger_one(z2), kPQ);
        bool left = wac_equiv(left_fused(z1), left_fused(z2), kPQ);
        CHECK(right == left);
    }
}

TEST_CASE("substitution") {
    // E=[r], z=[p]'*[q] -> [[p]'*[q]] : the context's bracket stands
    WacPtr e1 = wac::hole(Typing::synchron);
    WacPtr z1 = wc("[p]' * [q]");
    CHECK(pretty(substitute(e1, z1)) == "[[p]' * [q]]");

    // E=[r]*[q], z=p -> [p]*[q] : a typed connector collapses into the bracket
    WacPtr e2 = wac::fuse(wac::hole(Typing::synchron), wac::port("q"));
    CHECK(pretty(substitute(e2, wc("p"))) == "[p] * [q]");

    // bracketed holes never leak the connector's own top typing
    CHECK(pretty(substitute(e2, wc("[p]'"))) == "[p] * [q]");

    // a bare hole takes the connector's own structure: typed factors stand,
    // fusions splice; an untyped union cannot fill a fusion position
    WacPtr bare = wac::fuse(wac::bare_hole(), wac::port("q"));
    CHECK(pretty(substitute(bare, wc("[p]'"))) == "[p]' * [q]");
    CHECK(pretty(substitute(bare, wc("[p]' * [q]'"))) == "[p]' * [q]' * [q]");
    CHECK_THROWS_AS(substitute(bare, wc("[p]' + [p]")), context_error);

    // substitution only touches the hole
    WacPtr e3 = wac::unite(wac::fuse(wac::hole(Typing::trigger), wac::port("q", Typing::trigger)),
                           wc("[p] * [q]"));
    WacPtr subst = substitute(e3, wc("p + q"));
    CHECK(pretty(subst) == "[[p] + [q]]' * [q]' + [p] * [q]");

    CHECK_THROWS_AS(substitute(wc("[p]"), wc("p")), context_error);
    CHECK_THROWS_AS(substitute(wac::unite(wac::bare_hole(), wac::bare_hole()), wc("p")), context_error);
}

TEST_CASE("congruence oracle") {
    // the classic counterexample pair is separated by some sampled context
    OracleReport r1 = congruence_oracle(wc("[p]'"), wc("[p]"), kPQ, {3, 500, 1});
    CHECK(r1.counterexample_found);

    // identical connectors: no counterexample
    OracleReport r2 = congruence_oracle(wc("[p]' * [q]"), wc("[p]' * [q]"), kPQ, {3, 500, 2});
    CHECK_FALSE(r2.counterexample_found);
    CHECK(r2.contexts_checked >= 500);

    // congruent pairs survive the full budget
    WacPtr pair = wc("[p]' * [q]'");
    OracleReport r3 = congruence_oracle(pair, wac::trigger(pair), kPQ, {3, 500, 3});
    CHECK_FALSE(r3.counterexample_found);

    CHECK_THROWS_AS(congruence_oracle(pair, pair, kPQ, {9, 10, 0}), std::invalid_argument);
}
