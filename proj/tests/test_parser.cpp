#include <catch2/catch_amalgamated.hpp>

#include "wcon/parser.hpp"
#include "wcon/printer.hpp"
#include "wcon/random_terms.hpp"

using namespace wcon;

TEST_CASE("wai term parsing") {
    WaiPtr z = parse_wai_term("s * r1 * r2");
    // synchronization binds left: ((s * r1) * r2)
    CHECK(structurally_equal(z, wai::sync(wai::sync(wai::port("s"), wai::port("r1")), wai::port("r2"))));

    CHECK(structurally_equal(parse_wai_term("s * (1 + r1)"),
                             wai::sync(wai::port("s"), wai::add(wai::one(), wai::port("r1")))));
    // * binds tighter than +
    CHECK(structurally_equal(parse_wai_term("a + b * c"),
                             wai::add(wai::port("a"), wai::sync(wai::port("b"), wai::port("c")))));
}

TEST_CASE("unbalanced parenthesis reports the position and expectation") {
    try {
        parse_wai_term("s * (1 + r1;");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(e.column() == 12); // the ';'
        CHECK(std::string(e.what()).find("')'") != std::string::npos);
    }
}

TEST_CASE("wac term parsing") {
    // trigger/synchron nesting of causality chain
    WacPtr cc = parse_wac_term("[s]' * [[r1]' * [r2]]");
    CHECK(pretty(cc) == "[s]' * [[r1]' * [r2]]");
    REQUIRE(is_fusion(cc));
    CHECK(std::get<WacFusion>(cc->node).factors.size() == 2);

    // bare ports inside fusion are synchron sugar
    CHECK(structurally_equal(parse_wac_term("p * q"), parse_wac_term("[p] * [q]")));

    // fusion chains are stored flattened, but never across a typing bracket
    WacPtr flat = parse_wac_term("[p]' * [q] * [r]");
    REQUIRE(is_fusion(flat));
    CHECK(std::get<WacFusion>(flat->node).factors.size() == 3);
    WacPtr bracketed = parse_wac_term("[[p]' * [q]] * [r]");
    REQUIRE(is_fusion(bracketed));
    CHECK(std::get<WacFusion>(bracketed->node).factors.size() == 2);

    // one typing layer per bracket pair
    WacPtr doubled = parse_wac_term("[[p]' * [q]']'");
    CHECK(pretty(doubled) == "[[p]' * [q]']'");

    CHECK_THROWS_AS(parse_wac_term("(p + q) * [r]"), parse_error); // untyped fusion operand
    CHECK_THROWS_AS(parse_wac_term("p' * [q]"), parse_error);      // ' attaches to brackets only
}

TEST_CASE("unicode operator aliases") {
    CHECK(structurally_equal(parse_wai_term("s \xe2\x8a\x97 (1 \xe2\x8a\x95 r1)"),
                             parse_wai_term("s * (1 + r1)")));
}

TEST_CASE("round trip on random terms") {
    PortSet ports({"a", "b", "c", "d"});
    Rng rng(101);
    for (int i = 0; i < 500; ++i) {
        WaiPtr z = random_wai_term(rng, ports, 4);
        CHECK(structurally_equal(parse_wai_term(pretty(z)), z));
    }
    for (int i = 0; i < 500; ++i) {
        WacPtr z = random_wac_term(rng, ports, 4);
        CHECK(structurally_equal(parse_wac_term(pretty(z)), z));
    }
}

TEST_CASE("model parsing") {
    const std::string src = R"(# broadcast example
semiring max-plus;
port s = 2;
port r1 = 3;
port r2 = 5;
wai z = s * (1 + r1) * (1 + r2);
wac c = [s]' * [r1] * [r2];
gamma g = {{s},{s,r1},{s,r2},{s,r1,r2}};
query eval z over g;
query equiv z c universal;
query congruent c c;
query table z {s,r1};
query scheme atomic-broadcast s r1 r2;
)";
    Model m = parse_model(src);
    CHECK(m.semiring_kind() == "max-plus");
    CHECK(m.ports.size() == 3);
    REQUIRE(m.find_wai("z"));
    REQUIRE(m.find_wac("c"));
    REQUIRE(m.find_gamma("g"));
    CHECK(m.find_gamma("g")->size() == 4);
    REQUIRE(m.queries.size() == 5);
    CHECK(std::get<QueryTable>(m.queries[3]).interaction == make_interaction(m.ports, {"s", "r1"}));
    CHECK(std::get<QueryScheme>(m.queries[4]).kind == SchemeKind::atomic_broadcast);

    // round trip through the canonical renderer
    Model again = parse_model(render_model(m));
    CHECK(render_model(again) == render_model(m));
}

TEST_CASE("model diagnostics carry positions") {
    CHECK_THROWS_AS(parse_model("port s = 1;"), parse_error);             // semiring must come first
    CHECK_THROWS_AS(parse_model("semiring min-plus;\nport s = -1;"), model_error); // weight outside carrier
    CHECK_THROWS_AS(parse_model("semiring natural;\nport s = 1;"), parse_error);   // rejected at load
    CHECK_THROWS_AS(parse_model("semiring boolean;\nwai z = s;"), parse_error);    // unknown port
    CHECK_THROWS_AS(parse_model("semiring boolean;\nport s = 1;\nquery eval z over g;"), model_error);

    try {
        parse_model("semiring boolean;\nwai z = p;");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("unknown port 'p'") != std::string::npos);
    }
}

TEST_CASE("reserved constants cannot name ports") {
    CHECK_THROWS_AS(parse_model("semiring boolean;\nport 0 = 1;"), parse_error);
    // and 0/1 inside terms always mean the constants
    Model m = parse_model("semiring boolean;\nport s = 1;\nwai z = s * 1;");
    CHECK(structurally_equal(*m.find_wai("z"), wai::sync(wai::port("s"), wai::one())));
}

TEST_CASE("powerset models parse brace-set weights") {
    Model m = parse_model("semiring powerset {x,y};\nport s = {x};\nport r = {x,y};\nwai z = s * r;");
    const auto& bound = std::get<Bound<PowersetSemiring>>(m.semiring);
    CHECK(bound.semiring.format(bound.weights[0]) == "{x}");
    CHECK(bound.semiring.format(bound.weights[1]) == "{x,y}");
    CHECK_THROWS_AS(parse_model("semiring powerset {x};\nport s = {z};"), model_error);
}
