#include <catch2/catch_amalgamated.hpp>

#include "wcon/parser.hpp"
#include "wcon/printer.hpp"
#include "wcon/random_terms.hpp"
#include "wcon/table.hpp"

using namespace wcon;

namespace {

const PortSet kSR({"s", "r1", "r2"});

AnalysisTable<FreeSemiring> symbolic_table(const std::string& term, Interaction a, int split = 1) {
    return make_analysis_table(parse_wai_term(term, &kSR), a, kSR, FreeSemiring{}, make_free_weights(kSR),
                               split);
}

} // namespace

TEST_CASE("rendezvous analysis on the full interaction") {
    auto table = symbolic_table("s * r1 * r2", Interaction{0b111});
    CHECK(pretty(table.left_term) == "s");
    CHECK(pretty(table.right_term) == "r1 * r2");
    CHECK(table.rows.size() == 27);
    CHECK(render_free(table.total, kSR) == "k_s * k_r1 * k_r2");

    // the rows are exactly covers(a), in order
    auto pairs = covers(Interaction{0b111});
    REQUIRE(pairs.size() == table.rows.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(table.rows[i].a1 == pairs[i].first);
        CHECK(table.rows[i].a2 == pairs[i].second);
    }
}

TEST_CASE("empty interaction analyzes through its single cover") {
    auto table = symbolic_table("s * r1", Interaction{0});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].a1.empty());
    CHECK(table.rows[0].a2.empty());
    CHECK(table.total.is_zero());
}

TEST_CASE("a term without a top-level synchronization cannot be split") {
    CHECK_THROWS_AS(symbolic_table("s + r1", Interaction{0b011}), eval_error);
    CHECK_THROWS_AS(symbolic_table("s * r1 * r2", Interaction{0b111}, 3), eval_error);
}

TEST_CASE("every split point yields the same total") {
    for (int split : {1, 2}) {
        auto table = symbolic_table("s * (1 + r1) * (1 + r2)", Interaction{0b111}, split);
        CHECK(render_free(table.total, kSR) ==
              "k_s + k_s * k_r1 + k_s * k_r2 + k_s * k_r1 * k_r2");
    }
}

TEST_CASE("table totals equal evaluation on the singleton") {
    Rng rng(131);
    MinPlusSemiring mp;
    std::vector<double> w{2, 3, 5};
    int tried = 0;
    while (tried < 50) {
        WaiPtr z = random_wai_term(rng, kSR, 3);
        if (sync_factors(z).size() < 2) continue;
        ++tried;
        Interaction a{static_cast<std::uint32_t>(rand_int(rng, 0, 7))};
        auto table = make_analysis_table(z, a, kSR, mp, w);
        CHECK(mp.eq(table.total, eval(z, InteractionSet({a}), kSR, mp, w)));
    }
}

TEST_CASE("nested mode emits the auxiliary tables") {
    WaiPtr z = parse_wai_term("s * (1 + r1) * (1 + r2)", &kSR);
    auto tables = make_analysis_tables(z, Interaction{0b001}, kSR, FreeSemiring{}, make_free_weights(kSR), 1,
                                       true);
    // primary + one auxiliary per subset of {s} for (1 + r1) * (1 + r2)
    REQUIRE(tables.size() == 3);
    CHECK(pretty(tables[1].term) == "(1 + r1) * (1 + r2)");
    CHECK(tables[1].interaction.empty());
    CHECK(tables[2].interaction == Interaction{0b001});
    CHECK(render_free(tables[1].total, kSR) == "1"); // both factors weigh one on {}

    // the atomic-broadcast analysis recurses through the union into r1 * r2
    WaiPtr atomic = parse_wai_term("s * (1 + r1 * r2)", &kSR);
    auto nested = make_analysis_tables(atomic, Interaction{0b111}, kSR, FreeSemiring{}, make_free_weights(kSR),
                                       1, true);
    REQUIRE(nested.size() == 9); // primary + 8 tables for r1 * r2
    CHECK(pretty(nested[1].term) == "r1 * r2");
}

TEST_CASE("rendering layout is stable") {
    auto table = symbolic_table("s * r1", Interaction{0b011});
    std::string text = render_analysis_table(table, kSR, [&](const FreeValue& v) { return render_free(v, kSR); });
    CHECK(text.find("table: ||s * r1||({s,r1})") == 0);
    CHECK(text.find("(+)") != std::string::npos);
    CHECK(text.find("k_s * k_r1") != std::string::npos);
}
