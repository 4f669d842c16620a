// Command-line front end: evaluate terms, decide equivalence and congruence,
// emit analysis tables, generate coordination schemes, and run the semiring
// law suite over .wconn models.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wcon/wcon.hpp"

using nlohmann::json;
using namespace wcon;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw model_error("cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }

// Resolution helpers. An argument names a model definition when possible and
// is otherwise parsed as an inline term over the model's ports. A bare
// identifier that names nothing (not even a port) is a resolution error, not
// a syntax error.

bool is_bare_name(const std::string& text) {
    if (text.empty() || !(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) return false;
    return std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

WaiPtr resolve_wai_like(const Model& m, const std::string& text) {
    if (const WaiPtr* z = m.find_wai(text)) return *z;
    if (const WacPtr* c = m.find_wac(text)) return translate(*c);
    if (is_bare_name(text) && !m.ports.contains(text))
        throw model_error("unknown term '" + text + "'");
    try {
        return parse_wai_term(text, &m.ports);
    } catch (const parse_error&) {
        return translate(parse_wac_term(text, &m.ports));
    }
}

WacPtr resolve_wac(const Model& m, const std::string& text) {
    if (const WacPtr* c = m.find_wac(text)) return *c;
    if (m.find_wai(text))
        throw model_error("'" + text + "' is a wAI term; congruence is defined on wAC connectors");
    if (is_bare_name(text) && !m.ports.contains(text))
        throw model_error("unknown connector '" + text + "'");
    return parse_wac_term(text, &m.ports);
}

InteractionSet resolve_gamma(const Model& m, const std::string& text) {
    if (const InteractionSet* g = m.find_gamma(text)) return *g;
    if (text == "empty") return InteractionSet{};
    if (!text.empty() && text.front() == '{') {
        // inline literal {{s},{s,r1}}: reuse the model parser on a synthetic
        // one-gamma model over the same ports
        std::string src = "semiring boolean;\n";
        for (const std::string& p : m.ports.names()) src += "port " + p + " = 0;\n";
        src += "gamma g = " + text + ";\n";
        Model lit = parse_model(src);
        return *lit.find_gamma("g");
    }
    throw model_error("unknown interaction set '" + text + "'");
}

Interaction resolve_interaction(const Model& m, const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw model_error("expected an interaction literal like {s,r1}, got '" + text + "'");
    std::string inner = text.substr(1, text.size() - 2);
    std::vector<std::string> members;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty()) members.push_back(item);
    }
    return make_interaction(m.ports, members);
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_check(const std::string& model_path, bool as_json) {
    Model m = load_model(model_path);
    std::ostringstream out;
    out << "OK: " << m.ports.size() << " ports, " << m.wai_defs.size() << " wai, " << m.wac_defs.size()
        << " wac, " << m.gammas.size() << " gammas, " << m.queries.size() << " queries\n";
    json j{{"command", "check"},
           {"inputs", {{"model", model_path}}},
           {"result",
            {{"semiring", m.semiring_kind()},
             {"ports", m.ports.size()},
             {"wai", m.wai_defs.size()},
             {"wac", m.wac_defs.size()},
             {"gammas", m.gammas.size()},
             {"queries", m.queries.size()}}},
           {"diagnostics", json::array()}};
    emit(j, as_json, out.str());
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& term, const std::string& gamma, bool as_json) {
    Model m = load_model(model_path);
    WaiPtr z = resolve_wai_like(m, term);
    InteractionSet g = resolve_gamma(m, gamma);
    std::string value = std::visit(
        [&](const auto& bound) { return bound.semiring.format(eval(z, g, m.ports, bound.semiring, bound.weights)); },
        m.semiring);
    json j{{"command", "eval"},
           {"inputs", {{"model", model_path}, {"term", term}, {"gamma", gamma}}},
           {"result", {{"value", value}}},
           {"diagnostics", json::array()}};
    emit(j, as_json, value + "\n");
    return 0;
}

int cmd_equiv(const std::string& model_path, const std::string& lhs, const std::string& rhs,
              const std::string& mode, bool as_json) {
    Model m = load_model(model_path);
    WaiPtr z1 = resolve_wai_like(m, lhs);
    WaiPtr z2 = resolve_wai_like(m, rhs);
    bool eq;
    if (mode == "universal") {
        eq = wai_equiv(z1, z2, m.ports);
    } else if (mode == "concrete") {
        eq = std::visit(
            [&](const auto& bound) { return wai_equiv_concrete(z1, z2, m.ports, bound.semiring, bound.weights); },
            m.semiring);
    } else {
        throw model_error("unknown equivalence mode '" + mode + "' (universal or concrete)");
    }
    std::string verdict = eq ? "EQUIV" : "NOT-EQUIV";
    json j{{"command", "equiv"},
           {"inputs", {{"model", model_path}, {"lhs", lhs}, {"rhs", rhs}, {"mode", mode}}},
           {"result", {{"verdict", verdict}}},
           {"diagnostics", json::array()}};
    emit(j, as_json, verdict + "\n");
    return 0;
}

int cmd_congruent(const std::string& model_path, const std::string& lhs, const std::string& rhs, bool oracle,
                  std::uint64_t seed, int contexts, bool as_json) {
    Model m = load_model(model_path);
    WacPtr z1 = resolve_wac(m, lhs);
    WacPtr z2 = resolve_wac(m, rhs);
    CongruenceReport rep = congruent_report(z1, z2, m.ports);

    std::string verdict = rep.congruent() ? "CONGRUENT" : "NOT-CONGRUENT";
    if (!rep.congruent()) {
        if (!rep.equivalent)
            verdict += " (condition 1: equivalence)";
        else if (!rep.trigger_one_equivalent)
            verdict += " (condition 2: fusion with [1]')";
        else
            verdict += " (condition 3: degree parity)";
    }
    std::ostringstream out;
    out << verdict << "\n";
    out << "condition 1 (equivalence): " << (rep.equivalent ? "PASS" : "FAIL") << "\n";
    out << "condition 2 (fusion with [1]'): " << (rep.trigger_one_equivalent ? "PASS" : "FAIL") << "\n";
    out << "condition 3 (degree parity): " << (rep.degree_parity ? "PASS" : "FAIL") << "\n";

    json j{{"command", "congruent"},
           {"inputs", {{"model", model_path}, {"lhs", lhs}, {"rhs", rhs}}},
           {"result",
            {{"verdict", rep.congruent() ? "CONGRUENT" : "NOT-CONGRUENT"},
             {"conditions",
              {{"equivalence", rep.equivalent},
               {"trigger_one", rep.trigger_one_equivalent},
               {"degree_parity", rep.degree_parity}}}}},
           {"diagnostics", json::array()}};

    if (oracle) {
        OracleReport orc = congruence_oracle(z1, z2, m.ports, {3, contexts, seed});
        if (orc.counterexample_found)
            out << "oracle: counterexample context E = " << orc.context << "\n";
        else
            out << "oracle: no counterexample (" << orc.contexts_checked << " contexts)\n";
        j["result"]["oracle"] = {{"counterexample_found", orc.counterexample_found},
                                 {"context", orc.context},
                                 {"contexts_checked", orc.contexts_checked},
                                 {"contexts_skipped", orc.contexts_skipped}};
    }
    emit(j, as_json, out.str());
    return 0;
}

int cmd_table(const std::string& model_path, const std::string& term, const std::string& interaction,
              int split, bool nested, const std::string& mode, bool as_json) {
    Model m = load_model(model_path);
    WaiPtr z = resolve_wai_like(m, term);
    Interaction a = resolve_interaction(m, interaction);

    json j{{"command", "table"},
           {"inputs",
            {{"model", model_path},
             {"term", term},
             {"interaction", interaction},
             {"split", split},
             {"nested", nested},
             {"mode", mode}}},
           {"result", {{"tables", json::array()}}},
           {"diagnostics", json::array()}};
    std::ostringstream out;

    auto render_all = [&](const auto& tables, auto&& fmt) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i) out << "\n";
            out << render_analysis_table(tables[i], m.ports, fmt);
            json poly = json::array();
            for (const auto& row : tables[i].rows)
                poly.push_back({{"a1", render_interaction(row.a1, m.ports)},
                                {"a2", render_interaction(row.a2, m.ports)},
                                {"left", fmt(row.left)},
                                {"right", fmt(row.right)},
                                {"product", fmt(row.product)}});
            j["result"]["tables"].push_back({{"term", pretty(tables[i].term)},
                                             {"interaction", render_interaction(tables[i].interaction, m.ports)},
                                             {"rows", poly},
                                             {"total", fmt(tables[i].total)}});
        }
    };

    if (mode == "free") {
        FreeSemiring fs;
        auto tables = make_analysis_tables(z, a, m.ports, fs, make_free_weights(m.ports), split, nested);
        render_all(tables, [&](const FreeValue& v) { return render_free(v, m.ports); });
    } else if (mode == "model") {
        std::visit(
            [&](const auto& bound) {
                auto tables = make_analysis_tables(z, a, m.ports, bound.semiring, bound.weights, split, nested);
                render_all(tables, [&](const auto& v) { return bound.semiring.format(v); });
            },
            m.semiring);
    } else {
        throw model_error("unknown table mode '" + mode + "' (free or model)");
    }
    emit(j, as_json, out.str());
    return 0;
}

int cmd_scheme(const std::string& kind_name, const std::string& sender, const std::vector<std::string>& receivers,
               bool as_json) {
    SchemeKind kind = parse_scheme_kind(kind_name);
    WacPtr conn = make_scheme(kind, sender, receivers);
    std::vector<std::string> all{sender};
    all.insert(all.end(), receivers.begin(), receivers.end());
    PortSet ports(all);
    InteractionSet gamma = canonical_gamma(kind, sender, receivers, ports);

    std::string conn_text = "wac c = " + pretty(conn) + ";";
    std::string gamma_text = "gamma g = " + render_gamma(gamma, ports) + ";";
    json j{{"command", "scheme"},
           {"inputs", {{"kind", kind_name}, {"sender", sender}, {"receivers", receivers}}},
           {"result", {{"connector", pretty(conn)}, {"gamma", render_gamma(gamma, ports)}}},
           {"diagnostics", json::array()}};
    emit(j, as_json, conn_text + "\n" + gamma_text + "\n");
    return 0;
}

template <Semiring S>
std::vector<typename S::value_type> parse_samples(const S& s, const std::string& csv) {
    std::vector<typename S::value_type> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(s.parse(item));
    return out;
}

int cmd_laws(const std::string& kind, const std::string& samples_csv, const std::string& universe_csv,
             bool as_json) {
    auto run = [&](auto semiring, auto default_samples) {
        auto samples = samples_csv.empty() ? default_samples : parse_samples(semiring, samples_csv);
        LawReport report = check_laws(semiring, samples);
        json laws = json::array();
        for (const auto& r : report.laws) laws.push_back({{"law", r.law}, {"passed", r.passed}, {"witness", r.witness}});
        json j{{"command", "laws"},
               {"inputs", {{"semiring", kind}}},
               {"result", {{"laws", laws}, {"all_passed", report.all_passed()}}},
               {"diagnostics", json::array()}};
        emit(j, as_json, render_law_report(report));
        return 0;
    };

    const double inf = std::numeric_limits<double>::infinity();
    if (kind == "boolean") return run(BoolSemiring{}, std::vector<bool>{false, true});
    if (kind == "min-plus") return run(MinPlusSemiring{}, std::vector<double>{0, 1, 2, inf});
    if (kind == "max-plus") return run(MaxPlusSemiring{}, std::vector<double>{-inf, 0, 1, 2});
    if (kind == "viterbi") return run(ViterbiSemiring{}, std::vector<double>{0, 0.4, 0.7, 1});
    if (kind == "fuzzy") return run(FuzzySemiring{}, std::vector<double>{0, 0.4, 0.7, 1});
    if (kind == "natural") return run(NaturalSemiring{}, std::vector<std::uint64_t>{0, 1, 2});
    if (kind == "powerset") {
        std::vector<std::string> atoms;
        std::stringstream ss(universe_csv.empty() ? std::string("a,b") : universe_csv);
        std::string item;
        while (std::getline(ss, item, ',')) atoms.push_back(item);
        PowersetSemiring ps(atoms);
        std::vector<std::uint64_t> defaults;
        for (std::uint64_t v = 0; v <= ps.one(); ++v) defaults.push_back(v);
        return run(ps, defaults);
    }
    throw model_error("unknown semiring '" + kind + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted interaction and connector algebras"};
    app.require_subcommand(1);
    bool as_json = false;

    std::string model_path, term, gamma, lhs, rhs, interaction;
    std::string mode = "universal", table_mode = "free", samples, universe, scheme_kind, sender;
    std::vector<std::string> receivers;
    bool oracle = false, nested = false;
    std::uint64_t seed = 0;
    int contexts = 500, split = 1;

    auto* check = app.add_subcommand("check", "parse and validate a model");
    check->add_option("model", model_path, "model file")->required();

    auto* ev = app.add_subcommand("eval", "evaluate a term on an interaction set");
    ev->add_option("model", model_path)->required();
    ev->add_option("term", term, "term name or inline term")->required();
    ev->add_option("gamma", gamma, "gamma name, inline literal, or 'empty'")->required();

    auto* eq = app.add_subcommand("equiv", "decide equivalence of two terms");
    eq->add_option("model", model_path)->required();
    eq->add_option("lhs", lhs)->required();
    eq->add_option("rhs", rhs)->required();
    eq->add_option("--mode", mode, "universal|concrete");

    auto* cg = app.add_subcommand("congruent", "decide congruence of two connectors");
    cg->add_option("model", model_path)->required();
    cg->add_option("lhs", lhs)->required();
    cg->add_option("rhs", rhs)->required();
    cg->add_flag("--oracle", oracle, "cross-check with the sampling context oracle");
    cg->add_option("--seed", seed, "oracle seed");
    cg->add_option("--contexts", contexts, "oracle context budget");

    auto* tb = app.add_subcommand("table", "emit the analysis table of a term on an interaction");
    tb->add_option("model", model_path)->required();
    tb->add_option("term", term)->required();
    tb->add_option("interaction", interaction, "interaction literal like {s,r1}")->required();
    tb->add_option("--split", split, "split after this many factors (default 1)");
    tb->add_flag("--nested", nested, "also emit the auxiliary tables");
    tb->add_option("--semiring", table_mode, "free (symbolic, default) or model");

    auto* sc = app.add_subcommand("scheme", "emit a coordination scheme connector and its gamma");
    sc->add_option("kind", scheme_kind, "rendezvous|broadcast|atomic-broadcast|causality-chain")->required();
    sc->add_option("sender", sender)->required();
    sc->add_option("receivers", receivers, "receiver ports")->required()->expected(-1);

    auto* lw = app.add_subcommand("laws", "run the semiring law suite");
    lw->add_option("semiring", scheme_kind, "semiring kind")->required();
    lw->add_option("--samples", samples, "comma-separated sample values");
    lw->add_option("--universe", universe, "powerset universe atoms");

    for (CLI::App* sub : app.get_subcommands({}))
        sub->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(model_path, as_json);
        if (*ev) return cmd_eval(model_path, term, gamma, as_json);
        if (*eq) return cmd_equiv(model_path, lhs, rhs, mode, as_json);
        if (*cg) return cmd_congruent(model_path, lhs, rhs, oracle, seed, contexts, as_json);
        if (*tb) return cmd_table(model_path, term, interaction, split, nested, table_mode, as_json);
        if (*sc) return cmd_scheme(scheme_kind, sender, receivers, as_json);
        if (*lw) return cmd_laws(scheme_kind, samples, universe, as_json);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const model_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_value_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const eval_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
