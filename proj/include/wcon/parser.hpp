#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcon/errors.hpp"
#include "wcon/model.hpp"
#include "wcon/wac.hpp"
#include "wcon/wai.hpp"

namespace wcon {

// Recursive-descent parser for the .wconn model format and for bare terms.
//
// Operators are ASCII: + for weighted union, * for weighted synchronization
// and fusion; the Unicode circled operators are accepted as aliases on
// input. * binds tighter than +. Typing brackets: [x] synchron, [x]'
// trigger; bare ports and constants inside a fusion are sugar for
// synchron-typed operands. # starts a line comment.

namespace detail {

enum class Tok {
    ident,
    number,
    plus,
    star,
    lparen,
    rparen,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    semicolon,
    comma,
    equals,
    prime,
    minus,
    end
};

inline const char* tok_name(Tok k) {
    switch (k) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::plus: return "'+'";
    case Tok::star: return "'*'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::semicolon: return "';'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::prime: return "\"'\"";
    case Tok::minus: return "'-'";
    case Tok::end: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1, column = 1;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](Tok kind, std::string text, int l, int c) { out.push_back({kind, std::move(text), l, c}); };

    while (i < src.size()) {
        char c = src[i];
        int l = line, co = col;
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        // UTF-8 aliases for the circled operators
        if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < src.size() &&
            static_cast<unsigned char>(src[i + 1]) == 0x8A) {
            unsigned char third = static_cast<unsigned char>(src[i + 2]);
            if (third == 0x95) { // circled plus
                push(Tok::plus, "+", l, co);
                advance(3);
                continue;
            }
            if (third == 0x97) { // circled times
                push(Tok::star, "*", l, co);
                advance(3);
                continue;
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            // interior '-' is part of the name (min-plus, atomic-broadcast)
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '-'))
                ++j;
            push(Tok::ident, std::string(src.substr(i, j - i)), l, co);
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                std::size_t digits = k;
                while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                if (k > digits) j = k;
            }
            push(Tok::number, std::string(src.substr(i, j - i)), l, co);
            advance(j - i);
            continue;
        }
        Tok kind;
        switch (c) {
        case '+': kind = Tok::plus; break;
        case '*': kind = Tok::star; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case '[': kind = Tok::lbracket; break;
        case ']': kind = Tok::rbracket; break;
        case '{': kind = Tok::lbrace; break;
        case '}': kind = Tok::rbrace; break;
        case ';': kind = Tok::semicolon; break;
        case ',': kind = Tok::comma; break;
        case '=': kind = Tok::equals; break;
        case '\'': kind = Tok::prime; break;
        case '-': kind = Tok::minus; break;
        default: throw parse_error(std::string("unexpected character '") + c + "'", l, co);
        }
        push(kind, std::string(1, c), l, co);
        advance(1);
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

/// Token cursor shared by the term and model grammars.
class Cursor {
public:
    explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(std::string_view word) const { return peek().kind == Tok::ident && peek().text == word; }

    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, std::string_view what) {
        if (!at(k)) fail(std::string("expected ") + std::string(what) + ", got '" + describe(peek()) + "'");
        return next();
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw parse_error(message, peek().line, peek().column);
    }
    [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
        throw parse_error(message, t.line, t.column);
    }

    static std::string describe(const Token& t) {
        return t.kind == Tok::end ? "end of input" : t.text;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// --- wAI terms --------------------------------------------------------------

class TermParser {
public:
    TermParser(Cursor& cur, const PortSet* ports) : cur_(cur), ports_(ports) {}

    // sum := prod { '+' prod }
    WaiPtr parse_wai_sum() {
        WaiPtr t = parse_wai_prod();
        while (cur_.accept(Tok::plus)) t = wai::add(t, parse_wai_prod());
        return t;
    }

    // wsum := wprod { '+' wprod }
    WacPtr parse_wac_sum() { return parse_wac_sum_flagged().term; }

private:
    Cursor& cur_;
    const PortSet* ports_; // when set, port references must resolve

    void check_port(const Token& t) const {
        if (ports_ && !ports_->contains(t.text))
            cur_.fail_at(t, "unknown port '" + t.text + "'");
    }

    WaiPtr parse_wai_prod() {
        WaiPtr t = parse_wai_atom();
        while (cur_.accept(Tok::star)) t = wai::sync(t, parse_wai_atom());
        return t;
    }

    WaiPtr parse_wai_atom() {
        const Token& t = cur_.peek();
        if (t.kind == Tok::number) {
            if (t.text == "0") {
                cur_.next();
                return wai::zero();
            }
            if (t.text == "1") {
                cur_.next();
                return wai::one();
            }
            cur_.fail("expected 0, 1, a port, or '(', got '" + t.text + "'");
        }
        if (t.kind == Tok::ident) {
            check_port(t);
            cur_.next();
            return wai::port(t.text);
        }
        if (cur_.accept(Tok::lparen)) {
            WaiPtr inner = parse_wai_sum();
            cur_.expect(Tok::rparen, "')'");
            return inner;
        }
        cur_.fail(std::string("expected 0, 1, a port, or '(', got '") + Cursor::describe(t) + "'");
    }

    // A parsed wAC operand, remembering whether it was a bare (sugar-typed)
    // atom: inside a typing bracket a bare atom takes the bracket's type
    // directly, while anything else becomes a nested body.
    struct Operand {
        WacPtr term;
        bool bare_atom = false;
    };

    Operand parse_wac_sum_flagged() {
        Operand t = parse_wac_prod();
        while (cur_.accept(Tok::plus)) t = {wac::unite(t.term, parse_wac_prod().term), false};
        return t;
    }

    Operand parse_wac_prod() {
        const Token& first = cur_.peek();
        Operand head = parse_wac_factor();
        if (!cur_.at(Tok::star)) return head;
        std::vector<WacPtr> factors;
        auto push_factor = [&](const Operand& op, const Token& at) {
            if (!is_typed(op.term))
                cur_.fail_at(at, "fusion operands must carry a typing bracket");
            factors.push_back(op.term);
        };
        push_factor(head, first);
        while (cur_.accept(Tok::star)) {
            const Token& at = cur_.peek();
            push_factor(parse_wac_factor(), at);
        }
        return {wac::fuse(std::move(factors)), false};
    }

    Operand parse_wac_factor() {
        const Token& t = cur_.peek();
        if (t.kind == Tok::number && (t.text == "0" || t.text == "1")) {
            cur_.next();
            WacAtom atom{t.text == "0" ? WacAtom::Kind::zero : WacAtom::Kind::one, {}};
            return {wac::typed(Typing::synchron, atom), true};
        }
        if (t.kind == Tok::ident) {
            check_port(t);
            cur_.next();
            return {wac::port(t.text), true};
        }
        if (cur_.accept(Tok::lbracket)) {
            Operand inner = parse_wac_sum_flagged();
            cur_.expect(Tok::rbracket, "']'");
            Typing typing = cur_.accept(Tok::prime) ? Typing::trigger : Typing::synchron;
            if (inner.bare_atom) {
                // the bracket is the atom's own typing: [p], [p]', [0]', ...
                const auto& typed = std::get<WacTyped>(inner.term->node);
                return {wac::typed(typing, std::get<WacAtom>(typed.body)), false};
            }
            return {wac::typed(typing, inner.term), false};
        }
        if (cur_.accept(Tok::lparen)) {
            Operand inner = parse_wac_sum_flagged();
            cur_.expect(Tok::rparen, "')'");
            return {inner.term, false}; // grouping only
        }
        cur_.fail(std::string("expected 0, 1, a port, '[', or '(', got '") + Cursor::describe(t) + "'");
    }
};

} // namespace detail

/// Parses a bare wAI term. When a port set is given, port references must
/// resolve against it.
inline WaiPtr parse_wai_term(const std::string& text, const PortSet* ports = nullptr) {
    detail::Cursor cur(detail::lex(text));
    detail::TermParser p(cur, ports);
    WaiPtr t = p.parse_wai_sum();
    if (!cur.at(detail::Tok::end)) cur.fail("unexpected trailing input '" + detail::Cursor::describe(cur.peek()) + "'");
    return t;
}

/// Parses a bare wAC connector.
inline WacPtr parse_wac_term(const std::string& text, const PortSet* ports = nullptr) {
    detail::Cursor cur(detail::lex(text));
    detail::TermParser p(cur, ports);
    WacPtr t = p.parse_wac_sum();
    if (!cur.at(detail::Tok::end)) cur.fail("unexpected trailing input '" + detail::Cursor::describe(cur.peek()) + "'");
    return t;
}

namespace detail {

class ModelParser {
public:
    explicit ModelParser(std::string_view text) : cur_(lex(text)) {}

    Model parse() {
        // first pass: slice the token stream into declarations
        struct RawPort {
            Token name;
            std::string value_text;
            Token value_at;
        };
        std::optional<Token> semiring_name;
        std::vector<std::string> universe;
        std::vector<RawPort> raw_ports;
        bool seen_non_semiring = false;

        Model model;
        std::vector<std::function<void()>> deferred; // definitions and queries, in document order

        while (!cur_.at(Tok::end)) {
            const Token& kw = cur_.expect(Tok::ident, "a declaration keyword");
            if (kw.text == "semiring") {
                if (semiring_name) cur_.fail_at(kw, "duplicate semiring declaration");
                if (seen_non_semiring) cur_.fail_at(kw, "the semiring must be declared first");
                semiring_name = cur_.expect(Tok::ident, "a semiring kind");
                if (cur_.at(Tok::lbrace)) universe = parse_name_set();
                cur_.expect(Tok::semicolon, "';'");
                continue;
            }
            seen_non_semiring = true;
            if (kw.text == "port") {
                if (!semiring_name) cur_.fail_at(kw, "declare the semiring before any port");
                Token name = cur_.expect(Tok::ident, "a port name");
                cur_.expect(Tok::equals, "'='");
                RawPort rp{name, "", cur_.peek()};
                while (!cur_.at(Tok::semicolon) && !cur_.at(Tok::end)) rp.value_text += cur_.next().text;
                cur_.expect(Tok::semicolon, "';'");
                raw_ports.push_back(std::move(rp));
                continue;
            }
            if (kw.text == "wai" || kw.text == "wac") {
                Token name = cur_.expect(Tok::ident, "a definition name");
                cur_.expect(Tok::equals, "'='");
                bool is_wai = kw.text == "wai";
                std::size_t start = mark();
                skip_to_semicolon(kw);
                std::size_t stop = mark() - 1; // before ';'
                deferred.push_back([this, &model, name, is_wai, start, stop]() {
                    Cursor sub(slice(start, stop));
                    TermParser tp(sub, &model.ports);
                    if (model.find_wai(name.text) || model.find_wac(name.text))
                        throw model_error("duplicate definition '" + name.text + "' at " +
                                          std::to_string(name.line) + ":" + std::to_string(name.column));
                    if (is_wai) {
                        WaiPtr t = tp.parse_wai_sum();
                        if (!sub.at(Tok::end)) sub.fail("unexpected trailing input in term");
                        model.wai_defs.emplace_back(name.text, t);
                    } else {
                        WacPtr t = tp.parse_wac_sum();
                        if (!sub.at(Tok::end)) sub.fail("unexpected trailing input in connector");
                        model.wac_defs.emplace_back(name.text, t);
                    }
                });
                continue;
            }
            if (kw.text == "gamma") {
                Token name = cur_.expect(Tok::ident, "an interaction-set name");
                cur_.expect(Tok::equals, "'='");
                std::size_t start = mark();
                skip_to_semicolon(kw);
                std::size_t stop = mark() - 1;
                deferred.push_back([this, &model, name, start, stop]() {
                    if (model.find_gamma(name.text))
                        throw model_error("duplicate gamma '" + name.text + "' at " + std::to_string(name.line) +
                                          ":" + std::to_string(name.column));
                    Cursor sub(slice(start, stop));
                    InteractionSet g = parse_gamma_literal(sub, model.ports);
                    if (!sub.at(Tok::end)) sub.fail("unexpected trailing input in gamma");
                    model.gammas.emplace_back(name.text, g);
                });
                continue;
            }
            if (kw.text == "query") {
                std::size_t start = mark();
                skip_to_semicolon(kw);
                std::size_t stop = mark() - 1;
                deferred.push_back([this, &model, start, stop]() {
                    Cursor sub(slice(start, stop));
                    model.queries.push_back(parse_query(sub, model));
                    if (!sub.at(Tok::end)) sub.fail("unexpected trailing input in query");
                });
                continue;
            }
            cur_.fail_at(kw, "unknown declaration '" + kw.text +
                                 "' (expected semiring, port, wai, wac, gamma, or query)");
        }

        if (!semiring_name) throw model_error("model declares no semiring");
        model.semiring = make_model_semiring(*semiring_name, universe, raw_ports.size());

        // ports and weights
        std::vector<std::string> names;
        for (const RawPort& rp : raw_ports) names.push_back(rp.name.text);
        try {
            model.ports = PortSet(names);
        } catch (const model_error& e) {
            throw model_error(std::string(e.what()) + " (port declarations)");
        }
        std::visit(
            [&](auto& bound) {
                for (const RawPort& rp : raw_ports) {
                    try {
                        bound.weights.push_back(bound.semiring.parse(rp.value_text));
                    } catch (const invalid_value_error& e) {
                        throw model_error("at " + std::to_string(rp.value_at.line) + ":" +
                                          std::to_string(rp.value_at.column) + ": " + e.what());
                    }
                }
            },
            model.semiring);

        for (auto& run : deferred) run();
        return model;
    }

private:
    Cursor cur_;
    std::vector<Token> collected_;

    // The Cursor interface has no random access; keep our own copy of the
    // consumed tokens so definition bodies can be re-parsed with context.
    std::size_t mark() { return collected_.size(); }

    void skip_to_semicolon(const Token& kw) {
        while (!cur_.at(Tok::semicolon)) {
            if (cur_.at(Tok::end)) cur_.fail_at(kw, "missing ';' after declaration");
            collected_.push_back(cur_.next());
        }
        collected_.push_back(cur_.next()); // the ';'
    }

    std::vector<Token> slice(std::size_t start, std::size_t stop) const {
        std::vector<Token> out(collected_.begin() + static_cast<std::ptrdiff_t>(start),
                               collected_.begin() + static_cast<std::ptrdiff_t>(stop));
        Token end_tok;
        end_tok.kind = Tok::end;
        if (!out.empty()) {
            end_tok.line = out.back().line;
            end_tok.column = out.back().column + static_cast<int>(out.back().text.size());
        }
        out.push_back(end_tok);
        return out;
    }

    std::vector<std::string> parse_name_set() {
        cur_.expect(Tok::lbrace, "'{'");
        std::vector<std::string> names;
        if (!cur_.at(Tok::rbrace)) {
            names.push_back(cur_.expect(Tok::ident, "an atom name").text);
            while (cur_.accept(Tok::comma)) names.push_back(cur_.expect(Tok::ident, "an atom name").text);
        }
        cur_.expect(Tok::rbrace, "'}'");
        return names;
    }

    static ModelSemiring make_model_semiring(const Token& name, const std::vector<std::string>& universe,
                                             std::size_t n_ports) {
        (void)n_ports;
        const std::string& kind = name.text;
        if (!universe.empty() && kind != "powerset")
            throw parse_error("only the powerset semiring takes a universe", name.line, name.column);
        if (kind == "boolean") return Bound<BoolSemiring>{};
        if (kind == "min-plus" || kind == "min_plus") return Bound<MinPlusSemiring>{};
        if (kind == "max-plus" || kind == "max_plus") return Bound<MaxPlusSemiring>{};
        if (kind == "viterbi") return Bound<ViterbiSemiring>{};
        if (kind == "fuzzy") return Bound<FuzzySemiring>{};
        if (kind == "powerset") {
            if (universe.empty())
                throw parse_error("powerset needs a universe: semiring powerset {a,b,...};", name.line,
                                  name.column);
            return Bound<PowersetSemiring>{PowersetSemiring(universe), {}};
        }
        if (kind == "natural")
            throw parse_error("semiring 'natural' is not additively idempotent; models require an idempotent "
                              "semiring (use the laws command to inspect it)",
                              name.line, name.column);
        throw parse_error("unknown semiring '" + kind + "'", name.line, name.column);
    }

    static Interaction parse_interaction_literal(Cursor& cur, const PortSet& ports) {
        cur.expect(Tok::lbrace, "'{'");
        Interaction a;
        if (!cur.at(Tok::rbrace)) {
            do {
                const Token& t = cur.expect(Tok::ident, "a port name");
                if (!ports.contains(t.text))
                    throw parse_error("unknown port '" + t.text + "'", t.line, t.column);
                a.mask |= std::uint32_t{1} << ports.index_of(t.text);
            } while (cur.accept(Tok::comma));
        }
        cur.expect(Tok::rbrace, "'}'");
        return a;
    }

    static InteractionSet parse_gamma_literal(Cursor& cur, const PortSet& ports) {
        cur.expect(Tok::lbrace, "'{'");
        std::vector<Interaction> elems;
        if (!cur.at(Tok::rbrace)) {
            do { elems.push_back(parse_interaction_literal(cur, ports)); } while (cur.accept(Tok::comma));
        }
        cur.expect(Tok::rbrace, "'}'");
        return InteractionSet(std::move(elems));
    }

    static Query parse_query(Cursor& cur, const Model& model) {
        const Token& kind = cur.expect(Tok::ident, "a query kind");
        auto ref = [&](const char* what) { return cur.expect(Tok::ident, what).text; };
        auto unresolved = [&](const std::string& what, const std::string& name) {
            throw model_error("at " + std::to_string(kind.line) + ":" + std::to_string(kind.column) +
                              ": query references unknown " + what + " '" + name + "'");
        };
        if (kind.text == "eval") {
            QueryEval q;
            q.term = ref("a term name");
            if (!model.find_wai(q.term) && !model.find_wac(q.term)) unresolved("term", q.term);
            const Token& over = cur.expect(Tok::ident, "'over'");
            if (over.text != "over") cur.fail_at(over, "expected 'over'");
            q.gamma = ref("an interaction-set name");
            if (!model.find_gamma(q.gamma) && q.gamma != "empty") unresolved("gamma", q.gamma);
            return q;
        }
        if (kind.text == "equiv" || kind.text == "congruent") {
            std::string lhs = ref("a term name");
            std::string rhs = ref("a term name");
            for (const std::string& n : {lhs, rhs})
                if (!model.find_wai(n) && !model.find_wac(n)) unresolved("term", n);
            if (kind.text == "congruent") return QueryCongruent{lhs, rhs};
            QueryEquiv q{lhs, rhs, EquivMode::universal};
            if (cur.at(Tok::ident)) {
                const Token& m = cur.next();
                if (m.text == "universal")
                    q.mode = EquivMode::universal;
                else if (m.text == "concrete")
                    q.mode = EquivMode::concrete;
                else
                    cur.fail_at(m, "expected 'universal' or 'concrete'");
            }
            return q;
        }
        if (kind.text == "table") {
            QueryTable q;
            q.term = ref("a term name");
            if (!model.find_wai(q.term) && !model.find_wac(q.term)) unresolved("term", q.term);
            q.interaction = parse_interaction_literal(cur, model.ports);
            return q;
        }
        if (kind.text == "scheme") {
            QueryScheme q;
            const Token& kname = cur.expect(Tok::ident, "a scheme kind");
            try {
                q.kind = parse_scheme_kind(kname.text);
            } catch (const std::invalid_argument& e) {
                cur.fail_at(kname, e.what());
            }
            q.sender = ref("a sender port");
            while (cur.at(Tok::ident)) q.receivers.push_back(cur.next().text);
            if (q.receivers.empty()) cur.fail_at(kname, "scheme needs at least one receiver");
            return q;
        }
        cur.fail_at(kind, "unknown query '" + kind.text + "' (expected eval, equiv, congruent, table, or scheme)");
    }
};

} // namespace detail

/// Parses a .wconn model. Lexical and syntax errors raise parse_error with a
/// line:column position; semantic violations raise model_error.
inline Model parse_model(const std::string& text) {
    detail::ModelParser p(text);
    return p.parse();
}

} // namespace wcon
