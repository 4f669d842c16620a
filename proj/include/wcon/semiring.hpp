#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wcon/errors.hpp"

namespace wcon {

/// A commutative semiring (K, add, mul, zero, one) with a decidable equality.
/// Models additionally declare whether their addition is idempotent; the
/// algebra layers require that and reject non-idempotent carriers.
template <class S>
concept Semiring = requires(const S s, const typename S::value_type& a, const typename S::value_type& b) {
    typename S::value_type;
    { s.add(a, b) } -> std::same_as<typename S::value_type>;
    { s.mul(a, b) } -> std::same_as<typename S::value_type>;
    { s.zero() } -> std::same_as<typename S::value_type>;
    { s.one() } -> std::same_as<typename S::value_type>;
    { s.eq(a, b) } -> std::same_as<bool>;
    { S::additively_idempotent } -> std::convertible_to<bool>;
};

namespace detail {

inline std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline double parse_real(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw invalid_value_error("not a real number: '" + text + "'");
    }
    if (pos != t.size()) throw invalid_value_error("not a real number: '" + text + "'");
    return v;
}

inline bool real_eq(double a, double b, double tol) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::fabs(a - b) <= tol;
}

} // namespace detail

/// Boolean semiring ({0,1}, or, and, 0, 1).
struct BoolSemiring {
    using value_type = bool;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "boolean";

    value_type add(value_type a, value_type b) const { return a || b; }
    value_type mul(value_type a, value_type b) const { return a && b; }
    value_type zero() const { return false; }
    value_type one() const { return true; }
    bool eq(value_type a, value_type b) const { return a == b; }

    value_type parse(const std::string& text) const {
        if (text == "0" || text == "false") return false;
        if (text == "1" || text == "true") return true;
        throw invalid_value_error("boolean value must be 0/1/true/false, got '" + text + "'");
    }
    std::string format(value_type v) const { return v ? "1" : "0"; }
    void check(value_type) const {}
};

/// Tropical semiring (R+ u {inf}, min, +, inf, 0).
struct MinPlusSemiring {
    using value_type = double;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "min-plus";
    double tol = 1e-9;

    value_type add(value_type a, value_type b) const { return std::min(a, b); }
    value_type mul(value_type a, value_type b) const { return a + b; }
    value_type zero() const { return std::numeric_limits<double>::infinity(); }
    value_type one() const { return 0.0; }
    bool eq(value_type a, value_type b) const { return detail::real_eq(a, b, tol); }

    value_type parse(const std::string& text) const {
        double v = detail::parse_real(text);
        check(v);
        return v;
    }
    std::string format(value_type v) const { return detail::format_real(v); }
    void check(value_type v) const {
        if (std::isnan(v) || v < 0)
            throw invalid_value_error("min-plus carrier is the non-negative reals with inf, got " +
                                      detail::format_real(v));
    }
};

/// Arctic semiring (R+ u {-inf}, max, +, -inf, 0).
struct MaxPlusSemiring {
    using value_type = double;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "max-plus";
    double tol = 1e-9;

    value_type add(value_type a, value_type b) const { return std::max(a, b); }
    value_type mul(value_type a, value_type b) const { return a + b; }
    value_type zero() const { return -std::numeric_limits<double>::infinity(); }
    value_type one() const { return 0.0; }
    bool eq(value_type a, value_type b) const { return detail::real_eq(a, b, tol); }

    value_type parse(const std::string& text) const {
        double v = detail::parse_real(text);
        check(v);
        return v;
    }
    std::string format(value_type v) const { return detail::format_real(v); }
    void check(value_type v) const {
        if (std::isnan(v) || (std::isinf(v) && v > 0) || (v < 0 && !std::isinf(v)))
            throw invalid_value_error("max-plus carrier is the non-negative reals with -inf, got " +
                                      detail::format_real(v));
    }
};

/// Viterbi semiring ([0,1], max, *, 0, 1).
struct ViterbiSemiring {
    using value_type = double;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "viterbi";
    double tol = 1e-9;

    value_type add(value_type a, value_type b) const { return std::max(a, b); }
    value_type mul(value_type a, value_type b) const { return a * b; }
    value_type zero() const { return 0.0; }
    value_type one() const { return 1.0; }
    bool eq(value_type a, value_type b) const { return detail::real_eq(a, b, tol); }

    value_type parse(const std::string& text) const {
        double v = detail::parse_real(text);
        check(v);
        return v;
    }
    std::string format(value_type v) const { return detail::format_real(v); }
    void check(value_type v) const {
        if (std::isnan(v) || v < 0 || v > 1)
            throw invalid_value_error("viterbi carrier is [0,1], got " + detail::format_real(v));
    }
};

/// Fuzzy semiring ([0,1], max, min, 0, 1).
struct FuzzySemiring {
    using value_type = double;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "fuzzy";
    double tol = 1e-9;

    value_type add(value_type a, value_type b) const { return std::max(a, b); }
    value_type mul(value_type a, value_type b) const { return std::min(a, b); }
    value_type zero() const { return 0.0; }
    value_type one() const { return 1.0; }
    bool eq(value_type a, value_type b) const { return detail::real_eq(a, b, tol); }

    value_type parse(const std::string& text) const {
        double v = detail::parse_real(text);
        check(v);
        return v;
    }
    std::string format(value_type v) const { return detail::format_real(v); }
    void check(value_type v) const {
        if (std::isnan(v) || v < 0 || v > 1)
            throw invalid_value_error("fuzzy carrier is [0,1], got " + detail::format_real(v));
    }
};

/// Powerset semiring (P(A), union, intersection, {}, A) over a declared
/// finite universe A. Values are subsets encoded as bit masks over the
/// universe's declaration order.
struct PowersetSemiring {
    using value_type = std::uint64_t;
    static constexpr bool additively_idempotent = true;
    static constexpr std::string_view kind_name = "powerset";

    std::vector<std::string> universe;

    explicit PowersetSemiring(std::vector<std::string> atoms = {}) : universe(std::move(atoms)) {
        if (universe.size() > 64) throw invalid_value_error("powerset universe is limited to 64 atoms");
        for (std::size_t i = 0; i < universe.size(); ++i)
            for (std::size_t j = i + 1; j < universe.size(); ++j)
                if (universe[i] == universe[j])
                    throw invalid_value_error("duplicate atom '" + universe[i] + "' in powerset universe");
    }

    value_type add(value_type a, value_type b) const { return a | b; }
    value_type mul(value_type a, value_type b) const { return a & b; }
    value_type zero() const { return 0; }
    value_type one() const {
        return universe.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << universe.size()) - 1);
    }
    bool eq(value_type a, value_type b) const { return a == b; }

    value_type parse(const std::string& text) const {
        // brace set of atoms: {a,b}; {} is the empty set
        std::string t = text;
        t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
        if (t.size() < 2 || t.front() != '{' || t.back() != '}')
            throw invalid_value_error("powerset value must be a brace set of atoms, got '" + text + "'");
        t = t.substr(1, t.size() - 2);
        value_type v = 0;
        std::stringstream ss(t);
        std::string atom;
        while (std::getline(ss, atom, ',')) {
            if (atom.empty()) throw invalid_value_error("empty atom in powerset value '" + text + "'");
            auto it = std::find(universe.begin(), universe.end(), atom);
            if (it == universe.end())
                throw invalid_value_error("atom '" + atom + "' is not in the declared universe");
            v |= std::uint64_t{1} << (it - universe.begin());
        }
        return v;
    }
    std::string format(value_type v) const {
        std::string out = "{";
        bool first = true;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            if (v & (std::uint64_t{1} << i)) {
                if (!first) out += ",";
                out += universe[i];
                first = false;
            }
        }
        return out + "}";
    }
    void check(value_type v) const {
        if ((v & ~one()) != 0) throw invalid_value_error("powerset value has atoms outside the universe");
    }
};

/// Natural numbers (N, +, *, 0, 1). Not additively idempotent; retained only
/// as the law checker's negative fixture. The algebra layers reject it.
struct NaturalSemiring {
    using value_type = std::uint64_t;
    static constexpr bool additively_idempotent = false;
    static constexpr std::string_view kind_name = "natural";

    value_type add(value_type a, value_type b) const { return a + b; }
    value_type mul(value_type a, value_type b) const { return a * b; }
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool eq(value_type a, value_type b) const { return a == b; }

    value_type parse(const std::string& text) const {
        if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw invalid_value_error("natural value must be a non-negative integer, got '" + text + "'");
        return std::stoull(text);
    }
    std::string format(value_type v) const { return std::to_string(v); }
    void check(value_type) const {}
};

// ---------------------------------------------------------------------------
// Law checking

struct LawResult {
    std::string law;
    bool passed = true;
    std::string witness; // human-readable witness on failure
};

struct LawReport {
    std::vector<LawResult> laws;
    bool all_passed() const {
        return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.passed; });
    }
};

/// Exhaustively checks the semiring axioms and additive idempotence over the
/// given sample values. Reports one entry per law with a witness on failure.
template <Semiring S>
LawReport check_laws(const S& s, const std::vector<typename S::value_type>& samples) {
    if (samples.empty()) throw std::invalid_argument("check_laws: samples must be non-empty");
    using V = typename S::value_type;
    LawReport report;

    auto scan1 = [&](std::string law, auto&& pred, auto&& describe) {
        LawResult r{std::move(law)};
        for (const V& a : samples)
            if (!pred(a)) {
                r.passed = false;
                r.witness = describe(a);
                break;
            }
        report.laws.push_back(std::move(r));
    };
    auto scan2 = [&](std::string law, auto&& pred, auto&& describe) {
        LawResult r{std::move(law)};
        for (const V& a : samples) {
            for (const V& b : samples)
                if (!pred(a, b)) {
                    r.passed = false;
                    r.witness = describe(a, b);
                    break;
                }
            if (!r.passed) break;
        }
        report.laws.push_back(std::move(r));
    };
    auto scan3 = [&](std::string law, auto&& pred, auto&& describe) {
        LawResult r{std::move(law)};
        for (const V& a : samples) {
            for (const V& b : samples) {
                for (const V& c : samples)
                    if (!pred(a, b, c)) {
                        r.passed = false;
                        r.witness = describe(a, b, c);
                        break;
                    }
                if (!r.passed) break;
            }
            if (!r.passed) break;
        }
        report.laws.push_back(std::move(r));
    };

    auto f = [&](const V& v) { return s.format(v); };

    scan3("add-associativity",
          [&](const V& a, const V& b, const V& c) { return s.eq(s.add(a, s.add(b, c)), s.add(s.add(a, b), c)); },
          [&](const V& a, const V& b, const V& c) { return "(" + f(a) + "," + f(b) + "," + f(c) + ")"; });
    scan2("add-commutativity",
          [&](const V& a, const V& b) { return s.eq(s.add(a, b), s.add(b, a)); },
          [&](const V& a, const V& b) { return "(" + f(a) + "," + f(b) + ")"; });
    scan1("add-idempotence",
          [&](const V& a) { return s.eq(s.add(a, a), a); },
          [&](const V& a) { return "k=" + f(a) + " (k+k=" + f(s.add(a, a)) + ")"; });
    scan1("zero-neutrality",
          [&](const V& a) { return s.eq(s.add(a, s.zero()), a) && s.eq(s.add(s.zero(), a), a); },
          [&](const V& a) { return "k=" + f(a); });
    scan3("mul-associativity",
          [&](const V& a, const V& b, const V& c) { return s.eq(s.mul(a, s.mul(b, c)), s.mul(s.mul(a, b), c)); },
          [&](const V& a, const V& b, const V& c) { return "(" + f(a) + "," + f(b) + "," + f(c) + ")"; });
    scan2("mul-commutativity",
          [&](const V& a, const V& b) { return s.eq(s.mul(a, b), s.mul(b, a)); },
          [&](const V& a, const V& b) { return "(" + f(a) + "," + f(b) + ")"; });
    scan1("one-neutrality",
          [&](const V& a) { return s.eq(s.mul(a, s.one()), a) && s.eq(s.mul(s.one(), a), a); },
          [&](const V& a) { return "k=" + f(a); });
    scan1("zero-absorption",
          [&](const V& a) { return s.eq(s.mul(a, s.zero()), s.zero()) && s.eq(s.mul(s.zero(), a), s.zero()); },
          [&](const V& a) { return "k=" + f(a); });
    scan3("distributivity-left",
          [&](const V& a, const V& b, const V& c) {
              return s.eq(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)));
          },
          [&](const V& a, const V& b, const V& c) { return "(" + f(a) + "," + f(b) + "," + f(c) + ")"; });
    scan3("distributivity-right",
          [&](const V& a, const V& b, const V& c) {
              return s.eq(s.mul(s.add(a, b), c), s.add(s.mul(a, c), s.mul(b, c)));
          },
          [&](const V& a, const V& b, const V& c) { return "(" + f(a) + "," + f(b) + "," + f(c) + ")"; });

    return report;
}

/// Additive fold convenience: combines values with s.add, empty -> zero.
template <Semiring S>
typename S::value_type add_fold(const S& s, const std::vector<typename S::value_type>& values) {
    auto acc = s.zero();
    for (const auto& v : values) acc = s.add(acc, v);
    return acc;
}

inline std::string render_law_report(const LawReport& report) {
    std::string out;
    for (const auto& r : report.laws) {
        out += (r.passed ? "PASS " : "FAIL ") + r.law;
        if (!r.passed) out += ": witness " + r.witness;
        out += "\n";
    }
    return out;
}

} // namespace wcon
