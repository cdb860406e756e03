#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modwij/lemma_modulus.hpp"
#include "modwij/modulus.hpp"
#include "modwij/natset.hpp"

namespace modwij {

/// Parse failure; carries the offending token for CLI diagnostics.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::string token)
        : std::runtime_error(message + " (offending token: '" + token + "')"),
          offending_token(std::move(token)) {}
    std::string offending_token;
};

namespace detail {

class Lexer {
public:
    explicit Lexer(std::string text) : text_(std::move(text)) {}

    std::string peek() {
        if (cached_.empty()) cached_ = next_raw();
        return cached_;
    }
    std::string next() {
        std::string t = peek();
        cached_.clear();
        return t;
    }
    void expect(const std::string& tok) {
        std::string t = next();
        if (t != tok) throw ParseError("expected '" + tok + "'", t.empty() ? "<end>" : t);
    }
    bool at_end() { return peek().empty(); }

private:
    std::string next_raw() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ >= text_.size()) return "";
        const char c = text_[pos_];
        if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') {
            ++pos_;
            return std::string(1, c);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char d = text_[pos_];
            if (d == '(' || d == ')' || d == '[' || d == ']' || d == ',' ||
                std::isspace(static_cast<unsigned char>(d)))
                break;
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    std::string text_;
    std::size_t pos_ = 0;
    std::string cached_;
};

inline double parse_number(Lexer& lex) {
    const std::string t = lex.next();
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number", t.empty() ? "<end>" : t);
    }
}

inline std::uint64_t parse_uint(Lexer& lex) {
    const std::string t = lex.next();
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a positive integer", t.empty() ? "<end>" : t);
    }
}

NatSet parse_set(Lexer& lex);      // forward
Modulus parse_modulus(Lexer& lex); // forward

inline NatSet parse_set(Lexer& lex) {
    const std::string head = lex.next();
    if (head == "squares") return squares_set();
    if (head == "evens") return evens_set();
    if (head == "odds") return odds_set();
    if (head == "pow2") return powers_of_two_set();
    if (head == "finite") {
        lex.expect("[");
        std::vector<std::uint64_t> elems;
        if (lex.peek() != "]") {
            elems.push_back(parse_uint(lex));
            while (lex.peek() == ",") {
                lex.next();
                elems.push_back(parse_uint(lex));
            }
        }
        lex.expect("]");
        return finite_set_of(std::move(elems));
    }
    if (head == "compl") {
        lex.expect("(");
        NatSet inner = parse_set(lex);
        lex.expect(")");
        return complement_of(inner);
    }
    if (head == "union") {
        lex.expect("(");
        NatSet a = parse_set(lex);
        lex.expect(",");
        NatSet b = parse_set(lex);
        lex.expect(")");
        return union_of(a, b);
    }
    throw ParseError("unknown set expression", head.empty() ? "<end>" : head);
}

inline Modulus parse_modulus(Lexer& lex) {
    const std::string head = lex.next();
    if (head == "id") return identity_modulus();
    if (head == "log1p") return log1p_modulus();
    if (head == "cantor_ext") return extended_cantor_modulus();
    if (head == "scale") {
        lex.expect("(");
        const double a = parse_number(lex);
        lex.expect(")");
        if (!(a > 0)) throw ParseError("scale needs a > 0", std::to_string(a));
        return scale_modulus(a);
    }
    if (head == "pow") {
        lex.expect("(");
        const double p = parse_number(lex);
        lex.expect(")");
        if (!(p > 0 && p <= 1)) throw ParseError("pow needs 0 < p <= 1", std::to_string(p));
        return power_modulus(p);
    }
    if (head == "lemma") {
        lex.expect("(");
        NatSet k = parse_set(lex);
        lex.expect(",");
        const std::uint64_t kmax = parse_uint(lex);
        lex.expect(")");
        return lemma_modulus(k, static_cast<unsigned>(kmax)).modulus;
    }
    if (head == "compose") {
        lex.expect("(");
        Modulus outer = parse_modulus(lex);
        lex.expect(",");
        Modulus inner = parse_modulus(lex);
        lex.expect(")");
        return compose_modulus(outer, inner);
    }
    if (head == "lin") {
        lex.expect("(");
        const double a = parse_number(lex);
        if (!(a > 0)) throw ParseError("lin needs positive coefficients", std::to_string(a));
        lex.expect(",");
        Modulus m1 = parse_modulus(lex);
        lex.expect(",");
        const double b = parse_number(lex);
        if (!(b > 0)) throw ParseError("lin needs positive coefficients", std::to_string(b));
        lex.expect(",");
        Modulus m2 = parse_modulus(lex);
        lex.expect(")");
        return linear_combination(a, m1, b, m2);
    }
    if (head == "max") {
        lex.expect("(");
        Modulus m1 = parse_modulus(lex);
        lex.expect(",");
        Modulus m2 = parse_modulus(lex);
        lex.expect(")");
        return max_modulus(m1, m2);
    }
    throw ParseError("unknown modulus expression", head.empty() ? "<end>" : head);
}

}  // namespace detail

inline NatSet parse_set_expr(const std::string& text) {
    detail::Lexer lex(text);
    NatSet s = detail::parse_set(lex);
    if (!lex.at_end()) throw ParseError("trailing input after set expression", lex.peek());
    return s;
}

inline Modulus parse_modulus_expr(const std::string& text) {
    detail::Lexer lex(text);
    Modulus m = detail::parse_modulus(lex);
    if (!lex.at_end()) throw ParseError("trailing input after modulus expression", lex.peek());
    return m;
}

}  // namespace modwij
