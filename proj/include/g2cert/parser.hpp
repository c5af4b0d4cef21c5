#ifndef G2CERT_PARSER_HPP
#define G2CERT_PARSER_HPP

#include <cctype>
#include <memory>
#include <string>

#include "g2cert/calculus.hpp"
#include "g2cert/ratexpr.hpp"

namespace g2cert {

namespace detail {

// Grammar: identifiers, integer literals, rational literals a/b (parsed as
// division of integer literals, which coincides), + - * / ^ with integer
// exponent, parentheses, unary minus. Whitespace insignificant.
class ExprParser {
public:
    ExprParser(const std::string& text, const Context& ctx) : text_(text), ctx_(ctx) {}

    RationalExpr parse() {
        RationalExpr e = expression();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError(pos_, "end of input or operator", describe_here());
        return e;
    }

private:
    RationalExpr expression() {
        skip_ws();
        bool neg = false;
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
            } else if (peek() == '-') {
                neg = !neg;
                ++pos_;
            } else {
                break;
            }
        }
        RationalExpr acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    RationalExpr term() {
        RationalExpr acc = factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= factor();
            } else if (c == '/') {
                ++pos_;
                RationalExpr d = factor();
                if (d.is_structural_zero()) throw SyntaxError(pos_, "nonzero divisor", "zero");
                acc /= d;
            } else {
                break;
            }
        }
        return acc;
    }

    RationalExpr factor() {
        RationalExpr base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            long e = integer_exponent();
            base = base.pow(e);
        }
        return base;
    }

    RationalExpr atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalExpr e = expression();
            skip_ws();
            if (peek() != ')') throw SyntaxError(pos_, "')'", describe_here());
            ++pos_;
            return e;
        }
        if (c == '-') {  // unary minus inside a factor chain, e.g. 2*-3
            ++pos_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return RationalExpr(BigRational::from_string(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            SymbolId s = SymbolTable::instance().lookup(name);
            if (s == SymbolTable::npos || !ctx_.contains(s)) throw UndeclaredSymbol(name);
            return RationalExpr::variable(s);
        }
        throw SyntaxError(pos_, "identifier, number, '(' or '-'", describe_here());
    }

    long integer_exponent() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw SyntaxError(pos_, "integer exponent", describe_here());
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 100000) throw SyntaxError(pos_, "exponent below 100000", "larger value");
            ++pos_;
        }
        return neg ? -v : v;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::string describe_here() const {
        if (pos_ >= text_.size()) return "end of input";
        return std::string("'") + text_[pos_] + "'";
    }

    const std::string& text_;
    const Context& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Parses an expression in the context's symbols and normalizes it. Round-trips
// through the canonical printer.
inline RationalExpr parse_expr(const std::string& text, const Context& ctx) {
    detail::ExprParser p(text, ctx);
    return normalize(p.parse(), ctx);
}

// ---------------------------------------------------------------------------
// Deferred context wiring: rule and relation texts are parsed at freeze().
// ---------------------------------------------------------------------------

inline SymbolId Context::declare_dynamic(const std::string& n, const std::string& rule) {
    SymbolId s = declare(n, AtomKind::Dynamic);
    pending_rules_.push_back({s, rule});
    return s;
}

inline SymbolId Context::declare_algebraic_constant(const std::string& n, std::uint32_t power,
                                                    const std::string& replacement) {
    SymbolId s = declare(n, AtomKind::Constant);
    pending_relations_.push_back({s, power, replacement});
    return s;
}

inline SymbolId Context::declare_dynamic_algebraic(const std::string& n, const std::string& rule,
                                                   std::uint32_t power,
                                                   const std::string& replacement) {
    SymbolId s = declare(n, AtomKind::Dynamic);
    pending_rules_.push_back({s, rule});
    pending_relations_.push_back({s, power, replacement});
    return s;
}

inline void Context::freeze() {
    if (frozen_) return;
    // Relations first: stratification is validated (replacement symbols must be
    // declared strictly earlier), then rules, which may reference any symbol.
    for (const auto& pr : pending_relations_) {
        if (pr.power < 2) throw Error("relation power must be >= 2 for " + atoms_.at(pr.sym).name);
        detail::ExprParser parser(pr.text, *this);
        RationalExpr rep = parser.parse();
        std::size_t my_stratum = atoms_.at(pr.sym).stratum;
        for (SymbolId s : rep.symbols()) {
            if (!contains(s)) throw UndeclaredSymbol(symbol_name(s));
            if (atoms_.at(s).stratum >= my_stratum)
                throw Error("relation for " + atoms_.at(pr.sym).name +
                            " references a symbol not declared earlier: " + symbol_name(s));
        }
        attach_relation(pr.sym, pr.power, std::make_shared<RationalExpr>(std::move(rep)));
    }
    pending_relations_.clear();
    for (const auto& pr : pending_rules_) {
        detail::ExprParser parser(pr.text, *this);
        RationalExpr rule = parser.parse();
        for (SymbolId s : rule.symbols())
            if (!contains(s)) throw UndeclaredSymbol(symbol_name(s));
        attach_rule(pr.sym, std::make_shared<RationalExpr>(std::move(rule)));
    }
    pending_rules_.clear();
    mark_frozen();
    // Canonicalize rules and relations now that everything is attached.
    for (SymbolId s : order_) {
        Atom& a = atoms_.at(s);
        if (a.dx_rule) a.dx_rule = std::make_shared<RationalExpr>(normalize(*a.dx_rule, *this));
        if (a.relation)
            a.relation->replacement =
                std::make_shared<RationalExpr>(normalize(*a.relation->replacement, *this));
    }
}

// Consistency check for atoms that carry both a derivative rule and an
// algebraic relation: d(s^n) must equal d(replacement).
inline void validate_context(const Context& ctx) {
    for (SymbolId s : ctx.algebraic_atoms()) {
        const Atom& a = ctx.atom(s);
        if (a.kind != AtomKind::Dynamic || !a.dx_rule) continue;
        RationalExpr lhs = RationalExpr(BigRational(long(a.relation->power))) *
                           RationalExpr::variable(s).pow(long(a.relation->power) - 1) * (*a.dx_rule);
        RationalExpr rhs = differentiate(*a.relation->replacement, ctx.independent(), ctx);
        if (!is_zero(lhs - rhs, ctx))
            throw Error("relation and derivative rule disagree for atom " + a.name);
    }
}

}  // namespace g2cert

#endif
