#ifndef G2CERT_CALCULUS_HPP
#define G2CERT_CALCULUS_HPP

#include <optional>
#include <unordered_map>

#include "g2cert/ratexpr.hpp"
#include "g2cert/rng.hpp"

namespace g2cert {

namespace detail {

// d(sym)/d(v): coordinates are independent of each other, constants die,
// dynamic atoms follow their rule with respect to the independent coordinate
// and are constant along the other coordinates.
inline RationalExpr symbol_derivative(SymbolId s, SymbolId v, const Context& ctx) {
    const Atom& a = ctx.atom(s);
    switch (a.kind) {
        case AtomKind::Coordinate:
            return s == v ? RationalExpr(BigRational(1)) : RationalExpr();
        case AtomKind::Constant:
            return RationalExpr();
        case AtomKind::Dynamic:
            if (v != ctx.independent()) return RationalExpr();
            if (!a.dx_rule) throw MissingDerivativeRule(a.name);
            return *a.dx_rule;
    }
    return RationalExpr();
}

inline RationalExpr poly_derivative(const Polynomial& p, SymbolId v, const Context& ctx) {
    RationalExpr out;
    for (SymbolId s : p.variables()) {
        Polynomial part = p.partial(s);
        if (part.is_zero()) continue;
        RationalExpr ds = symbol_derivative(s, v, ctx);
        if (ds.is_structural_zero()) continue;
        out += RationalExpr(part) * ds;
    }
    return out;
}

}  // namespace detail

// d/dv with the chain rule through atom derivative rules; v must be a
// coordinate of the context.
inline RationalExpr differentiate(const RationalExpr& e, SymbolId v, const Context& ctx) {
    if (ctx.coordinate_index(v) < 0) throw Error("differentiate: " + symbol_name(v) + " is not a coordinate");
    for (SymbolId s : e.symbols())
        if (!ctx.contains(s)) throw UndeclaredSymbol(symbol_name(s));
    RationalExpr dn = detail::poly_derivative(e.num(), v, ctx);
    if (e.is_polynomial()) return normalize(dn, ctx);
    RationalExpr dd = detail::poly_derivative(e.den(), v, ctx);
    RationalExpr den(e.den());
    RationalExpr r = dn / den - RationalExpr(e.num()) * dd / (den * den);
    return normalize(r, ctx);
}

inline RationalExpr differentiate(const RationalExpr& e, const std::string& v, const Context& ctx) {
    return differentiate(e, ctx.symbol(v), ctx);
}

// Simultaneous substitution, then normalization in the target context.
inline RationalExpr substitute(const RationalExpr& e,
                               const std::unordered_map<SymbolId, RationalExpr>& bindings,
                               const Context& ctx_out) {
    auto subst_poly = [&](const Polynomial& p) -> RationalExpr {
        RationalExpr acc;
        for (const auto& t : p.terms()) {
            RationalExpr term(BigRational(t.coeff));
            Monomial untouched;
            for (const auto& en : t.mono.entries()) {
                auto it = bindings.find(en.sym);
                if (it == bindings.end()) {
                    if (!ctx_out.contains(en.sym)) throw UndeclaredSymbol(symbol_name(en.sym));
                    untouched = untouched * Monomial(en.sym, en.exp);
                } else {
                    term = term * it->second.pow(en.exp);
                }
            }
            if (!untouched.is_one())
                term = term * RationalExpr(Polynomial::term(untouched, BigRational(1)));
            acc += term;
        }
        return acc;
    };
    RationalExpr n = subst_poly(e.num());
    RationalExpr d = subst_poly(e.den());
    if (is_zero(d, ctx_out)) throw ZeroDenominator();
    return normalize(n / d, ctx_out);
}

// Exact evaluation at a rational point. Atoms with algebraic relations must
// receive values consistent with their relation; this is checked.
inline BigRational evaluate_exact(const RationalExpr& e,
                                  const std::unordered_map<SymbolId, BigRational>& point,
                                  const Context* ctx = nullptr) {
    if (ctx && ctx->has_relations()) {
        for (SymbolId s : ctx->algebraic_atoms()) {
            if (!e.contains(s)) continue;
            auto it = point.find(s);
            if (it == point.end()) throw UndeclaredSymbol(symbol_name(s));
            const auto& rel = *ctx->atom(s).relation;
            BigRational lhs = it->second.pow(rel.power);
            BigRational rn = rel.replacement->num().evaluate(point);
            BigRational rd = rel.replacement->den().evaluate(point);
            if (rd.is_zero()) throw PoleAtPoint();
            if (lhs != rn / rd) throw InconsistentAlgebraicValue(symbol_name(s));
        }
    }
    BigRational d = e.den().evaluate(point);
    if (d.is_zero()) throw PoleAtPoint();
    return e.num().evaluate(point) / d;
}

struct ProbableZeroWitness {
    std::unordered_map<SymbolId, BigRational> point;
    BigRational value;
};

// Randomized zero test: a `false` answer is definitive (a witness point is
// recorded); `true` is advisory only. Deterministic for a fixed seed.
// Relation-reduces first so algebraic atoms can be sampled as free values.
inline bool probable_zero(const RationalExpr& e, const Context& ctx, unsigned trials,
                          std::uint64_t rng_seed,
                          std::optional<ProbableZeroWitness>* witness = nullptr) {
    if (trials == 0) trials = 1;
    RationalExpr r = ctx.has_relations() ? detail::relation_reduce(e, ctx) : e;
    if (r.is_structural_zero()) return true;
    std::vector<SymbolId> syms = r.symbols();
    SplitMix64 rng(rng_seed);
    for (unsigned t = 0; t < trials; ++t) {
        for (int retry = 0; retry < 50; ++retry) {
            std::unordered_map<SymbolId, BigRational> point;
            for (SymbolId s : syms) point[s] = rng.rational();
            BigRational d = r.den().evaluate(point);
            if (d.is_zero()) continue;
            BigRational n = r.num().evaluate(point);
            if (!n.is_zero()) {
                if (witness) *witness = ProbableZeroWitness{std::move(point), n / d};
                return false;
            }
            break;
        }
    }
    return true;
}

}  // namespace g2cert

#endif
