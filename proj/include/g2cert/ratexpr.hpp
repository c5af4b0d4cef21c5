#ifndef G2CERT_RATEXPR_HPP
#define G2CERT_RATEXPR_HPP

#include <sstream>
#include <string>
#include <vector>

#include "g2cert/context.hpp"
#include "g2cert/gcd.hpp"
#include "g2cert/polynomial.hpp"

namespace g2cert {

// Canonical multivariate rational function: num/den with gcd(num, den) = 1 and
// den monic under graded-lex. Context-aware canonicalization (relation
// reduction, algebraic-atom-free denominators) lives in normalize().
class RationalExpr {
public:
    RationalExpr() : num_(), den_(BigRational(1)) {}
    RationalExpr(const BigRational& c) : num_(c), den_(BigRational(1)) {}  // NOLINT
    RationalExpr(long n) : num_(BigRational(n)), den_(BigRational(1)) {}   // NOLINT
    RationalExpr(const Polynomial& p) : num_(p), den_(BigRational(1)) {}   // NOLINT
    RationalExpr(Polynomial num, Polynomial den, bool reduce = true) {
        if (den.is_zero()) throw ZeroDenominator();
        num_ = std::move(num);
        den_ = std::move(den);
        if (reduce) cancel();
        make_monic();
    }

    static RationalExpr variable(SymbolId s) { return RationalExpr(Polynomial::variable(s)); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    // Structural zero test (complete only after context normalization).
    bool is_structural_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_one(); }

    BigRational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    bool contains(SymbolId s) const { return num_.contains(s) || den_.contains(s); }

    std::vector<SymbolId> symbols() const {
        std::vector<SymbolId> a = num_.variables(), b = den_.variables(), r;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
        return r;
    }

    friend RationalExpr operator-(const RationalExpr& a) {
        RationalExpr r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
        return add_impl(a, b, false);
    }
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) {
        return add_impl(a, b, true);
    }

    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
        if (a.is_structural_zero() || b.is_structural_zero()) return RationalExpr();
        // cross-cancel first so the gcds run on small inputs
        Polynomial g1 = poly_gcd(a.num_, b.den_);
        Polynomial g2 = poly_gcd(b.num_, a.den_);
        Polynomial an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
        Polynomial q;
        if (!g1.is_one()) {
            Polynomial::divide_exact(a.num_, g1, an);
            Polynomial::divide_exact(b.den_, g1, bd);
        }
        if (!g2.is_one()) {
            Polynomial::divide_exact(b.num_, g2, bn);
            Polynomial::divide_exact(a.den_, g2, ad);
        }
        RationalExpr r;
        r.num_ = an * bn;
        r.den_ = ad * bd;
        r.make_monic();
        return r;
    }

    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
        if (b.is_structural_zero()) throw ZeroDenominator();
        RationalExpr binv;
        binv.num_ = b.den_;
        binv.den_ = b.num_;
        return a * binv;
    }

    RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
    RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
    RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
    RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }

    RationalExpr pow(long e) const {
        if (e == 0) return RationalExpr(BigRational(1));
        bool inv = e < 0;
        unsigned long k = inv ? -(unsigned long)e : (unsigned long)e;
        RationalExpr r;
        r.num_ = num_.pow(static_cast<std::uint32_t>(k));
        r.den_ = den_.pow(static_cast<std::uint32_t>(k));
        if (inv) {
            if (r.num_.is_zero()) throw ZeroDenominator();
            std::swap(r.num_, r.den_);
        }
        r.make_monic();
        return r;
    }

    // Structural equality; semantic equality for context-normalized values.
    bool operator==(const RationalExpr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalExpr& o) const { return !(*this == o); }

private:
    static RationalExpr add_impl(const RationalExpr& a, const RationalExpr& b, bool sub) {
        RationalExpr r;
        if (a.den_ == b.den_) {
            r.num_ = sub ? a.num_ - b.num_ : a.num_ + b.num_;
            r.den_ = a.den_;
            if (!r.den_.is_one()) r.cancel();
            r.make_monic();
            return r;
        }
        Polynomial g = poly_gcd(a.den_, b.den_);
        if (g.is_one() || g.is_constant()) {
            r.num_ = sub ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
            r.den_ = a.den_ * b.den_;
            // coprime denominators: the sum is already reduced
            r.make_monic();
            return r;
        }
        Polynomial da, db;
        Polynomial::divide_exact(a.den_, g, da);
        Polynomial::divide_exact(b.den_, g, db);
        Polynomial t = sub ? a.num_ * db - b.num_ * da : a.num_ * db + b.num_ * da;
        Polynomial h = poly_gcd(t, g);
        if (h.is_one() || h.is_constant()) {
            r.num_ = std::move(t);
            r.den_ = a.den_ * db;
        } else {
            Polynomial th, gh;
            Polynomial::divide_exact(t, h, th);
            Polynomial::divide_exact(g, h, gh);
            r.num_ = std::move(th);
            r.den_ = da * gh * db;
        }
        r.make_monic();
        return r;
    }

    void cancel() {
        if (num_.is_zero()) {
            den_ = Polynomial(BigRational(1));
            return;
        }
        if (den_.is_one()) return;
        Polynomial g = poly_gcd(num_, den_);
        if (!g.is_one() && !g.is_constant()) {
            Polynomial qn, qd;
            Polynomial::divide_exact(num_, g, qn);
            Polynomial::divide_exact(den_, g, qd);
            num_ = std::move(qn);
            den_ = std::move(qd);
        }
    }

    void make_monic() {
        if (num_.is_zero()) {
            den_ = Polynomial(BigRational(1));
            return;
        }
        if (den_.is_zero()) throw ZeroDenominator();
        BigRational lc = den_.leading().coeff;
        if (!lc.is_one()) {
            BigRational inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Polynomial num_;
    Polynomial den_;

    friend RationalExpr normalize(const RationalExpr&, const Context&);
};

// ---------------------------------------------------------------------------
// Context-aware normalization
// ---------------------------------------------------------------------------

namespace detail {

// Rewrites every power s^k with k >= n via s^n -> rep; one atom at a time.
inline RationalExpr reduce_atom_in_poly(const Polynomial& p, SymbolId s, std::uint32_t n,
                                        const RationalExpr& rep) {
    std::uint32_t dmax = p.degree_in(s);
    if (dmax < n) return RationalExpr(p);
    RationalExpr out;
    std::vector<RationalExpr> rep_pows;  // rep^1, rep^2, ...
    for (std::uint32_t k = 0; k <= dmax; ++k) {
        Polynomial c = p.coefficient_of(s, k);
        if (c.is_zero()) continue;
        std::uint32_t q = k / n, r = k % n;
        RationalExpr piece(c * Polynomial::term(Monomial(s).pow(r), BigRational(1)));
        if (q > 0) {
            while (rep_pows.size() < q)
                rep_pows.push_back(rep_pows.empty() ? rep : rep_pows.back() * rep);
            piece = piece * rep_pows[q - 1];
        }
        out += piece;
    }
    return out;
}

// Applies all relation rewrites (highest stratum first, so cascades terminate).
inline RationalExpr relation_reduce(const RationalExpr& e, const Context& ctx) {
    if (!ctx.has_relations()) return e;
    bool touch = false;
    for (SymbolId s : ctx.algebraic_atoms()) {
        std::uint32_t n = ctx.atom(s).relation->power;
        if (e.num().degree_in(s) >= n || e.den().degree_in(s) >= n) {
            touch = true;
            break;
        }
    }
    if (!touch) return e;
    const auto& atoms = ctx.algebraic_atoms();
    RationalExpr r = e;
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
        const auto& rel = *ctx.atom(*it).relation;
        if (r.num().degree_in(*it) < rel.power && r.den().degree_in(*it) < rel.power) continue;
        RationalExpr rn = reduce_atom_in_poly(r.num(), *it, rel.power, *rel.replacement);
        RationalExpr rd = reduce_atom_in_poly(r.den(), *it, rel.power, *rel.replacement);
        r = rn / rd;
    }
    return r;
}

RationalExpr clear_algebraic_denominator(const RationalExpr& e, const Context& ctx);

}  // namespace detail

// Full canonicalization: relation-reduced, gcd-cancelled, algebraic atoms
// cleared out of the denominator, denominator monic. Idempotent and
// value-preserving away from poles.
inline RationalExpr normalize(const RationalExpr& e, const Context& ctx) {
    for (SymbolId s : e.symbols())
        if (!ctx.contains(s)) throw UndeclaredSymbol(symbol_name(s));
    RationalExpr r = e;
    if (ctx.has_relations()) {
        r = detail::relation_reduce(r, ctx);
        r = detail::clear_algebraic_denominator(r, ctx);
    }
    if (r.num_.is_zero()) return RationalExpr();
    if (r.den_.is_zero()) throw ZeroDenominator();
    return r;
}

// Exact zero test: true iff the normalized numerator vanishes.
inline bool is_zero(const RationalExpr& e, const Context& ctx) {
    return normalize(e, ctx).is_structural_zero();
}

inline bool is_equal(const RationalExpr& a, const RationalExpr& b, const Context& ctx) {
    return is_zero(a - b, ctx);
}

namespace detail {

// Inverts den (a polynomial containing the algebraic atom s with s^n = rep) in
// the extension field, writing 1/den = u / d with d free of s. Solves the n x n
// multiplication system over the s-free rational functions.
inline RationalExpr invert_modulo(const Polynomial& den, SymbolId s, std::uint32_t n,
                                  const RationalExpr& rep, const Context& ctx) {
    // coordinates of den in the basis 1, s, .., s^{n-1}
    std::vector<RationalExpr> d(n);
    for (std::uint32_t k = 0; k < n; ++k) d[k] = RationalExpr(den.coefficient_of(s, k));
    // M[i][j] = coordinate i of den * s^j
    std::vector<std::vector<RationalExpr>> M(n, std::vector<RationalExpr>(n));
    for (std::uint32_t j = 0; j < n; ++j) {
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint32_t k = i + j;
            if (k < n) {
                M[k][j] += d[i];
            } else {
                // s^k = s^{k-n} * rep (k < 2n)
                M[k - n][j] += d[i] * rep;
            }
        }
    }
    // Gaussian elimination with rhs e0; entries are s-free, so recursive
    // normalization only involves strictly earlier atoms.
    std::vector<RationalExpr> rhs(n);
    rhs[0] = RationalExpr(BigRational(1));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        bool found = false;
        for (std::size_t r = col; r < n; ++r) {
            if (!is_zero(M[r][col], ctx)) {
                piv = r;
                found = true;
                break;
            }
        }
        if (!found) throw ZeroDenominator();  // den is a zero divisor: relation not irreducible
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        RationalExpr inv = RationalExpr(BigRational(1)) / normalize(M[col][col], ctx);
        for (std::size_t j = col; j < n; ++j) M[col][j] = normalize(M[col][j] * inv, ctx);
        rhs[col] = normalize(rhs[col] * inv, ctx);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col].is_structural_zero()) continue;
            RationalExpr f = M[r][col];
            for (std::size_t j = col; j < n; ++j)
                M[r][j] = normalize(M[r][j] - f * M[col][j], ctx);
            rhs[r] = normalize(rhs[r] - f * rhs[col], ctx);
        }
    }
    RationalExpr u;
    for (std::uint32_t j = 0; j < n; ++j)
        u += rhs[j] * RationalExpr(Polynomial::term(Monomial(s, j), BigRational(1)));
    return u;
}

inline RationalExpr clear_algebraic_denominator(const RationalExpr& e, const Context& ctx) {
    RationalExpr r = e;
    const auto& atoms = ctx.algebraic_atoms();
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
        SymbolId s = *it;
        if (!r.den().contains(s)) continue;
        const auto& rel = *ctx.atom(s).relation;
        RationalExpr inv = invert_modulo(r.den(), s, rel.power, *rel.replacement, ctx);
        RationalExpr cleared = RationalExpr(r.num()) * inv;
        cleared = relation_reduce(cleared, ctx);
        r = cleared;
    }
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical printer: terms in descending graded-lex order, explicit * and ^.
// ---------------------------------------------------------------------------

inline std::string to_string(const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : m.entries()) {
        if (!first) os << "*";
        os << symbol_name(e.sym);
        if (e.exp > 1) os << "^" << e.exp;
        first = false;
    }
    return os.str();
}

inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        BigRational c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        if (t.mono.is_one()) {
            os << c.str();
        } else {
            if (!c.is_one()) os << c.str() << "*";
            os << to_string(t.mono);
        }
        first = false;
    }
    return os.str();
}

inline std::string to_string(const RationalExpr& e) {
    if (e.is_polynomial()) return to_string(e.num());
    return "(" + to_string(e.num()) + ")/(" + to_string(e.den()) + ")";
}

}  // namespace g2cert

#endif
