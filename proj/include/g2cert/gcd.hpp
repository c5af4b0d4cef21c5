#ifndef G2CERT_GCD_HPP
#define G2CERT_GCD_HPP

#include <vector>

#include "g2cert/polynomial.hpp"

namespace g2cert {
namespace detail {

// Maps a rational-coefficient polynomial to (content, primitive part): the
// primitive part has coprime integer coefficients and positive leading
// coefficient.
inline Polynomial to_primitive(const Polynomial& p, BigRational& content) {
    content = p.rational_content();
    if (p.is_zero()) return p;
    if (p.leading().coeff.sign() < 0) content = -content;
    Polynomial q;
    Polynomial::divide_exact(p, Polynomial(content), q);
    return q;
}

inline Polynomial primitive(const Polynomial& p) {
    BigRational c;
    return to_primitive(p, c);
}

// Substitutes the big integer xi for `var`, collapsing that variable.
inline Polynomial eval_at_integer(const Polynomial& p, SymbolId var, const mpz_class& xi) {
    std::unordered_map<Monomial, BigRational, MonomialHash> acc;
    for (const auto& t : p.terms()) {
        std::uint32_t e = t.mono.degree_in(var);
        Monomial rest;
        t.mono.divide(Monomial(var).pow(e), rest);
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), xi.get_mpz_t(), e);
        BigRational c = t.coeff * BigRational(scale);
        auto it = acc.find(rest);
        if (it == acc.end())
            acc.emplace(std::move(rest), c);
        else
            it->second += c;
    }
    return Polynomial::from_map(acc);
}

// Balanced remainder in (-xi/2, xi/2].
inline mpz_class balanced_mod(const mpz_class& a, const mpz_class& xi) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), xi.get_mpz_t());
    if (r * 2 > xi) r -= xi;
    return r;
}

inline mpz_class max_abs_int_coeff(const Polynomial& p) {
    mpz_class m = 1;
    for (const auto& t : p.terms()) {
        mpz_class a = abs(t.coeff.numerator());
        if (a > m) m = a;
    }
    return m;
}

// xi-adic expansion of gamma into digit polynomials attached to powers of var.
inline Polynomial xi_adic_reconstruct(const Polynomial& gamma, SymbolId var, const mpz_class& xi) {
    Polynomial G;
    Polynomial rem = gamma;
    std::uint32_t k = 0;
    while (!rem.is_zero()) {
        if (k > 3000) return Polynomial();
        std::unordered_map<Monomial, BigRational, MonomialHash> dig, next;
        for (const auto& t : rem.terms()) {
            mpz_class d = balanced_mod(t.coeff.numerator(), xi);
            if (d != 0) dig.emplace(t.mono, BigRational(d));
            mpz_class q = (t.coeff.numerator() - d) / xi;
            if (q != 0) next.emplace(t.mono, BigRational(q));
        }
        Polynomial digit = Polynomial::from_map(dig);
        if (!digit.is_zero()) G += digit.scaled(Monomial(var).pow(k), BigRational(1));
        rem = Polynomial::from_map(next);
        ++k;
    }
    return G;
}

// Heuristic evaluation/reconstruction gcd (integer coefficients). A successful
// return is always correct: the candidate is verified by trial division and the
// evaluation point exceeds twice the smaller coefficient norm.
inline bool gcd_heuristic(const Polynomial& a, const Polynomial& b, Polynomial& g, int depth) {
    if (depth > 16) return false;
    std::vector<SymbolId> vars;
    {
        std::vector<SymbolId> va = a.variables(), vb = b.variables();
        std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(vars));
    }
    if (vars.empty()) {
        g = Polynomial(
            BigRational(gcd_z(a.constant_value().numerator(), b.constant_value().numerator())));
        return true;
    }
    SymbolId var = vars[0];
    for (SymbolId v : vars) {
        if (a.degree_in(v) + b.degree_in(v) < a.degree_in(var) + b.degree_in(var)) var = v;
    }

    mpz_class na = max_abs_int_coeff(a), nb = max_abs_int_coeff(b);
    mpz_class xi = 2 * (na < nb ? na : nb) + 29;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Polynomial ea = eval_at_integer(a, var, xi);
        Polynomial eb = eval_at_integer(b, var, xi);
        Polynomial gamma;
        if (!ea.is_zero() && !eb.is_zero() && gcd_heuristic(ea, eb, gamma, depth + 1)) {
            Polynomial G = primitive(xi_adic_reconstruct(gamma, var, xi));
            Polynomial q;
            if (!G.is_zero() && Polynomial::divide_exact(a, G, q) &&
                Polynomial::divide_exact(b, G, q)) {
                g = G;
                return true;
            }
        }
        xi = xi * 73794 / 27011 + 17;
    }
    return false;
}

inline Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b, int depth);

// Content of p with respect to x (gcd of the coefficient polynomials, primitive).
inline Polynomial content_in(const Polynomial& p, SymbolId x, int depth) {
    std::uint32_t d = p.degree_in(x);
    Polynomial g;
    bool first = true;
    for (std::uint32_t k = 0; k <= d; ++k) {
        Polynomial c = p.coefficient_of(x, k);
        if (c.is_zero()) continue;
        c = primitive(c);
        if (first) {
            g = c;
            first = false;
        } else {
            g = gcd_primitive(g, c, depth + 1);
        }
        if (g.is_one()) break;
    }
    return first ? Polynomial(BigRational(1)) : g;
}

// Pseudo-remainder of r by b with respect to x.
inline Polynomial pseudo_rem(Polynomial r, const Polynomial& b, SymbolId x) {
    std::uint32_t n = b.degree_in(x);
    Polynomial lb = b.coefficient_of(x, n);
    while (!r.is_zero()) {
        std::uint32_t d = r.degree_in(x);
        if (d < n) break;
        Polynomial lr = r.coefficient_of(x, d);
        Polynomial shift = Polynomial::term(Monomial(x).pow(d - n), BigRational(1));
        r = r * lb - b * (lr * shift);
    }
    return r;
}

// Primitive PRS fallback on primitive inputs sharing the main variable x.
inline Polynomial gcd_prs(Polynomial a, Polynomial b, SymbolId x, int depth) {
    Polynomial ca = content_in(a, x, depth);
    Polynomial cb = content_in(b, x, depth);
    Polynomial cg = gcd_primitive(ca, cb, depth + 1);
    Polynomial q;
    Polynomial::divide_exact(a, ca, q);
    a = q;
    Polynomial::divide_exact(b, cb, q);
    b = q;
    if (a.degree_in(x) < b.degree_in(x)) std::swap(a, b);
    while (true) {
        Polynomial r = pseudo_rem(a, b, x);
        if (r.is_zero()) break;
        if (r.degree_in(x) == 0) return cg;  // coprime in x
        r = primitive(r);
        Polynomial cr = content_in(r, x, depth);
        Polynomial::divide_exact(r, cr, q);
        a = b;
        b = q;
    }
    return cg * primitive(b);
}

// gcd of primitive integer polynomials; result primitive.
inline Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b, int depth) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_one() || b.is_one()) return Polynomial(BigRational(1));
    if (a == b) return a;

    Monomial ma = a.monomial_content(), mb = b.monomial_content();
    Monomial mg = gcd(ma, mb);
    Polynomial a1 = a, b1 = b;
    if (!ma.is_one()) Polynomial::divide_exact(a, Polynomial::term(ma, BigRational(1)), a1);
    if (!mb.is_one()) Polynomial::divide_exact(b, Polynomial::term(mb, BigRational(1)), b1);
    Polynomial mgp = Polynomial::term(mg, BigRational(1));

    if (a1.is_constant() || b1.is_constant()) return mgp;
    if (a1 == b1) return mgp * a1;

    Polynomial q;
    if (a1.total_degree() <= b1.total_degree() && Polynomial::divide_exact(b1, a1, q))
        return mgp * a1;
    if (b1.total_degree() < a1.total_degree() && Polynomial::divide_exact(a1, b1, q))
        return mgp * b1;

    bool shared = false;
    SymbolId x = 0;
    std::uint64_t best = ~0ull;
    for (SymbolId v : a1.variables()) {
        std::uint32_t db = b1.degree_in(v);
        if (db == 0) continue;
        std::uint64_t cost = std::uint64_t(a1.degree_in(v)) + db;
        if (cost < best) {
            best = cost;
            x = v;
            shared = true;
        }
    }
    if (!shared) return mgp;

    Polynomial g;
    if (gcd_heuristic(a1, b1, g, depth)) return mgp * g;
    return mgp * gcd_prs(a1, b1, x, depth);
}

}  // namespace detail

// Polynomial gcd over the rationals: primitive with coprime integer
// coefficients and positive leading coefficient. poly_gcd(0, b) = primitive(b).
inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return detail::primitive(b);
    if (b.is_zero()) return detail::primitive(a);
    return detail::gcd_primitive(detail::primitive(a), detail::primitive(b), 0);
}

inline Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    Polynomial g = poly_gcd(a, b);
    Polynomial q;
    Polynomial::divide_exact(a, g, q);
    return q * b;
}

}  // namespace g2cert

#endif
