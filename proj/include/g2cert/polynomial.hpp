#ifndef G2CERT_POLYNOMIAL_HPP
#define G2CERT_POLYNOMIAL_HPP

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "g2cert/errors.hpp"
#include "g2cert/monomial.hpp"
#include "g2cert/rational.hpp"

namespace g2cert {

// Sparse multivariate polynomial over BigRational. Terms are kept sorted in
// descending graded-lex order with no zero coefficients.
class Polynomial {
public:
    struct Term {
        Monomial mono;
        BigRational coeff;
    };

    Polynomial() = default;
    Polynomial(const BigRational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.push_back({Monomial(), c});
    }
    Polynomial(long n) : Polynomial(BigRational(n)) {}  // NOLINT
    static Polynomial variable(SymbolId s) {
        Polynomial p;
        p.terms_.push_back({Monomial(s), BigRational(1)});
        return p;
    }
    static Polynomial term(const Monomial& m, const BigRational& c) {
        Polynomial p;
        if (!c.is_zero()) p.terms_.push_back({m, c});
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff.is_one(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // Constant value (polynomial must be constant).
    BigRational constant_value() const {
        if (terms_.empty()) return BigRational(0);
        return terms_[0].coeff;
    }

    const Term& leading() const { return terms_.front(); }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    std::uint32_t degree_in(SymbolId s) const {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree_in(s));
        return d;
    }

    bool contains(SymbolId s) const {
        for (const auto& t : terms_)
            if (t.mono.contains(s)) return true;
        return false;
    }

    // Ordered union of symbols across all terms.
    std::vector<SymbolId> variables() const {
        std::set<SymbolId> vs;
        for (const auto& t : terms_)
            for (const auto& e : t.mono.entries()) vs.insert(e.sym);
        return std::vector<SymbolId>(vs.begin(), vs.end());
    }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        if (a.terms_.size() == 1) return b.scaled(a.terms_[0].mono, a.terms_[0].coeff);
        if (b.terms_.size() == 1) return a.scaled(b.terms_[0].mono, b.terms_[0].coeff);
        std::unordered_map<Monomial, BigRational, MonomialHash> acc;
        acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                Monomial m = ta.mono * tb.mono;
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), ta.coeff * tb.coeff);
                else
                    it->second += ta.coeff * tb.coeff;
            }
        }
        return from_map(acc);
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    // Multiply by a single term.
    Polynomial scaled(const Monomial& m, const BigRational& c) const {
        Polynomial r;
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
        if (!m.is_one()) std::sort(r.terms_.begin(), r.terms_.end(), term_desc);
        return r;
    }

    Polynomial scaled(const BigRational& c) const { return scaled(Monomial(), c); }

    Polynomial pow(std::uint32_t e) const {
        Polynomial r(BigRational(1));
        Polynomial base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    // Exact division; returns false if the division has a remainder.
    static bool divide_exact(const Polynomial& a, const Polynomial& d, Polynomial& q);

    // Partial derivative with respect to one symbol (power rule only; chain
    // rules for atoms live in the calculus layer).
    Polynomial partial(SymbolId s) const {
        std::unordered_map<Monomial, BigRational, MonomialHash> acc;
        for (const auto& t : terms_) {
            std::uint32_t e = t.mono.degree_in(s);
            if (e == 0) continue;
            Monomial m;
            t.mono.divide(Monomial(s), m);
            BigRational c = t.coeff * BigRational(long(e));
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), c);
            else
                it->second += c;
        }
        return from_map(acc);
    }

    // Exact evaluation; `point` must bind every symbol that occurs.
    BigRational evaluate(const std::unordered_map<SymbolId, BigRational>& point) const;

    // Coefficient of s^k viewed as a polynomial in s.
    Polynomial coefficient_of(SymbolId s, std::uint32_t k) const {
        Polynomial r;
        for (const auto& t : terms_) {
            if (t.mono.degree_in(s) != k) continue;
            Monomial m;
            t.mono.divide(Monomial(s).pow(k), m);
            r.terms_.push_back({m, t.coeff});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), term_desc);
        return r;
    }

    // Monomial gcd of all terms.
    Monomial monomial_content() const {
        if (terms_.empty()) return Monomial();
        Monomial g = terms_[0].mono;
        for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = gcd(g, terms_[i].mono);
        return g;
    }

    // Rational content: the positive rational c such that *this / c has integer
    // coprime coefficients (leading sign preserved in the primitive part).
    BigRational rational_content() const {
        if (terms_.empty()) return BigRational(1);
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& t : terms_) {
            num_gcd = gcd_z(num_gcd, t.coeff.numerator());
            den_lcm = lcm_z(den_lcm, t.coeff.denominator());
        }
        mpq_class c(num_gcd, den_lcm);
        c.canonicalize();
        return BigRational(c);
    }

    bool operator==(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].coeff == o.terms_[i].coeff) || terms_[i].mono != o.terms_[i].mono)
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    static bool term_desc(const Term& a, const Term& b) { return grlex_cmp(a.mono, b.mono) > 0; }

    static Polynomial from_map(std::unordered_map<Monomial, BigRational, MonomialHash>& acc) {
        Polynomial r;
        r.terms_.reserve(acc.size());
        for (auto& kv : acc) {
            if (!kv.second.is_zero()) r.terms_.push_back({kv.first, std::move(kv.second)});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), term_desc);
        return r;
    }

private:
    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        Polynomial r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin(), j = b.terms_.begin();
        while (i != a.terms_.end() && j != b.terms_.end()) {
            int c = grlex_cmp(i->mono, j->mono);
            if (c > 0)
                r.terms_.push_back(*i++);
            else if (c < 0) {
                r.terms_.push_back({j->mono, subtract ? -j->coeff : j->coeff});
                ++j;
            } else {
                BigRational s = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
                if (!s.is_zero()) r.terms_.push_back({i->mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i != a.terms_.end(); ++i) r.terms_.push_back(*i);
        for (; j != b.terms_.end(); ++j) r.terms_.push_back({j->mono, subtract ? -j->coeff : j->coeff});
        return r;
    }

    std::vector<Term> terms_;
};

inline bool Polynomial::divide_exact(const Polynomial& a, const Polynomial& d, Polynomial& q) {
    if (d.is_zero()) return false;
    if (d.is_constant()) {
        q = a.scaled(d.constant_value().inverse());
        return true;
    }
    Polynomial rem = a;
    std::vector<Term> qterms;
    const Term& lead = d.leading();
    while (!rem.is_zero()) {
        const Term& rl = rem.leading();
        Monomial m;
        if (!rl.mono.divide(lead.mono, m)) return false;
        BigRational c = rl.coeff / lead.coeff;
        qterms.push_back({m, c});
        rem = rem - d.scaled(m, c);
    }
    q = Polynomial();
    q.terms_ = std::move(qterms);
    std::sort(q.terms_.begin(), q.terms_.end(), term_desc);
    return true;
}

inline BigRational Polynomial::evaluate(const std::unordered_map<SymbolId, BigRational>& point) const {
    BigRational acc(0);
    for (const auto& t : terms_) {
        BigRational v = t.coeff;
        for (const auto& e : t.mono.entries()) {
            auto it = point.find(e.sym);
            if (it == point.end()) throw UndeclaredSymbol(symbol_name(e.sym));
            v *= it->second.pow(e.exp);
        }
        acc += v;
    }
    return acc;
}

}  // namespace g2cert

#endif
