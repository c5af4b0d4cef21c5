#ifndef G2CERT_MONOMIAL_HPP
#define G2CERT_MONOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "g2cert/symbols.hpp"

namespace g2cert {

// Sparse power product: (symbol, exponent) pairs sorted by symbol id,
// exponents > 0. The empty monomial is 1.
class Monomial {
public:
    struct Entry {
        SymbolId sym;
        std::uint32_t exp;
        bool operator==(const Entry& o) const { return sym == o.sym && exp == o.exp; }
    };

    Monomial() = default;
    explicit Monomial(SymbolId s, std::uint32_t e = 1) {
        if (e > 0) entries_.push_back({s, e});
    }

    static Monomial from_sorted(std::vector<Entry> entries) {
        Monomial m;
        m.entries_ = std::move(entries);
        return m;
    }

    bool is_one() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& e : entries_) d += e.exp;
        return d;
    }

    std::uint32_t degree_in(SymbolId s) const {
        for (const auto& e : entries_)
            if (e.sym == s) return e.exp;
        return 0;
    }

    bool contains(SymbolId s) const { return degree_in(s) > 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto i = a.entries_.begin(), j = b.entries_.begin();
        while (i != a.entries_.end() && j != b.entries_.end()) {
            if (i->sym < j->sym)
                r.entries_.push_back(*i++);
            else if (j->sym < i->sym)
                r.entries_.push_back(*j++);
            else {
                r.entries_.push_back({i->sym, i->exp + j->exp});
                ++i;
                ++j;
            }
        }
        r.entries_.insert(r.entries_.end(), i, a.entries_.end());
        r.entries_.insert(r.entries_.end(), j, b.entries_.end());
        return r;
    }

    // Exact division; returns false if not divisible.
    bool divide(const Monomial& d, Monomial& out) const {
        out.entries_.clear();
        auto i = entries_.begin();
        for (const auto& e : d.entries_) {
            while (i != entries_.end() && i->sym < e.sym) out.entries_.push_back(*i++);
            if (i == entries_.end() || i->sym != e.sym || i->exp < e.exp) return false;
            if (i->exp > e.exp) out.entries_.push_back({i->sym, i->exp - e.exp});
            ++i;
        }
        out.entries_.insert(out.entries_.end(), i, entries_.end());
        return true;
    }

    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r;
        auto i = a.entries_.begin(), j = b.entries_.begin();
        while (i != a.entries_.end() && j != b.entries_.end()) {
            if (i->sym < j->sym)
                ++i;
            else if (j->sym < i->sym)
                ++j;
            else {
                r.entries_.push_back({i->sym, std::min(i->exp, j->exp)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    Monomial pow(std::uint32_t k) const {
        if (k == 0) return Monomial();
        Monomial r = *this;
        for (auto& e : r.entries_) e.exp *= k;
        return r;
    }

    // Graded-lex: higher total degree wins; ties broken lexicographically with
    // lower symbol ids more significant (an earlier-interned symbol at higher
    // power makes the monomial larger).
    friend int grlex_cmp(const Monomial& a, const Monomial& b) {
        std::uint64_t da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db ? -1 : 1;
        auto i = a.entries_.begin(), j = b.entries_.begin();
        while (i != a.entries_.end() && j != b.entries_.end()) {
            if (i->sym != j->sym) return i->sym < j->sym ? 1 : -1;
            if (i->exp != j->exp) return i->exp < j->exp ? -1 : 1;
            ++i;
            ++j;
        }
        // Same degree with one a prefix of the other cannot happen unless equal.
        return 0;
    }

    bool operator==(const Monomial& o) const { return entries_ == o.entries_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::size_t hash() const {
        std::size_t h = 0x243f6a8885a308d3ull;
        for (const auto& e : entries_) {
            h ^= (std::size_t(e.sym) << 32 | e.exp) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::vector<Entry> entries_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace g2cert

#endif
