#ifndef G2CERT_RATIONAL_HPP
#define G2CERT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>

namespace g2cert {

// Arbitrary-precision rational, always canonical: gcd(|num|, den) = 1, den >= 1,
// zero stored as 0/1. Backed by GMP.
class BigRational {
public:
    BigRational() : v_(0) {}
    BigRational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    BigRational(long n, long d) : v_(n, d) { v_.canonicalize(); }
    explicit BigRational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit BigRational(const mpz_class& z) : v_(z) {}

    // Parses "a" or "a/b" in base 10.
    static BigRational from_string(const std::string& s) {
        mpq_class q(s, 10);
        q.canonicalize();
        return BigRational(q);
    }

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    BigRational operator-() const { return BigRational(mpq_class(-v_)); }
    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o) { v_ /= o.v_; return *this; }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.v_ < b.v_; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return a.v_ > b.v_; }

    BigRational inverse() const { return BigRational(mpq_class(1) / v_); }
    BigRational abs() const { return BigRational(mpq_class(::abs(v_))); }

    BigRational pow(unsigned e) const {
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
        mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
        return BigRational(r);
    }

    double to_double() const { return v_.get_d(); }

    std::string str() const { return v_.get_str(); }

    std::size_t hash() const {
        double d = v_.get_d();
        std::size_t h = std::hash<double>()(d);
        h ^= std::size_t(mpz_get_si(v_.get_num_mpz_t())) * 0x9e3779b97f4a7c15ull;
        return h;
    }

private:
    mpq_class v_;
};

inline mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace g2cert

#endif
