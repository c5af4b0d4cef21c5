#ifndef G2CERT_RNG_HPP
#define G2CERT_RNG_HPP

#include <cstdint>

#include "g2cert/rational.hpp"

namespace g2cert {

// splitmix64: the one PRNG used for all point sampling. Deterministic from the
// seed, no global state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Rational with numerator in [-99, 99] and denominator in [1, 99].
    BigRational rational() {
        long num = static_cast<long>(below(199)) - 99;
        long den = static_cast<long>(below(99)) + 1;
        return BigRational(num, den);
    }

    // Nonzero variant, for values that must avoid degenerate zeros.
    BigRational nonzero_rational() {
        for (;;) {
            BigRational r = rational();
            if (!r.is_zero()) return r;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace g2cert

#endif
