#pragma once

// Shared exact-arithmetic scaffolding: unbounded integers, rationals,
// the working high-precision real type, prime sieves and factorization.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Working precision: 64 fractional bits minimum.  On x86-64 long double is
// the 80-bit extended format with a 64-bit significand.
using hpreal = long double;
static_assert(std::numeric_limits<hpreal>::digits >= 64,
              "need >= 64 fractional bits of working precision");

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

inline long long to_ll(const Int& x) {
    if (x > std::numeric_limits<long long>::max() ||
        x < std::numeric_limits<long long>::min())
        throw std::overflow_error("Int out of long long range");
    return x.convert_to<long long>();
}

inline hpreal to_real(const Int& x) { return x.convert_to<hpreal>(); }
inline hpreal to_real(const Rat& x) { return x.convert_to<hpreal>(); }

Int int_pow(Int base, unsigned exp);
Int isqrt_floor(const Int& n);
bool is_perfect_square(const Int& n, Int* root = nullptr);

// Sieves
std::vector<uint32_t> primes_upto(uint64_t n);

// Smallest-prime-factor table for [0, n]; spf[0] = spf[1] = 0.
struct SpfTable {
    std::vector<uint32_t> spf;
    explicit SpfTable(uint32_t n);
    uint32_t operator[](uint32_t n) const { return spf[n]; }
    bool is_prime(uint32_t n) const { return n >= 2 && spf[n] == n; }
    bool is_squarefree(uint32_t n) const;
    int omega(uint32_t n) const;
    std::vector<std::pair<uint32_t, int>> factor(uint32_t n) const;
};

bool is_prime_u64(uint64_t n);
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);
std::vector<std::pair<Int, int>> factor_int(const Int& n);

inline int omega_u64(uint64_t n) { return static_cast<int>(factor_u64(n).size()); }

inline bool is_squarefree_u64(uint64_t n) {
    for (const auto& [p, e] : factor_u64(n))
        if (e > 1) return false;
    return true;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m);

// Compensated accumulator for long sums of hpreal terms.
struct KahanSum {
    hpreal s = 0, c = 0;
    void add(hpreal x) {
        hpreal y = x - c;
        hpreal t = s + y;
        c = (t - s) - y;
        s = t;
    }
    hpreal value() const { return s; }
};

// FNV-1a, used for config hashes in provenance headers.
uint64_t fnv1a(const std::string& s);

}  // namespace qc
