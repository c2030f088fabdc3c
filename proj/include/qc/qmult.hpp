#pragma once

// Q-multiplicative functions on ideals: mu_F, Dirichlet convolution, the
// explicit gamma_{F,M} of the convolution-inverse identity, and
// L(gamma_{F,M}, 1) as a truncated Euler product with a direct-series
// cross-check.

#include <functional>
#include <vector>

#include "qc/cubicfield.hpp"
#include "qc/ints.hpp"

namespace qc {

// Lightweight handle: enough data to evaluate Q-multiplicative functions.
struct PrimeHandle {
    Int p;      // rational prime below
    int fdeg;   // residue degree
    int e;      // ramification index
    int index;  // which prime above p (0-based)

    Int norm() const { return int_pow(p, static_cast<unsigned>(fdeg)); }
    bool operator==(const PrimeHandle& o) const {
        return p == o.p && fdeg == o.fdeg && e == o.e && index == o.index;
    }
    bool operator<(const PrimeHandle& o) const {
        if (p != o.p) return p < o.p;
        return index < o.index;
    }
};

struct FactoredIdeal {
    // sorted by (p, index); exponents >= 1
    std::vector<std::pair<PrimeHandle, int>> factors;

    static FactoredIdeal unit() { return {}; }
    bool is_unit() const { return factors.empty(); }
    Int norm() const;
    Int norm_radical() const;  // rad(N(a))
    void push(const PrimeHandle& h, int e);
    void normalize();  // sort + merge duplicates
    FactoredIdeal times(const FactoredIdeal& o) const;
    bool operator==(const FactoredIdeal& o) const { return factors == o.factors; }
};

// Splitting shape of a Galois field relevant to gamma: how many primes sit
// above p and with which residue degree / ramification.
struct SplitShape {
    int t_avail;  // number of primes above p
    int fdeg;
    int e;
};

struct SplittingOracle {
    int degree;  // field degree over Q (2 for Q(zeta3), 3 for cyclic cubic)
    std::function<SplitShape(const Int& p)> shape;
};

SplittingOracle oracle_for(const CyclicCubicField& F);
SplittingOracle eisenstein_oracle();

// mu_F: (-1)^{#factors} on squarefree ideals, 0 otherwise.
int moebius_F(const FactoredIdeal& a);

// indicator mu^2(N(a)) 1_M(N(a))
int squarefree_coprime_indicator(const FactoredIdeal& a, const Int& M);

// All divisors of a (exponent boxes); throws if the divisor count exceeds
// the configured limit.
std::vector<FactoredIdeal> divisors_of(const FactoredIdeal& a,
                                       uint64_t limit = 1000000);

// Dirichlet convolution (f * g)(a) = sum_{b | a} f(b) g(a b^{-1}).
template <typename T, typename F, typename G>
T dirichlet_convolve(const F& f, const G& g, const FactoredIdeal& a,
                     uint64_t divisor_limit = 1000000) {
    T acc{};
    for (const auto& b : divisors_of(a, divisor_limit)) {
        FactoredIdeal c;  // a / b
        size_t bi = 0;
        for (const auto& [h, e] : a.factors) {
            int eb = 0;
            while (bi < b.factors.size() && b.factors[bi].first < h) ++bi;
            if (bi < b.factors.size() && b.factors[bi].first == h) eb = b.factors[bi].second;
            if (e - eb > 0) c.push(h, e - eb);
        }
        acc += f(b) * g(c);
    }
    return acc;
}

// closed-form gamma_{F,M} (blockwise over rational primes)
Int gamma_FM(const FactoredIdeal& a, const Int& M);

// definitional gamma_{F,M} = (mu^2(N .) 1_M(N .)) * mu_F via the divisor sum
Int gamma_FM_definitional(const FactoredIdeal& a, const Int& M,
                          uint64_t divisor_limit = 1000000);

struct EulerProductValue {
    hpreal value;
    hpreal tail_bound;
    uint64_t P;
};

// L(gamma_{F,M}, 1) as an Euler product over p <= P of the closed-form local
// factors; tail bound from |log factor_p| <= 6/p^2 for p > 13.
EulerProductValue l_gamma(const CyclicCubicField& F, const Int& M, uint64_t P);
EulerProductValue l_gamma_eisenstein(const Int& M, uint64_t P);

// local Euler factor of L(gamma_{F,M}, s) at s=1 (exact rational)
Rat l_gamma_local_factor(const CyclicCubicField& F, const Int& M, const Int& p);

struct GammaSeriesResult {
    hpreal partial_sum;   // sum over N(b) <= X of gamma(b)/N(b)
    hpreal tail_bound;    // rigorous bound for the omitted tail
    uint64_t support_size;  // number of nonzero-gamma ideals with N <= X
};

// Direct Dirichlet-series partial sum by support enumeration
// (rad(N(b))^2 | N(b)); X <= 1e15.
GammaSeriesResult gamma_series_direct(const CyclicCubicField& F, const Int& M, double X);

// exact sum over N(b) <= X of |gamma_{F,M}(b)|
Int gamma_partial_sum_abs(const CyclicCubicField& F, const Int& M, double X);

// enumerate all factored ideals of F with norm <= X (testing/verification aid)
std::vector<FactoredIdeal> enumerate_factored_ideals(const CyclicCubicField& F, double X);

}  // namespace qc
