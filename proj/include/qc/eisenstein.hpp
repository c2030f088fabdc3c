#pragma once

// Exact arithmetic in Z[w], w = e^(2 pi i/3): prime splitting, ideals of a
// given norm, and the cubic residue symbol that underlies all of the cubic
// Dirichlet characters used elsewhere.

#include <iosfwd>
#include <optional>
#include <vector>

#include "qc/ints.hpp"

namespace qc {

// A cube root of unity or zero; the value set of the cubic residue symbol.
class CubeRoot {
  public:
    static CubeRoot zero() { return CubeRoot(-1); }
    static CubeRoot one() { return CubeRoot(0); }
    static CubeRoot omega(int k) { return CubeRoot(((k % 3) + 3) % 3); }

    bool is_zero() const { return k_ < 0; }
    // exponent of w; only valid when nonzero
    int exponent() const { return k_; }

    CubeRoot operator*(CubeRoot o) const {
        if (is_zero() || o.is_zero()) return zero();
        return omega(k_ + o.k_);
    }
    CubeRoot conj() const { return is_zero() ? zero() : omega(-k_); }
    CubeRoot pow(long e) const {
        if (is_zero()) return zero();
        long r = ((k_ * e) % 3 + 3) % 3;
        return omega(static_cast<int>(r));
    }
    bool operator==(const CubeRoot& o) const { return k_ == o.k_; }
    bool operator!=(const CubeRoot& o) const { return k_ != o.k_; }

    hpreal re() const;
    hpreal im() const;

  private:
    explicit CubeRoot(int k) : k_(k) {}
    int k_;
};

std::ostream& operator<<(std::ostream& os, const CubeRoot& r);

// a + b w with w^2 = -1 - w.
struct EisensteinInt {
    Int a, b;

    EisensteinInt() : a(0), b(0) {}
    EisensteinInt(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    Int norm() const { return a * a - a * b + b * b; }
    EisensteinInt conj() const { return {a - b, -b}; }

    EisensteinInt operator+(const EisensteinInt& o) const { return {a + o.a, b + o.b}; }
    EisensteinInt operator-(const EisensteinInt& o) const { return {a - o.a, b - o.b}; }
    EisensteinInt operator-() const { return {-a, -b}; }
    EisensteinInt operator*(const EisensteinInt& o) const {
        // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
        return {a * o.a - b * o.b, a * o.b + b * o.a - b * o.b};
    }
    bool operator==(const EisensteinInt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const EisensteinInt& o) const { return !(*this == o); }

    // multiplication by w rotates by 120 degrees
    EisensteinInt times_omega() const { return {-b, a - b}; }

    // The six unit multiples.
    std::vector<EisensteinInt> associates() const;

    // Unique associate in the sector 0 <= arg < pi/3, i.e. a > b >= 0.
    EisensteinInt canonical_associate() const;
};

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z);

// Floor-style division with Eisenstein rounding: returns q with
// N(z - q*w) < N(w).
EisensteinInt eis_divround(const EisensteinInt& z, const EisensteinInt& w);
EisensteinInt eis_mod(const EisensteinInt& z, const EisensteinInt& m);
bool eis_divides(const EisensteinInt& d, const EisensteinInt& z);

// An ideal of Z[w] in canonical-generator form (Z[w] is a PID).
class EisensteinIdeal {
  public:
    EisensteinIdeal() : gen_(1, 0) {}
    explicit EisensteinIdeal(const EisensteinInt& g);

    const EisensteinInt& generator() const { return gen_; }
    Int norm() const { return gen_.norm(); }
    bool is_unit_ideal() const { return gen_ == EisensteinInt(1, 0); }

    EisensteinIdeal conj() const { return EisensteinIdeal(gen_.conj()); }
    EisensteinIdeal operator*(const EisensteinIdeal& o) const {
        return EisensteinIdeal(gen_ * o.gen_);
    }
    bool operator==(const EisensteinIdeal& o) const { return gen_ == o.gen_; }
    bool operator!=(const EisensteinIdeal& o) const { return gen_ != o.gen_; }
    bool operator<(const EisensteinIdeal& o) const {
        if (gen_.a != o.gen_.a) return gen_.a < o.gen_.a;
        return gen_.b < o.gen_.b;
    }

    // prime-power factorization (prime ideal, exponent)
    std::vector<std::pair<EisensteinIdeal, int>> factor() const;

  private:
    EisensteinInt gen_;
};

std::ostream& operator<<(std::ostream& os, const EisensteinIdeal& I);

enum class EisSplit { Split, Inert, Ramified };

struct EisFactorization {
    EisSplit kind;
    // Split: pi and conj(pi); Ramified: pi with norm 3; Inert: the prime p itself.
    EisensteinIdeal pi;
};

// Splitting of a rational prime in Z[w], found by bounded search over the
// norm form a^2 - ab + b^2 = p.
EisFactorization factor_rational_prime(const Int& p);

// Complete duplicate-free list of ideals of the given norm (possibly empty).
std::vector<EisensteinIdeal> ideals_of_norm(const Int& q);

// Cubic residue symbol (n / I)_3 in {1, w, w^2, 0}; requires gcd(N(I), 3) = 1.
// For prime I it is the cube root of unity congruent to n^((N(I)-1)/3) mod I,
// extended multiplicatively over the factorization of I.
CubeRoot cubic_residue_symbol(const Int& n, const EisensteinIdeal& I);

// Symbol at a single prime ideal (skips factorization).
CubeRoot cubic_residue_symbol_prime(const Int& n, const EisensteinIdeal& prime);

}  // namespace qc
