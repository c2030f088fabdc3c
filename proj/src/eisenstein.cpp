#include "qc/eisenstein.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qc {

hpreal CubeRoot::re() const {
    if (is_zero()) return 0;
    return k_ == 0 ? 1.0L : -0.5L;
}

hpreal CubeRoot::im() const {
    static const hpreal s = std::sqrt(3.0L) / 2;
    if (is_zero() || k_ == 0) return 0;
    return k_ == 1 ? s : -s;
}

std::ostream& operator<<(std::ostream& os, const CubeRoot& r) {
    if (r.is_zero()) return os << "0";
    switch (r.exponent()) {
        case 0: return os << "1";
        case 1: return os << "w";
        default: return os << "w^2";
    }
}

std::vector<EisensteinInt> EisensteinInt::associates() const {
    std::vector<EisensteinInt> out;
    EisensteinInt z = *this;
    for (int i = 0; i < 3; ++i) {
        out.push_back(z);
        out.push_back(-z);
        z = z.times_omega();
    }
    return out;
}

EisensteinInt EisensteinInt::canonical_associate() const {
    if (is_zero()) return *this;
    for (const auto& z : associates())
        if (z.a > z.b && z.b >= 0) return z;
    throw std::logic_error("no canonical associate found");  // unreachable
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z) {
    return os << "(" << z.a << (z.b >= 0 ? "+" : "") << z.b << "w)";
}

EisensteinInt eis_divround(const EisensteinInt& z, const EisensteinInt& w) {
    if (w.is_zero()) throw std::domain_error("division by zero");
    // z / w = z * conj(w) / N(w); round both coordinates to nearest.
    EisensteinInt num = z * w.conj();
    Int n = w.norm();
    auto round_div = [&](const Int& x) -> Int {
        // round(x / n) = floor((2x + n) / (2n)), n > 0
        Int num2 = 2 * x + n;
        Int den2 = 2 * n;
        if (num2 >= 0) return num2 / den2;
        return -Int((-num2 + den2 - 1) / den2);
    };
    return {round_div(num.a), round_div(num.b)};
}

EisensteinInt eis_mod(const EisensteinInt& z, const EisensteinInt& m) {
    EisensteinInt q = eis_divround(z, m);
    return z - q * m;
}

bool eis_divides(const EisensteinInt& d, const EisensteinInt& z) {
    if (d.is_zero()) return z.is_zero();
    EisensteinInt num = z * d.conj();
    Int n = d.norm();
    return num.a % n == 0 && num.b % n == 0;
}

EisensteinIdeal::EisensteinIdeal(const EisensteinInt& g) {
    if (g.is_zero()) throw std::domain_error("zero ideal not supported");
    gen_ = g.canonical_associate();
}

std::ostream& operator<<(std::ostream& os, const EisensteinIdeal& I) {
    return os << I.generator();
}

EisFactorization factor_rational_prime(const Int& p) {
    if (p < 2) throw std::domain_error("factor_rational_prime expects a prime");
    if (p == 3) return {EisSplit::Ramified, EisensteinIdeal(EisensteinInt(1, -1))};
    if (p % 3 == 2) return {EisSplit::Inert, EisensteinIdeal(EisensteinInt(p, 0))};
    // p = 1 mod 3: solve a^2 - ab + b^2 = p by bounded search.  The positive
    // definite form takes every value with |a|, |b| <= 2 sqrt(p/3).
    Int bound = isqrt_floor(4 * p / 3) + 1;
    for (Int b = 0; b <= bound; ++b) {
        // a^2 - ab + (b^2 - p) = 0  =>  a = (b +- sqrt(4p - 3b^2)) / 2
        Int disc = 4 * p - 3 * b * b;
        if (disc < 0) break;
        Int r;
        if (!is_perfect_square(disc, &r)) continue;
        if ((b + r) % 2 == 0) {
            EisensteinInt pi((b + r) / 2, b);
            if (pi.norm() == p) return {EisSplit::Split, EisensteinIdeal(pi)};
        }
        if ((b - r) % 2 == 0) {
            EisensteinInt pi((b - r) / 2, b);
            if (pi.norm() == p) return {EisSplit::Split, EisensteinIdeal(pi)};
        }
    }
    throw std::logic_error("norm-form search exhausted for split prime");
}

std::vector<EisensteinIdeal> ideals_of_norm(const Int& q) {
    if (q < 1) throw std::domain_error("ideals_of_norm expects q >= 1");
    std::vector<EisensteinIdeal> out{EisensteinIdeal()};
    for (const auto& [p, e] : factor_int(q)) {
        std::vector<EisensteinIdeal> next;
        if (p == 3) {
            EisensteinInt pi(1, -1);
            EisensteinInt pk(1, 0);
            for (int i = 0; i < e; ++i) pk = pk * pi;
            for (const auto& I : out) next.push_back(I * EisensteinIdeal(pk));
        } else if (p % 3 == 2) {
            if (e % 2 != 0) return {};  // no ideal of this norm
            EisensteinInt pk(int_pow(p, static_cast<unsigned>(e / 2)), 0);
            for (const auto& I : out) next.push_back(I * EisensteinIdeal(pk));
        } else {
            EisensteinInt pi = factor_rational_prime(p).pi.generator();
            EisensteinInt pib = pi.conj();
            for (int i = 0; i <= e; ++i) {
                EisensteinInt g(1, 0);
                for (int k = 0; k < i; ++k) g = g * pi;
                for (int k = i; k < e; ++k) g = g * pib;
                for (const auto& I : out) next.push_back(I * EisensteinIdeal(g));
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<EisensteinIdeal, int>> EisensteinIdeal::factor() const {
    std::vector<std::pair<EisensteinIdeal, int>> out;
    EisensteinInt g = gen_;
    for (const auto& [p, e] : factor_int(norm())) {
        if (p == 3) {
            out.emplace_back(EisensteinIdeal(EisensteinInt(1, -1)), e);
        } else if (p % 3 == 2) {
            out.emplace_back(EisensteinIdeal(EisensteinInt(p, 0)), e / 2);
        } else {
            EisensteinInt pi = factor_rational_prime(p).pi.generator();
            int vp = 0;
            EisensteinInt h = g;
            while (eis_divides(pi, h)) {
                h = eis_divround(h, pi);
                ++vp;
            }
            if (vp > 0) out.emplace_back(EisensteinIdeal(pi), vp);
            if (vp < e) out.emplace_back(EisensteinIdeal(pi.conj()), e - vp);
        }
    }
    return out;
}

CubeRoot cubic_residue_symbol_prime(const Int& n, const EisensteinIdeal& prime) {
    const EisensteinInt& pi = prime.generator();
    Int q = pi.norm();
    if (q % 3 == 0) throw std::invalid_argument("symbol undefined at the prime above 3");
    EisensteinInt r = eis_mod(EisensteinInt(n % q + (n % q < 0 ? q : 0), 0), pi);
    if (r.is_zero()) return CubeRoot::zero();
    // r^((q-1)/3) mod pi
    Int e = (q - 1) / 3;
    EisensteinInt acc(1, 0);
    EisensteinInt base = r;
    while (e > 0) {
        if (e % 2 == 1) acc = eis_mod(acc * base, pi);
        base = eis_mod(base * base, pi);
        e /= 2;
    }
    const EisensteinInt roots[3] = {EisensteinInt(1, 0), EisensteinInt(0, 1),
                                    EisensteinInt(-1, -1)};
    for (int k = 0; k < 3; ++k)
        if (eis_divides(pi, acc - roots[k])) return CubeRoot::omega(k);
    throw std::logic_error("residue is not a cube root of unity mod pi");
}

CubeRoot cubic_residue_symbol(const Int& n, const EisensteinIdeal& I) {
    if (I.norm() % 3 == 0)
        throw std::invalid_argument("cubic residue symbol requires norm coprime to 3");
    CubeRoot out = CubeRoot::one();
    for (const auto& [prime, e] : I.factor()) {
        CubeRoot s = cubic_residue_symbol_prime(n, prime);
        if (s.is_zero()) return CubeRoot::zero();
        out = out * s.pow(e);
    }
    return out;
}

}  // namespace qc
