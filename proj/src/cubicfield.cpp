#include "qc/cubicfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qc {

namespace {

// exponent table of one fixed cubic character mod 9 (chi(2) = w); -1 at
// residues divisible by 3
constexpr int8_t kMod9[9] = {-1, 0, 1, -1, 2, 2, -1, 1, 0};

long long primitive_root(long long p) {
    auto fs = factor_u64(static_cast<uint64_t>(p - 1));
    for (long long g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [q, e] : fs) {
            (void)e;
            if (powmod_u64(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root");
}

}  // namespace

CubicCharacter::CubicCharacter(long long modulus, std::vector<Local> locals, int mod9)
    : modulus_(modulus), locals_(std::move(locals)), mod9_(mod9) {
    std::sort(locals_.begin(), locals_.end(),
              [](const Local& a, const Local& b) { return a.p < b.p; });
    long long m = mod9_ ? 9 : 1;
    for (const auto& l : locals_) m *= l.p;
    if (m != modulus_) throw std::invalid_argument("character components do not match modulus");
}

CubeRoot CubicCharacter::eval(const Int& n) const {
    CubeRoot out = CubeRoot::one();
    for (const auto& l : locals_) {
        CubeRoot s = cubic_residue_symbol_prime(n, l.pi);
        if (s.is_zero()) return CubeRoot::zero();
        out = out * s;
    }
    if (mod9_) {
        long long r = to_ll(n % 9);
        if (r < 0) r += 9;
        int8_t e = kMod9[r];
        if (e < 0) return CubeRoot::zero();
        out = out * (mod9_ == 1 ? CubeRoot::omega(e) : CubeRoot::omega(-e));
    }
    return out;
}

CubicCharacter CubicCharacter::conj() const {
    std::vector<Local> ls;
    for (const auto& l : locals_) ls.push_back({l.p, l.pi.conj()});
    int m9 = mod9_ == 0 ? 0 : 3 - mod9_;
    return CubicCharacter(modulus_, std::move(ls), m9);
}

std::vector<int8_t> CubicCharacter::table_mod() const {
    const long long f = modulus_;
    std::vector<int8_t> acc(f, 0);
    std::vector<bool> bad(f, false);
    for (const auto& l : locals_) {
        const long long p = l.p;
        std::vector<int8_t> loc(p, -1);
        long long g = primitive_root(p);
        CubeRoot s = cubic_residue_symbol_prime(Int(g), l.pi);
        if (s.is_zero() || s.exponent() == 0)
            throw std::logic_error("local symbol not a primitive cubic character");
        int step = s.exponent();
        long long x = 1;
        for (long long k = 0; k < p - 1; ++k) {
            loc[x] = static_cast<int8_t>((step * k) % 3);
            x = (x * g) % p;
        }
        for (long long n = 0; n < f; ++n) {
            int8_t v = loc[n % p];
            if (v < 0)
                bad[n] = true;
            else
                acc[n] = static_cast<int8_t>((acc[n] + v) % 3);
        }
    }
    if (mod9_) {
        for (long long n = 0; n < f; ++n) {
            int8_t v = kMod9[n % 9];
            if (v < 0)
                bad[n] = true;
            else
                acc[n] = static_cast<int8_t>((acc[n] + (mod9_ == 1 ? v : (3 - v) % 3)) % 3);
        }
    }
    for (long long n = 0; n < f; ++n)
        if (bad[n]) acc[n] = -1;
    return acc;
}

EisensteinIdeal CubicCharacter::character_ideal() const {
    EisensteinIdeal I;
    for (const auto& l : locals_) I = I * l.pi;
    return I;
}

// ---------------------------------------------------------------- field ---

CyclicCubicField::CyclicCubicField(long long conductor, CubicCharacter chi)
    : f_(conductor), chi_(std::move(chi)), lazy_(std::make_shared<Lazy>()) {
    if (chi_.modulus() != f_) throw std::invalid_argument("character modulus != conductor");
    for (const auto& [p, e] : factor_u64(static_cast<uint64_t>(f_))) {
        (void)e;
        ram_.push_back(static_cast<long long>(p));
    }
}

SplittingType CyclicCubicField::splitting_type(const Int& p) const {
    if (Int(f_) % p == 0) return SplittingType::Ramified;
    CubeRoot s = chi_.eval(p);
    if (s.is_zero()) return SplittingType::Ramified;  // p | f (large p case)
    return s.exponent() == 0 ? SplittingType::Split : SplittingType::Inert;
}

const std::array<Int, 4>& CyclicCubicField::defining_cubic() const {
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (!lazy_->have_cubic) {
        // Gaussian periods: eta_j = sum over chi(t) = w^j of exp(2 pi i t / f);
        // real since cubic characters are even.
        auto tab = chi_.table_mod();
        const hpreal twopi = 2 * std::numbers::pi_v<hpreal>;
        KahanSum eta[3];
        for (long long t = 1; t < f_; ++t) {
            int8_t e = tab[t];
            if (e >= 0) eta[e].add(std::cos(twopi * t / f_));
        }
        hpreal e0 = eta[0].value(), e1 = eta[1].value(), e2 = eta[2].value();
        hpreal s1 = e0 + e1 + e2;
        hpreal s2 = e0 * e1 + e0 * e2 + e1 * e2;
        hpreal s3 = e0 * e1 * e2;
        auto round_check = [](hpreal v) {
            long long r = llroundl(v);
            if (std::fabs(v - r) > 1e-4L)
                throw std::runtime_error("period symmetric function failed to round");
            return Int(r);
        };
        Int S1 = round_check(s1), S2 = round_check(s2), S3 = round_check(s3);
        lazy_->cubic = {-S3, S2, -S1, 1};
        lazy_->have_cubic = true;
    }
    return lazy_->cubic;
}

const CubicOrder& CyclicCubicField::order() const {
    auto cubic = defining_cubic();
    std::lock_guard<std::mutex> lk(lazy_->mu);
    if (!lazy_->order) lazy_->order = std::make_shared<CubicOrder>(f_, cubic);
    return *lazy_->order;
}

IntegralBasis CyclicCubicField::integral_basis() const {
    const CubicOrder& O = order();
    return IntegralBasis{O.defining_cubic(), O.disc()};
}

std::vector<PrimeIdeal> CyclicCubicField::prime_ideals_above(long long p) const {
    const CubicOrder& O = order();
    SplittingType st = splitting_type(p);
    std::vector<PrimeIdeal> out;
    std::vector<Elem> pO_rows{Elem{Int(p), 0, 0}, Elem{0, Int(p), 0}, Elem{0, 0, Int(p)}};

    if (st == SplittingType::Inert) {
        out.push_back(PrimeIdeal{p, 1, 3, 0, -1, hnf_from_rows(pO_rows)});
        return out;
    }

    const bool p_divides_den = (O.basis_denominator() % p == 0);

    if (st == SplittingType::Ramified) {
        // nilradical of O/pO = kernel of Frobenius (x -> x^p), p >= 3
        // build Frobenius matrix mod p
        auto powmod_elem = [&](Elem x, Int e) {
            auto redc = [&](Elem v) {
                for (auto& c : v) {
                    c %= p;
                    if (c < 0) c += p;
                }
                return v;
            };
            Elem r = O.one();
            x = redc(x);
            while (e > 0) {
                if (e % 2 == 1) r = redc(O.mul(r, x));
                x = redc(O.mul(x, x));
                e /= 2;
            }
            return r;
        };
        long long F[3][3];
        for (int i = 0; i < 3; ++i) {
            Elem wi{Int(i == 0), Int(i == 1), Int(i == 2)};
            Elem fp = powmod_elem(wi, Int(p));
            for (int k = 0; k < 3; ++k) F[k][i] = to_ll(fp[k]);
        }
        // kernel of F over F_p by row reduction of F^T ... do column space: solve F v = 0
        // gaussian elimination on F (3x3) mod p
        long long M[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M[i][j] = F[i][j] % p;
        std::vector<std::array<long long, 3>> kernel;
        {
            int pivcol[3] = {-1, -1, -1};
            int r = 0;
            for (int c = 0; c < 3 && r < 3; ++c) {
                int pr = -1;
                for (int i = r; i < 3; ++i)
                    if (M[i][c] % p != 0) {
                        pr = i;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(M[r], M[pr]);
                long long inv = static_cast<long long>(
                    powmod_u64(static_cast<uint64_t>((M[r][c] % p + p) % p), p - 2, p));
                for (int j = 0; j < 3; ++j) M[r][j] = (M[r][j] % p + p) % p * inv % p;
                for (int i = 0; i < 3; ++i)
                    if (i != r && M[i][c] % p != 0) {
                        long long fct = (M[i][c] % p + p) % p;
                        for (int j = 0; j < 3; ++j)
                            M[i][j] = ((M[i][j] - fct * M[r][j]) % p + p) % p;
                    }
                pivcol[r] = c;
                ++r;
            }
            for (int c = 0; c < 3; ++c) {
                bool is_pivot = false;
                for (int i = 0; i < r; ++i)
                    if (pivcol[i] == c) is_pivot = true;
                if (is_pivot) continue;
                std::array<long long, 3> v{};
                v[c] = 1;
                for (int i = 0; i < r; ++i) v[pivcol[i]] = (p - M[i][c] % p) % p;
                kernel.push_back(v);
            }
        }
        std::vector<Elem> rows = pO_rows;
        for (const auto& v : kernel) rows.push_back(Elem{Int(v[0]), Int(v[1]), Int(v[2])});
        IdealLat L = hnf_from_rows(rows);
        if (L.norm() != p) throw std::logic_error("ramified prime construction failed");
        long long root = -1;
        if (!p_divides_den) {
            auto rs = cubic_roots_mod_p(O.defining_cubic(), p);
            if (!rs.empty()) root = rs[0];
        }
        out.push_back(PrimeIdeal{p, 3, 1, 0, root, L});
        return out;
    }

    // split
    if (!p_divides_den) {
        auto rs = cubic_roots_mod_p(O.defining_cubic(), p);
        if (rs.size() != 3) throw std::logic_error("expected 3 roots at a split prime");
        Elem th = O.theta_elem();
        for (int i = 0; i < 3; ++i) {
            std::vector<Elem> rows = pO_rows;
            Elem gen = O.sub(th, O.from_int(rs[i]));
            for (int j = 0; j < 3; ++j) {
                Elem wj{Int(j == 0), Int(j == 1), Int(j == 2)};
                rows.push_back(O.mul(gen, wj));
            }
            IdealLat L = hnf_from_rows(rows);
            if (L.norm() != p) throw std::logic_error("split prime construction failed");
            out.push_back(PrimeIdeal{p, 1, 1, i, rs[i], L});
        }
        return out;
    }
    // small p dividing the basis denominator: scan index-p ideal lattices
    std::vector<IdealLat> found;
    for (long long a0 = 0; a0 < p; ++a0)
        for (long long a1 = 0; a1 < p; ++a1)
            for (long long a2 = 0; a2 < p; ++a2) {
                if (a0 == 0 && a1 == 0 && a2 == 0) continue;
                // normalize first nonzero to 1 to dedupe scalar multiples
                long long lead = a0 ? a0 : (a1 ? a1 : a2);
                if (lead != 1) continue;
                std::vector<Elem> rows = pO_rows;
                Elem v{Int(a0), Int(a1), Int(a2)};
                for (int j = 0; j < 3; ++j) {
                    Elem wj{Int(j == 0), Int(j == 1), Int(j == 2)};
                    rows.push_back(O.mul(v, wj));
                }
                IdealLat L = hnf_from_rows(rows);
                if (L.norm() == p && std::find(found.begin(), found.end(), L) == found.end())
                    found.push_back(L);
            }
    if (found.size() != 3) throw std::logic_error("split prime scan failed");
    for (int i = 0; i < 3; ++i) out.push_back(PrimeIdeal{p, 1, 1, i, -1, found[i]});
    return out;
}

std::vector<CyclicCubicField> CyclicCubicField::fields_for_conductor(long long f) {
    long long m = f;
    bool has9 = false;
    if (m % 9 == 0) {
        has9 = true;
        m /= 9;
    }
    if (m % 3 == 0) throw std::invalid_argument("inadmissible conductor");
    std::vector<long long> ps;
    for (const auto& [p, e] : factor_u64(static_cast<uint64_t>(m))) {
        if (e != 1 || p % 3 != 1) throw std::invalid_argument("inadmissible conductor");
        ps.push_back(static_cast<long long>(p));
    }
    std::sort(ps.begin(), ps.end());
    std::vector<EisensteinIdeal> pis;
    for (long long p : ps) pis.push_back(factor_rational_prime(Int(p)).pi);

    std::vector<CyclicCubicField> out;
    // Orbit representatives: conjugation flips every component, so fixing the
    // first component picks one character per orbit {chi, conj chi}.
    int nfree;
    bool first_is_mod9 = ps.empty();
    if (first_is_mod9) {
        if (!has9) throw std::invalid_argument("conductor 1 is not a cubic conductor");
        nfree = 0;  // f = 9: single orbit
    } else {
        nfree = static_cast<int>(ps.size()) - 1 + (has9 ? 1 : 0);
    }
    for (int mask = 0; mask < (1 << nfree); ++mask) {
        std::vector<CubicCharacter::Local> locals;
        int bit = 0;
        int mod9 = 0;
        if (first_is_mod9) {
            mod9 = 1;
        } else {
            locals.push_back({ps[0], pis[0]});
            for (size_t i = 1; i < ps.size(); ++i) {
                bool flip = (mask >> bit++) & 1;
                locals.push_back({ps[i], flip ? pis[i].conj() : pis[i]});
            }
            if (has9) mod9 = ((mask >> bit++) & 1) ? 2 : 1;
        }
        out.emplace_back(f, CubicCharacter(f, std::move(locals), mod9));
    }
    return out;
}

bool divisor_is_admissible(long long d) {
    if (d < 1) return false;
    if (d == 1) return true;
    for (const auto& [p, e] : factor_u64(static_cast<uint64_t>(d)))
        if (e != 1 || p % 3 != 1) return false;
    return true;
}

std::vector<long long> enumerate_conductors(double x_max, bool allow_ramified_at_3,
                                            long long divisor) {
    if (!divisor_is_admissible(divisor)) throw std::invalid_argument("inadmissible divisor");
    std::vector<long long> out;
    if (x_max < 1) return out;
    long long fmax = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(x_max))));
    while (static_cast<double>(fmax) * fmax > x_max) --fmax;
    if (fmax < 7) return out;
    std::vector<long long> ps;
    for (uint32_t p : primes_upto(static_cast<uint64_t>(fmax)))
        if (p % 3 == 1) ps.push_back(p);
    std::vector<long long> prods{1};
    // squarefree products of primes = 1 mod 3 up to fmax
    std::vector<long long> stack_m{1};
    std::vector<size_t> stack_i{0};
    while (!stack_m.empty()) {
        long long m = stack_m.back();
        size_t i = stack_i.back();
        stack_m.pop_back();
        stack_i.pop_back();
        if (m > 1) prods.push_back(m);
        for (size_t j = i; j < ps.size(); ++j) {
            if (m > fmax / ps[j]) break;
            stack_m.push_back(m * ps[j]);
            stack_i.push_back(j + 1);
        }
    }
    for (long long m : prods) {
        if (m > 1 && m % divisor == 0) out.push_back(m);
        if (allow_ramified_at_3 && 9 * m <= fmax && (9 * m) % divisor == 0 &&
            divisor % 3 != 0)
            out.push_back(9 * m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CyclicCubicField> enumerate_fields(double x_max, const EnumerateOptions& opt) {
    std::vector<CyclicCubicField> out;
    for (long long f : enumerate_conductors(x_max, opt.allow_ramified_at_3, opt.divisor))
        for (auto& F : CyclicCubicField::fields_for_conductor(f)) out.push_back(std::move(F));
    return out;
}

void write_fields_csv(std::ostream& os, const std::vector<CyclicCubicField>& fields) {
    os << "conductor,discriminant,defining_cubic_coeffs,num_fields_at_conductor\n";
    for (size_t i = 0; i < fields.size(); ++i) {
        const auto& F = fields[i];
        size_t same = 0;
        for (const auto& G : fields)
            if (G.conductor() == F.conductor()) ++same;
        const auto& g = F.defining_cubic();
        os << F.conductor() << "," << F.discriminant() << "," << g[3] << ":" << g[2] << ":"
           << g[1] << ":" << g[0] << "," << same << "\n";
    }
}

}  // namespace qc
