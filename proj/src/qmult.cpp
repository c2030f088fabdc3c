#include "qc/qmult.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qc {

Int FactoredIdeal::norm() const {
    Int n = 1;
    for (const auto& [h, e] : factors) n *= int_pow(h.norm(), static_cast<unsigned>(e));
    return n;
}

Int FactoredIdeal::norm_radical() const {
    Int r = 1;
    Int last = 0;
    for (const auto& [h, e] : factors) {
        (void)e;
        if (h.p != last) {
            r *= h.p;
            last = h.p;
        }
    }
    return r;
}

void FactoredIdeal::push(const PrimeHandle& h, int e) {
    factors.emplace_back(h, e);
    normalize();
}

void FactoredIdeal::normalize() {
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<PrimeHandle, int>> out;
    for (const auto& [h, e] : factors) {
        if (!out.empty() && out.back().first == h)
            out.back().second += e;
        else
            out.emplace_back(h, e);
    }
    factors = std::move(out);
}

FactoredIdeal FactoredIdeal::times(const FactoredIdeal& o) const {
    FactoredIdeal r = *this;
    for (const auto& [h, e] : o.factors) r.factors.emplace_back(h, e);
    r.normalize();
    return r;
}

SplittingOracle oracle_for(const CyclicCubicField& F) {
    return SplittingOracle{3, [&F](const Int& p) -> SplitShape {
                               switch (F.splitting_type(p)) {
                                   case SplittingType::Split: return {3, 1, 1};
                                   case SplittingType::Inert: return {1, 3, 1};
                                   default: return {1, 1, 3};
                               }
                           }};
}

SplittingOracle eisenstein_oracle() {
    return SplittingOracle{2, [](const Int& p) -> SplitShape {
                               if (p == 3) return {1, 1, 2};
                               if (p % 3 == 1) return {2, 1, 1};
                               return {1, 2, 1};
                           }};
}

int moebius_F(const FactoredIdeal& a) {
    for (const auto& [h, e] : a.factors) {
        (void)h;
        if (e >= 2) return 0;
    }
    return a.factors.size() % 2 == 0 ? 1 : -1;
}

int squarefree_coprime_indicator(const FactoredIdeal& a, const Int& M) {
    // N(a) squarefree and coprime to M
    Int last = 0;
    int vp = 0;
    for (const auto& [h, e] : a.factors) {
        if (M % h.p == 0) return 0;
        if (h.p != last) {
            last = h.p;
            vp = 0;
        }
        vp += h.fdeg * e;
        if (vp > 1) return 0;
    }
    return 1;
}

std::vector<FactoredIdeal> divisors_of(const FactoredIdeal& a, uint64_t limit) {
    uint64_t count = 1;
    for (const auto& [h, e] : a.factors) {
        (void)h;
        count *= static_cast<uint64_t>(e) + 1;
        if (count > limit) throw std::runtime_error("divisor-count limit exceeded");
    }
    std::vector<FactoredIdeal> out{FactoredIdeal::unit()};
    for (const auto& [h, e] : a.factors) {
        std::vector<FactoredIdeal> next;
        next.reserve(out.size() * (e + 1));
        for (const auto& d : out)
            for (int k = 0; k <= e; ++k) {
                FactoredIdeal nd = d;
                if (k > 0) nd.factors.emplace_back(h, k);
                next.push_back(std::move(nd));
            }
        out = std::move(next);
    }
    for (auto& d : out) d.normalize();
    return out;
}

namespace {

// gamma on a single rational-prime block (Lemma-style case analysis):
// exps = exponents on the t distinct primes used, all sharing residue degree
// fdeg.  p | M handled by the caller flag.
int gamma_block(const std::vector<int>& exps, int fdeg, bool p_divides_M) {
    const int t = static_cast<int>(exps.size());
    int ones = 0, twos = 0, other = 0;
    for (int e : exps) {
        if (e == 1)
            ++ones;
        else if (e == 2)
            ++twos;
        else
            ++other;
    }
    if (other > 0) return 0;
    const int sign_t = (t % 2 == 0) ? 1 : -1;
    if (p_divides_M) return (twos == 0) ? sign_t : 0;
    if (twos == 0) {
        if (fdeg > 1) return sign_t;
        return -sign_t * (t - 1);  // (-1)^{t-1} (t-1)
    }
    if (twos == 1 && fdeg == 1) return sign_t;
    return 0;
}

}  // namespace

Int gamma_FM(const FactoredIdeal& a, const Int& M) {
    Int out = 1;
    size_t i = 0;
    while (i < a.factors.size()) {
        size_t j = i;
        std::vector<int> exps;
        const Int& p = a.factors[i].first.p;
        int fdeg = a.factors[i].first.fdeg;
        while (j < a.factors.size() && a.factors[j].first.p == p) {
            exps.push_back(a.factors[j].second);
            ++j;
        }
        out *= gamma_block(exps, fdeg, M % p == 0);
        if (out == 0) return 0;
        i = j;
    }
    return out;
}

Int gamma_FM_definitional(const FactoredIdeal& a, const Int& M, uint64_t divisor_limit) {
    auto ind = [&M](const FactoredIdeal& b) { return Int(squarefree_coprime_indicator(b, M)); };
    auto mu = [](const FactoredIdeal& b) { return Int(moebius_F(b)); };
    return dirichlet_convolve<Int>(ind, mu, a, divisor_limit);
}

namespace {

// closed-form local factor of L(gamma,1) at p for a degree-3 or degree-2
// Galois field, as exact rationals
Rat local_factor(SplitShape s, const Int& p, bool pdivM) {
    Rat q(1, p);
    if (s.e > 1) {  // ramified
        if (pdivM) return 1 - q;
        return 1 - q * q;
    }
    if (s.fdeg > 1) {  // inert
        Rat qq = 1;
        for (int i = 0; i < s.fdeg; ++i) qq *= q;
        return 1 - qq;
    }
    // split: t_avail primes of degree 1
    if (s.t_avail == 3) {
        if (pdivM) return (1 - q) * (1 - q) * (1 - q);
        return (1 - q) * (1 - q) * (1 - q) * (1 + 3 * q);
    }
    // t_avail == 2 (Q(zeta3))
    if (pdivM) return (1 - q) * (1 - q);
    return (1 - q) * (1 - q) * (1 + 2 * q);
}

EulerProductValue l_gamma_impl(const SplittingOracle& ora, const Int& M, uint64_t P) {
    if (P < 13) throw std::invalid_argument("need P >= 13 for the tail bound");
    KahanSum logsum;
    for (uint32_t p : primes_upto(P)) {
        Rat f = local_factor(ora.shape(Int(p)), Int(p), M % p == 0);
        hpreal fv = to_real(f);
        if (!(fv > 0)) throw std::logic_error("nonpositive local factor");
        // derived bound |log factor_p| <= 6/p^2 for p > 13; checked here
        if (p > 13 && std::fabs(std::log(fv)) > 6.0L / (static_cast<hpreal>(p) * p))
            throw std::logic_error("local factor log bound violated");
        logsum.add(std::log(fv));
    }
    hpreal val = std::exp(logsum.value());
    hpreal Pf = static_cast<hpreal>(P);
    hpreal tail = std::expm1(6.0L * (6.0L / (Pf * std::log(Pf))));
    return {val, val * tail, P};
}

}  // namespace

Rat l_gamma_local_factor(const CyclicCubicField& F, const Int& M, const Int& p) {
    return local_factor(oracle_for(F).shape(p), p, M % p == 0);
}

EulerProductValue l_gamma(const CyclicCubicField& F, const Int& M, uint64_t P) {
    // use the character table for fast splitting lookups
    auto tab = F.character().table_mod();
    long long f = F.conductor();
    SplittingOracle fast{3, [&tab, f](const Int& p) -> SplitShape {
                             long long r = to_ll(p % f);
                             int8_t e = tab[r];
                             if (e < 0) return {1, 1, 3};
                             return e == 0 ? SplitShape{3, 1, 1} : SplitShape{1, 3, 1};
                         }};
    if (P < 13) throw std::invalid_argument("need P >= 13 for the tail bound");
    KahanSum logsum;
    for (uint32_t p : primes_upto(P)) {
        Rat fac = local_factor(fast.shape(Int(p)), Int(p), M % p == 0);
        hpreal fv = to_real(fac);
        if (p > 13 && std::fabs(std::log(fv)) > 6.0L / (static_cast<hpreal>(p) * p))
            throw std::logic_error("local factor log bound violated");
        logsum.add(std::log(fv));
    }
    hpreal val = std::exp(logsum.value());
    hpreal Pf = static_cast<hpreal>(P);
    hpreal tail = std::expm1(6.0L * (6.0L / (Pf * std::log(Pf))));
    return {val, val * tail, P};
}

EulerProductValue l_gamma_eisenstein(const Int& M, uint64_t P) {
    return l_gamma_impl(eisenstein_oracle(), M, P);
}

namespace {

struct Block {
    uint64_t norm;
    long long gamma_sum;  // sum of gamma over the ideals in this block
    long long abs_sum;    // sum of |gamma|
};

// per-prime block aggregates for the support of gamma (cubic field)
std::vector<Block> blocks_for(SplittingType st, uint64_t p, bool pdivM, double X) {
    std::vector<Block> out;
    auto push = [&](double nrm, long long g, long long a) {
        if (nrm <= X) out.push_back({static_cast<uint64_t>(nrm), g, a});
    };
    double pd = static_cast<double>(p);
    if (st == SplittingType::Ramified) {
        if (pdivM)
            push(pd, -1, 1);
        else
            push(pd * pd, -1, 1);
        return out;
    }
    if (st == SplittingType::Inert) {
        push(pd * pd * pd, -1, 1);
        return out;
    }
    if (pdivM) {
        push(pd, -3, 3);
        push(pd * pd, 3, 3);
        push(pd * pd * pd, -1, 1);
        return out;
    }
    push(pd * pd, -6, 6);
    push(pd * pd * pd, 8, 8);
    push(pd * pd * pd * pd, -3, 3);
    return out;
}

}  // namespace

GammaSeriesResult gamma_series_direct(const CyclicCubicField& F, const Int& M, double X) {
    if (X < 1 || X > 1e15) throw std::runtime_error("enumeration limit exceeded");
    auto tab = F.character().table_mod();
    long long f = F.conductor();
    auto split_of = [&](uint64_t p) {
        if (f % static_cast<long long>(p) == 0) return SplittingType::Ramified;
        int8_t e = tab[p % f];
        return e == 0 ? SplittingType::Split : SplittingType::Inert;
    };
    // primes with a block norm <= X: p^2 <= X generally, plus p | M (whose
    // blocks start at norm p)
    std::vector<uint64_t> plist;
    for (uint32_t p : primes_upto(static_cast<uint64_t>(std::sqrt(X)) + 2)) plist.push_back(p);
    for (const auto& [pp, e] : factor_int(M)) {
        (void)e;
        if (pp > std::numeric_limits<uint64_t>::max()) continue;
        uint64_t pv = pp.convert_to<uint64_t>();
        if (static_cast<double>(pv) <= X &&
            std::find(plist.begin(), plist.end(), pv) == plist.end())
            plist.push_back(pv);
    }
    std::sort(plist.begin(), plist.end());
    std::vector<std::pair<uint64_t, std::vector<Block>>> pblocks;
    for (uint64_t p : plist) {
        bool pdivM = (M % p == 0);
        if (!pdivM && static_cast<double>(p) * p > X) continue;
        auto bs = blocks_for(split_of(p), p, pdivM, X);
        if (!bs.empty()) pblocks.emplace_back(p, std::move(bs));
    }
    // min block norm is not monotone across primes (p | M blocks start at p);
    // use suffix minima for the cutoff
    std::vector<double> sufmin(pblocks.size() + 1, 1e300);
    for (size_t j = pblocks.size(); j-- > 0;)
        sufmin[j] = std::min(sufmin[j + 1], static_cast<double>(pblocks[j].second.front().norm));
    // gamma multiplies across coprime blocks, so block aggregates multiply too
    KahanSum sum;
    uint64_t support = 1;  // unit ideal
    sum.add(1.0L);
    struct Node {
        size_t i;
        double norm;
        long long g;
    };
    std::vector<Node> work;
    work.push_back({0, 1.0, 1});
    while (!work.empty()) {
        Node nd = work.back();
        work.pop_back();
        for (size_t j = nd.i; j < pblocks.size(); ++j) {
            if (nd.norm * sufmin[j] > X) break;
            if (nd.norm * static_cast<double>(pblocks[j].second.front().norm) > X) continue;
            for (const auto& b : pblocks[j].second) {
                double nn = nd.norm * static_cast<double>(b.norm);
                if (nn > X) break;
                long long gg = nd.g * b.gamma_sum;
                sum.add(static_cast<hpreal>(gg) / static_cast<hpreal>(nn));
                work.push_back({j + 1, nn, gg});
                ++support;
            }
        }
    }
    // tail bound: sum_{N>X} |gamma|/N <= X^{-1/4} * prod_p (1 + sum_b |g|_b / n_b^{3/4})
    KahanSum lg34;
    uint64_t P0 = 100000;
    for (uint32_t p : primes_upto(P0)) {
        bool pdivM = (M % p == 0);
        hpreal pf = static_cast<hpreal>(p);
        hpreal acc = 1;
        switch (split_of(p)) {
            case SplittingType::Ramified:
                acc += pdivM ? std::pow(pf, -0.75L) : std::pow(pf, -1.5L);
                break;
            case SplittingType::Inert:
                acc += std::pow(pf, -2.25L);
                break;
            default:
                if (pdivM)
                    acc += 3 * std::pow(pf, -0.75L) + 3 * std::pow(pf, -1.5L) +
                           std::pow(pf, -2.25L);
                else
                    acc += 6 * std::pow(pf, -1.5L) + 8 * std::pow(pf, -2.25L) +
                           3 * std::pow(pf, -3.0L);
        }
        lg34.add(std::log(acc));
    }
    // primes beyond P0: factor <= 1 + 6/p^{1.5} + 8/p^{2.25} + 3/p^3;
    // sum over p > P0 of log is below 13/sqrt(P0)
    hpreal moment = std::exp(lg34.value() + 13.0L / std::sqrt(static_cast<hpreal>(P0)));
    hpreal tail = moment / std::pow(static_cast<hpreal>(X), 0.25L);
    return {sum.value(), tail, support};
}

Int gamma_partial_sum_abs(const CyclicCubicField& F, const Int& M, double X) {
    if (X < 1 || X > 1e15) throw std::runtime_error("enumeration limit exceeded");
    auto tab = F.character().table_mod();
    long long f = F.conductor();
    auto split_of = [&](uint64_t p) {
        if (f % static_cast<long long>(p) == 0) return SplittingType::Ramified;
        int8_t e = tab[p % f];
        return e == 0 ? SplittingType::Split : SplittingType::Inert;
    };
    std::vector<uint64_t> plist;
    for (uint32_t p : primes_upto(static_cast<uint64_t>(std::sqrt(X)) + 2)) plist.push_back(p);
    for (const auto& [pp, e] : factor_int(M)) {
        (void)e;
        if (pp > std::numeric_limits<uint64_t>::max()) continue;
        uint64_t pv = pp.convert_to<uint64_t>();
        if (static_cast<double>(pv) <= X &&
            std::find(plist.begin(), plist.end(), pv) == plist.end())
            plist.push_back(pv);
    }
    std::sort(plist.begin(), plist.end());
    std::vector<std::pair<uint64_t, std::vector<Block>>> pblocks;
    for (uint64_t p : plist) {
        bool pdivM = (M % p == 0);
        if (!pdivM && static_cast<double>(p) * p > X) continue;
        auto bs = blocks_for(split_of(p), p, pdivM, X);
        if (!bs.empty()) pblocks.emplace_back(p, std::move(bs));
    }
    std::vector<double> sufmin(pblocks.size() + 1, 1e300);
    for (size_t j = pblocks.size(); j-- > 0;)
        sufmin[j] = std::min(sufmin[j + 1], static_cast<double>(pblocks[j].second.front().norm));
    Int total = 1;  // unit ideal
    struct Node {
        size_t i;
        double norm;
        Int a;
    };
    std::vector<Node> work;
    work.push_back({0, 1.0, Int(1)});
    while (!work.empty()) {
        Node nd = work.back();
        work.pop_back();
        for (size_t j = nd.i; j < pblocks.size(); ++j) {
            if (nd.norm * sufmin[j] > X) break;
            if (nd.norm * static_cast<double>(pblocks[j].second.front().norm) > X) continue;
            for (const auto& b : pblocks[j].second) {
                double nn = nd.norm * static_cast<double>(b.norm);
                if (nn > X) break;
                Int aa = nd.a * b.abs_sum;
                total += aa;
                work.push_back({j + 1, nn, aa});
            }
        }
    }
    return total;
}

std::vector<FactoredIdeal> enumerate_factored_ideals(const CyclicCubicField& F, double X) {
    if (X < 1 || X > 1e9) throw std::runtime_error("enumeration limit exceeded");
    auto tab = F.character().table_mod();
    long long f = F.conductor();
    std::vector<uint32_t> ps = primes_upto(static_cast<uint64_t>(X));
    // per-prime option lists: (norm multiplier, partial FactoredIdeal factors)
    struct Opt {
        double norm;
        std::vector<std::pair<PrimeHandle, int>> fs;
    };
    std::vector<std::vector<Opt>> opts;
    for (uint32_t p : ps) {
        SplittingType st;
        if (f % p == 0)
            st = SplittingType::Ramified;
        else
            st = tab[p % f] == 0 ? SplittingType::Split : SplittingType::Inert;
        std::vector<Opt> os;
        double pd = p;
        if (st == SplittingType::Ramified) {
            PrimeHandle h{Int(p), 1, 3, 0};
            double n = pd;
            for (int e = 1; n <= X; ++e, n *= pd) os.push_back({n, {{h, e}}});
        } else if (st == SplittingType::Inert) {
            PrimeHandle h{Int(p), 3, 1, 0};
            double n = pd * pd * pd;
            for (int e = 1; n <= X; ++e, n *= pd * pd * pd) os.push_back({n, {{h, e}}});
        } else {
            PrimeHandle hs[3] = {{Int(p), 1, 1, 0}, {Int(p), 1, 1, 1}, {Int(p), 1, 1, 2}};
            // all exponent triples (e0,e1,e2) with p^{e0+e1+e2} <= X
            int emax = static_cast<int>(std::log(X) / std::log(pd)) + 1;
            for (int e0 = 0; e0 <= emax; ++e0)
                for (int e1 = 0; e1 <= emax; ++e1)
                    for (int e2 = 0; e2 <= emax; ++e2) {
                        int s = e0 + e1 + e2;
                        if (s == 0) continue;
                        double n = std::pow(pd, s);
                        if (n > X * (1 + 1e-12)) continue;
                        Opt o;
                        o.norm = n;
                        if (e0) o.fs.emplace_back(hs[0], e0);
                        if (e1) o.fs.emplace_back(hs[1], e1);
                        if (e2) o.fs.emplace_back(hs[2], e2);
                        os.push_back(std::move(o));
                    }
            std::sort(os.begin(), os.end(),
                      [](const Opt& a, const Opt& b) { return a.norm < b.norm; });
        }
        if (!os.empty()) opts.push_back(std::move(os));
    }
    // min option norm is p (split/ramified) but p^3 (inert): use suffix minima
    std::vector<double> sufmin(opts.size() + 1, 1e300);
    for (size_t j = opts.size(); j-- > 0;)
        sufmin[j] = std::min(sufmin[j + 1], opts[j].front().norm);
    std::vector<FactoredIdeal> out{FactoredIdeal::unit()};
    struct Node {
        size_t i;
        double norm;
        FactoredIdeal a;
    };
    std::vector<Node> work{{0, 1.0, FactoredIdeal::unit()}};
    while (!work.empty()) {
        Node nd = work.back();
        work.pop_back();
        for (size_t j = nd.i; j < opts.size(); ++j) {
            if (nd.norm * sufmin[j] > X) break;
            if (nd.norm * opts[j].front().norm > X) continue;
            for (const auto& o : opts[j]) {
                double nn = nd.norm * o.norm;
                if (nn > X) break;
                FactoredIdeal na = nd.a;
                for (const auto& [h, e] : o.fs) na.factors.emplace_back(h, e);
                na.normalize();
                out.push_back(na);
                work.push_back({j + 1, nn, na});
            }
        }
    }
    return out;
}

}  // namespace qc
