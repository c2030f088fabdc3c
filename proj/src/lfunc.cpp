#include "qc/lfunc.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qc {

namespace {

std::complex<hpreal> omega_pow(int e) {
    static const hpreal s3 = std::sqrt(3.0L) / 2;
    switch (((e % 3) + 3) % 3) {
        case 0: return {1.0L, 0.0L};
        case 1: return {-0.5L, s3};
        default: return {-0.5L, -s3};
    }
}

}  // namespace

LValue l_value_truncated(const CubicCharacter& chi, uint64_t T) {
    const long long q = chi.modulus();
    if (q <= 1) throw std::invalid_argument("principal character rejected");
    if (T < static_cast<uint64_t>(q)) throw std::invalid_argument("need T >= conductor");
    auto tab = chi.table_mod();
    KahanSum bins[3];
    for (uint64_t n = 1; n <= T; ++n) {
        int8_t e = tab[n % q];
        if (e >= 0) bins[e].add(1.0L / n);
    }
    std::complex<hpreal> L = bins[0].value() * omega_pow(0) + bins[1].value() * omega_pow(1) +
                             bins[2].value() * omega_pow(2);
    hpreal bound = std::sqrt(static_cast<hpreal>(q)) * std::log(static_cast<hpreal>(q)) / T;
    return {L, LMethod::TruncatedSum, bound};
}

LValue l_value_gauss(const CubicCharacter& chi) {
    const long long q = chi.modulus();
    if (q <= 1) throw std::invalid_argument("principal character rejected");
    auto tab = chi.table_mod();
    const hpreal pi = std::numbers::pi_v<hpreal>;
    // Gauss sum tau(chi) = sum chi(a) e(a/q)
    KahanSum tr, ti;
    for (long long a = 1; a < q; ++a) {
        int8_t e = tab[a];
        if (e < 0) continue;
        auto w = omega_pow(e);
        hpreal ang = 2 * pi * a / q;
        hpreal ca = std::cos(ang), sa = std::sin(ang);
        tr.add(w.real() * ca - w.imag() * sa);
        ti.add(w.real() * sa + w.imag() * ca);
    }
    std::complex<hpreal> tau(tr.value(), ti.value());
    hpreal tau_abs2 = std::norm(tau);
    if (std::fabs(tau_abs2 - q) > 1e-6L * q)
        throw std::runtime_error("Gauss sum modulus check failed (character not primitive?)");
    // L(1,chi) = -(tau/q) sum_a conj(chi)(a) log(2 sin(pi a / q))
    KahanSum sr, si;
    for (long long a = 1; a < q; ++a) {
        int8_t e = tab[a];
        if (e < 0) continue;
        auto w = omega_pow(-e);  // conj
        hpreal lg = std::log(2 * std::sin(pi * a / q));
        sr.add(w.real() * lg);
        si.add(w.imag() * lg);
    }
    std::complex<hpreal> S(sr.value(), si.value());
    std::complex<hpreal> L = -(tau / static_cast<hpreal>(q)) * S;
    // rounding budget: q log q terms at long double eps
    hpreal bound = static_cast<hpreal>(q) * std::log(static_cast<hpreal>(q + 2)) * 1e-18L;
    return {L, LMethod::FiniteGaussFormula, bound};
}

ZetaResidue zeta_residue(const CyclicCubicField& F, const ZetaResidueOptions& opt) {
    LValue g = l_value_gauss(F.character());
    hpreal z = std::norm(g.value);
    hpreal residual = 0;
    if (opt.crosscheck) {
        uint64_t T = std::max<uint64_t>(opt.crosscheck_T,
                                        10 * static_cast<uint64_t>(F.conductor()));
        LValue t = l_value_truncated(F.character(), T);
        residual = std::abs(g.value - t.value);
        if (residual > 10 * t.error_bound)
            throw std::runtime_error("zeta residue: dual-method disagreement beyond bound");
    }
    if (!(z > 0)) throw std::runtime_error("zeta residue must be positive");
    return {z, residual};
}

void write_zeta_csv(std::ostream& os, const std::vector<CyclicCubicField>& fields,
                    const ZetaResidueOptions& opt) {
    os << "conductor,zeta_residue,method_residual\n";
    os.precision(19);
    for (const auto& F : fields) {
        ZetaResidue z = zeta_residue(F, opt);
        os << F.conductor() << "," << static_cast<double>(z.value) << ","
           << static_cast<double>(z.method_residual) << "\n";
    }
}

}  // namespace qc
