#pragma once

// Dirichlet L-values at s = 1 and Dedekind zeta residues for cyclic cubic
// fields, by two independent methods: truncated series (Polya-Vinogradov
// tail bound) and the finite Gauss-sum formula for even characters.

#include <complex>
#include <iosfwd>

#include "qc/cubicfield.hpp"
#include "qc/ints.hpp"

namespace qc {

enum class LMethod { TruncatedSum, FiniteGaussFormula };

struct LValue {
    std::complex<hpreal> value;
    LMethod method;
    hpreal error_bound;
};

// Truncated sum over n <= T of chi(n)/n; error bound sqrt(q) log(q) / T
// (Polya-Vinogradov with constant 1, validated empirically downstream).
// Requires T >= q; rejects the principal character by construction (cubic
// characters here always have modulus >= 7).
LValue l_value_truncated(const CubicCharacter& chi, uint64_t T);

// Finite formula for even primitive chi: L(1, chi) = -(tau(chi)/q) *
// sum_a conj(chi)(a) log|1 - e(a/q)|; exact up to log/cos evaluations.
LValue l_value_gauss(const CubicCharacter& chi);

struct ZetaResidueOptions {
    bool crosscheck = true;
    uint64_t crosscheck_T = 100000;  // raised to >= 10*q internally
};

struct ZetaResidue {
    hpreal value;            // |L(1,chi)|^2 by the finite formula
    hpreal method_residual;  // |L_gauss - L_truncated| when cross-checked
};

// zeta*_F(1) = |L(1,chi_F)|^2 with optional dual-method consistency check;
// throws if the two methods disagree beyond 10x the truncation bound.
ZetaResidue zeta_residue(const CyclicCubicField& F, const ZetaResidueOptions& opt = {});

// CSV: conductor, zeta_residue, method_residual
void write_zeta_csv(std::ostream& os, const std::vector<CyclicCubicField>& fields,
                    const ZetaResidueOptions& opt = {});

}  // namespace qc
