#pragma once

// Cyclic cubic fields keyed by conductor and cubic-character orbit:
// enumeration, splitting map, Gaussian-period integral basis with an exact
// disc = f^2 certificate, and prime-ideal data.

#include <iosfwd>
#include <memory>
#include <mutex>
#include <vector>

#include "qc/eisenstein.hpp"
#include "qc/ints.hpp"
#include "qc/order.hpp"

namespace qc {

enum class SplittingType { Ramified, Split, Inert };

// Primitive cubic Dirichlet character of conductor f (f = m or 9m, m a
// squarefree product of primes = 1 mod 3), realized as a product of cubic
// residue symbols at Eisenstein primes plus an optional mod-9 component.
class CubicCharacter {
  public:
    struct Local {
        long long p;
        EisensteinIdeal pi;
    };

    CubicCharacter(long long modulus, std::vector<Local> locals, int mod9);

    long long modulus() const { return modulus_; }
    const std::vector<Local>& locals() const { return locals_; }
    int mod9() const { return mod9_; }  // 0 absent, 1 chi_9, 2 conj(chi_9)

    CubeRoot eval(const Int& n) const;
    CubicCharacter conj() const;

    // chi(n) for n in [0, modulus): -1 encodes 0, otherwise the exponent of w.
    std::vector<int8_t> table_mod() const;

    // Product of the local prime ideals: norm = prime-to-3 part of f.
    EisensteinIdeal character_ideal() const;

  private:
    long long modulus_;
    std::vector<Local> locals_;
    int mod9_;
};

struct IntegralBasis {
    std::array<Int, 4> defining_cubic;  // monic, splitting field F
    Int basis_disc;                     // certified equal to f^2
};

struct PrimeIdeal {
    long long p;
    int e;           // ramification index
    int f;           // residue degree
    int index;       // position among the primes above p (split: 0..2)
    long long root;  // root of the defining cubic mod p when meaningful, else -1
    IdealLat lat;

    Int norm() const { return int_pow(Int(p), static_cast<unsigned>(f)); }
};

class CyclicCubicField {
  public:
    CyclicCubicField(long long conductor, CubicCharacter chi);

    long long conductor() const { return f_; }
    Int discriminant() const { return Int(f_) * f_; }
    bool ramified_at_3() const { return f_ % 9 == 0; }
    const CubicCharacter& character() const { return chi_; }
    const std::vector<long long>& ramified_primes() const { return ram_; }

    SplittingType splitting_type(const Int& p) const;
    SplittingType splitting_type(long long p) const { return splitting_type(Int(p)); }

    // Gaussian-period defining polynomial (cheap; no maximality work).
    const std::array<Int, 4>& defining_cubic() const;

    // Maximal order with certified disc = f^2 (built lazily, cached).
    const CubicOrder& order() const;

    IntegralBasis integral_basis() const;

    std::vector<PrimeIdeal> prime_ideals_above(long long p) const;

    // all fields with this conductor (one per character orbit)
    static std::vector<CyclicCubicField> fields_for_conductor(long long f);

  private:
    long long f_;
    CubicCharacter chi_;
    std::vector<long long> ram_;

    struct Lazy {
        std::mutex mu;
        std::array<Int, 4> cubic{};
        bool have_cubic = false;
        std::shared_ptr<const CubicOrder> order;
        std::vector<int8_t> chi_table;
    };
    std::shared_ptr<Lazy> lazy_;
};

struct EnumerateOptions {
    bool allow_ramified_at_3 = false;
    long long divisor = 1;  // keep only fields with divisor | disc
};

// Complete list of cyclic cubic F with disc <= x_max, ordered by (conductor,
// character orbit).  Throws on an inadmissible divisor.
std::vector<CyclicCubicField> enumerate_fields(double x_max, const EnumerateOptions& opt = {});

// admissible conductors f with f^2 <= x_max (helper; ordered)
std::vector<long long> enumerate_conductors(double x_max, bool allow_ramified_at_3,
                                            long long divisor = 1);

bool divisor_is_admissible(long long d);

// CSV export: conductor, discriminant, defining_cubic_coeffs, num_fields_at_conductor
void write_fields_csv(std::ostream& os, const std::vector<CyclicCubicField>& fields);

}  // namespace qc
