#pragma once

// Class groups, units and regulators for cyclic cubic fields, certified by
// the analytic class number formula against the L-function module.

#include <iosfwd>
#include <map>
#include <optional>

#include "qc/cubicfield.hpp"
#include "qc/lfunc.hpp"
#include "qc/qmult.hpp"

namespace qc {

struct ClassGroupData {
    std::vector<Int> elementary_divisors;  // entries > 1, divisibility chain
    Int h;
    std::array<Elem, 2> units;  // fundamental system (up to torsion), coords
    hpreal regulator;
    hpreal certificate_residual;  // |4 h R / sqrt(disc) - zeta*|
};

struct ClassGroupOptions {
    int max_rounds = 9;
    hpreal certificate_tol = 1e-6L;
    uint64_t seed = 1;  // smoothing search sequence offset
};

class ClassGroup {
  public:
    static ClassGroup compute(const CyclicCubicField& F, const ClassGroupOptions& opt = {});

    const CyclicCubicField& field() const { return *F_; }
    const ClassGroupData& data() const { return data_; }
    const std::vector<PrimeIdeal>& factor_base() const { return fb_; }

    // class vector in elementary-divisor coordinates (one entry per divisor)
    std::vector<Int> class_of_prime(const PrimeIdeal& P) const;
    std::vector<Int> class_of(const FactoredIdeal& a) const;
    std::vector<Int> class_add(const std::vector<Int>& x, const std::vector<Int>& y) const;

    bool is_trivial_class(const std::vector<Int>& c) const;
    bool in_two_cl(const std::vector<Int>& c) const;
    bool in_two_cl(const FactoredIdeal& a) const { return in_two_cl(class_of(a)); }
    Int two_torsion_size() const;

    // (b, alpha) with a b^2 = (alpha), N(alpha) a positive perfect square,
    // b coprime to 2.  Requires [a] in 2 Cl_F.
    struct SquareNormGen {
        FactoredIdeal b;
        IdealLat b_lat;
        Elem alpha;
    };
    SquareNormGen square_norm_generator(const FactoredIdeal& a) const;

    // lattice realization of a factored ideal
    IdealLat lattice_of(const FactoredIdeal& a) const;
    // prime ideal lookup for handles produced by this class group's field
    const PrimeIdeal& prime_for(const PrimeHandle& h) const;

    // dlog of the three primes above a split rational prime, cached
    std::array<std::vector<Int>, 3> dlogs_above_split(long long p) const;

  private:
    ClassGroup() = default;

    std::vector<Int> reduce_class(std::vector<Int> v) const;
    std::vector<Int> dlog_vector(const IdealLat& P, const Int& norm) const;

    const CyclicCubicField* F_ = nullptr;
    ClassGroupData data_;
    std::vector<PrimeIdeal> fb_;
    std::vector<std::vector<Int>> fb_dlog_;  // per FB prime, divisor coords
    // SNF transform: class of e_i = row i of V mod divisors
    std::vector<std::vector<Int>> V_;
    std::vector<Int> diag_;  // full diagonal (including 1s)
    struct Caches {
        std::mutex mu;
        std::map<long long, std::array<std::vector<Int>, 3>> split_dlog;
        std::map<std::pair<long long, int>, PrimeIdeal> prime;
    };
    std::shared_ptr<Caches> caches_ = std::make_shared<Caches>();
};

// CSV: conductor, h, elementary_divisors, two_torsion, regulator, certificate_residual
void write_classgroup_csv(std::ostream& os, const std::vector<CyclicCubicField>& fields,
                          const ClassGroupOptions& opt = {});

}  // namespace qc
