#include "doctest.h"

#include <set>

#include "qc/cubicfield.hpp"

using namespace qc;

TEST_SUITE_BEGIN("cubicfield");

TEST_CASE("enumerate: x_max 2500, unramified at 3") {
    auto fs = enumerate_fields(2500.0);
    std::vector<long long> conds;
    for (const auto& F : fs) conds.push_back(F.conductor());
    CHECK(conds == std::vector<long long>{7, 13, 19, 31, 37, 43});
}

TEST_CASE("enumerate: x_max below the smallest disc is empty") {
    CHECK(enumerate_fields(48.0).empty());
}

TEST_CASE("enumerate: x_max 1e4 with 3 allowed gives 16 fields") {
    EnumerateOptions opt;
    opt.allow_ramified_at_3 = true;
    auto fs = enumerate_fields(1e4, opt);
    CHECK(fs.size() == 16);
    std::map<long long, int> per;
    for (const auto& F : fs) per[F.conductor()]++;
    CHECK(per[63] == 2);
    CHECK(per[91] == 2);
    CHECK(per[9] == 1);
    int prime_conductors = 0;
    for (const auto& [f, n] : per)
        if (n == 1) prime_conductors += n;
    CHECK(prime_conductors == 12);
}

TEST_CASE("enumerate: 2^(omega'-1) fields per conductor") {
    for (long long f : {7LL, 91LL, 63LL, 9LL, 7LL * 13 * 19}) {
        auto fs = CyclicCubicField::fields_for_conductor(f);
        int omega_prime = 0;
        long long m = f;
        if (m % 9 == 0) {
            ++omega_prime;
            m /= 9;
        }
        omega_prime += static_cast<int>(factor_u64(m).size());
        CHECK(fs.size() == (1u << (omega_prime - 1)));
        // orbit reps pairwise distinct as character tables
        std::set<std::vector<int8_t>> tabs;
        for (const auto& F : fs) tabs.insert(F.character().table_mod());
        CHECK(tabs.size() == fs.size());
        // no rep equals another's conjugate
        for (const auto& F : fs) {
            auto ct = F.character().conj().table_mod();
            CHECK(tabs.count(ct) == 0);
        }
    }
}

TEST_CASE("divisor filter") {
    EnumerateOptions opt;
    opt.divisor = 7;
    auto fs = enumerate_fields(1e6, opt);
    CHECK(!fs.empty());
    for (const auto& F : fs) CHECK(F.conductor() % 7 == 0);
    opt.divisor = 6;  // inadmissible
    CHECK_THROWS_AS(enumerate_fields(1e6, opt), std::invalid_argument);
}

TEST_CASE("splitting for conductor 7") {
    auto F = CyclicCubicField::fields_for_conductor(7).front();
    CHECK(F.splitting_type(7) == SplittingType::Ramified);
    // cubes mod 7 are {1, 6}
    CHECK(F.splitting_type(13) == SplittingType::Split);
    CHECK(F.splitting_type(2) == SplittingType::Inert);
    CHECK(F.splitting_type(29) == SplittingType::Split);  // 29 = 1 mod 7
    CHECK(F.splitting_type(5) == SplittingType::Inert);
}

TEST_CASE("splitting is periodic mod f") {
    for (long long f : {7LL, 13LL, 91LL, 63LL}) {
        for (const auto& F : CyclicCubicField::fields_for_conductor(f)) {
            std::map<long long, SplittingType> by_residue;
            for (uint32_t p : primes_upto(10000)) {
                if (f % p == 0) continue;
                long long r = p % f;
                auto st = F.splitting_type(static_cast<long long>(p));
                auto it = by_residue.find(r);
                if (it == by_residue.end())
                    by_residue[r] = st;
                else
                    CHECK(it->second == st);
            }
        }
    }
}

TEST_CASE("integral basis: conductor 7 is x^3 + x^2 - 2x - 1, disc 49") {
    auto F = CyclicCubicField::fields_for_conductor(7).front();
    auto ib = F.integral_basis();
    CHECK(ib.defining_cubic == std::array<Int, 4>{-1, -2, 1, 1});
    CHECK(ib.basis_disc == 49);
}

TEST_CASE("integral basis: conductor 9 has disc 81") {
    auto F = CyclicCubicField::fields_for_conductor(9).front();
    auto ib = F.integral_basis();
    CHECK(ib.basis_disc == 81);
    // the Gaussian-period polynomial for f = 9 (same field as x^3 - 3x - 1)
    CHECK(ib.defining_cubic == std::array<Int, 4>{1, -3, 0, 1});
}

TEST_CASE("integral basis: conductor 13 has disc 169; composites certify too") {
    for (long long f : {13LL, 91LL, 63LL, 163LL, 819LL}) {
        for (const auto& F : CyclicCubicField::fields_for_conductor(f)) {
            auto ib = F.integral_basis();
            CHECK(ib.basis_disc == Int(f) * f);
        }
    }
}

TEST_CASE("prime ideals above p: degrees match splitting, norms multiply to p^3") {
    auto F = CyclicCubicField::fields_for_conductor(7).front();
    auto split = F.prime_ideals_above(13);
    REQUIRE(split.size() == 3);
    for (const auto& P : split) {
        CHECK(P.f == 1);
        CHECK(P.norm() == 13);
    }
    auto inert = F.prime_ideals_above(2);
    REQUIRE(inert.size() == 1);
    CHECK(inert[0].f == 3);
    CHECK(inert[0].norm() == 8);
    auto ram = F.prime_ideals_above(7);
    REQUIRE(ram.size() == 1);
    CHECK(ram[0].e == 3);
    CHECK(ram[0].norm() == 7);
}

TEST_CASE("residue degrees x ramification sum to 3 for many fields and primes") {
    for (long long f : {7LL, 13LL, 91LL, 63LL}) {
        auto F = CyclicCubicField::fields_for_conductor(f).front();
        for (uint32_t p : primes_upto(200)) {
            auto Ps = F.prime_ideals_above(p);
            int total = 0;
            for (const auto& P : Ps) total += P.e * P.f;
            CHECK(total == 3);
            // lattice product of all primes with multiplicity e equals pO
            const auto& O = F.order();
            IdealLat acc = O.whole_ring();
            for (const auto& P : Ps) acc = O.mul(acc, O.pow(P.lat, P.e));
            CHECK(acc.norm() == Int(p) * p * p);
        }
    }
}

TEST_CASE("field count growth ratio C is stable (measured, not asserted)") {
    auto c4 = enumerate_fields(1e4).size();
    auto c6 = enumerate_fields(1e6).size();
    auto c8 = enumerate_fields(1e8).size();
    double r6 = c6 / std::sqrt(1e6), r8 = c8 / std::sqrt(1e8);
    CHECK(c4 < c6);
    CHECK(r8 > r6 * 0.95);
    CHECK(std::fabs(r8 - r6) / r8 < 0.05);
}

TEST_SUITE_END();
