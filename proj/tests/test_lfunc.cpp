#include "doctest.h"

#include <cmath>
#include <sstream>

#include "qc/lfunc.hpp"

using namespace qc;

TEST_SUITE_BEGIN("lfunc");

// Frozen cross-oracle values (independent discrete-log + Gauss-formula
// computation, double-checked against a truncated sum at T = 1e7):
static const double kZeta7 = 0.300259818355755;
static const double kZeta9 = 0.377461089176085;
static const double kZeta13 = 0.420015343875195;

TEST_CASE("zeta residues for small conductors match the frozen oracle") {
    auto F7 = CyclicCubicField::fields_for_conductor(7).front();
    auto F9 = CyclicCubicField::fields_for_conductor(9).front();
    auto F13 = CyclicCubicField::fields_for_conductor(13).front();
    CHECK(std::fabs(static_cast<double>(zeta_residue(F7).value) - kZeta7) < 1e-9);
    CHECK(std::fabs(static_cast<double>(zeta_residue(F9).value) - kZeta9) < 1e-9);
    CHECK(std::fabs(static_cast<double>(zeta_residue(F13).value) - kZeta13) < 1e-9);
}

TEST_CASE("truncated sum: larger T stays within the smaller T's bound") {
    auto F = CyclicCubicField::fields_for_conductor(7).front();
    auto a = l_value_truncated(F.character(), 1000000);
    auto b = l_value_truncated(F.character(), 10000000);
    CHECK(std::abs(a.value - b.value) <= a.error_bound);
}

TEST_CASE("conjugate character gives the conjugate L-value") {
    auto F = CyclicCubicField::fields_for_conductor(13).front();
    auto a = l_value_truncated(F.character(), 100000);
    auto b = l_value_truncated(F.character().conj(), 100000);
    CHECK(std::abs(a.value - std::conj(b.value)) < 1e-17);
    auto ga = l_value_gauss(F.character());
    auto gb = l_value_gauss(F.character().conj());
    CHECK(std::abs(ga.value - std::conj(gb.value)) < 1e-15);
}

TEST_CASE("dual-method agreement within the stated bound, f <= 200, T = 1e6") {
    // full f <= 1000 sweep runs in the acceptance suite; a slice here
    for (const auto& F : enumerate_fields(200.0 * 200.0, {true, 1})) {
        auto g = l_value_gauss(F.character());
        auto t = l_value_truncated(F.character(), 1000000);
        CHECK(std::abs(g.value - t.value) <= t.error_bound);
    }
}

TEST_CASE("zeta residue positivity and cross-check plumbing") {
    for (const auto& F : enumerate_fields(1e4, {true, 1})) {
        auto z = zeta_residue(F);
        CHECK(z.value > 0);
        CHECK(z.method_residual >= 0);
    }
}

TEST_CASE("Brauer-Siegel-flavoured sanity for 200 <= f <= 1000") {
    for (const auto& F : enumerate_fields(1e6, {true, 1})) {
        if (F.conductor() < 200) continue;
        auto z = zeta_residue(F, {false, 0});
        double delta_sqrt = static_cast<double>(F.conductor());
        double hr = static_cast<double>(z.value) * delta_sqrt / 4;  // h R by CNF
        double ratio = std::log(hr) / std::log(delta_sqrt);
        CHECK(ratio > 0.5);
        CHECK(ratio < 1.5);
    }
}

TEST_CASE("CSV export shape") {
    auto fs = enumerate_fields(400.0);
    std::ostringstream os;
    write_zeta_csv(os, fs);
    std::string s = os.str();
    CHECK(s.find("conductor,zeta_residue,method_residual") == 0);
    size_t lines = std::count(s.begin(), s.end(), '\n');
    CHECK(lines == fs.size() + 1);
}

TEST_SUITE_END();
