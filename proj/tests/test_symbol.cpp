#include "doctest.h"

#include <cmath>
#include <random>

#include "watlab/errors.hpp"
#include "watlab/summation.hpp"
#include "watlab/symbol.hpp"

using namespace watlab;

namespace {

TrigSymbol monomial(std::int64_t m, cplx c = 1.0) { return TrigSymbol::from_spectrum(1, {{LatticePoint{m}, c}}); }

TrigSymbol torus_symbol() {
    return TrigSymbol::from_spectrum(2, {{LatticePoint{0, 0}, 0.5}, {LatticePoint{1, 1}, 0.5}});
}

const HalfSpace kNegativeLine({0}, {-1});

}  // namespace

TEST_CASE("grid evaluation") {
    SUBCASE("constant") {
        auto s = evaluate_on_grid(TrigSymbol::constant(1, 1.0), {8});
        REQUIRE(s.size() == 8);
        for (const auto& z : s.samples) CHECK(z == cplx(1.0, 0.0));
    }
    SUBCASE("e^{2 pi i x} on four nodes is exact") {
        auto s = evaluate_on_grid(monomial(1), {4});
        CHECK(s.samples[0] == cplx(1, 0));
        CHECK(s.samples[1] == cplx(0, 1));
        CHECK(s.samples[2] == cplx(-1, 0));
        CHECK(s.samples[3] == cplx(0, -1));
    }
    SUBCASE("Blaschke fixes z = 1") {
        auto s = evaluate_on_grid(TrigSymbol::blaschke({0.5}), {16});
        CHECK(std::abs(s.samples[0] - cplx(1, 0)) <= 1e-15);
    }
    SUBCASE("aliasing and bad grids are rejected") {
        CHECK_THROWS_AS(evaluate_on_grid(monomial(3), {4}), InvalidInput);
        CHECK_THROWS_AS(evaluate_on_grid(monomial(1), {6}), InvalidInput);
        CHECK_THROWS_AS(evaluate_on_grid(monomial(1), {8, 8}), InvalidInput);
        CHECK_NOTHROW(evaluate_on_grid(monomial(3), {8}));
    }
}

TEST_CASE("Fourier coefficients") {
    SUBCASE("monomial") {
        auto s = evaluate_on_grid(monomial(1), {16});
        CHECK(std::abs(fourier_coefficient(s, {1}) - cplx(1, 0)) <= 1e-15);
        CHECK(std::abs(fourier_coefficient(s, {0})) <= 1e-15);
    }
    SUBCASE("torus symbol") {
        auto s = evaluate_on_grid(torus_symbol(), {8, 8});
        for (const auto& xi : window_points(2, 3)) {
            cplx want = (xi == LatticePoint{0, 0} || xi == LatticePoint{1, 1}) ? 0.5 : 0.0;
            CHECK(std::abs(fourier_coefficient(s, xi) - want) <= 1e-15);
        }
    }
    SUBCASE("Blaschke a = 1/2 Taylor coefficients") {
        // a + (1 - a^2) z - a (1 - a^2) z^2 + ...
        auto s = evaluate_on_grid(TrigSymbol::blaschke({0.5}), {1024});
        CHECK(std::abs(fourier_coefficient(s, {0}) - 0.5) <= 1e-13);
        CHECK(std::abs(fourier_coefficient(s, {1}) - 0.75) <= 1e-13);
        CHECK(std::abs(fourier_coefficient(s, {2}) + 0.375) <= 1e-13);
        CHECK(std::abs(fourier_coefficient(s, {-1})) <= 1e-13);
        CHECK(std::abs(TrigSymbol::blaschke({0.5}).mean_value() - 0.5) <= 1e-16);
    }
    SUBCASE("Blaschke product (0.5, 0.3)") {
        auto s = evaluate_on_grid(TrigSymbol::blaschke({0.5, 0.3}), {1024});
        CHECK(std::abs(fourier_coefficient(s, {0}) - 0.15) <= 1e-13);
        CHECK(std::abs(fourier_coefficient(s, {1}) - 0.68) <= 1e-13);
        CHECK(std::abs(fourier_coefficient(s, {2}) - 0.4335) <= 1e-13);
        CHECK(std::abs(fourier_coefficient(s, {3}) + 0.4488) <= 1e-13);
    }
    SUBCASE("beyond Nyquist") {
        auto s = evaluate_on_grid(monomial(1), {8});
        CHECK_THROWS_AS(fourier_coefficient(s, {4}), InvalidInput);
        CHECK_THROWS_AS(fourier_coefficient(s, {-4}), InvalidInput);
    }
}

TEST_CASE("sup norm") {
    CHECK(sup_norm(evaluate_on_grid(TrigSymbol::constant(1, {0, 1}), {8})) == doctest::Approx(1.0).epsilon(1e-15));
    auto half = TrigSymbol::from_spectrum(1, {{LatticePoint{0}, 0.5}, {LatticePoint{1}, 0.5}});
    CHECK(std::fabs(sup_norm(evaluate_on_grid(half, {64})) - 1.0) <= 1e-15);
    CHECK(std::fabs(sup_norm(evaluate_on_grid(TrigSymbol::blaschke({0.5, {0.1, -0.4}}), {4096})) - 1.0) <= 1e-12);
}

TEST_CASE("vanishing on a half-space") {
    CHECK(vanishing_on_halfspace(monomial(1), kNegativeLine, 1e-12));
    CHECK_FALSE(vanishing_on_halfspace(monomial(-1), kNegativeLine, 1e-12));
    CHECK(vanishing_on_halfspace(torus_symbol(), HalfSpace({0, 1}, {-1, -1}), 1e-12));
    CHECK_FALSE(vanishing_on_halfspace(torus_symbol(), HalfSpace(2), 1e-12));
    CHECK(vanishing_on_halfspace(TrigSymbol::blaschke({0.5}), kNegativeLine, 1e-12));
    CHECK_FALSE(vanishing_on_halfspace(TrigSymbol::blaschke({0.5}), HalfSpace(1), 1e-12));
    CHECK(vanishing_on_halfspace(TrigSymbol::constant(1, 0.3), HalfSpace(1), 1e-12));
}

TEST_CASE("unit-modulus set") {
    auto b = evaluate_on_grid(TrigSymbol::blaschke({0.5}), {1024});
    CHECK(unit_modulus_set(b, 1e-9).measure == 1.0);

    auto t = evaluate_on_grid(torus_symbol(), {64, 64});
    auto raw = unit_modulus_set(t, 1e-9);
    CHECK(raw.measure <= 1.0 / 64 + 1e-15);  // only the nodes on x + y in Z
    auto eff = effective_unit_modulus_set(torus_symbol(), t, 1e-9);
    CHECK(eff.measure == 0.0);
    CHECK(eff.count == 0);

    CHECK(unit_modulus_set(evaluate_on_grid(TrigSymbol::constant(1, 0.9), {16}), 1e-9).measure == 0.0);
    CHECK(TrigSymbol::blaschke({0.5}).unit_modulus_structure() == UnitModulusStructure::Full);
    CHECK(torus_symbol().unit_modulus_structure() == UnitModulusStructure::Null);
    CHECK(TrigSymbol::constant(1, 0.9).unit_modulus_structure() == UnitModulusStructure::Empty);
    CHECK(monomial(3, {0, 1}).unit_modulus_structure() == UnitModulusStructure::Full);
}

TEST_CASE("unit-modulus measure is monotone in the tolerance") {
    auto f = TrigSymbol::from_spectrum(1, {{LatticePoint{0}, 0.6}, {LatticePoint{2}, 0.4}});
    auto s = evaluate_on_grid(f, {4096});
    double prev = 0.0;
    for (double tol : {1e-12, 1e-9, 1e-6, 1e-3, 1e-2, 0.1, 0.5}) {
        const double m = unit_modulus_set(s, tol).measure;
        CHECK(m >= prev);
        CHECK(m <= 1.0);
        prev = m;
    }
}

TEST_CASE("random trig polynomials: coefficient round trip and Parseval") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> idx(-5, 5);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 1 + trial % 3;
        std::vector<SpectralTerm> terms;
        for (int t = 0; t < 6; ++t) {
            std::vector<std::int64_t> c(d);
            for (auto& v : c) v = idx(rng);
            terms.push_back({LatticePoint(c), {u(rng), u(rng)}});
        }
        const auto f = TrigSymbol::from_spectrum(d, terms);
        const auto s = evaluate_on_grid(f, Resolution(d, 16));
        CompensatedSum energy, spectrum;
        for (const auto& z : s.samples) energy.add(std::norm(z));
        for (const auto& t : f.spectrum()) spectrum.add(std::norm(t.coefficient));
        CHECK(std::fabs(energy.value() / static_cast<double>(s.size()) - spectrum.value()) <= 1e-10);
        for (const auto& xi : window_points(d, 7)) {
            cplx want = 0.0;
            for (const auto& t : f.spectrum())
                if (t.index == xi) want = t.coefficient;
            REQUIRE(std::abs(fourier_coefficient(s, xi) - want) <= 1e-12);
        }
    }
}

TEST_CASE("invalid symbols") {
    CHECK_THROWS_AS(TrigSymbol::blaschke({1.0}), InvalidInput);
    CHECK_THROWS_AS(TrigSymbol::blaschke({}), InvalidInput);
    CHECK_THROWS_AS(TrigSymbol::from_spectrum(2, {{LatticePoint{1}, 1.0}}), InvalidInput);
    CHECK_THROWS_AS(TrigSymbol::constant(0, 1.0), InvalidInput);
}

TEST_CASE("exact unit roots") {
    UnitRoots r(16);
    CHECK(r(0) == cplx(1, 0));
    CHECK(r(4) == cplx(0, 1));
    CHECK(r(8) == cplx(-1, 0));
    CHECK(r(-4) == cplx(0, -1));
    CHECK(r(20) == r(4));
}
