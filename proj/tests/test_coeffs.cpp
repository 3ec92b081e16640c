#include "doctest.h"

#include <cmath>
#include <sstream>

#include "watlab/coeffs.hpp"
#include "watlab/errors.hpp"

using namespace watlab;

namespace {

// Coefficients of phi^n for phi(z) = (z + 1/2)/(1 + z/2), from exact
// rational power-series multiplication: (n, n - k) -> value.
struct Exact {
    std::int64_t n, k;
    double value;
};
const Exact kBlaschkeHalf[] = {
    {1, 0, 0.75},
    {1, 1, 0.5},
    {1, -1, -0.375},
    {3, 1, 0.5625},
    {10, 0, -0.22806358337402344},
    {10, 2, 0.22853851318359375},
    {10, -2, 0.025484561920166016},
    {20, 4, 0.1816718371992465},
    {20, -4, -0.12285677298621067},
};

TrigSymbol torus_symbol() {
    return TrigSymbol::from_spectrum(2, {{LatticePoint{0, 0}, 0.5}, {LatticePoint{1, 1}, 0.5}});
}

}  // namespace

TEST_CASE("constant symbol gives the delta table") {
    for (cplx c : {cplx(1, 0), cplx(0, 1), std::polar(1.0, 0.3)}) {
        auto t = compute_b_table(TrigSymbol::constant(1, c), {256}, 1e-9, {1}, {-20, 20, 4});
        CHECK_FALSE(t.degenerate);
        CHECK(t.measure_e == 1.0);
        for (std::int64_t n = -20; n <= 20; ++n)
            for (std::int64_t k = -4; k <= 4; ++k) {
                const cplx want = n == k ? std::pow(n >= 0 ? c : std::conj(c), static_cast<double>(std::llabs(n))) : 0.0;
                REQUIRE(std::abs(t.at(n, k) - want) <= 1e-14);
            }
    }
    auto i_table = compute_b_table(TrigSymbol::constant(1, {0, 1}), {64}, 1e-9, {1}, {1, 8, 3});
    CHECK(std::abs(i_table.at(2, 2) + 1.0) <= 1e-15);
    CHECK(std::abs(i_table.at(3, 3) - cplx(0, -1)) <= 1e-15);
}

TEST_CASE("Blaschke a = 1/2 against exact series coefficients") {
    auto t = compute_b_table(TrigSymbol::blaschke({0.5}), {1024}, 1e-9, {1}, {1, 20, 4});
    for (const auto& e : kBlaschkeHalf) CHECK(std::abs(t.at(e.n, e.k) - e.value) <= 1e-13);
    CHECK(t.measure_e == 1.0);
    CHECK(t.resolved);
}

TEST_CASE("degenerate unit-modulus set gives exact zeros") {
    auto t = compute_b_table(torus_symbol(), {64, 64}, 1e-9, {1, 0}, {1, 16, 3});
    CHECK(t.degenerate);
    CHECK(t.measure_e == 0.0);
    for (const auto& v : t.values) REQUIRE(v == cplx(0, 0));

    auto c = compute_b_table(TrigSymbol::constant(1, 0.9), {64}, 1e-9, {1}, {1, 8, 1});
    CHECK(c.degenerate);
    CHECK(c.max_abs() == 0.0);
}

TEST_CASE("resolution is enforced") {
    auto f = TrigSymbol::blaschke({0.5});
    const Resolution need = required_resolution(f, {1}, 100, 4);
    CHECK(need[0] >= 2 * 104 + 2);
    CHECK(is_power_of_two(need[0]));
    CHECK_NOTHROW(compute_b_table(f, need, 1e-9, {1}, {1, 100, 4}));
    CHECK_THROWS_AS(compute_b_table(f, {need[0] / 2}, 1e-9, {1}, {1, 100, 4}), InvalidInput);
    TableOptions loose;
    loose.enforce_resolution = false;
    auto t = compute_b_table(f, {64}, 1e-9, {1}, {1, 100, 4}, loose);
    CHECK_FALSE(t.resolved);

    // the spectral formula alone for a monomial symbol
    auto m = TrigSymbol::from_spectrum(1, {{LatticePoint{1}, 1.0}});
    CHECK(required_resolution(m, {1}, 10, 2)[0] == 32);
}

TEST_CASE("negative rows follow the conjugate-power convention") {
    auto f = TrigSymbol::blaschke({0.5, {0.2, 0.1}});
    auto t = compute_b_table(f, {4096}, 1e-9, {1}, {-40, 40, 3});
    for (std::int64_t n = 1; n <= 40; ++n)
        for (std::int64_t k = -3; k <= 3; ++k) REQUIRE(t.at(-n, -k) == std::conj(t.at(n, k)));
    // row 0 is the character integral itself
    CHECK(std::abs(t.at(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(t.at(0, 1)) <= 1e-15);
}

TEST_CASE("entry bound |b| <= measure(E)") {
    for (auto f : {TrigSymbol::blaschke({0.5}), TrigSymbol::blaschke({0.9}), TrigSymbol::blaschke({0.5, 0.3})}) {
        auto t = compute_b_table(f, required_resolution(f, {1}, 300, 4), 1e-9, {1}, {1, 300, 4});
        CHECK(t.max_abs() <= t.measure_e + 1e-12);
    }
}

TEST_CASE("oracle equivalence for n <= 64, |k| <= 4") {
    for (auto f : {TrigSymbol::blaschke({0.5}), TrigSymbol::blaschke({0.5, 0.3}), TrigSymbol::constant(1, {0.6, 0.8})}) {
        const Resolution g = required_resolution(f, {1}, 64, 4);
        auto t = compute_b_table(f, g, 1e-9, {1}, {1, 64, 4});
        Resolution g2{g[0] * 2};
        for (std::int64_t n = 1; n <= 64; n += (n < 8 ? 1 : 7))
            for (std::int64_t k = -4; k <= 4; ++k) {
                const cplx b = brute_force_b(f, {1}, n, k, g);
                REQUIRE(std::abs(t.at(n, k) - b) <= 1e-9);
                REQUIRE(std::abs(brute_force_b(f, {1}, n, k, g2) - b) <= 1e-10);
            }
    }
    CHECK(brute_force_b(TrigSymbol::constant(1, 1.0), {1}, 5, 5, {64}) == cplx(1.0, 0.0));
}

TEST_CASE("two-dimensional unimodular symbol against the oracle") {
    auto f = TrigSymbol::from_spectrum(2, {{LatticePoint{1, -1}, std::polar(1.0, 0.7)}});
    auto t = compute_b_table(f, {64, 64}, 1e-9, {1, -1}, {1, 12, 2});
    for (std::int64_t n = 1; n <= 12; ++n)
        for (std::int64_t k = -2; k <= 2; ++k)
            REQUIRE(std::abs(t.at(n, k) - brute_force_b(f, {1, -1}, n, k, {64, 64})) <= 1e-12);
    CHECK(std::abs(t.at(3, 0) - std::polar(1.0, 2.1)) <= 1e-13);
}

TEST_CASE("composition matrix rows") {
    SUBCASE("phi(z) = z") {
        auto z = TrigSymbol::from_spectrum(1, {{LatticePoint{1}, 1.0}});
        auto c = compute_c_table(z, 0, 10, 0, 12, 32);
        for (std::int64_t n = 0; n <= 10; ++n)
            for (std::int64_t b = 0; b <= 12; ++b) REQUIRE(std::abs(c.at(n, b) - (n == b ? 1.0 : 0.0)) <= 1e-15);
    }
    SUBCASE("Blaschke a = 1/2") {
        auto phi = TrigSymbol::blaschke({0.5});
        auto c = compute_c_table(phi, 0, 20, 0, 120, 1024);
        CHECK(std::abs(c.at(1, 0) - 0.5) <= 1e-13);
        CHECK(std::abs(c.at(1, 1) - 0.75) <= 1e-13);
        CHECK(std::abs(c.at(1, 2) + 0.375) <= 1e-13);
        for (std::int64_t n = 1; n <= 20; ++n) CHECK(std::fabs(c.row_energy(n) - 1.0) <= 1e-9);
        // agreement with the b table on shared indices (E is the circle)
        auto t = compute_b_table(phi, {1024}, 1e-9, {1}, {1, 20, 4});
        for (std::int64_t n = 1; n <= 20; ++n)
            for (std::int64_t k = -4; k <= 4; ++k) {
                const cplx want = n - k >= 0 ? c.at(n, n - k) : 0.0;
                REQUIRE(std::abs(t.at(n, k) - want) <= 1e-9);
            }
    }
    SUBCASE("non-analytic symbols are rejected") {
        auto bad = TrigSymbol::from_spectrum(1, {{LatticePoint{-1}, 0.5}, {LatticePoint{0}, 0.5}});
        CHECK_THROWS_AS(compute_c_table(bad, 0, 4, 0, 4, 64), InvalidInput);
    }
}

TEST_CASE("tables are deterministic") {
    auto f = TrigSymbol::blaschke({0.5, 0.3});
    auto a = compute_b_table(f, {8192}, 1e-9, {1}, {1, 500, 4});
    auto b = compute_b_table(f, {8192}, 1e-9, {1}, {1, 500, 4});
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        REQUIRE(a.values[i].real() == b.values[i].real());
        REQUIRE(a.values[i].imag() == b.values[i].imag());
    }
}

TEST_CASE("CSV round trip is exact") {
    auto t = compute_b_table(TrigSymbol::blaschke({0.5, {0.1, 0.2}}), {2048}, 1e-9, {1}, {-30, 30, 3});
    t.symbol_id = "abc123";
    std::stringstream ss;
    write_table_csv(t, ss);
    const std::string first = ss.str();
    auto back = read_table_csv(ss);
    CHECK(back.nu == t.nu);
    CHECK(back.n_min == -30);
    CHECK(back.n_max == 30);
    CHECK(back.k_max == 3);
    CHECK(back.resolution == t.resolution);
    CHECK(back.tol_e == t.tol_e);
    CHECK(back.measure_e == t.measure_e);
    CHECK(back.symbol_id == "abc123");
    REQUIRE(back.values.size() == t.values.size());
    for (std::size_t i = 0; i < t.values.size(); ++i) REQUIRE(back.values[i] == t.values[i]);
    std::stringstream again;
    write_table_csv(back, again);
    CHECK(again.str() == first);

    std::stringstream broken("# format=watlab-diagonal-table/1\nn,k,re,im,abs2\n1,0,x,0,0\n");
    CHECK_THROWS_AS(read_table_csv(broken), InvalidInput);
}

TEST_CASE("format_double round trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        CHECK(std::stod(format_double(x)) == x);
    }
}

TEST_CASE("table access outside the range throws") {
    auto t = compute_b_table(TrigSymbol::blaschke({0.5}), {256}, 1e-9, {1}, {1, 4, 1});
    CHECK_THROWS_AS(t.at(5, 0), InvalidInput);
    CHECK_THROWS_AS(t.at(1, 2), InvalidInput);
}
