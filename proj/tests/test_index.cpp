#include <doctest.h>

#include <cmath>

#include "tindex/errors.hpp"
#include "tindex/index.hpp"
#include "tindex/rng.hpp"

using namespace tindex;

namespace {

LaurentSymbol random_symbol(std::mt19937_64& rng, int halfwidth) {
    std::map<int, cplx> m;
    for (int k = -halfwidth; k <= halfwidth; ++k)
        m[k] = cplx(gaussian(rng), gaussian(rng));
    return LaurentSymbol::from_map(m);
}

// independent root oracle for quadratics a z^2 + b z + c
std::pair<cplx, cplx> quadratic_roots(cplx a, cplx b, cplx c) {
    cplx disc = std::sqrt(b * b - 4.0 * a * c);
    cplx r1 = (-b + disc) / (2.0 * a);
    cplx r2 = (-b - disc) / (2.0 * a);
    return {r1, r2};
}

} // namespace

TEST_CASE("winding of monomials and off-circle symbols") {
    CHECK(winding_number(LaurentSymbol::monomial(3), 64) == 3);
    CHECK(winding_number(LaurentSymbol::from_map({{1, 1.0}, {0, -2.0}}), 64) == 0);

    // from A = a^2 + 0.5 a + 0.06: winding -2, index +2
    auto f = from_shift_polynomial(ShiftPolynomial::from_map({{2, 1.0}, {1, 0.5}, {0, 0.06}}));
    CHECK(winding_number(f, 256) == -2);
}

TEST_CASE("winding errors") {
    auto vanishing = LaurentSymbol::from_map({{1, 1.0}, {0, 1.0}}); // zero at pi
    CHECK_THROWS_AS(winding_number(vanishing, 4096), NotFredholmError);
    CHECK_THROWS_AS(winding_number(LaurentSymbol(), 64), NotFredholmError);
    CHECK_THROWS_AS(winding_number(LaurentSymbol::monomial(1), 8), std::invalid_argument);

    // a sampled loop too coarse for its winding: e^{i 40 theta} on 64 points
    auto fast = SampledSymbol::from_function(64, 0, [](double th) {
        return std::polar(1.0, 40.0 * th);
    });
    CHECK_THROWS_AS(winding_number(fast), GridTooCoarseError);
}

TEST_CASE("adaptive refinement accepts windings the start grid misses") {
    // e^{i 12 theta} needs steps below pi/2; start grid 16 is too coarse
    CHECK(winding_number(LaurentSymbol::monomial(12), 16) == 12);
}

TEST_CASE("toeplitz index basics") {
    auto r = toeplitz_index(LaurentSymbol::monomial(1)); // T_z = a^dag
    CHECK(r.is_fredholm);
    CHECK(r.index == -1);
    CHECK(r.method == IndexMethod::winding);

    auto l = toeplitz_index(LaurentSymbol::monomial(-1)); // a
    CHECK(l.is_fredholm);
    CHECK(l.index == 1);

    auto nf = toeplitz_index(LaurentSymbol::from_map({{1, 1.0}, {0, 1.0}}));
    CHECK_FALSE(nf.is_fredholm);
    CHECK(nf.witness_theta == doctest::Approx(M_PI).epsilon(1e-2));
}

TEST_CASE("laurent roots against closed forms") {
    auto quad = LaurentSymbol::from_map({{2, 1.0}, {1, -5.0}, {0, 6.0}});
    auto rr = laurent_roots(quad);
    REQUIRE(rr.roots.size() == 2);
    CHECK(std::abs(rr.roots[0] - cplx(2.0)) < 1e-9);
    CHECK(std::abs(rr.roots[1] - cplx(3.0)) < 1e-9);
    CHECK(rr.inside_count == 0);
    CHECK(rr.outside_count == 2);
    CHECK(rr.pole_order == 0);

    auto inside = LaurentSymbol::from_map({{2, 1.0}, {1, 0.5}, {0, 0.06}});
    auto [r1, r2] = quadratic_roots(1.0, 0.5, 0.06);
    auto rri = laurent_roots(inside);
    REQUIRE(rri.roots.size() == 2);
    CHECK(rri.inside_count == 2);
    CHECK(std::abs(rri.roots[0] - r1) < 1e-9); // -0.2 then -0.3 after sorting by modulus
    CHECK(std::abs(rri.roots[1] - r2) < 1e-9);

    // 2z + 1/z: polynomial 2z^2 + 1, roots +- i/sqrt(2), pole order 1
    auto mixed = LaurentSymbol::from_map({{1, 2.0}, {-1, 1.0}});
    auto rrm = laurent_roots(mixed);
    CHECK(rrm.pole_order == 1);
    CHECK(rrm.inside_count == 2);
    REQUIRE(rrm.roots.size() == 2);
    for (const auto& z : rrm.roots)
        CHECK(std::abs(z * z + cplx(0.5)) < 1e-12);

    CHECK_THROWS_AS(laurent_roots(LaurentSymbol()), ZeroSymbolError);
}

TEST_CASE("index from roots reproduces the degree-one classification") {
    // A = 2a + 1: f = 2/z + 1, root of z f at -2 (outside), pole 1 -> index 1
    auto gain = from_shift_polynomial(ShiftPolynomial::from_map({{1, 2.0}, {0, 1.0}}));
    auto r = index_from_roots(gain);
    CHECK(r.is_fredholm);
    CHECK(r.index == 1);
    CHECK(r.method == IndexMethod::roots);

    // A = a + 2: root of z f at -0.5 (inside), pole 1 -> index 0
    auto loss = from_shift_polynomial(ShiftPolynomial::from_map({{1, 1.0}, {0, 2.0}}));
    CHECK(index_from_roots(loss).index == 0);

    // A = a^2 + 3a + 2: roots -1, -2; the root on the circle kills it
    auto border = from_shift_polynomial(ShiftPolynomial::from_map({{2, 1.0}, {1, 3.0}, {0, 2.0}}));
    auto rb = index_from_roots(border);
    CHECK_FALSE(rb.is_fredholm);
    CHECK(rb.min_modulus < 1e-9);
}

TEST_CASE("monomial normalization") {
    for (int n = -8; n <= 8; ++n) {
        auto viaroots = index_from_roots(LaurentSymbol::monomial(n));
        auto viawind = toeplitz_index(LaurentSymbol::monomial(n));
        REQUIRE(viaroots.is_fredholm);
        REQUIRE(viawind.is_fredholm);
        CHECK(viaroots.index == -n);
        CHECK(viawind.index == -n);
    }
}

TEST_CASE("oracle agreement on random symbols" * doctest::description("property")) {
    std::mt19937_64 rng = item_rng(77, 0);
    int both_fredholm = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto f = random_symbol(rng, 4);
        IndexResult roots = index_from_roots(f);
        IndexResult wind = toeplitz_index(f, 256);
        if (roots.is_fredholm && wind.is_fredholm) {
            ++both_fredholm;
            CHECK(roots.index == wind.index);
        }
        if (!roots.is_fredholm) {
            // an on-circle root forces a grid-consistent modulus dip
            CHECK(roots.min_modulus < 1e-6);
        }
    }
    // random Gaussian symbols are almost surely Fredholm
    CHECK(both_fredholm > 950);
}

TEST_CASE("winding additivity under products" * doctest::description("property")) {
    std::mt19937_64 rng = item_rng(77, 1);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_symbol(rng, 3);
        auto g = random_symbol(rng, 3);
        try {
            int wf = winding_number(f, 256);
            int wg = winding_number(g, 256);
            int wfg = winding_number(f * g, 256);
            CHECK(wfg == wf + wg);
            ++checked;
        } catch (const NotFredholmError&) {
            continue; // boundary draws are legitimate, skip
        }
    }
    CHECK(checked > 150);
}

TEST_CASE("coefficient reversal negates the winding" * doctest::description("property")) {
    std::mt19937_64 rng = item_rng(77, 2);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_symbol(rng, 3);
        try {
            CHECK(winding_number(f.reversed(), 256) == -winding_number(f, 256));
        } catch (const NotFredholmError&) {
            continue;
        }
    }
}

TEST_CASE("index is scale invariant" * doctest::description("property")) {
    std::mt19937_64 rng = item_rng(77, 3);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_symbol(rng, 3);
        cplx lambda(gaussian(rng), gaussian(rng));
        if (std::abs(lambda) < 1e-3) continue;
        auto fs = lambda * f;
        auto a = toeplitz_index(f, 256);
        auto b = toeplitz_index(fs, 256);
        REQUIRE(a.is_fredholm == b.is_fredholm);
        if (a.is_fredholm) CHECK(a.index == b.index);
    }
}

TEST_CASE("expected jump codimension") {
    CHECK(expected_jump_codimension(1, Symmetry::complex_coeffs) == 1);
    CHECK(expected_jump_codimension(4, Symmetry::complex_coeffs) == 4);
    CHECK(expected_jump_codimension(1, Symmetry::real_coeffs) == 1);
    CHECK(expected_jump_codimension(2, Symmetry::real_coeffs) == 1);
    CHECK(expected_jump_codimension(3, Symmetry::real_coeffs) == 2);
    CHECK(expected_jump_codimension(7, Symmetry::real_coeffs) == 4);
    CHECK_THROWS_AS(expected_jump_codimension(0, Symmetry::real_coeffs), std::invalid_argument);
}

TEST_CASE("root report counts add up" * doctest::description("property")) {
    std::mt19937_64 rng = item_rng(77, 4);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_symbol(rng, 4);
        if (f.is_zero()) continue;
        auto rr = laurent_roots(f);
        int total = rr.inside_count + rr.on_circle_count + rr.outside_count;
        CHECK(total == static_cast<int>(rr.roots.size()));
        CHECK(total == f.highest() + rr.pole_order);
    }
}
