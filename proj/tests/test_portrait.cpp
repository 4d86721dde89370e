#include <doctest.h>

#include <cmath>

#include "tindex/errors.hpp"
#include "tindex/portrait.hpp"
#include "tindex/rng.hpp"

using namespace tindex;

namespace {

// independent quadratic-formula oracle for the A = a^2 + c1 a + c0 family:
// index = number of roots of z^2 + c1 z + c0 inside the unit circle
int quadratic_family_index_oracle(double c1, double c0) {
    cplx disc = std::sqrt(cplx(c1 * c1 - 4.0 * c0, 0.0));
    cplx r1 = (-c1 + disc) / 2.0;
    cplx r2 = (-c1 - disc) / 2.0;
    int inside = 0;
    for (cplx r : {r1, r2})
        if (std::abs(r) < 1.0) ++inside;
    return inside;
}

double distance_to_figure_curves(double c1, double c0, double cell) {
    // c0 = -1 - c1, c0 = c1 - 1, and the segment {c0 = 1, |c1| <= 2}
    double d1 = std::abs(c0 + 1.0 + c1) / std::sqrt(2.0);
    double d2 = std::abs(c0 - c1 + 1.0) / std::sqrt(2.0);
    double d3;
    if (std::abs(c1) <= 2.0 + cell)
        d3 = std::abs(c0 - 1.0);
    else
        d3 = std::hypot(std::abs(c1) - 2.0, c0 - 1.0);
    return std::min({d1, d2, d3});
}

} // namespace

TEST_CASE("parameter family construction") {
    auto fam = ParameterFamily::quadratic_real();
    CHECK(fam.directions.size() == 2);
    auto s = fam.at({0.5, 0.06});
    CHECK(s.coeff(-2) == cplx(1.0));
    CHECK(s.coeff(-1) == cplx(0.5));
    CHECK(s.coeff(0) == cplx(0.06));

    // dependent directions are rejected
    CHECK_THROWS_AS(ParameterFamily::make(LaurentSymbol(),
                                          {LaurentSymbol::monomial(1),
                                           cplx(2.0) * LaurentSymbol::monomial(1)},
                                          {"t0", "t1"}, CoefficientField::real_coeffs, "bad"),
                    std::invalid_argument);
}

TEST_CASE("quadratic family pinned points") {
    auto fam = ParameterFamily::quadratic_real();
    // roots +-sqrt(0.5) inside
    CHECK(index_from_roots(fam.at({0.0, -0.5})).index == 2);
    // roots (-3 +- sqrt(5))/2: one in, one out
    CHECK(index_from_roots(fam.at({3.0, 1.0})).index == 1);
    // conjugate pair at +-2i, outside
    CHECK(index_from_roots(fam.at({0.0, 4.0})).index == 0);
}

TEST_CASE("grid scan against the quadratic-formula oracle") {
    auto fam = ParameterFamily::quadratic_real();
    AxisRange ax{-3.0, 3.0, 41};
    auto grid = scan_grid(fam, ax, ax);

    // pinned cells
    auto cell_at = [&](double c1, double c0) {
        int i0 = static_cast<int>(std::lround((c1 - ax.lo) / ax.step()));
        int i1 = static_cast<int>(std::lround((c0 - ax.lo) / ax.step()));
        return grid.cell(i0, i1);
    };
    CHECK(cell_at(0.0, -0.45) == 2); // roots +-sqrt(0.45) inside
    CHECK(cell_at(3.0, 1.05) == 1);  // one root in, one out
    CHECK(cell_at(0.0, 2.85) == 0);  // conjugate pair outside

    int checked = 0;
    std::mt19937_64 rng = item_rng(31, 0);
    for (int probe = 0; probe < 300; ++probe) {
        int i0 = static_cast<int>(rng() % 41);
        int i1 = static_cast<int>(rng() % 41);
        int32_t code = grid.cell(i0, i1);
        if (code == kNotFredholmCell || code == kZeroSymbolCell) continue;
        CHECK(code == quadratic_family_index_oracle(ax.value(i0), ax.value(i1)));
        ++checked;
    }
    CHECK(checked > 250);
}

TEST_CASE("portrait is symmetric under c1 -> -c1") {
    auto fam = ParameterFamily::quadratic_real();
    AxisRange ax{-3.0, 3.0, 61};
    auto grid = scan_grid(fam, ax, ax);
    for (int i0 = 0; i0 < ax.res; ++i0)
        for (int i1 = 0; i1 < ax.res; ++i1)
            CHECK(grid.cell(i0, i1) == grid.cell(ax.res - 1 - i0, i1));
}

TEST_CASE("boundary extraction labels the jumps") {
    auto fam = ParameterFamily::quadratic_real();
    // res 120: no grid line sits exactly on a boundary curve, every
    // crossing shows up as a finite-index jump edge
    AxisRange ax{-3.0, 3.0, 120};
    auto grid = scan_grid(fam, ax, ax);
    auto report = extract_boundaries(grid);
    CHECK(!report.edges.empty());
    CHECK(report.not_fredholm_adjacencies == 0);

    double cell = ax.step();
    int size1 = 0, size2 = 0;
    for (const auto& e : report.edges) {
        double c1 = 0.5 * (ax.value(e.i0) + ax.value(e.i1));
        double c0 = 0.5 * (ax.value(e.j0) + ax.value(e.j1));
        CHECK(distance_to_figure_curves(c1, c0, cell) <= cell);
        if (e.jump == 1) ++size1; // the two slope +-1 lines
        if (e.jump == 2) {
            ++size2;
            // size-2 jumps only across the conjugate-pair segment
            CHECK(std::abs(c0 - 1.0) <= cell);
            CHECK(std::abs(c1) <= 2.0 + cell);
        }
    }
    CHECK(size1 > 0);
    CHECK(size2 > 0);

    // res 121 drops the slope -1/+1 curves exactly onto grid vertices and
    // the segment onto a grid line: the boundary is then carried entirely
    // by NF cells and shows up as sentinel adjacency mass instead
    AxisRange exact{-3.0, 3.0, 121};
    auto aligned = scan_grid(fam, exact, exact);
    auto aligned_report = extract_boundaries(aligned);
    CHECK(aligned_report.edges.empty());
    CHECK(aligned_report.not_fredholm_adjacencies > 0);

    // interior of a constant region contributes nothing
    AxisRange small{-0.4, 0.4, 9};
    auto inner = scan_grid(fam, small, small);
    CHECK(extract_boundaries(inner).edges.empty());
}

TEST_CASE("jump scan: empty and tiny runs") {
    auto empty = random_path_jump_scan(CoefficientField::complex_coeffs, 4, 0, 10, 7);
    CHECK(empty.counts.empty());
    CHECK(empty.total() == 0);

    auto tiny = random_path_jump_scan(CoefficientField::complex_coeffs, 3, 20, 50, 7);
    CHECK(tiny.total() <= 20 * 50);
    for (const auto& [size, count] : tiny.counts) {
        CHECK(size >= 1);
        CHECK(count >= 0);
    }
    CHECK_THROWS_AS(random_path_jump_scan(CoefficientField::real_coeffs, 1, 5, 5, 1),
                    std::invalid_argument);
}

TEST_CASE("jump scan is deterministic per seed") {
    auto a = random_path_jump_scan(CoefficientField::real_coeffs, 2, 40, 60, 99);
    auto b = random_path_jump_scan(CoefficientField::real_coeffs, 2, 40, 60, 99);
    CHECK(a.counts == b.counts);
    CHECK(a.unresolved == b.unresolved);
    auto c = random_path_jump_scan(CoefficientField::real_coeffs, 2, 40, 60, 100);
    CHECK((a.counts != c.counts || a.unresolved != c.unresolved));
}

TEST_CASE("complex paths take unit jumps, real paths see pair jumps") {
    auto complex_run = random_path_jump_scan(CoefficientField::complex_coeffs, 4, 150, 100, 7);
    CHECK(complex_run.total() > 50);
    for (const auto& [size, count] : complex_run.counts)
        if (size >= 2) CHECK(count == 0);

    auto real_run = random_path_jump_scan(CoefficientField::real_coeffs, 2, 300, 100, 7);
    CHECK(real_run.counts[1] > 0);
    CHECK(real_run.counts[2] > 0);
    // conjugate-pair crossings are recognized, not flagged unresolved
    CHECK(real_run.unresolved < real_run.counts[2] / 4 + 3);
}

TEST_CASE("complex ensemble: no multi-jumps across 1e5 detections"
          * doctest::description("property, slow")) {
    // batches keep going until enough jumps accumulate; short paths are
    // fine, bisection still separates coincident crossings within a step
    long total = 0, large = 0;
    uint64_t batch_seed = 4242;
    while (total < 100000 && batch_seed < 4242 + 40) {
        auto run = random_path_jump_scan(CoefficientField::complex_coeffs, 4, 2000, 25,
                                         batch_seed++);
        total += run.total();
        for (const auto& [size, count] : run.counts)
            if (size >= 2) large += count;
    }
    CHECK(total >= 100000);
    CHECK(large == 0);
}

TEST_CASE("wraparound experiment") {
    // reference case: no oscillation, winding unchanged
    auto ref = wraparound_experiment(2, 0.5, 0, 1e-7);
    CHECK(ref.is_fredholm);
    CHECK(ref.winding_change == 0);
    CHECK(ref.perturbation_cl_norm == doctest::Approx(1e-7));

    // eps = 0: the base vanishes on an interval, no winding defined
    auto flat = wraparound_experiment(2, 0.5, 100, 0.0);
    CHECK_FALSE(flat.is_fredholm);
    CHECK(flat.perturbation_cl_norm == 0.0);
    CHECK(flat.min_modulus == 0.0);

    // N = 100, delta = 0.5: winding change near N delta / 2 pi = 7.96
    auto run = wraparound_experiment(2, 0.5, 100, 1e-7);
    CHECK(run.is_fredholm);
    CHECK(run.winding_change >= 7);
    CHECK(run.winding_change <= 9);
    CHECK(run.perturbation_cl_norm == doctest::Approx(1e-7 * (1 + 100 + 10000)));
    CHECK(run.grid >= 6400);

    CHECK_THROWS_AS(wraparound_experiment(2, 1.0, 10, 1e-7), std::invalid_argument);
}

TEST_CASE("wraparound winding grows linearly in N" * doctest::description("property")) {
    double delta = 0.5;
    std::vector<int> ns{50, 100, 200};
    std::vector<double> changes;
    for (int n : ns) {
        auto r = wraparound_experiment(2, delta, n, 1e-7);
        REQUIRE(r.is_fredholm);
        changes.push_back(static_cast<double>(r.winding_change));
    }
    // least-squares slope through the origin
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < ns.size(); ++i) {
        num += ns[i] * changes[i];
        den += static_cast<double>(ns[i]) * ns[i];
    }
    double slope = num / den;
    double predicted = delta / (2.0 * M_PI);
    CHECK(std::abs(slope - predicted) <= 0.2 * predicted);
}

TEST_CASE("scan grid parallel consistency") {
    auto fam = ParameterFamily::quadratic_real();
    AxisRange ax{-2.0, 2.0, 33};
    auto seq = scan_grid(fam, ax, ax, 1);
    auto par = scan_grid(fam, ax, ax, 4);
    CHECK(seq.cells == par.cells);
}
