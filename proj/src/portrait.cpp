#include "tindex/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "tindex/errors.hpp"
#include "tindex/parallel.hpp"
#include "tindex/rng.hpp"

namespace tindex {

ParameterFamily ParameterFamily::make(LaurentSymbol base, std::vector<LaurentSymbol> directions,
                                      std::vector<std::string> labels, CoefficientField field,
                                      std::string name) {
    if (directions.empty()) throw std::invalid_argument("family needs at least one direction");
    if (labels.size() != directions.size())
        throw std::invalid_argument("one axis label per direction");

    // Independence check on the stacked coefficient vectors.
    int lo = directions[0].lowest(), hi = directions[0].highest();
    for (const auto& d : directions) {
        if (d.is_zero()) throw std::invalid_argument("zero direction in family");
        lo = std::min(lo, d.lowest());
        hi = std::max(hi, d.highest());
    }
    Eigen::MatrixXcd span(hi - lo + 1, static_cast<int>(directions.size()));
    for (size_t j = 0; j < directions.size(); ++j)
        for (int k = lo; k <= hi; ++k)
            span(k - lo, static_cast<int>(j)) = directions[j].coeff(k);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(span);
    if (qr.rank() < static_cast<int>(directions.size()))
        throw std::invalid_argument("family directions are linearly dependent");

    ParameterFamily fam;
    fam.base = std::move(base);
    fam.directions = std::move(directions);
    fam.axis_labels = std::move(labels);
    fam.field = field;
    fam.name = std::move(name);
    return fam;
}

ParameterFamily ParameterFamily::quadratic_real() {
    return make(LaurentSymbol::monomial(-2),
                {LaurentSymbol::monomial(-1), LaurentSymbol::monomial(0)},
                {"c1", "c0"}, CoefficientField::real_coeffs, "quadratic-real");
}

LaurentSymbol ParameterFamily::at(const std::vector<double>& t) const {
    if (t.size() != directions.size())
        throw std::invalid_argument("parameter count does not match family dimension");
    LaurentSymbol s = base;
    for (size_t j = 0; j < t.size(); ++j) s = s + cplx(t[j]) * directions[j];
    return s;
}

namespace {

int32_t classify_cell(const LaurentSymbol& s) {
    try {
        RootReport rr = laurent_roots(s);
        if (rr.on_circle_count > 0) return kNotFredholmCell;
        return rr.pole_order - rr.inside_count;
    } catch (const ZeroSymbolError&) {
        return kZeroSymbolCell;
    }
}

} // namespace

PortraitGrid scan_grid(const ParameterFamily& fam, AxisRange axis0, AxisRange axis1,
                       int threads) {
    if (fam.directions.size() != 2)
        throw std::invalid_argument("grid scans need exactly two scan directions");
    if (axis0.res < 2 || axis1.res < 2)
        throw std::invalid_argument("grid needs at least 2 points per axis");

    PortraitGrid grid;
    grid.axis0 = axis0;
    grid.axis1 = axis1;
    grid.axis_labels = fam.axis_labels;
    grid.family_name = fam.name;
    grid.cells.assign(static_cast<size_t>(axis0.res) * axis1.res, 0);

    parallel_for(axis0.res, threads, [&](long i0) {
        for (int i1 = 0; i1 < axis1.res; ++i1) {
            LaurentSymbol s = fam.at({axis0.value(static_cast<int>(i0)), axis1.value(i1)});
            int32_t code = classify_cell(s);
            grid.cells[static_cast<size_t>(i0) * axis1.res + i1] = code;
            // Root oracle is the oracle of record; the winding oracle
            // cross-checks a deterministic ~1% of the Fredholm cells.
            if (code != kNotFredholmCell && code != kZeroSymbolCell &&
                splitmix64((static_cast<uint64_t>(i0) << 32) ^ static_cast<uint64_t>(i1)) %
                        100 ==
                    0) {
                IndexResult wind = toeplitz_index(s, 256);
                if (wind.is_fredholm && wind.index != code)
                    throw Error("OracleMismatch",
                                "winding cross-check disagrees with the root oracle");
            }
        }
    });
    return grid;
}

BoundaryReport extract_boundaries(const PortraitGrid& grid) {
    BoundaryReport report;
    auto visit = [&](int a0, int a1, int b0, int b1) {
        int32_t ca = grid.cell(a0, a1);
        int32_t cb = grid.cell(b0, b1);
        bool sa = ca == kNotFredholmCell || ca == kZeroSymbolCell;
        bool sb = cb == kNotFredholmCell || cb == kZeroSymbolCell;
        if (sa || sb) {
            if (sa != sb) ++report.not_fredholm_adjacencies;
            return;
        }
        if (ca != cb)
            report.edges.push_back({a0, a1, b0, b1, std::abs(ca - cb)});
    };
    for (int i0 = 0; i0 < grid.axis0.res; ++i0)
        for (int i1 = 0; i1 < grid.axis1.res; ++i1) {
            if (i0 + 1 < grid.axis0.res) visit(i0, i1, i0 + 1, i1);
            if (i1 + 1 < grid.axis1.res) visit(i0, i1, i0, i1 + 1);
        }
    return report;
}

long JumpHistogram::total() const {
    long t = 0;
    for (const auto& [size, count] : counts) t += count;
    return t;
}

namespace {

struct PathScanner {
    CoefficientField field;
    int degree;
    std::vector<cplx> start, end;
    std::map<int, long> counts;
    long unresolved = 0;
    static constexpr int kBisectionRounds = 12;

    LaurentSymbol symbol_at(double t) const {
        std::map<int, cplx> m;
        for (int i = 0; i <= degree; ++i) {
            cplx c = (1.0 - t) * start[static_cast<size_t>(i)] + t * end[static_cast<size_t>(i)];
            m[-i] = c; // shift-polynomial orientation
        }
        return LaurentSymbol::from_map(m);
    }

    std::optional<int> classify(double t) const {
        try {
            RootReport rr = laurent_roots(symbol_at(t));
            if (rr.on_circle_count > 0) return std::nullopt;
            return rr.pole_order - rr.inside_count;
        } catch (const ZeroSymbolError&) {
            return std::nullopt;
        }
    }

    // A genuine conjugate-pair crossing keeps the two near-circle roots at
    // mirror angles; coincident independent crossings do not.
    bool conjugate_pair_at(double t) const {
        RootReport rr;
        try {
            rr = laurent_roots(symbol_at(t));
        } catch (const ZeroSymbolError&) {
            return false;
        }
        if (rr.roots.size() < 2) return false;
        std::vector<cplx> roots = rr.roots;
        std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
            return std::abs(std::abs(a) - 1.0) < std::abs(std::abs(b) - 1.0);
        });
        cplx r0 = roots[0], r1 = roots[1];
        return std::abs(r0 - std::conj(r1)) <= 0.05 * std::max(1.0, std::abs(r0));
    }

    void record(double t_lo, double t_hi, int jump) {
        ++counts[jump];
        if (jump < 2) return;
        if (field == CoefficientField::real_coeffs &&
            jump == 2 && conjugate_pair_at(0.5 * (t_lo + t_hi)))
            return; // resolved: a single symmetric crossing
        ++unresolved;
    }

    void resolve(double t_lo, int idx_lo, double t_hi, int idx_hi, int depth) {
        if (idx_lo == idx_hi) return;
        if (std::abs(idx_hi - idx_lo) == 1 || depth == 0) {
            record(t_lo, t_hi, std::abs(idx_hi - idx_lo));
            return;
        }
        double t_mid = 0.5 * (t_lo + t_hi);
        std::optional<int> idx_mid = classify(t_mid);
        if (!idx_mid) {
            // Sampled a boundary point; nudge once, then give up separating.
            t_mid = t_lo + 0.5001 * (t_hi - t_lo);
            idx_mid = classify(t_mid);
            if (!idx_mid) {
                record(t_lo, t_hi, std::abs(idx_hi - idx_lo));
                return;
            }
        }
        resolve(t_lo, idx_lo, t_mid, *idx_mid, depth - 1);
        resolve(t_mid, *idx_mid, t_hi, idx_hi, depth - 1);
    }

    void run(long steps) {
        // Walk the uniform steps; plateaus are separated by at most one
        // unclassified sample, which joins its neighbors into one bracket.
        std::optional<int> prev;
        double prev_t = 0.0;
        for (long j = 0; j <= steps; ++j) {
            double t = static_cast<double>(j) / static_cast<double>(steps);
            std::optional<int> cur = classify(t);
            if (!cur) continue;
            if (prev && *prev != *cur) resolve(prev_t, *prev, t, *cur, kBisectionRounds);
            prev = cur;
            prev_t = t;
        }
    }
};

} // namespace

JumpHistogram random_path_jump_scan(CoefficientField ensemble, int degree, long paths,
                                    long steps, uint64_t seed, int threads) {
    if (degree < 2) throw std::invalid_argument("jump scans need degree >= 2");
    if (paths < 0 || steps < 1)
        throw std::invalid_argument("need a non-negative path count and at least one step");

    JumpHistogram hist;
    hist.ensemble = ensemble;
    hist.degree = degree;
    hist.paths = paths;
    hist.steps = steps;
    hist.seed = seed;

    std::vector<PathScanner> scanners(static_cast<size_t>(paths));
    parallel_for(paths, threads, [&](long p) {
        PathScanner& sc = scanners[static_cast<size_t>(p)];
        sc.field = ensemble;
        sc.degree = degree;
        std::mt19937_64 rng = item_rng(seed, static_cast<uint64_t>(p));
        for (int i = 0; i <= degree; ++i) {
            if (ensemble == CoefficientField::complex_coeffs) {
                sc.start.emplace_back(gaussian(rng), gaussian(rng));
                sc.end.emplace_back(gaussian(rng), gaussian(rng));
            } else {
                sc.start.emplace_back(gaussian(rng), 0.0);
                sc.end.emplace_back(gaussian(rng), 0.0);
            }
        }
        sc.run(steps);
    });
    for (const auto& sc : scanners) {
        for (const auto& [size, count] : sc.counts) hist.counts[size] += count;
        hist.unresolved += sc.unresolved;
    }
    return hist;
}

namespace {

// C-infinity step from 0 to 1 on [0, 1].
double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

} // namespace

WraparoundResult wraparound_experiment(int ell, double delta, int big_n, double eps) {
    if (!(delta > 0.0 && delta < M_PI / 4))
        throw std::invalid_argument("interval width must lie in (0, pi/4)");
    if (ell < 0) throw std::invalid_argument("ell must be non-negative");
    if (big_n < 0) throw std::invalid_argument("oscillation count must be non-negative");
    if (eps < 0.0) throw std::invalid_argument("perturbation size must be non-negative");

    WraparoundResult out;
    out.grid = std::max(64 * big_n, 4096);

    // C^ell size of eps e^{i N theta}: eps * sum_{j<=ell} N^j.
    double norm = 0.0;
    for (int j = 0; j <= ell; ++j) norm += std::pow(static_cast<double>(big_n), j);
    out.perturbation_cl_norm = big_n == 0 ? eps : eps * norm;

    if (eps == 0.0) {
        // The base vanishes on a whole interval; no winding is defined.
        out.is_fredholm = false;
        out.min_modulus = 0.0;
        out.perturbation_cl_norm = 0.0;
        return out;
    }

    // Base profile: 0 on [-delta/2, delta/2], 1 outside the 2 delta collar,
    // fixed exponential bump in between, as a function of wrapped |theta|.
    auto base = [&](double theta) {
        double a = std::abs(std::remainder(theta, 2.0 * M_PI));
        if (a <= delta / 2) return 0.0;
        if (a >= delta) return 1.0;
        return smoothstep((a - delta / 2) / (delta / 2));
    };

    int M = out.grid;
    std::vector<cplx> pert(static_cast<size_t>(M)), ref(static_cast<size_t>(M));
    for (int k = 0; k < M; ++k) {
        double th = 2.0 * M_PI * k / M;
        double b = base(th);
        pert[static_cast<size_t>(k)] = b + eps * std::polar(1.0, big_n * th);
        ref[static_cast<size_t>(k)] = b + eps;
    }
    SampledSymbol perturbed(std::move(pert), ell);
    SampledSymbol reference(std::move(ref), ell);

    try {
        int w1 = winding_number(perturbed);
        int w0 = winding_number(reference);
        out.is_fredholm = true;
        out.winding_change = w1 - w0;
        out.min_modulus = min_modulus_on_circle(perturbed);
    } catch (const NotFredholmError& e) {
        out.is_fredholm = false;
        out.min_modulus = e.min_modulus;
    }
    return out;
}

} // namespace tindex
