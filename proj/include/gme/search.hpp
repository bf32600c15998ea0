#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gme/covariance.hpp"
#include "gme/entanglement.hpp"
#include "gme/nelder_mead.hpp"
#include "gme/transforms.hpp"

namespace gme {

inline constexpr double half_pi = std::numbers::pi / 2.0;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Log-negativity of the state as seen through the mode decomposition given
/// by the chart. The state itself is unchanged; only the split into
/// subsystems moves.
inline double chart_log_negativity(const CovarianceMatrix& v, const U2Chart& chart) {
    return log_negativity(apply(passive_symplectic(chart), v)).log_negativity;
}

enum class SweepAxis { theta, phi, phi1, phi2 };

struct SweepSpec {
    SweepAxis axis = SweepAxis::theta;
    int steps = 181;
    U2Chart fixed;  // values of the three angles that stay put
    double lo = 0.0;
    double hi = half_pi;
};

struct SweepPoint {
    double angle;
    double log_negativity;
};

namespace detail {

inline U2Chart with_axis(U2Chart chart, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::theta: chart.theta = value; break;
        case SweepAxis::phi: chart.phi = value; break;
        case SweepAxis::phi1: chart.phi1 = value; break;
        case SweepAxis::phi2: chart.phi2 = value; break;
    }
    return chart;
}

}  // namespace detail

/// E_N along one chart axis on an inclusive uniform grid.
inline std::vector<SweepPoint> sweep(const CovarianceMatrix& v, const SweepSpec& spec) {
    if (spec.steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    if (!(spec.lo < spec.hi)) throw std::invalid_argument("sweep range must satisfy lo < hi");
    std::vector<SweepPoint> out;
    out.reserve(spec.steps);
    for (int i = 0; i < spec.steps; ++i) {
        const double angle = spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1);
        out.push_back({angle, chart_log_negativity(v, detail::with_axis(spec.fixed, spec.axis, angle))});
    }
    return out;
}

/// E_N over the (eta, theta) plane of the single-mode squeeze family:
/// mode A squeezed by eta, then mixed by the theta chart (phases zero).
/// One row per eta, one column per theta.
inline std::vector<std::vector<double>> surface(const StandardFormParams& params,
                                                const std::vector<double>& etas,
                                                const std::vector<double>& thetas) {
    const CovarianceMatrix vs = standard_form_matrix(params);
    if (!is_physical(vs)) throw NotPhysical("surface requires physical standard-form parameters");
    std::vector<std::vector<double>> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        const CovarianceMatrix vt = apply(local_squeeze({eta, 1.0}), vs);
        std::vector<double> row;
        row.reserve(thetas.size());
        for (double theta : thetas) {
            row.push_back(chart_log_negativity(vt, {theta, 0.0, 0.0, 0.0}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

enum class Sense { max, min };

struct SearchOptions {
    std::array<int, 4> grid{9, 8, 8, 8};  // theta x phi x phi' x phi''
    long budget = 20000;                  // total E_N evaluation cap
    int refine_starts = 5;                // simplex descents from the best grid points
    double step_tol = 1e-6;               // radians; simplex convergence size
    std::uint64_t seed = 0;               // recorded; the search itself is deterministic
};

struct ExtremalResult {
    double value = 0.0;
    U2Chart chart;
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

/// Fold a chart back into theta in [0, pi/2], phases in [0, 2pi). Uses the
/// exact identities U(theta + pi) = -U(theta) and
/// U(pi - theta, phi, phi1, phi2) = U(theta, phi, phi1 + pi, phi2 + pi).
inline U2Chart canonicalize(U2Chart c) {
    const auto wrap = [](double x, double period) {
        x = std::fmod(x, period);
        if (x < 0.0) x += period;
        return x;
    };
    c.theta = wrap(c.theta, std::numbers::pi);
    if (c.theta > half_pi) {
        c.theta = std::numbers::pi - c.theta;
        c.phi1 += std::numbers::pi;
        c.phi2 += std::numbers::pi;
    }
    c.phi = wrap(c.phi, two_pi);
    c.phi1 = wrap(c.phi1, two_pi);
    c.phi2 = wrap(c.phi2, two_pi);
    return c;
}

}  // namespace detail

/// Extremize E_N over all number-conserving mode redefinitions: a coarse scan
/// of the chart torus followed by Nelder-Mead refinement from the best grid
/// points. sense = max yields E+, sense = min yields E-. A non-converged
/// result (budget exhausted) still carries the best chart found so far.
inline ExtremalResult extremal(const CovarianceMatrix& v, Sense sense,
                               const SearchOptions& opt = {}) {
    for (int g : opt.grid) {
        if (g < 1) throw std::invalid_argument("search grid counts must be >= 1");
    }
    const double sign = (sense == Sense::max) ? -1.0 : 1.0;
    const auto objective = [&](const std::array<double, 4>& x) {
        return sign * chart_log_negativity(v, {x[0], x[1], x[2], x[3]});
    };

    ExtremalResult result;
    const long grid_total =
        static_cast<long>(opt.grid[0]) * opt.grid[1] * opt.grid[2] * opt.grid[3];

    std::vector<double> values;
    values.reserve(grid_total);
    std::vector<std::array<double, 4>> points;
    points.reserve(grid_total);

    const auto theta_at = [&](int i) {
        return opt.grid[0] > 1 ? half_pi * i / (opt.grid[0] - 1) : 0.0;
    };
    const auto phase_at = [&](int i, int count) { return two_pi * i / count; };

    double best = std::numeric_limits<double>::infinity();
    double grid_lo = best, grid_hi = -best;
    std::array<double, 4> best_x{};
    for (int it = 0; it < opt.grid[0]; ++it) {
        for (int ip = 0; ip < opt.grid[1]; ++ip) {
            for (int i1 = 0; i1 < opt.grid[2]; ++i1) {
                for (int i2 = 0; i2 < opt.grid[3]; ++i2) {
                    const std::array<double, 4> x{theta_at(it), phase_at(ip, opt.grid[1]),
                                                  phase_at(i1, opt.grid[2]), phase_at(i2, opt.grid[3])};
                    const double f = objective(x);
                    ++result.evaluations;
                    points.push_back(x);
                    values.push_back(f);
                    grid_lo = std::min(grid_lo, f);
                    grid_hi = std::max(grid_hi, f);
                    // strict comparison keeps the lexicographically smallest
                    // chart among exact ties (loops ascend in chart order)
                    if (f < best) {
                        best = f;
                        best_x = x;
                    }
                }
            }
        }
    }

    bool converged = false;
    const bool flat_grid = (grid_hi == grid_lo);
    const bool min_attained = (sense == Sense::min && best <= 0.0);
    if (flat_grid || min_attained) {
        converged = true;
    } else {
        std::vector<std::size_t> order(values.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        const std::size_t starts = std::min<std::size_t>(opt.refine_starts, order.size());
        std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                          [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        const std::array<double, 4> step{
            0.5 * (opt.grid[0] > 1 ? half_pi / (opt.grid[0] - 1) : half_pi),
            0.5 * two_pi / opt.grid[1], 0.5 * two_pi / opt.grid[2], 0.5 * two_pi / opt.grid[3]};

        converged = true;
        for (std::size_t k = 0; k < starts; ++k) {
            const long remaining = opt.budget - result.evaluations;
            if (remaining <= 8) {
                converged = false;  // budget exhausted before all starts ran
                break;
            }
            SimplexOptions<4> sopt;
            sopt.max_evals = static_cast<int>(remaining / (starts - k));
            sopt.x_tol = opt.step_tol;
            sopt.stop_below = (sense == Sense::min) ? 0.0 : -std::numeric_limits<double>::infinity();
            const auto run = minimize_simplex(objective, points[order[k]], step, sopt);
            result.evaluations += run.evaluations;
            converged = converged && run.converged;
            if (run.value < best) {
                best = run.value;
                best_x = run.x;
            }
            if (sense == Sense::min && best <= 0.0) {
                converged = true;
                break;
            }
        }
    }

    result.chart = detail::canonicalize({best_x[0], best_x[1], best_x[2], best_x[3]});
    result.value = chart_log_negativity(v, result.chart);
    result.converged = converged;
    return result;
}

enum class Verdict { absolutely_separable, relatively_entangled };

inline const char* to_string(Verdict v) {
    return v == Verdict::absolutely_separable ? "absolutely_separable" : "relatively_entangled";
}

/// E+/E- of a state together with the witness charts attaining them.
struct Classification {
    Verdict verdict = Verdict::absolutely_separable;
    double e_plus = 0.0;
    double e_minus = 0.0;
    U2Chart max_chart;
    U2Chart min_chart;
    bool converged = false;
};

inline constexpr double default_abs_sep_tol = 1e-6;  // bits on e_plus

/// Absolute-separability verdict: E+ <= tol means no mode redefinition can
/// entangle the state. The minimum search doubles as the cross-check that a
/// separable decomposition exists (e_minus ~ 0 for every physical state).
inline Classification classify(const CovarianceMatrix& v, double tol = default_abs_sep_tol,
                               const SearchOptions& opt = {}) {
    const ExtremalResult plus = extremal(v, Sense::max, opt);
    const ExtremalResult minus = extremal(v, Sense::min, opt);
    Classification c;
    c.e_plus = plus.value;
    c.e_minus = minus.value;
    c.max_chart = plus.chart;
    c.min_chart = minus.chart;
    c.converged = plus.converged && minus.converged;
    c.verdict = (c.e_plus <= tol) ? Verdict::absolutely_separable : Verdict::relatively_entangled;
    return c;
}

}  // namespace gme
