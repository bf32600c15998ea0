#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace gme {

template <std::size_t N>
struct SimplexOptions {
    int max_evals = 1000;
    /// Converged when every vertex is within x_tol of the best one (inf-norm).
    double x_tol = 1e-6;
    /// Stop early once the best value reaches this target.
    double stop_below = -std::numeric_limits<double>::infinity();
};

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with the standard reflection,
/// expansion, contraction and shrink coefficients (1, 2, 1/2, 1/2).
template <std::size_t N, typename F>
SimplexResult<N> minimize_simplex(F&& f, const std::array<double, N>& x0,
                                  const std::array<double, N>& step,
                                  const SimplexOptions<N>& opt = {}) {
    constexpr std::size_t n = N;
    using Point = std::array<double, N>;

    std::array<Point, N + 1> xs;
    std::array<double, N + 1> fx;
    SimplexResult<N> result;

    xs[0] = x0;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i + 1] = x0;
        xs[i + 1][i] += step[i];
    }
    for (std::size_t i = 0; i <= n && result.evaluations < opt.max_evals; ++i) {
        fx[i] = f(xs[i]);
        ++result.evaluations;
    }

    std::array<std::size_t, N + 1> order;
    std::iota(order.begin(), order.end(), std::size_t{0});

    const auto finish = [&](bool converged) {
        std::size_t best = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            if (fx[i] < fx[best]) best = i;
        }
        result.x = xs[best];
        result.value = fx[best];
        result.converged = converged;
        return result;
    };

    if (result.evaluations < static_cast<int>(n + 1)) {
        return finish(false);  // budget gone during initialization
    }

    while (true) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second = order[n - 1];

        if (fx[best] <= opt.stop_below) return finish(true);

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                diameter = std::max(diameter, std::abs(xs[order[i]][j] - xs[best][j]));
            }
        }
        if (diameter < opt.x_tol) return finish(true);
        if (result.evaluations >= opt.max_evals) return finish(false);

        Point centroid{};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += xs[order[i]][j];
        }
        for (std::size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

        const auto blend = [&](double coeff) {
            Point p;
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = centroid[j] + coeff * (centroid[j] - xs[worst][j]);
            }
            return p;
        };

        const Point reflected = blend(1.0);
        const double fr = f(reflected);
        ++result.evaluations;

        if (fr < fx[best]) {
            if (result.evaluations < opt.max_evals) {
                const Point expanded = blend(2.0);
                const double fe = f(expanded);
                ++result.evaluations;
                if (fe < fr) {
                    xs[worst] = expanded;
                    fx[worst] = fe;
                    continue;
                }
            }
            xs[worst] = reflected;
            fx[worst] = fr;
            continue;
        }
        if (fr < fx[second]) {
            xs[worst] = reflected;
            fx[worst] = fr;
            continue;
        }
        if (result.evaluations >= opt.max_evals) return finish(false);

        const Point contracted = blend(fr < fx[worst] ? 0.5 : -0.5);
        const double fc = f(contracted);
        ++result.evaluations;
        if (fc < std::min(fr, fx[worst])) {
            xs[worst] = contracted;
            fx[worst] = fc;
            continue;
        }

        // shrink toward the best vertex
        for (std::size_t i = 1; i <= n; ++i) {
            const std::size_t k = order[i];
            for (std::size_t j = 0; j < n; ++j) {
                xs[k][j] = xs[best][j] + 0.5 * (xs[k][j] - xs[best][j]);
            }
            if (result.evaluations >= opt.max_evals) return finish(false);
            fx[k] = f(xs[k]);
            ++result.evaluations;
        }
    }
}

}  // namespace gme
