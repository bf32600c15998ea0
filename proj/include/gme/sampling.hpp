#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "gme/covariance.hpp"
#include "gme/search.hpp"
#include "gme/transforms.hpp"

namespace gme {

/// Entry ranges for random covariance draws. The defaults reproduce the
/// separability census rates of the reference figures under this library's
/// V >= (i/2) sigma convention; see README for why the off-diagonal range is
/// half the nominally quoted one.
struct SampleRanges {
    double diag_lo = 0.5;
    double diag_hi = 1.5;
    double offdiag_lo = -0.5;
    double offdiag_hi = 0.5;
};

inline void validate(const SampleRanges& r) {
    if (!(r.diag_lo > 0.0)) throw std::invalid_argument("diag_lo must be > 0");
    if (!(r.diag_lo < r.diag_hi)) throw std::invalid_argument("diagonal range must satisfy lo < hi");
    if (!(r.offdiag_lo < r.offdiag_hi)) throw std::invalid_argument("off-diagonal range must satisfy lo < hi");
}

namespace detail {

/// splitmix64 of (master, index): order-independent per-sample sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform doubles built from raw engine words; byte-identical across
/// platforms, unlike std::uniform_real_distribution.
inline double uniform(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace detail

/// Two-mode squeezed state: a = b = cosh(2r)/2, c+ = -c- = sinh(2r)/2; pure
/// for every r, vacuum at r = 0.
inline CovarianceMatrix pure_tms(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("squeeze parameter r must be finite and >= 0");
    }
    return standard_form_matrix({std::cosh(2.0 * r) / 2.0, std::cosh(2.0 * r) / 2.0,
                                 std::sinh(2.0 * r) / 2.0, -std::sinh(2.0 * r) / 2.0});
}

/// One standard-form draw: a, b uniform over the diagonal range, c+, c-
/// uniform over the off-diagonal range. Rejected (nullopt) when the assembled
/// matrix violates the Heisenberg condition; rejection is a counted outcome,
/// not an error.
inline std::optional<CovarianceMatrix> sample_standard(std::uint64_t seed,
                                                       const SampleRanges& ranges = {}) {
    validate(ranges);
    std::mt19937_64 g(detail::mix_seed(seed, 0));
    const double a = detail::uniform(g, ranges.diag_lo, ranges.diag_hi);
    const double b = detail::uniform(g, ranges.diag_lo, ranges.diag_hi);
    const double cp = detail::uniform(g, ranges.offdiag_lo, ranges.offdiag_hi);
    const double cm = detail::uniform(g, ranges.offdiag_lo, ranges.offdiag_hi);
    CovarianceMatrix v = standard_form_matrix({a, b, cp, cm});
    if (!is_physical(v)) return std::nullopt;
    return v;
}

/// One generic symmetric draw: all four diagonal entries over the diagonal
/// range, all six upper-triangle entries over the off-diagonal range.
inline std::optional<CovarianceMatrix> sample_generic(std::uint64_t seed,
                                                      const SampleRanges& ranges = {}) {
    validate(ranges);
    std::mt19937_64 g(detail::mix_seed(seed, 0));
    Mat4 m = Mat4::Zero();
    for (int i = 0; i < 4; ++i) {
        m(i, i) = detail::uniform(g, ranges.diag_lo, ranges.diag_hi);
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            m(i, j) = m(j, i) = detail::uniform(g, ranges.offdiag_lo, ranges.offdiag_hi);
        }
    }
    CovarianceMatrix v(m);
    if (!is_physical(v)) return std::nullopt;
    return v;
}

/// Alternative non-standard-form generator: a standard-form draw conjugated
/// by a random local symplectic (per-mode Euler angles uniform on [0, 2pi),
/// log-squeeze uniform on [ln 1/2, ln 2]). Entanglement-equivalent to its
/// standard-form seed state but energy-distorted.
inline std::optional<CovarianceMatrix> sample_generic_via_t(std::uint64_t seed,
                                                            const SampleRanges& ranges = {}) {
    validate(ranges);
    std::mt19937_64 g(detail::mix_seed(seed, 1));
    const double a = detail::uniform(g, ranges.diag_lo, ranges.diag_hi);
    const double b = detail::uniform(g, ranges.diag_lo, ranges.diag_hi);
    const double cp = detail::uniform(g, ranges.offdiag_lo, ranges.offdiag_hi);
    const double cm = detail::uniform(g, ranges.offdiag_lo, ranges.offdiag_hi);
    const double ln2 = std::log(2.0);
    const double alpha_a = detail::uniform(g, 0.0, two_pi);
    const double eta_a = std::exp(detail::uniform(g, -ln2, ln2));
    const double beta_a = detail::uniform(g, 0.0, two_pi);
    const double alpha_b = detail::uniform(g, 0.0, two_pi);
    const double eta_b = std::exp(detail::uniform(g, -ln2, ln2));
    const double beta_b = detail::uniform(g, 0.0, two_pi);

    CovarianceMatrix vs = standard_form_matrix({a, b, cp, cm});
    CovarianceMatrix v = apply(local_symplectic(alpha_a, eta_a, beta_a, alpha_b, eta_b, beta_b), vs);
    if (!is_physical(v)) return std::nullopt;
    return v;
}

enum class SampleMode { standard, generic };

inline const char* to_string(SampleMode m) {
    return m == SampleMode::standard ? "standard" : "generic";
}

struct CensusConfig {
    SampleMode mode = SampleMode::standard;
    long n_physical = 1000;
    SampleRanges ranges;
    std::uint64_t seed = 0;
    SearchOptions search;
    double tol = default_abs_sep_tol;
    bool generic_via_t = false;
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Aggregate counts of a separability census. generated counts every raw
/// draw including rejected ones, so acceptance rates are recoverable.
struct CensusReport {
    long generated = 0;
    long physical = 0;
    long abs_separable = 0;
    double fraction = 0.0;  // abs_separable / physical
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::standard;
};

/// Draw until n_physical accepted states, classify each one, and aggregate.
/// Fully reproducible from the seed: sample k is drawn from a counter-derived
/// sub-seed, classification is deterministic, and the reduction is an ordered
/// count, so thread scheduling cannot change the report.
inline CensusReport census(const CensusConfig& cfg) {
    if (cfg.n_physical < 1) throw std::invalid_argument("census needs n_physical >= 1");
    validate(cfg.ranges);

    CensusReport report;
    report.seed = cfg.seed;
    report.mode = cfg.mode;

    std::vector<CovarianceMatrix> accepted;
    accepted.reserve(cfg.n_physical);
    std::uint64_t k = 0;
    while (static_cast<long>(accepted.size()) < cfg.n_physical) {
        const std::uint64_t sub = detail::mix_seed(cfg.seed, k);
        std::optional<CovarianceMatrix> draw;
        if (cfg.mode == SampleMode::standard) {
            draw = sample_standard(sub, cfg.ranges);
        } else if (cfg.generic_via_t) {
            draw = sample_generic_via_t(sub, cfg.ranges);
        } else {
            draw = sample_generic(sub, cfg.ranges);
        }
        if (draw) accepted.push_back(std::move(*draw));
        ++k;
    }
    report.generated = static_cast<long>(k);
    report.physical = cfg.n_physical;

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(accepted.size()));

    const auto count_range = [&](std::size_t lo, std::size_t hi) {
        long count = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const Classification c = classify(accepted[i], cfg.tol, cfg.search);
            if (c.verdict == Verdict::absolutely_separable) ++count;
        }
        return count;
    };

    if (threads <= 1) {
        report.abs_separable = count_range(0, accepted.size());
    } else {
        std::vector<std::future<long>> futures;
        const std::size_t chunk = (accepted.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(accepted.size(), lo + chunk);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, count_range, lo, hi));
        }
        for (auto& f : futures) report.abs_separable += f.get();
    }

    report.fraction = static_cast<double>(report.abs_separable) / static_cast<double>(report.physical);
    return report;
}

}  // namespace gme
