#ifndef CENTSEL_THEORY_HPP
#define CENTSEL_THEORY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/filters.hpp"
#include "centsel/graph.hpp"
#include "centsel/random.hpp"
#include "centsel/signals.hpp"
#include "centsel/spectral.hpp"

// The bounds below are order-of-magnitude diagnostics. Their absolute
// constants are unknown, so every constant is a parameter with default 1.

namespace centsel {

struct BoundConstants {
    double c0_scale = 1.0;  ///< C0 = c0_scale * ||C_y||_2
    double eta = 0.1;       ///< failure probability
};

struct BoundReport {
    double deviation_bound = 0.0;
    double alignment_bound = 0.0;
    double sample_requirement = 0.0;
    BoundConstants constants;
};

/// c * ||C_y||_2 * sqrt(log(1/eta) * r / m).
inline double deviation_bound(double cy_norm, double r, std::int64_t m, double eta, double c) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be at least 1");
    if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorKind::InvalidArgument, "eta must lie in (0, 1)");
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be positive");
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "c must be positive");
    if (!(cy_norm >= 0.0)) throw Error(ErrorKind::InvalidArgument, "||C_y|| must be nonnegative");
    return c * cy_norm * std::sqrt(std::log(1.0 / eta) * r / static_cast<double>(m));
}

/// 2 * deviation / delta, capped at 1 because it bounds a sine.
inline double alignment_bound(double deviation, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::ZeroEigengap, "eigengap must be positive");
    if (!(deviation >= 0.0)) throw Error(ErrorKind::InvalidArgument, "deviation must be nonnegative");
    return std::min(1.0, 2.0 * deviation / delta);
}

/// max_i 1 / (delta^2 u_i^2), i.e. 1 / (delta^2 min_i u_i^2).
inline double sample_requirement(const Vector& u, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::ZeroEigengap, "eigengap must be positive");
    if (u.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty centrality vector");
    const double min_abs = u.cwiseAbs().minCoeff();
    if (min_abs == 0.0) throw Error(ErrorKind::ZeroEntry, "centrality has a zero entry");
    return 1.0 / (delta * delta * min_abs * min_abs);
}

inline double sample_requirement(const CentralityVector& u, double delta) {
    return sample_requirement(u.values, delta);
}

inline BoundReport bound_report(double cy_norm, double r, std::int64_t m, double delta, const Vector& u,
                                BoundConstants constants = {}) {
    BoundReport rep;
    rep.constants = constants;
    rep.deviation_bound = deviation_bound(cy_norm, r, m, constants.eta, constants.c0_scale);
    rep.alignment_bound = alignment_bound(rep.deviation_bound, delta);
    rep.sample_requirement = sample_requirement(u, delta);
    return rep;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "slope fit needs two or more paired points");
    }
    const auto k = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log fit needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = k * sxx - sx * sx;
    if (denom == 0.0) throw Error(ErrorKind::InvalidArgument, "slope fit needs distinct x values");
    return (k * sxy - sx * sy) / denom;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw Error(ErrorKind::InvalidArgument, "median of empty sample");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

struct AlignmentSample {
    std::int64_t m = 0;
    std::size_t trial = 0;
    double sin_theta = 0.0;  ///< between u and the eigenvector at the centrality index
    double deviation = 0.0;  ///< ||C_hat - C_y||_2
    double radius = 0.0;     ///< max ||y||^2 of the ensemble, the stand-in for r
    double unit_bound = 0.0; ///< alignment bound with c0_scale = 1, uncapped
    double bound = 0.0;      ///< alignment bound with the fitted constant, capped at 1
};

struct AlignmentCheck {
    std::vector<AlignmentSample> samples;
    std::vector<std::int64_t> m_grid;
    std::vector<double> median_sin_theta;  ///< per m
    std::vector<double> median_deviation;  ///< per m
    double sin_theta_slope = 0.0;
    double deviation_slope = 0.0;
    double fitted_constant = 0.0;  ///< c0_scale fitted at the first m
    double delta = 0.0;
    Eigen::Index centrality_index = 0;
    double bound_coverage = 0.0;  ///< fraction of samples with sin_theta <= bound
};

/**
 * Monte-Carlo check of the m^{-1/2} concentration and the sin-theta bound.
 *
 * For each m in the grid and each trial, signals are drawn with seed
 * derive_seed(seed, {m, trial}). The constant c0_scale is fitted once at
 * the first grid point as the smallest value that covers every trial there
 * (the envelope), then held fixed for the remaining grid points.
 * A grid entry of kPopulationSamples measures C_y itself.
 */
inline AlignmentCheck empirical_alignment_check(const Graph& graph, const FilterSpec& filter,
                                                std::span<const std::int64_t> m_grid, std::size_t trials,
                                                std::uint64_t seed, BoundConstants constants = {}) {
    if (m_grid.empty() || trials == 0) throw Error(ErrorKind::InvalidArgument, "empty m grid or zero trials");
    const AdjacencyMatrix a = adjacency(graph);
    if (!is_connected(graph)) throw Error(ErrorKind::NotConnected, "alignment check requires a connected graph");
    const SpectralDecomposition eig_a = eig_sym(a.entries);
    const CentralityVector u = centrality_from_decomposition(eig_a);
    const FilterMatrix h = apply_filter(filter, eig_a);
    const CovarianceMatrix cy = population_covariance(h);

    AlignmentCheck out;
    out.m_grid.assign(m_grid.begin(), m_grid.end());
    out.centrality_index = centrality_index_in_cy(filter, eig_a.eigenvalues);
    Vector cy_spectrum = h.spectrum.cwiseAbs2();
    std::sort(cy_spectrum.begin(), cy_spectrum.end());
    out.delta = eigengap_at(cy_spectrum, out.centrality_index);
    if (!(out.delta > 0.0)) throw Error(ErrorKind::ZeroEigengap, "zero eigengap at the centrality index");
    const double cy_norm = cy_spectrum[cy_spectrum.size() - 1];

    for (std::int64_t m : m_grid) {
        std::vector<double> sins;
        std::vector<double> devs;
        for (std::size_t t = 0; t < trials; ++t) {
            AlignmentSample s;
            s.m = m;
            s.trial = t;
            if (m == kPopulationSamples) {
                const SpectralDecomposition eig_c = eig_sym(cy.entries);
                s.sin_theta = sin_angle(eig_c.eigenvectors.col(out.centrality_index), u.values);
            } else {
                const SignalEnsemble y =
                    generate_signals(h, m, derive_seed(seed, {static_cast<std::uint64_t>(m), t}));
                const CovarianceMatrix c_hat = sample_covariance(y);
                const SpectralDecomposition eig_c = eig_sym(c_hat.entries);
                s.sin_theta = sin_angle(eig_c.eigenvectors.col(out.centrality_index), u.values);
                s.deviation = covariance_deviation(c_hat, cy);
                s.radius = max_squared_norm(y);
                s.unit_bound = 2.0 * deviation_bound(cy_norm, s.radius, m, constants.eta, 1.0) / out.delta;
            }
            sins.push_back(s.sin_theta);
            devs.push_back(s.deviation);
            out.samples.push_back(s);
        }
        out.median_sin_theta.push_back(median(sins));
        out.median_deviation.push_back(median(devs));
    }

    // The population entry (if any) has no sampling error: it is excluded
    // from the fit and the slopes, and counts as covered when sin_theta is
    // at round-off level.
    const std::int64_t fit_m = m_grid.front();
    double fitted = 0.0;
    for (const auto& s : out.samples) {
        if (s.m == fit_m && s.m != kPopulationSamples) fitted = std::max(fitted, s.sin_theta / s.unit_bound);
    }
    out.fitted_constant = fitted;
    std::size_t covered = 0;
    for (auto& s : out.samples) {
        s.bound = s.m == kPopulationSamples ? 1e-7 : std::min(1.0, fitted * s.unit_bound);
        if (s.sin_theta <= s.bound) ++covered;
    }
    out.bound_coverage = static_cast<double>(covered) / static_cast<double>(out.samples.size());

    std::vector<double> ms, med_sin, med_dev;
    for (std::size_t i = 0; i < m_grid.size(); ++i) {
        if (m_grid[i] == kPopulationSamples) continue;
        ms.push_back(static_cast<double>(m_grid[i]));
        med_sin.push_back(out.median_sin_theta[i]);
        med_dev.push_back(out.median_deviation[i]);
    }
    if (ms.size() >= 2) {
        out.sin_theta_slope = loglog_slope(ms, med_sin);
        out.deviation_slope = loglog_slope(ms, med_dev);
    }
    return out;
}

}  // namespace centsel

#endif  // CENTSEL_THEORY_HPP
