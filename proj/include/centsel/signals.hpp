#ifndef CENTSEL_SIGNALS_HPP
#define CENTSEL_SIGNALS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/filters.hpp"
#include "centsel/random.hpp"
#include "centsel/spectral.hpp"

namespace centsel {

/// Zero-mean, unit-variance i.i.d. input noise.
enum class NoiseKind { Gaussian, Rademacher };

struct SignalProvenance {
    std::uint64_t seed = 0;
    std::string filter;
    std::uint64_t graph_hash = 0;
};

/// m observed signals stored as the columns of an n x m matrix.
struct SignalEnsemble {
    Matrix signals;
    SignalProvenance provenance;

    Eigen::Index node_count() const { return signals.rows(); }
    Eigen::Index sample_count() const { return signals.cols(); }
};

enum class CovarianceSource { Population, Sample };

struct CovarianceMatrix {
    Matrix entries;
    CovarianceSource source = CovarianceSource::Population;
    Eigen::Index samples = 0;  ///< m for Sample, 0 for Population

    Eigen::Index size() const { return entries.rows(); }
};

struct SignalOptions {
    NoiseKind noise = NoiseKind::Gaussian;
    std::size_t workers = 1;
    SignalProvenance provenance;
};

/// Stands for m = infinity wherever a sample count is expected: the
/// population covariance is used instead of a sample estimate.
inline constexpr std::int64_t kPopulationSamples = std::numeric_limits<std::int64_t>::max();

/// Signals are drawn in fixed-size blocks; block b uses the stream
/// derive_seed(seed, {b}), so output does not depend on the worker count.
inline constexpr Eigen::Index kSignalBlock = 256;

namespace detail {

inline void fill_noise(Eigen::Ref<Matrix> w, NoiseKind noise, std::uint64_t seed) {
    Rng rng(seed);
    if (noise == NoiseKind::Gaussian) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Eigen::Index c = 0; c < w.cols(); ++c) {
            for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = normal(rng);
        }
    } else {
        for (Eigen::Index c = 0; c < w.cols(); ++c) {
            for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = (rng() >> 63) ? 1.0 : -1.0;
        }
    }
}

}  // namespace detail

/// y_l = H w_l for l = 1..m with white input noise.
inline SignalEnsemble generate_signals(const Matrix& h, Eigen::Index m, std::uint64_t seed,
                                       const SignalOptions& options = {}) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "need at least one signal");
    detail::require_square(h, "filter matrix");
    const Eigen::Index n = h.rows();
    SignalEnsemble out;
    out.provenance = options.provenance;
    out.provenance.seed = seed;
    out.signals.resize(n, m);

    const Eigen::Index blocks = (m + kSignalBlock - 1) / kSignalBlock;
    auto run_block = [&](Eigen::Index b) {
        const Eigen::Index start = b * kSignalBlock;
        const Eigen::Index width = std::min(kSignalBlock, m - start);
        Matrix w(n, width);
        detail::fill_noise(w, options.noise, derive_seed(seed, {static_cast<std::uint64_t>(b)}));
        out.signals.middleCols(start, width).noalias() = h * w;
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.workers, blocks));
    if (workers == 1) {
        for (Eigen::Index b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (auto b = static_cast<Eigen::Index>(t); b < blocks; b += static_cast<Eigen::Index>(workers)) {
                    run_block(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

inline SignalEnsemble generate_signals(const FilterMatrix& h, Eigen::Index m, std::uint64_t seed,
                                       const SignalOptions& options = {}) {
    return generate_signals(h.entries, m, seed, options);
}

/// C_y = H(A)^2, formed on A's eigenbasis from the squared filtered spectrum.
inline CovarianceMatrix population_covariance(const FilterMatrix& h) {
    const Vector sq = h.spectrum.cwiseAbs2();
    Matrix c = h.eigenvectors * sq.asDiagonal() * h.eigenvectors.transpose();
    c = (0.5 * (c + c.transpose())).eval();
    return {std::move(c), CovarianceSource::Population, 0};
}

/// (1/m) * sum_l (y_l - ybar)(y_l - ybar)^T.
inline CovarianceMatrix sample_covariance(const SignalEnsemble& e) {
    const Eigen::Index m = e.sample_count();
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "empty signal ensemble");
    const Vector mean = e.signals.rowwise().mean();
    const Matrix centered = e.signals.colwise() - mean;
    Matrix c = Matrix::Zero(e.node_count(), e.node_count());
    c.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / static_cast<double>(m));
    c = c.selfadjointView<Eigen::Lower>();
    return {std::move(c), CovarianceSource::Sample, m};
}

/// Spectral-norm distance ||sample - population||_2.
inline double covariance_deviation(const CovarianceMatrix& sample, const CovarianceMatrix& population) {
    if (sample.size() != population.size()) {
        throw Error(ErrorKind::DimensionMismatch, "covariance sizes differ");
    }
    return spectral_norm_sym(sample.entries - population.entries);
}

/// Largest observed ||y_l||_2^2 in the ensemble.
inline double max_squared_norm(const SignalEnsemble& e) {
    if (e.sample_count() == 0) return 0.0;
    return e.signals.colwise().squaredNorm().maxCoeff();
}

/// CSV export: header "# n=<N> m=<M> seed=<S> filter=<spec>", then one row per signal.
inline void write_signals_csv(std::ostream& out, const SignalEnsemble& e) {
    out << "# n=" << e.node_count() << " m=" << e.sample_count() << " seed=" << e.provenance.seed
        << " filter=" << e.provenance.filter << '\n';
    out.precision(17);
    for (Eigen::Index l = 0; l < e.sample_count(); ++l) {
        for (Eigen::Index i = 0; i < e.node_count(); ++i) {
            if (i) out << ',';
            out << e.signals(i, l);
        }
        out << '\n';
    }
}

inline void save_signals_csv(const std::string& path, const SignalEnsemble& e) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    write_signals_csv(out, e);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace centsel

#endif  // CENTSEL_SIGNALS_HPP
