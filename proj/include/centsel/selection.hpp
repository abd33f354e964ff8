#ifndef CENTSEL_SELECTION_HPP
#define CENTSEL_SELECTION_HPP

#include <cmath>
#include <cstddef>
#include <optional>

#include "centsel/error.hpp"
#include "centsel/graph.hpp"
#include "centsel/signals.hpp"
#include "centsel/spectral.hpp"

namespace centsel {

enum class ConeBranch { Positive, Negative };

/// Nearest point of the centrality cone C+ u C- to a unit vector.
struct ConeProjection {
    Vector input;
    Vector projected;
    double score = 0.0;  ///< cos of the angle between input and projected
    ConeBranch branch = ConeBranch::Positive;
};

/**
 * Project v onto C = C+ u C-.
 *
 * The candidates are the positive part max(v, 0) and the negative part
 * min(v, 0). Since ||v - v+||^2 = ||v||^2 - ||v+||^2, the closer one is the
 * one with the larger norm; equal norms go to the positive branch. For a
 * unit v the cosine of the angle to the projection is exactly that norm.
 */
inline ConeProjection project_to_cone(const Vector& v) {
    const double norm = v.norm();
    if (norm < 1e-12) throw Error(ErrorKind::ZeroVector, "cannot project a zero vector onto the cone");
    ConeProjection p;
    p.input = v;
    Vector pos = v.cwiseMax(0.0);
    Vector neg = v.cwiseMin(0.0);
    const double pos_norm = pos.norm();
    const double neg_norm = neg.norm();
    if (pos_norm >= neg_norm) {
        p.projected = std::move(pos);
        p.branch = ConeBranch::Positive;
        p.score = pos_norm / norm;
    } else {
        p.projected = std::move(neg);
        p.branch = ConeBranch::Negative;
        p.score = neg_norm / norm;
    }
    return p;
}

inline double cone_score(const Vector& v) { return project_to_cone(v).score; }

struct SelectionDiagnostics {
    double eigengap = 0.0;  ///< eigengap of the covariance spectrum at the chosen index
    std::optional<Eigen::Index> optimal_index;
    std::optional<double> cos_true;  ///< |<estimate, u>| when the truth is known
};

struct SelectionResult {
    Eigen::Index chosen_index = 0;
    Vector scores;
    Vector estimate;
    SpectralDecomposition decomposition;  ///< of the input covariance
    SelectionDiagnostics diagnostics;
};

/// Index of the eigenvector best aligned (in absolute inner product) with u.
inline Eigen::Index oracle_optimal_index(const SpectralDecomposition& eig, const Vector& u) {
    if (eig.eigenvectors.rows() != u.size()) {
        throw Error(ErrorKind::DimensionMismatch, "centrality length differs from covariance size");
    }
    const Vector overlap = (eig.eigenvectors.transpose() * u).cwiseAbs();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < overlap.size(); ++i) {
        if (overlap[i] > overlap[best]) best = i;
    }
    return best;
}

inline Eigen::Index oracle_optimal_index(const CovarianceMatrix& cov, const CentralityVector& u) {
    return oracle_optimal_index(eig_sym(cov.entries), u.values);
}

/**
 * Eigenvector selection.
 *
 * Decomposes the covariance, scores each eigenvector by its cosine to the
 * cone, and returns the highest score (lowest index on ties). The estimate
 * is oriented into C+. When no eigenvector lies in the cone this still
 * returns the one closest to it.
 */
inline SelectionResult select_centrality(SpectralDecomposition eig) {
    const Eigen::Index n = eig.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty covariance");
    SelectionResult r;
    r.scores.resize(n);
    ConeBranch best_branch = ConeBranch::Positive;
    for (Eigen::Index i = 0; i < n; ++i) {
        const ConeProjection p = project_to_cone(eig.eigenvectors.col(i));
        r.scores[i] = p.score;
        if (i == 0 || p.score > r.scores[r.chosen_index]) {
            r.chosen_index = i;
            best_branch = p.branch;
        }
    }
    r.estimate = eig.eigenvectors.col(r.chosen_index);
    if (best_branch == ConeBranch::Negative) r.estimate = -r.estimate;
    r.estimate.normalize();
    r.diagnostics.eigengap = n > 1 ? eigengap_at(eig.eigenvalues, r.chosen_index) : 0.0;
    r.decomposition = std::move(eig);
    return r;
}

inline SelectionResult select_centrality(const CovarianceMatrix& cov) {
    return select_centrality(eig_sym(cov.entries));
}

/// As above, additionally filling the truth-dependent diagnostics.
inline SelectionResult select_centrality(const CovarianceMatrix& cov, const CentralityVector& truth) {
    SelectionResult r = select_centrality(cov);
    r.diagnostics.optimal_index = oracle_optimal_index(r.decomposition, truth.values);
    r.diagnostics.cos_true = std::abs(r.estimate.dot(truth.values));
    return r;
}

inline bool selection_correct(const SelectionResult& result, Eigen::Index oracle_index) {
    return result.chosen_index == oracle_index;
}

}  // namespace centsel

#endif  // CENTSEL_SELECTION_HPP
