#ifndef CENTSEL_SPECTRAL_HPP
#define CENTSEL_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "centsel/error.hpp"

namespace centsel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/**
 * Flip v in place so that its entries sum to a nonnegative value.
 *
 * When the sum is zero (within 1e-12) the entry of largest magnitude is
 * made positive instead, the lowest index winning among equal magnitudes.
 * canonicalize_sign(v) and canonicalize_sign(-v) agree.
 */
inline void canonicalize_sign(Eigen::Ref<Vector> v) {
    if (v.size() == 0) return;
    const double sum = v.sum();
    if (std::abs(sum) > 1e-12) {
        if (sum < 0.0) v = -v;
        return;
    }
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    if (v[best] < 0.0) v = -v;
}

/// Eigenpairs of a symmetric matrix; eigenvalues ascending, column i of
/// `eigenvectors` pairs with `eigenvalues[i]`.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
    }
};

namespace detail {

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has NaN/Inf entries");
}

inline void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not square");
    }
}

}  // namespace detail

/**
 * Deterministic dense symmetric eigendecomposition.
 *
 * The input is symmetrized as (M + M^T)/2 before decomposing, so small
 * asymmetries from accumulated round-off are tolerated. Repeated
 * eigenvalues come back with an arbitrary orthonormal basis of their
 * eigenspace; callers needing identifiability must check eigengaps.
 */
inline SpectralDecomposition eig_sym(const Matrix& m) {
    detail::require_square(m, "eig_sym input");
    detail::require_finite(m, "eig_sym input");
    if (m.rows() == 0) return {};
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NonFinite, "symmetric eigensolver did not converge");
    }
    SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
        canonicalize_sign(out.eigenvectors.col(c));
    }
    return out;
}

/// Eigenvalues only, ascending.
inline Vector eigvals_sym(const Matrix& m) {
    detail::require_square(m, "eigvals_sym input");
    detail::require_finite(m, "eigvals_sym input");
    if (m.rows() == 0) return {};
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NonFinite, "symmetric eigensolver did not converge");
    }
    return solver.eigenvalues();
}

/// min{lambda_j - lambda_{j-1}, lambda_{j+1} - lambda_j}, one-sided at the ends.
inline double eigengap_at(const Vector& eigenvalues, Eigen::Index j) {
    const Eigen::Index n = eigenvalues.size();
    if (n == 1) throw Error(ErrorKind::SingleEigenvalue, "eigengap undefined for a single eigenvalue");
    if (j < 0 || j >= n) throw Error(ErrorKind::InvalidArgument, "eigengap index out of range");
    double gap = std::numeric_limits<double>::infinity();
    if (j > 0) gap = std::min(gap, eigenvalues[j] - eigenvalues[j - 1]);
    if (j + 1 < n) gap = std::min(gap, eigenvalues[j + 1] - eigenvalues[j]);
    return std::max(gap, 0.0);
}

/// lambda -> (lambda - offset) * scale.
struct AffineMap {
    double offset = 0.0;
    double scale = 1.0;

    double operator()(double lambda) const { return (lambda - offset) * scale; }
};

struct RescaledSpectrum {
    Vector values;
    AffineMap map;
};

/// Min-max rescaling onto [0, 1].
inline RescaledSpectrum rescale_unit_interval(const Vector& eigenvalues) {
    if (eigenvalues.size() == 0) throw Error(ErrorKind::DegenerateSpectrum, "empty spectrum");
    const double lo = eigenvalues.minCoeff();
    const double hi = eigenvalues.maxCoeff();
    if (!(hi - lo >= 1e-12)) {
        throw Error(ErrorKind::DegenerateSpectrum, "spectrum range below 1e-12");
    }
    AffineMap map{lo, 1.0 / (hi - lo)};
    Vector values = eigenvalues.unaryExpr([&](double x) { return std::clamp(map(x), 0.0, 1.0); });
    return {std::move(values), map};
}

/// sqrt(1 - <v1, v2>^2); invariant to the sign of either argument.
inline double sin_angle(const Vector& v1, const Vector& v2) {
    if (v1.size() != v2.size()) throw Error(ErrorKind::DimensionMismatch, "sin_angle size mismatch");
    const double c = std::clamp(v1.dot(v2), -1.0, 1.0);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

/// Largest absolute eigenvalue of a symmetric matrix.
inline double spectral_norm_sym(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    const Vector ev = eigvals_sym(m);
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

}  // namespace centsel

#endif  // CENTSEL_SPECTRAL_HPP
