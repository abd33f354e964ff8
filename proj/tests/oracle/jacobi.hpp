#ifndef CENTSEL_TESTS_ORACLE_JACOBI_HPP
#define CENTSEL_TESTS_ORACLE_JACOBI_HPP

// Test-only reference routines. They share nothing with the library's
// numerical path: plain nested vectors, textbook cyclic Jacobi rotations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

struct EigenPairs {
    std::vector<double> values;        // ascending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
};

/// Cyclic Jacobi eigenvalue algorithm for a symmetric matrix.
inline EigenPairs jacobi_eigen(Dense a, int max_sweeps = 100) {
    const std::size_t n = a.size();
    Dense v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] < a[y][y]; });
    EigenPairs out;
    for (std::size_t idx : order) {
        out.values.push_back(a[idx][idx]);
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v[k][idx];
        out.vectors.push_back(std::move(col));
    }
    return out;
}

inline Dense matmul(const Dense& x, const Dense& y) {
    const std::size_t n = x.size(), m = y[0].size(), k = y.size();
    Dense out(n, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][l] * y[l][j];
    return out;
}

/// sum_k gamma_k A^k by Horner's rule on matrices.
inline Dense horner(const std::vector<double>& gamma, const Dense& a) {
    const std::size_t n = a.size();
    Dense acc(n, std::vector<double>(n, 0.0));
    for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) {
        acc = matmul(acc, a);
        for (std::size_t i = 0; i < n; ++i) acc[i][i] += *it;
    }
    return acc;
}

/// Power iteration on A + shift*I; converges to the Perron vector of a connected graph.
inline std::vector<double> perron_vector(const Dense& a, double shift = 1.0, int iters = 20000) {
    const std::size_t n = a.size();
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < iters; ++it) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = shift * x[i];
            for (std::size_t j = 0; j < n; ++j) y[i] += a[i][j] * x[j];
        }
        double norm = 0.0;
        for (double yi : y) norm += yi * yi;
        norm = std::sqrt(norm);
        for (auto& yi : y) yi /= norm;
        x = std::move(y);
    }
    return x;
}

}  // namespace oracle

#endif  // CENTSEL_TESTS_ORACLE_JACOBI_HPP
