#include <gtest/gtest.h>

#include <cmath>

#include "centsel/spectral.hpp"
#include "test_util.hpp"

using namespace centsel;

namespace {

Matrix random_symmetric(Rng& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = g(rng);
    return m;
}

void expect_contract(const Matrix& m, const SpectralDecomposition& d) {
    const Eigen::Index n = m.rows();
    ASSERT_EQ(d.size(), n);
    EXPECT_LE((d.eigenvectors.transpose() * d.eigenvectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-8);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    EXPECT_LE((d.reconstruct() - m).cwiseAbs().maxCoeff(), 1e-7 * scale);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(d.eigenvalues[i - 1], d.eigenvalues[i]);
    for (Eigen::Index c = 0; c < n; ++c) {
        Vector col = d.eigenvectors.col(c);
        Vector flipped = -col;
        canonicalize_sign(flipped);
        EXPECT_EQ(flipped, col) << "column " << c << " is not in canonical sign";
    }
}

}  // namespace

TEST(EigSym, IdentityAndDiagonal) {
    const SpectralDecomposition id = eig_sym(Matrix::Identity(3, 3));
    EXPECT_EQ(id.eigenvalues, Vector::Ones(3));
    expect_contract(Matrix::Identity(3, 3), id);

    Matrix d = Vector((Vector(3) << 3, 1, 2).finished()).asDiagonal();
    const SpectralDecomposition dd = eig_sym(d);
    EXPECT_NEAR(dd.eigenvalues[0], 1, 1e-14);
    EXPECT_NEAR(dd.eigenvalues[1], 2, 1e-14);
    EXPECT_NEAR(dd.eigenvalues[2], 3, 1e-14);
    EXPECT_NEAR(dd.eigenvectors(1, 0), 1, 1e-14);
    EXPECT_NEAR(dd.eigenvectors(2, 1), 1, 1e-14);
    EXPECT_NEAR(dd.eigenvectors(0, 2), 1, 1e-14);
}

TEST(EigSym, PathOfThree) {
    const Matrix a = adjacency(testutil::path_graph(3)).entries;
    const SpectralDecomposition d = eig_sym(a);
    EXPECT_NEAR(d.eigenvalues[0], -std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(d.eigenvalues[1], 0.0, 1e-12);
    EXPECT_NEAR(d.eigenvalues[2], std::sqrt(2.0), 1e-12);
    expect_contract(a, d);
}

TEST(EigSym, AgreesWithJacobiOracle) {
    Rng rng(2024);
    for (int rep = 0; rep < 30; ++rep) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 50);
        const Matrix m = random_symmetric(rng, n);
        const SpectralDecomposition d = eig_sym(m);
        expect_contract(m, d);
        const auto ref = oracle::jacobi_eigen(testutil::to_dense(m));
        for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(d.eigenvalues[i], ref.values[i], 1e-9);
        EXPECT_EQ(eigvals_sym(m).size(), n);
    }
}

TEST(EigSym, RejectsBadInput) {
    Matrix nan = Matrix::Zero(2, 2);
    nan(0, 1) = std::nan("");
    try {
        eig_sym(nan);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonFinite);
    }
    EXPECT_THROW(eig_sym(Matrix::Zero(2, 3)), Error);
}

TEST(CanonicalSign, Rules) {
    Vector v(3);
    v << -1, -2, 0.5;
    canonicalize_sign(v);
    EXPECT_GT(v.sum(), 0);
    Vector tie(2);
    tie << 1, -1;
    Vector neg = -tie;
    canonicalize_sign(tie);
    canonicalize_sign(neg);
    EXPECT_EQ(tie, neg);
    EXPECT_EQ(tie[0], 1.0);
    Vector zsum(3);
    zsum << 0.5, -2, 1.5;
    canonicalize_sign(zsum);
    EXPECT_EQ(zsum[1], 2.0);
}

TEST(Eigengap, Examples) {
    Vector ev(3);
    ev << 0, 1, 3;
    EXPECT_EQ(eigengap_at(ev, 1), 1.0);
    EXPECT_EQ(eigengap_at(ev, 2), 2.0);
    EXPECT_EQ(eigengap_at(ev, 0), 1.0);
    try {
        eigengap_at(Vector::Ones(1), 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingleEigenvalue);
    }
    Vector rep(3);
    rep << 0, 1, 1;
    EXPECT_EQ(eigengap_at(rep, 1), 0.0);
    EXPECT_EQ(eigengap_at(rep, 0), 1.0);
}

TEST(Eigengap, NonnegativeOnRandomSpectra) {
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
        const Vector ev = eigvals_sym(random_symmetric(rng, 10));
        for (Eigen::Index j = 0; j < ev.size(); ++j) EXPECT_GE(eigengap_at(ev, j), 0.0);
    }
}

TEST(Rescale, Examples) {
    Vector a(3);
    a << -std::sqrt(2.0), 0, std::sqrt(2.0);
    const RescaledSpectrum r = rescale_unit_interval(a);
    EXPECT_NEAR(r.values[0], 0, 1e-15);
    EXPECT_NEAR(r.values[1], 0.5, 1e-15);
    EXPECT_NEAR(r.values[2], 1, 1e-15);
    Vector b(2);
    b << 0, 1;
    const RescaledSpectrum rb = rescale_unit_interval(b);
    EXPECT_EQ(rb.values, b);
    EXPECT_EQ(rb.map.offset, 0.0);
    EXPECT_EQ(rb.map.scale, 1.0);
    Vector c(3);
    c << 2, 4, 6;
    EXPECT_EQ(rescale_unit_interval(c).values, (Vector(3) << 0, 0.5, 1).finished());
    try {
        rescale_unit_interval(Vector::Constant(4, 2.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateSpectrum);
    }
}

TEST(Rescale, PreservesOrderAndRelativeGaps) {
    Rng rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        const Vector ev = eigvals_sym(random_symmetric(rng, 12));
        const RescaledSpectrum r = rescale_unit_interval(ev);
        const double s = 1.0 / (ev.maxCoeff() - ev.minCoeff());
        for (Eigen::Index i = 1; i < ev.size(); ++i) {
            EXPECT_LE(r.values[i - 1], r.values[i]);
            EXPECT_NEAR(r.values[i] - r.values[i - 1], (ev[i] - ev[i - 1]) * s, 1e-12);
        }
    }
}

TEST(SinAngle, ExamplesAndSymmetry) {
    const Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1);
    EXPECT_EQ(sin_angle(e1, e1), 0.0);
    EXPECT_EQ(sin_angle(e1, -e1), 0.0);
    EXPECT_EQ(sin_angle(e1, e2), 1.0);
    Rng rng(9);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 50; ++rep) {
        Vector v(5), w(5);
        for (int i = 0; i < 5; ++i) {
            v[i] = g(rng);
            w[i] = g(rng);
        }
        v.normalize();
        w.normalize();
        EXPECT_EQ(sin_angle(v, w), sin_angle(w, v));
        EXPECT_EQ(sin_angle(v, w), sin_angle(-v, w));
        EXPECT_GE(sin_angle(v, w), 0.0);
        EXPECT_LE(sin_angle(v, w), 1.0);
    }
    EXPECT_THROW(sin_angle(e1, Vector::Unit(2, 0)), Error);
}

TEST(SpectralNorm, Diagonal) {
    Matrix d = Vector((Vector(2) << 0.3, -0.5).finished()).asDiagonal();
    EXPECT_NEAR(spectral_norm_sym(d), 0.5, 1e-15);
}
