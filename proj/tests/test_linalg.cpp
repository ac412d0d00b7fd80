#include <doctest.h>

#include <array>
#include <cmath>

#include "geodim/linalg.hpp"
#include "geodim/manifold.hpp"

using namespace geodim;

TEST_SUITE("linalg") {

TEST_CASE("haar_orthogonal on O(1) is a fair sign") {
    RandomStream s = derive_stream(5, "o1");
    int plus = 0;
    for (int i = 0; i < 2000; ++i) {
        const Matrix o = haar_orthogonal(1, s);
        CHECK(std::abs(std::abs(o(0, 0)) - 1.0) < 1e-12);
        if (o(0, 0) > 0) ++plus;
    }
    CHECK(plus > 850);
    CHECK(plus < 1150);
}

TEST_CASE("haar_orthogonal is orthogonal") {
    RandomStream s = derive_stream(5, "o5");
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix o = haar_orthogonal(5, s);
        const Matrix err = o.transpose() * o - Matrix::Identity(5, 5);
        CHECK(err.cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(std::abs(o.determinant()) - 1.0) < 1e-8);
    }
}

TEST_CASE("haar_orthogonal first column is uniform on the sphere") {
    RandomStream s = derive_stream(11, "mc");
    Vector mean = Vector::Zero(3);
    const int reps = 10000;
    for (int i = 0; i < reps; ++i) mean += haar_orthogonal(3, s).col(0);
    mean /= static_cast<double>(reps);
    CHECK(mean.norm() < 0.05);
}

TEST_CASE("haar_special_orthogonal determinant and SO(1)") {
    RandomStream s = derive_stream(6, "so");
    for (int i = 0; i < 50; ++i) {
        const Matrix v = haar_special_orthogonal(4, s);
        CHECK(std::abs(v.determinant() - 1.0) < 1e-8);
        CHECK((v.transpose() * v - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    }
    for (int i = 0; i < 10; ++i) {
        const Matrix one = haar_special_orthogonal(1, s);
        CHECK(one(0, 0) == doctest::Approx(1.0));
    }
}

TEST_CASE("haar_special_orthogonal on SO(2) is a rotation") {
    RandomStream s = derive_stream(6, "so2");
    for (int i = 0; i < 50; ++i) {
        const Matrix v = haar_special_orthogonal(2, s);
        CHECK(v(0, 0) == doctest::Approx(v(1, 1)).epsilon(1e-10));
        CHECK(v(0, 1) == doctest::Approx(-v(1, 0)).epsilon(1e-10));
        CHECK(v(0, 0) * v(0, 0) + v(1, 0) * v(1, 0) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("haar_unitary is unitary with unimodular determinant") {
    RandomStream s = derive_stream(8, "u");
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix u = haar_unitary(3, s);
        const ComplexMatrix err = u.adjoint() * u - ComplexMatrix::Identity(3, 3);
        CHECK(err.cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(std::abs(u.determinant()) - 1.0) < 1e-8);
    }
    const ComplexMatrix one = haar_unitary(1, s);
    CHECK(std::abs(std::abs(one(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("haar_unitary |U11|^2 is uniform on [0,1] for n=2") {
    RandomStream s = derive_stream(13, "ks");
    const int reps = 10000;
    std::vector<double> values;
    values.reserve(reps);
    for (int i = 0; i < reps; ++i) {
        const ComplexMatrix u = haar_unitary(2, s);
        values.push_back(std::norm(u(0, 0)));
    }
    std::sort(values.begin(), values.end());
    double ks = 0.0;
    for (int i = 0; i < reps; ++i) {
        const double f = values[static_cast<std::size_t>(i)];
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / reps));
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / reps));
    }
    CHECK(ks < 0.02);
}

TEST_CASE("minor_det basics") {
    const Matrix id = Matrix::Identity(3, 3);
    const std::array<int, 2> r01{0, 1};
    CHECK(minor_det(id, r01, r01) == doctest::Approx(1.0));

    RandomStream s = derive_stream(2, "minor");
    const Matrix m = haar_orthogonal(4, s);
    const std::array<int, 2> r10{1, 0};
    const std::array<int, 2> c01{0, 1};
    CHECK(minor_det(m, r10, c01) == doctest::Approx(-minor_det(m, r01, c01)).epsilon(1e-12));

    CHECK_THROWS_AS(minor_det(m, std::array<int, 2>{0, 0}, c01), std::invalid_argument);
    CHECK_THROWS_AS(minor_det(m, std::array<int, 2>{0, 9}, c01), std::invalid_argument);
    CHECK_THROWS_AS(minor_det(m, std::array<int, 1>{0}, c01), std::invalid_argument);
}

TEST_CASE("minor_det satisfies the squared-minor normalization") {
    RandomStream s = derive_stream(3, "cb");
    const Matrix o = haar_orthogonal(6, s);
    const Matrix x = o.leftCols(3); // orthonormal columns
    const auto subsets = lex_subsets(6, 3);
    const std::array<int, 3> cols{0, 1, 2};
    double total = 0.0;
    for (const auto& rows : subsets) {
        const double d = minor_det(x, rows, cols);
        total += d * d;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sym_eig_desc orders and reconstructs") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    const SymEig eig = sym_eig_desc(d);
    CHECK(eig.values(0) == doctest::Approx(3.0));
    CHECK(eig.values(1) == doctest::Approx(2.0));
    CHECK(eig.values(2) == doctest::Approx(1.0));

    RandomStream s = derive_stream(4, "rank1");
    Vector v(5);
    for (int i = 0; i < 5; ++i) v(i) = s.normal();
    const Matrix outer = v * v.transpose();
    const SymEig r1 = sym_eig_desc(outer);
    CHECK(r1.values(0) == doctest::Approx(v.squaredNorm()).epsilon(1e-10));
    for (int i = 1; i < 5; ++i) CHECK(std::abs(r1.values(i)) < 1e-10);
}

TEST_CASE("sym_eig_desc matches trace identities on random symmetric input") {
    RandomStream s = derive_stream(4, "sym10");
    Matrix g(10, 10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) g(i, j) = s.normal();
    const Matrix sym = 0.5 * (g + g.transpose());
    const SymEig eig = sym_eig_desc(sym);
    CHECK(eig.values.sum() == doctest::Approx(sym.trace()).epsilon(1e-8));
    CHECK(eig.values.squaredNorm() == doctest::Approx((sym * sym).trace()).epsilon(1e-8));
    const Matrix rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((rebuilt - sym).cwiseAbs().maxCoeff() <
          1e-8 * std::max(1.0, sym.cwiseAbs().maxCoeff()));
}

TEST_CASE("sym_eig_desc rejects asymmetric input") {
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(sym_eig_desc(bad), std::invalid_argument);
}

TEST_CASE("invalid sizes are rejected") {
    RandomStream s = derive_stream(1, "zero");
    CHECK_THROWS_AS(haar_orthogonal(0, s), std::invalid_argument);
    CHECK_THROWS_AS(haar_special_orthogonal(0, s), std::invalid_argument);
    CHECK_THROWS_AS(haar_unitary(0, s), std::invalid_argument);
}

} // TEST_SUITE
