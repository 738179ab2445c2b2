#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jfod/errors.hpp"
#include "jfod/linalg.hpp"
#include "oracles.hpp"

using namespace jfod;

TEST_CASE("frame operator of small families") {
    const VectorFamily basis(2, {{1.0, 0.0}, {0.0, 1.0}});
    const auto s = frame_operator(basis);
    CHECK((s.matrix() - Matrix::identity(2)).frobenius_norm() == doctest::Approx(0.0));

    const VectorFamily twice(2, {{1.0, 0.0}, {1.0, 0.0}});
    const RealVector diag{2.0, 0.0};
    CHECK((frame_operator(twice).matrix() - Matrix::diagonal(diag)).frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("frame operator matches the naive double loop") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto f = oracle::random_family(rng, 2 + t % 3, 3 + t % 4);
        const Matrix naive = oracle::naive_frame_operator(f);
        CHECK((frame_operator(f).matrix() - naive).frobenius_norm() <= 1e-13 * (1.0 + naive.frobenius_norm()));
    }
}

TEST_CASE("frame operator is PSD with trace equal to the squared norms") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 30; ++t) {
        const auto f = oracle::random_family(rng, 1 + t % 6, 1 + t % 9);
        const auto s = frame_operator(f);
        for (double v : eig_hermitian(s).values) CHECK(v >= -1e-10);
        double total = 0.0;
        for (double x : f.squared_norms()) total += x;
        CHECK(std::abs(s.trace() - total) <= 1e-12 * total);
    }
}

TEST_CASE("eigen-decomposition of known matrices") {
    const RealVector d{3.0, 1.0, 2.0};
    const auto e = eig_hermitian(HermitianMatrix::from_diagonal(d));
    CHECK(e.values == RealVector{3.0, 2.0, 1.0});
    CHECK(std::abs(e.vectors(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.vectors(2, 1) - 1.0) < 1e-15);
    CHECK(std::abs(e.vectors(1, 2) - 1.0) < 1e-15);

    Matrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    const auto s = eig_hermitian(HermitianMatrix(swap));
    CHECK(s.values[0] == doctest::Approx(1.0));
    CHECK(s.values[1] == doctest::Approx(-1.0));
}

TEST_CASE("eigenvalues agree with determinant bisection") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        const auto a = oracle::random_hermitian(rng, 5);
        const auto roots = oracle::determinant_bisection_eigenvalues(a.matrix());
        const auto values = eig_hermitian(a).values;
        REQUIRE(roots.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) CHECK(values[i] == doctest::Approx(roots[i]).epsilon(1e-9));
    }
}

TEST_CASE("eigen round trip up to dimension 50") {
    std::mt19937_64 rng(14);
    for (std::size_t d : {1u, 2u, 7u, 20u, 50u}) {
        const auto a = oracle::random_hermitian(rng, d);
        const auto e = eig_hermitian(a);
        CHECK(std::is_sorted(e.values.rbegin(), e.values.rend()));
        const auto back = reconstruct(e.vectors, e.values);
        CHECK((a - back).frobenius_norm() <= 1e-10 * a.frobenius_norm());
        const Matrix gram = e.vectors.adjoint() * e.vectors;
        CHECK((gram - Matrix::identity(d)).frobenius_norm() <= 1e-12 * static_cast<double>(d));
    }
}

TEST_CASE("eigenvector phase convention") {
    std::mt19937_64 rng(15);
    const auto e = eig_hermitian(oracle::random_hermitian(rng, 6));
    for (std::size_t c = 0; c < 6; ++c) {
        std::size_t big = 0;
        for (std::size_t r = 1; r < 6; ++r)
            if (std::abs(e.vectors(r, c)) > std::abs(e.vectors(big, c))) big = r;
        CHECK(std::abs(e.vectors(big, c).imag()) < 1e-14);
        CHECK(e.vectors(big, c).real() > 0.0);
    }
}

TEST_CASE("Hermitian construction rejects bad input") {
    Matrix m(2, 2);
    m(0, 1) = {1.0, 1.0};
    m(1, 0) = {1.0, 1.0};
    CHECK_THROWS_AS(HermitianMatrix{m}, NonHermitianInput);
    m(1, 0) = {1.0, -1.0};
    CHECK_NOTHROW(HermitianMatrix{m});
    m(0, 0) = {0.0, 0.5};
    CHECK_THROWS_AS(HermitianMatrix{m}, NonHermitianInput);
    Matrix nan(1, 1);
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(HermitianMatrix{nan}, NonHermitianInput);
    CHECK_THROWS_AS(HermitianMatrix{Matrix(2, 3)}, NonHermitianInput);
}

TEST_CASE("jfod distance") {
    std::mt19937_64 rng(16);
    std::vector<HermitianMatrix> a{oracle::random_hermitian(rng, 3), oracle::random_hermitian(rng, 2)};
    std::vector<HermitianMatrix> b{oracle::random_hermitian(rng, 3), oracle::random_hermitian(rng, 2)};
    CHECK(jfod_squared(a, a) == 0.0);
    CHECK(jfod_squared(a, b) == doctest::Approx(jfod_squared(b, a)));
    CHECK(jfod_squared(a, b) > 0.0);

    const RealVector one{1.0, 0.0};
    const RealVector zero{0.0, 0.0};
    std::vector<HermitianMatrix> x{HermitianMatrix::from_diagonal(one)};
    std::vector<HermitianMatrix> y{HermitianMatrix::from_diagonal(zero)};
    CHECK(jfod_squared(x, y) == doctest::Approx(1.0));

    std::vector<HermitianMatrix> short_list{a[0]};
    CHECK_THROWS_AS(jfod_squared(a, short_list), DimensionMismatch);
    std::vector<HermitianMatrix> swapped{a[1], a[0]};
    CHECK_THROWS_AS(jfod_squared(a, swapped), DimensionMismatch);
}

TEST_CASE("Schatten norms") {
    const RealVector d{3.0, -4.0};
    const auto a = HermitianMatrix::from_diagonal(d);
    CHECK(schatten_norm(a, 1.0) == doctest::Approx(7.0));
    CHECK(schatten_norm(a, 2.0) == doctest::Approx(5.0));
    CHECK(schatten_norm(a, std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
}

TEST_CASE("vector family validation") {
    CHECK_THROWS_AS(VectorFamily(2, {{1.0, 0.0}, {1.0}}), DimensionMismatch);
    std::mt19937_64 rng(17);
    const Matrix t = oracle::random_matrix(rng, 3, 4);
    const auto f = VectorFamily::from_synthesis(t);
    CHECK(f.count() == 4);
    CHECK((f.synthesis() - t).frobenius_norm() == 0.0);
}
