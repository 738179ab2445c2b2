#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jfod/errors.hpp"
#include "jfod/majorization.hpp"
#include "jfod/synthesis.hpp"
#include "oracles.hpp"

using namespace jfod;

namespace {

// A point of the permutohedron of the spectrum: a random convex
// combination of random permutations.
RealVector random_majorized(std::mt19937_64& rng, const RealVector& spectrum) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RealVector out(spectrum.size(), 0.0);
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        RealVector p = spectrum;
        std::shuffle(p.begin(), p.end(), rng);
        const double w = u(rng);
        total += w;
        for (std::size_t i = 0; i < p.size(); ++i) out[i] += w * p[i];
    }
    for (double& v : out) v /= total;
    return out;
}

RealVector random_spectrum(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 3.0);
    RealVector s(n);
    for (auto& v : s) v = u(rng);
    if (n > 1 && rng() % 3 == 0) s[0] = 0.0;
    return s;
}

void check_gram(const SchurHornConstruction& c, const RealVector& diagonal, const RealVector& spectrum) {
    const std::size_t n = diagonal.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(c.matrix(i, i).real() - diagonal[i]) <= 1e-10);
    RealVector want = spectrum;
    std::sort(want.begin(), want.end(), std::greater<>{});
    const auto got = eig_hermitian(c.matrix).values;
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-8);
    const Matrix q = c.rotation;
    CHECK((q.adjoint() * q - Matrix::identity(n)).frobenius_norm() < 1e-12);
    CHECK((reconstruct(q, spectrum) - c.matrix).frobenius_norm() < 1e-10 * (1.0 + c.matrix.frobenius_norm()));
}

ProblemData example() {
    return {{40, 35, 9, 5, 4.5, 3, 2.4, 2},
            {7, 5, 3},
            {{9, 5.5, 3, 0.3, 0, 0, 0}, {20, 1.1, 0.5, 0, 0}, {2, 1.5, 0.7}}};
}

}  // namespace

TEST_CASE("Schur-Horn: diagonal equal to spectrum") {
    const RealVector d{3.0, 2.0, 1.0};
    const auto c = schur_horn_construct(d, d);
    CHECK((c.matrix.matrix() - Matrix::diagonal(d)).frobenius_norm() < 1e-15);
}

TEST_CASE("Schur-Horn: rank one with unit diagonal") {
    const auto g = hermitian_with_diag_and_spectrum({{1.0, 1.0}, {2.0, 0.0}});
    CHECK(g(0, 0).real() == doctest::Approx(1.0));
    CHECK(g(1, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(g(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("Schur-Horn: random feasible pairs round trip") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 6;
        const auto spectrum = random_spectrum(rng, n);
        const auto diagonal = random_majorized(rng, spectrum);
        CAPTURE(t);
        check_gram(schur_horn_construct(diagonal, spectrum), diagonal, spectrum);
    }
}

TEST_CASE("Schur-Horn: infeasible pairs are rejected") {
    CHECK_THROWS_AS(hermitian_with_diag_and_spectrum({{2.0, 0.0}, {1.0, 1.0}}), MajorizationViolated);
    CHECK_THROWS_AS(hermitian_with_diag_and_spectrum({{1.0, 1.0}, {1.0, 0.5}}), MajorizationViolated);
    CHECK_THROWS_AS(hermitian_with_diag_and_spectrum({{0.5, 0.5}, {2.0, -1.0}}), MajorizationViolated);
    CHECK_THROWS_AS(schur_horn_construct(RealVector{3.0, 0.0, 0.0}, RealVector{1.0, 1.0, 1.0}), MajorizationViolated);
}

TEST_CASE("frame with prescribed operator and norms: basis") {
    const auto f = frame_with_operator_and_norms(HermitianMatrix(Matrix::identity(3)), RealVector{1.0, 1.0, 1.0});
    const Matrix t = f.synthesis();
    CHECK((t.adjoint() * t - Matrix::identity(3)).frobenius_norm() < 1e-12);
}

TEST_CASE("frame with prescribed operator and norms: forced parallel vectors") {
    const RealVector s{2.0, 0.0};
    const auto f = frame_with_operator_and_norms(HermitianMatrix::from_diagonal(s), RealVector{1.0, 1.0});
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(f[i][0]) == doctest::Approx(1.0));
        CHECK(std::abs(f[i][1]) < 1e-12);
    }
}

TEST_CASE("frame with prescribed operator and norms: random operators") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 60; ++t) {
        const std::size_t d = 1 + t % 4;
        const std::size_t n = d + t % 5;
        const auto s = frame_operator(oracle::random_family(rng, d, d + t % 3));
        RealVector padded = eig_hermitian(s).values;
        for (double& v : padded) v = std::max(v, 0.0);
        padded.resize(n, 0.0);
        const auto norms = random_majorized(rng, padded);
        const auto f = frame_with_operator_and_norms(s, norms);
        CAPTURE(t);
        CHECK(f.count() == n);
        const Matrix naive = oracle::naive_frame_operator(f);
        CHECK((naive - s.matrix()).frobenius_norm() < 1e-9 * (1.0 + s.frobenius_norm()));
        const auto got = f.squared_norms();
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - norms[i]) < 1e-10 * (1.0 + norms[i]));
    }
}

TEST_CASE("frame with prescribed operator and norms: infeasible norms") {
    const RealVector s{1.0, 1.0};
    CHECK_THROWS_AS(frame_with_operator_and_norms(HermitianMatrix::from_diagonal(s), RealVector{1.5, 0.5}),
                    MajorizationViolated);
}

TEST_CASE("weight split") {
    const RealVector weights{3.0, 2.0, 1.0};
    const std::vector<RealVector> profiles{{2.0, 1.0, 0.0}, {3.0, 0.0, 0.0}};
    const auto split = split_weights(weights, profiles);
    REQUIRE(split.size() == 2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(split[0][i] + split[1][i] == doctest::Approx(weights[i]));
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(majorizes(split[j], profiles[j]));
        for (double v : split[j]) CHECK(v >= 0.0);
    }
    const std::vector<RealVector> small{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(split_weights(RealVector{5.0, 1.0, 0.0}, small), MajorizationViolated);
}

TEST_CASE("optimal design on the Example") {
    const auto init = initial_data_from_spectra(example());
    const auto& p = init.problem;
    const auto spectra = compute_optimal_spectra(p, compute_b(p));
    const auto design = synthesize_optimal_design(p, spectra, init.bases);
    const auto ops = design.frame_operators();
    const double value = jfod_squared(init.operators, ops);
    CHECK(std::abs(value - 265.685) < 1e-2);
    CHECK(std::abs(value - spectra.min_value) <= 1e-7 * (1.0 + spectra.min_value));
    CHECK(design.joint_norm_residual(p.weights) <= 1e-10);
}

TEST_CASE("one vector, zero operator") {
    const auto init = initial_data_from_spectra({{1.0}, {1}, {{0.0}}});
    const auto spectra = compute_optimal_spectra(init.problem, compute_b(init.problem));
    CHECK(spectra.delta[0][0] == doctest::Approx(-1.0));
    const auto design = synthesize_optimal_design(init.problem, spectra, init.bases);
    CHECK(std::abs(design.family(0)[0][0]) == doctest::Approx(1.0));
    CHECK(jfod_squared(init.operators, design.frame_operators()) == doctest::Approx(1.0));
}

TEST_CASE("optimal designs on random problems") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 60; ++t) {
        const auto init = oracle::random_problem(rng, 3, 5, 8);
        const auto& p = init.problem;
        const auto spectra = compute_optimal_spectra(p, compute_b(p));
        const auto design = synthesize_optimal_design(p, spectra, init.bases);
        CAPTURE(t);
        REQUIRE(design.space_count() == p.dims.size());
        CHECK(design.vector_count() == p.weights.size());
        const auto ops = design.frame_operators();
        CHECK(std::abs(jfod_squared(init.operators, ops) - spectra.min_value) <= 1e-7 * (1.0 + spectra.min_value));
        CHECK(design.joint_norm_residual(p.weights) <= 1e-10);
        for (std::size_t j = 0; j < ops.size(); ++j) {
            const Matrix naive = oracle::naive_frame_operator(design.family(j));
            CHECK((naive - ops[j].matrix()).frobenius_norm() < 1e-10 * (1.0 + naive.frobenius_norm()));
            CHECK(commutator_norm(ops[j], init.operators[j]) <= 1e-7);
            // Simultaneous diagonalisation by the initial eigenbasis.
            const Matrix rotated = init.bases[j].adjoint() * ops[j].matrix() * init.bases[j];
            double off = 0.0;
            for (std::size_t r = 0; r < rotated.rows(); ++r)
                for (std::size_t c = 0; c < rotated.cols(); ++c)
                    if (r != c) off += std::norm(rotated(r, c));
            CHECK(std::sqrt(off) <= 1e-7);
            const auto gap = eig_hermitian(init.operators[j] - ops[j]).values;
            RealVector delta = spectra.delta[j];
            std::sort(delta.begin(), delta.end(), std::greater<>{});
            for (std::size_t i = 0; i < gap.size(); ++i) CHECK(std::abs(gap[i] - delta[i]) <= 1e-7);
        }
    }
}

TEST_CASE("design shape checks") {
    const VectorFamily a(2, {{1.0, 0.0}, {0.0, 1.0}});
    const VectorFamily b(1, {{1.0}});
    CHECK_THROWS_AS(Design({a, b}), DimensionMismatch);
}
