#include "jfod/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "jfod/errors.hpp"
#include "jfod/majorization.hpp"

namespace jfod {

Design::Design(std::vector<VectorFamily> families) : families_(std::move(families)) {
    for (const auto& f : families_)
        if (f.count() != families_.front().count())
            throw DimensionMismatch("design families must have the same number of vectors");
}

RealVector Design::joint_norms() const {
    RealVector out(vector_count(), 0.0);
    for (const auto& f : families_)
        for (std::size_t i = 0; i < f.count(); ++i) out[i] += squared_norm(f[i]);
    return out;
}

double Design::joint_norm_residual(std::span<const double> weights) const {
    if (weights.size() != vector_count()) throw DimensionMismatch("design: weight count differs from vector count");
    const RealVector norms = joint_norms();
    double worst = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i)
        worst = std::max(worst, std::abs(norms[i] - weights[i]) / weights[i]);
    return worst;
}

std::vector<HermitianMatrix> Design::frame_operators() const {
    std::vector<HermitianMatrix> out;
    out.reserve(families_.size());
    for (const auto& f : families_) out.push_back(frame_operator(f));
    return out;
}

void GramTarget::validate() const {
    if (diagonal.size() != spectrum.size() || diagonal.empty())
        throw DimensionMismatch("Gram target: diagonal and spectrum must have equal positive length");
    for (double s : spectrum)
        if (s < 0.0) throw MajorizationViolated("Gram target: spectrum must be non-negative");
    if (!majorizes(diagonal, spectrum)) throw MajorizationViolated("Gram target: diagonal is not majorized by spectrum");
}

namespace {

// Dense real square matrix, row-major; only used by the Givens chain.
struct RealSquare {
    std::size_t n;
    std::vector<double> a;
    explicit RealSquare(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

void rotate_rows(RealSquare& m, std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t k = 0; k < m.n; ++k) {
        const double mp = m(p, k);
        const double mq = m(q, k);
        m(p, k) = c * mp + s * mq;
        m(q, k) = -s * mp + c * mq;
    }
}

void rotate_cols(RealSquare& m, std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t k = 0; k < m.n; ++k) {
        const double mp = m(k, p);
        const double mq = m(k, q);
        m(k, p) = c * mp + s * mq;
        m(k, q) = -s * mp + c * mq;
    }
}

// Rotates in the (p, q) plane so that g(p, p) becomes target. The target
// must lie between the current g(q, q) and g(p, p); the reachable range of
// the (p, p) entry is the eigenvalue interval of the 2x2 block, which
// contains both.
void givens_to_target(RealSquare& g, RealSquare& q_mat, std::size_t p, std::size_t q, double target) {
    const double gp = g(p, p);
    const double gq = g(q, q);
    const double x = g(p, q);
    const double mid = 0.5 * (gp + gq);
    const double half = 0.5 * (gp - gq);
    const double radius = std::hypot(half, x);
    double angle = 0.0;
    if (radius > 0.0) {
        const double beta = std::atan2(x, half);
        const double cosine = std::clamp((target - mid) / radius, -1.0, 1.0);
        angle = 0.5 * (beta + std::acos(cosine));
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    rotate_rows(g, p, q, c, s);
    rotate_cols(g, p, q, c, s);
    rotate_rows(q_mat, p, q, c, s);
    g(p, p) = target;
    g(q, q) = gp + gq - target;
    const double off = 0.5 * (g(p, q) + g(q, p));
    g(p, q) = off;
    g(q, p) = off;
}

std::vector<std::size_t> descending_order(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

SchurHornConstruction schur_horn_construct(std::span<const double> diagonal, std::span<const double> spectrum) {
    GramTarget{RealVector(diagonal.begin(), diagonal.end()), RealVector(spectrum.begin(), spectrum.end())}.validate();
    const std::size_t n = diagonal.size();

    const auto diag_order = descending_order(diagonal);
    const auto spec_order = descending_order(spectrum);
    RealVector target(n);
    RealSquare g(n);
    RealSquare q_mat(n);
    for (std::size_t k = 0; k < n; ++k) {
        target[k] = diagonal[diag_order[k]];
        g(k, k) = spectrum[spec_order[k]];
        q_mat(k, k) = 1.0;
    }

    // In sorted coordinates the prefix sums of the current diagonal dominate
    // those of the target. Each step fixes the first mismatched entry p or
    // the first deficient entry q > p, so at most n - 1 rotations are used.
    const double eps = 1e-14 * (1.0 + std::max(max_abs(diagonal), max_abs(spectrum)));
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = 0;
        while (p < n && std::abs(g(p, p) - target[p]) <= eps) ++p;
        if (p == n) break;
        std::size_t q = p + 1;
        while (q < n && g(q, q) >= target[q] - eps) ++q;
        if (g(p, p) < target[p] || q == n) break;  // residual roundoff only
        const double t = std::min(g(p, p) - target[p], target[q] - g(q, q));
        givens_to_target(g, q_mat, p, q, g(p, p) - t);
        if (g(p, p) - target[p] > eps) g(q, q) = target[q];
    }

    Matrix m(n, n);
    Matrix rotation(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            m(diag_order[r], diag_order[c]) = g(r, c);
            rotation(diag_order[r], spec_order[c]) = q_mat(r, c);
        }
        m(diag_order[r], diag_order[r]) = target[r];
    }
    return {HermitianMatrix::hermitian_part(m), std::move(rotation)};
}

HermitianMatrix hermitian_with_diag_and_spectrum(const GramTarget& target) {
    return schur_horn_construct(target.diagonal, target.spectrum).matrix;
}

namespace {

// Synthesis basis * diag(sqrt spectrum) * rotation^T over the first `rank`
// spectrum slots: a dim x n matrix whose columns are the frame vectors.
Matrix synthesis_from_rotation(const Matrix& basis, std::span<const double> spectrum, const Matrix& rotation,
                               std::size_t rank) {
    const std::size_t d = basis.rows();
    const std::size_t n = rotation.rows();
    Matrix t(d, n);
    for (std::size_t k = 0; k < rank; ++k) {
        const double root = std::sqrt(std::max(spectrum[k], 0.0));
        if (root == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex coeff = root * rotation(i, k).real();
            if (coeff == Complex{}) continue;
            for (std::size_t r = 0; r < d; ++r) t(r, i) += basis(r, k) * coeff;
        }
    }
    return t;
}

}  // namespace

VectorFamily frame_with_operator_and_norms(const HermitianMatrix& s, std::span<const double> norms) {
    const std::size_t d = s.dim();
    const std::size_t n = norms.size();
    if (n == 0) throw DimensionMismatch("frame construction needs at least one norm");
    auto eig = eig_hermitian(s);
    const double floor = -1e-10 * std::max(1.0, s.frobenius_norm());
    for (double& v : eig.values) {
        if (v < floor) throw MajorizationViolated("frame operator must be positive semidefinite");
        v = std::max(v, 0.0);
    }
    if (!majorizes(norms, eig.values)) throw MajorizationViolated("norms are not majorized by the spectrum");

    RealVector spectrum(n, 0.0);
    const std::size_t rank = std::min(d, n);
    std::copy_n(eig.values.begin(), rank, spectrum.begin());
    const auto sh = schur_horn_construct(norms, spectrum);
    return VectorFamily::from_synthesis(synthesis_from_rotation(eig.vectors, spectrum, sh.rotation, rank));
}

std::vector<RealVector> split_weights(std::span<const double> weights, std::span<const RealVector> profiles) {
    const std::size_t n = weights.size();
    if (!std::is_sorted(weights.begin(), weights.end(), std::greater<>{}))
        throw InvalidWeights("weights must be non-increasing");
    RealVector z(n, 0.0);
    for (const auto& y : profiles) {
        if (y.size() != n) throw DimensionMismatch("split: profile length differs from weight count");
        if (!std::is_sorted(y.begin(), y.end(), std::greater<>{}))
            throw InvalidInput("split: profiles must be non-increasing");
        for (std::size_t i = 0; i < n; ++i) z[i] += y[i];
    }
    if (!majorizes(weights, z)) throw MajorizationViolated("weights are not majorized by the summed profiles");

    std::vector<RealVector> parts(profiles.begin(), profiles.end());
    const double eps = 1e-14 * (1.0 + std::max(max_abs(weights), max_abs(z)));
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = 0;
        while (p < n && std::abs(z[p] - weights[p]) <= eps) ++p;
        if (p == n) break;
        std::size_t q = p + 1;
        while (q < n && z[q] >= weights[q] - eps) ++q;
        if (z[p] < weights[p] || q == n) break;
        const double t = std::min(z[p] - weights[p], weights[q] - z[q]);
        // T-transform on (p, q) with mixing weight theta; weights[p] >=
        // weights[q] keeps z[p] - z[q] > t.
        const double theta = t / (z[p] - z[q]);
        for (auto& y : parts) {
            const double yp = y[p];
            const double yq = y[q];
            y[p] = (1.0 - theta) * yp + theta * yq;
            y[q] = theta * yp + (1.0 - theta) * yq;
        }
        z[p] -= t;
        z[q] += t;
    }
    return parts;
}

Design synthesize_optimal_design(const ProblemData& problem, const OptimalSpectra& spectra,
                                 std::span<const Matrix> bases) {
    const std::size_t m = problem.space_count();
    const std::size_t n = problem.vector_count();
    if (spectra.mu.size() != m) throw DimensionMismatch("synthesis: spectra do not match the problem");
    if (!bases.empty() && bases.size() != m) throw DimensionMismatch("synthesis: one basis per space is required");

    std::vector<RealVector> mu = spectra.mu;
    std::vector<RealVector> profiles;
    for (std::size_t j = 0; j < m; ++j) {
        const double floor = -1e-10 * (1.0 + problem.max_eigenvalue());
        for (double& v : mu[j]) {
            if (v < floor) throw InternalContradiction("optimal spectrum has a negative entry");
            v = std::max(v, 0.0);
        }
        RealVector y(n, 0.0);
        std::copy(mu[j].begin(), mu[j].end(), y.begin());
        std::sort(y.begin(), y.end(), std::greater<>{});
        profiles.push_back(std::move(y));
    }

    std::vector<RealVector> parts;
    try {
        parts = split_weights(problem.weights, profiles);
    } catch (const MajorizationViolated& e) {
        throw InternalContradiction(std::string("optimal spectra admit no design: ") + e.what());
    }

    std::vector<VectorFamily> families;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t dj = problem.dims[j];
        RealVector spectrum(n, 0.0);
        std::copy(mu[j].begin(), mu[j].end(), spectrum.begin());
        const auto sh = schur_horn_construct(parts[j], spectrum);
        const Matrix basis = bases.empty() ? Matrix::identity(dj) : bases[j];
        if (basis.rows() != dj || basis.cols() != dj) throw DimensionMismatch("synthesis: basis has the wrong shape");
        families.push_back(VectorFamily::from_synthesis(synthesis_from_rotation(basis, spectrum, sh.rotation, dj)));
    }
    return Design(std::move(families));
}

}  // namespace jfod
