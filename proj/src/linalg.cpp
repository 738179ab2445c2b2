#include "jfod/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jfod/errors.hpp"

namespace jfod {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexVector Matrix::column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

ComplexVector Matrix::apply(std::span<const Complex> x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector product: size mismatch");
    ComplexVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix difference: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& z : data_) acc += std::norm(z);
    return std::sqrt(acc);
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

HermitianMatrix::HermitianMatrix(const Matrix& m, double tolerance) {
    if (m.rows() != m.cols()) throw NonHermitianInput("Hermitian matrix must be square");
    if (m.rows() == 0) throw NonHermitianInput("Hermitian matrix must have positive dimension");
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
                throw NonHermitianInput("matrix has non-finite entries");
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tolerance)
                throw NonHermitianInput("matrix is not Hermitian at entry (" + std::to_string(r) + ", " +
                                        std::to_string(c) + ")");
        }
    *this = hermitian_part(m);
}

HermitianMatrix HermitianMatrix::hermitian_part(const Matrix& m) {
    HermitianMatrix h;
    const std::size_t n = m.rows();
    h.m_ = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        h.m_(r, r) = m(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            const Complex avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
            h.m_(r, c) = avg;
            h.m_(c, r) = std::conj(avg);
        }
    }
    return h;
}

HermitianMatrix HermitianMatrix::from_diagonal(std::span<const double> entries) {
    return hermitian_part(Matrix::diagonal(entries));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) { return hermitian_part(Matrix(n, n)); }

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i).real();
    return t;
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix::hermitian_part(a.matrix() - b.matrix());
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix::hermitian_part(a.matrix() + b.matrix());
}

VectorFamily::VectorFamily(std::size_t dim, std::vector<ComplexVector> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
    if (dim_ == 0) throw DimensionMismatch("vector family dimension must be positive");
    for (const auto& v : vectors_) {
        if (v.size() != dim_) throw DimensionMismatch("vector family: vector length differs from dimension");
        for (const auto& z : v)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidInput("vector family has non-finite entries");
    }
}

VectorFamily VectorFamily::from_synthesis(const Matrix& synthesis) {
    std::vector<ComplexVector> vs;
    vs.reserve(synthesis.cols());
    for (std::size_t c = 0; c < synthesis.cols(); ++c) vs.push_back(synthesis.column(c));
    return VectorFamily(synthesis.rows(), std::move(vs));
}

RealVector VectorFamily::squared_norms() const {
    RealVector out;
    out.reserve(vectors_.size());
    for (const auto& v : vectors_) out.push_back(squared_norm(v));
    return out;
}

Matrix VectorFamily::synthesis() const {
    Matrix t(dim_, vectors_.size());
    for (std::size_t c = 0; c < vectors_.size(); ++c)
        for (std::size_t r = 0; r < dim_; ++r) t(r, c) = vectors_[c][r];
    return t;
}

double squared_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

HermitianMatrix frame_operator(const VectorFamily& family) {
    const std::size_t d = family.dim();
    Matrix s(d, d);
    for (const auto& f : family.vectors())
        for (std::size_t r = 0; r < d; ++r) {
            if (f[r] == Complex{}) continue;
            for (std::size_t c = 0; c < d; ++c) s(r, c) += f[r] * std::conj(f[c]);
        }
    return HermitianMatrix::hermitian_part(s);
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalRelTol = 1e-14;

double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c) acc += std::norm(a(r, c));
    return std::sqrt(acc);
}

// Zeroes a(p, q) by a diagonal phase on column q followed by a real plane
// rotation in (p, q); accumulates the same unitary into v.
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.rows();
    const double mag = std::abs(a(p, q));
    if (mag == 0.0) return;

    const Complex phase = std::conj(a(p, q) / mag);
    for (std::size_t k = 0; k < n; ++k) {
        a(k, q) *= phase;
        v(k, q) *= phase;
    }
    for (std::size_t k = 0; k < n; ++k) a(q, k) *= std::conj(phase);

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
    const std::size_t n = h.dim();
    Matrix a = h.matrix();
    Matrix v = Matrix::identity(n);

    const double threshold = kOffDiagonalRelTol * h.frobenius_norm();
    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (++sweep > kMaxSweeps) throw ConvergenceFailure("Jacobi eigensolver did not converge in 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src).real();

        std::size_t lead = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::abs(v(r, src)) > std::abs(v(lead, src))) lead = r;
        const Complex phase = std::conj(v(lead, src)) / std::abs(v(lead, src));
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, src) * phase;
        out.vectors(lead, k) = std::abs(v(lead, src));
    }
    return out;
}

HermitianMatrix reconstruct(const Matrix& vectors, std::span<const double> values) {
    if (vectors.cols() != values.size()) throw DimensionMismatch("reconstruct: eigenvalue count mismatch");
    const std::size_t n = vectors.rows();
    Matrix out(n, n);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const Complex vr = values[k] * vectors(r, k);
            for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(vectors(c, k));
        }
    }
    return HermitianMatrix::hermitian_part(out);
}

double jfod_squared(std::span<const HermitianMatrix> a, std::span<const HermitianMatrix> b) {
    if (a.size() != b.size()) throw DimensionMismatch("jfod: operator lists differ in length");
    double total = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].dim() != b[j].dim())
            throw DimensionMismatch("jfod: dimension mismatch at index " + std::to_string(j));
        const double d = (a[j].matrix() - b[j].matrix()).frobenius_norm();
        total += d * d;
    }
    return total;
}

double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).frobenius_norm();
}

double schatten_norm(const HermitianMatrix& a, double p) {
    const auto values = eig_hermitian(a).values;
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : values) m = std::max(m, std::abs(x));
        return m;
    }
    double acc = 0.0;
    for (double x : values) acc += std::pow(std::abs(x), p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace jfod
