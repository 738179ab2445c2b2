#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jfod {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix adjoint() const;
    ComplexVector column(std::size_t c) const;
    ComplexVector apply(std::span<const Complex> x) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex s);

    double frobenius_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);

// Self-adjoint matrix. Construction checks the conjugate symmetry of the
// input (absolute tolerance per entry) and stores the exact Hermitian part.
class HermitianMatrix {
public:
    static constexpr double kSymmetryTolerance = 1e-12;

    HermitianMatrix() = default;
    explicit HermitianMatrix(const Matrix& m, double tolerance = kSymmetryTolerance);

    // Takes (m + m*)/2 without checking; for products known to be
    // Hermitian up to roundoff.
    static HermitianMatrix hermitian_part(const Matrix& m);
    static HermitianMatrix from_diagonal(std::span<const double> entries);
    static HermitianMatrix zero(std::size_t n);

    std::size_t dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    double trace() const;
    double frobenius_norm() const { return m_.frobenius_norm(); }

private:
    Matrix m_;
};

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);

// n vectors in C^d.
class VectorFamily {
public:
    VectorFamily() = default;
    VectorFamily(std::size_t dim, std::vector<ComplexVector> vectors);

    // Columns of a d x n synthesis matrix become the vectors.
    static VectorFamily from_synthesis(const Matrix& synthesis);

    std::size_t dim() const { return dim_; }
    std::size_t count() const { return vectors_.size(); }
    const ComplexVector& operator[](std::size_t i) const { return vectors_[i]; }
    ComplexVector& operator[](std::size_t i) { return vectors_[i]; }
    const std::vector<ComplexVector>& vectors() const { return vectors_; }

    RealVector squared_norms() const;
    Matrix synthesis() const;

private:
    std::size_t dim_ = 0;
    std::vector<ComplexVector> vectors_;
};

struct EigenDecomposition {
    RealVector values;  // non-increasing
    Matrix vectors;     // column k belongs to values[k]
};

double squared_norm(std::span<const Complex> v);

// sum_i f_i f_i^*
HermitianMatrix frame_operator(const VectorFamily& family);

// Cyclic Jacobi. Throws NonHermitianInput (via HermitianMatrix) or
// ConvergenceFailure.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

// V diag(values) V^*
HermitianMatrix reconstruct(const Matrix& vectors, std::span<const double> values);

// sum_j ||a_j - b_j||_F^2
double jfod_squared(std::span<const HermitianMatrix> a, std::span<const HermitianMatrix> b);

// ||ab - ba||_F
double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b);

// Schatten p-norm from eigenvalues; p = infinity gives the operator norm.
double schatten_norm(const HermitianMatrix& a, double p);

}  // namespace jfod
