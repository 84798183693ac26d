#pragma once

#include <complex>
#include <vector>

#include "error.hpp"

namespace etf {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major storage. Entries are indexed 0-based;
/// index *sets* (subsets of rows/columns) are 1-based throughout the library,
/// matching the on-disk formats.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 1 || cols < 1)
            throw Error(Errc::invalid_argument, "matrix dimensions must be positive");
        data_.assign(static_cast<size_t>(rows) * cols, cdouble{0.0, 0.0});
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    cdouble& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    cdouble operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    [[nodiscard]] const std::vector<cdouble>& data() const noexcept { return data_; }

    [[nodiscard]] ComplexMatrix conjugate() const;
    [[nodiscard]] ComplexMatrix adjoint() const;

    /// max_{i,j} |A[i,j] - conj(A[j,i])|; requires a square matrix
    [[nodiscard]] double hermitian_residual() const;
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] double frobenius_norm() const;
    [[nodiscard]] bool all_finite() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// max entry magnitude of a - b (dimensions must match)
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigenSystem {
    std::vector<double> eigenvalues; // sorted descending
    ComplexMatrix eigenvectors;      // orthonormal columns, phase-normalized
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Input must satisfy max|A - A*| <= 1e-12. Off-diagonal Frobenius norm is
/// driven below 1e-13 relative to ||A||_F, capped at 64 sweeps.
/// Each eigenvector column is scaled so its first component of magnitude
/// > 1e-10 is real and positive.
HermitianEigenSystem eig_hermitian(const ComplexMatrix& a);

/// Eigenvalues only, sorted descending; same algorithm as eig_hermitian but
/// skips accumulating the eigenvector matrix.
std::vector<double> eig_hermitian_values(const ComplexMatrix& a);

/// Induced 2-norm of a square matrix. Hermitian inputs use max|eigenvalue|;
/// general inputs go through the largest singular value, sqrt(lambda_max(A*A)).
double spectral_norm(const ComplexMatrix& a);

/// Principal submatrix A[S x S] of a square matrix. The subset is 1-based,
/// strictly increasing, and within [1, order].
ComplexMatrix principal_submatrix(const ComplexMatrix& a, const std::vector<int>& subset);

} // namespace etf
