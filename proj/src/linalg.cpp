#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace etf {

namespace {

constexpr double kHermitianTol = 1e-12;   // admissible max|A - A*| on input
constexpr double kOffDiagTol = 1e-13;     // relative off-diagonal Frobenius target
constexpr int kMaxSweeps = 64;
constexpr double kPhasePivotTol = 1e-10;  // first column entry used to fix the phase

void require_square(const ComplexMatrix& a, const char* who) {
    if (!a.square())
        throw Error(Errc::invalid_argument, std::string(who) + ": matrix must be square");
}

void require_finite(const ComplexMatrix& a, const char* who) {
    if (!a.all_finite())
        throw Error(Errc::invalid_argument, std::string(who) + ": matrix has non-finite entries");
}

} // namespace

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

double ComplexMatrix::hermitian_residual() const {
    require_square(*this, "hermitian_residual");
    double worst = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

double ComplexMatrix::max_abs() const {
    double worst = 0.0;
    for (const auto& z : data_) worst = std::max(worst, std::abs(z));
    return worst;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& z : data_) acc += std::norm(z);
    return std::sqrt(acc);
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cdouble& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(Errc::invalid_argument, "matmul: inner dimensions do not match");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::invalid_argument, "max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

namespace {

HermitianEigenSystem jacobi_hermitian(const ComplexMatrix& a, bool want_vectors) {
    require_square(a, "eig_hermitian");
    require_finite(a, "eig_hermitian");
    if (a.hermitian_residual() > kHermitianTol)
        throw Error(Errc::not_hermitian, "eig_hermitian: input is not Hermitian within 1e-12");

    const int n = a.rows();
    std::vector<cdouble> m(a.data());
    std::vector<cdouble> vt; // transposed eigenvectors
    if (want_vectors) {
        vt.assign(static_cast<size_t>(n) * n, cdouble{});
        for (int i = 0; i < n; ++i) vt[static_cast<size_t>(i) * n + i] = 1.0;
    }

    const auto off_frobenius = [&m, n] {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) acc += std::norm(m[static_cast<size_t>(i) * n + j]);
        return std::sqrt(2.0 * acc);
    };

    double frob = 0.0;
    for (const auto& z : m) frob += std::norm(z);
    frob = std::sqrt(frob);

    bool converged = frob == 0.0 || off_frobenius() <= kOffDiagTol * frob;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        // Rotating on tiny pivots during the first sweeps only spreads fill;
        // the threshold decays to zero so later sweeps touch everything.
        const double thresh =
            sweep < 3 ? 0.1 * off_frobenius() / n : 0.0;
        for (int p = 0; p < n - 1; ++p) {
            cdouble* rp = m.data() + static_cast<size_t>(p) * n;
            cdouble* wp = want_vectors ? vt.data() + static_cast<size_t>(p) * n : nullptr;
            for (int q = p + 1; q < n; ++q) {
                cdouble* rq = m.data() + static_cast<size_t>(q) * n;
                const cdouble apq = rp[q];
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = rp[p].real();
                const double aqq = rq[q].real();
                if (mag <= thresh) continue;
                // Negligible against the diagonal: zero it and move on.
                if (mag <= 1e-16 * (std::abs(app) + std::abs(aqq))) {
                    rp[q] = 0.0;
                    rq[p] = 0.0;
                    continue;
                }

                // Unitary plane rotation annihilating m(p,q): a phase times
                // the classical Jacobi rotation of the 2x2 pivot block.
                const cdouble phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cdouble sp = (t * c) * phase;
                const cdouble spc = std::conj(sp);

                rp[p] = app - t * mag;
                rq[q] = aqq + t * mag;
                rp[q] = 0.0;
                rq[p] = 0.0;
                // Rows p and q are updated in place; columns p and q mirror
                // them by Hermitian symmetry.
                for (int j = 0; j < n; ++j) {
                    if (j == p || j == q) continue;
                    const cdouble xpj = rp[j];
                    const cdouble xqj = rq[j];
                    const cdouble npj = c * xpj - sp * xqj;
                    const cdouble nqj = spc * xpj + c * xqj;
                    rp[j] = npj;
                    rq[j] = nqj;
                    m[static_cast<size_t>(j) * n + p] = std::conj(npj);
                    m[static_cast<size_t>(j) * n + q] = std::conj(nqj);
                }
                if (want_vectors) {
                    cdouble* wq = vt.data() + static_cast<size_t>(q) * n;
                    for (int j = 0; j < n; ++j) {
                        const cdouble vpj = wp[j];
                        const cdouble vqj = wq[j];
                        wp[j] = c * vpj - spc * vqj;
                        wq[j] = sp * vpj + c * vqj;
                    }
                }
            }
        }
        converged = off_frobenius() <= kOffDiagTol * frob;
    }
    if (!converged)
        throw Error(Errc::no_convergence, "eig_hermitian: Jacobi did not converge in 64 sweeps");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&m, n](int i, int j) {
        return m[static_cast<size_t>(i) * n + i].real() > m[static_cast<size_t>(j) * n + j].real();
    });

    HermitianEigenSystem sys;
    sys.eigenvalues.resize(n);
    for (int col = 0; col < n; ++col)
        sys.eigenvalues[col] = m[static_cast<size_t>(order[col]) * n + order[col]].real();
    if (!want_vectors) return sys;

    sys.eigenvectors = ComplexMatrix(n, n);
    for (int col = 0; col < n; ++col) {
        const cdouble* w = vt.data() + static_cast<size_t>(order[col]) * n;
        cdouble scale{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(w[i]);
            if (mag > kPhasePivotTol) {
                scale = std::conj(w[i]) / mag;
                break;
            }
        }
        for (int i = 0; i < n; ++i) sys.eigenvectors(i, col) = w[i] * scale;
    }
    return sys;
}

} // namespace

HermitianEigenSystem eig_hermitian(const ComplexMatrix& a) {
    return jacobi_hermitian(a, /*want_vectors=*/true);
}

std::vector<double> eig_hermitian_values(const ComplexMatrix& a) {
    return jacobi_hermitian(a, /*want_vectors=*/false).eigenvalues;
}

double spectral_norm(const ComplexMatrix& a) {
    require_square(a, "spectral_norm");
    require_finite(a, "spectral_norm");
    if (a.hermitian_residual() <= kHermitianTol) {
        const auto values = eig_hermitian_values(a);
        return std::max(std::abs(values.front()), std::abs(values.back()));
    }
    const auto values = eig_hermitian_values(matmul(a.adjoint(), a));
    return std::sqrt(std::max(values.front(), 0.0));
}

ComplexMatrix principal_submatrix(const ComplexMatrix& a, const std::vector<int>& subset) {
    require_square(a, "principal_submatrix");
    if (subset.empty())
        throw Error(Errc::invalid_argument, "principal_submatrix: subset must be nonempty");
    const int n = a.rows();
    for (size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] < 1 || subset[i] > n)
            throw Error(Errc::invalid_argument, "principal_submatrix: index out of range");
        if (i > 0 && subset[i] <= subset[i - 1])
            throw Error(Errc::invalid_argument,
                        "principal_submatrix: indices must be strictly increasing");
    }
    const int k = static_cast<int>(subset.size());
    ComplexMatrix r(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) r(i, j) = a(subset[i] - 1, subset[j] - 1);
    return r;
}

} // namespace etf
