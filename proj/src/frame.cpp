#include "frame.hpp"

#include <cmath>
#include <string>

namespace etf {

namespace {

constexpr double kClusterTol = 1e-8; // eigenvalue grouping, relative to ||R||
constexpr double kWelchTol = 1e-9;

} // namespace

Frame::Frame(int n, int m, FieldTag field, ComplexMatrix synthesis)
    : n_(n), m_(m), field_(field), synth_(std::move(synthesis)) {
    if (n < 1 || m < 1) throw Error(Errc::invalid_argument, "frame: n and m must be positive");
    if (synth_.rows() != m || synth_.cols() != n)
        throw Error(Errc::invalid_argument, "frame: synthesis matrix must be m x n");
    if (!synth_.all_finite())
        throw Error(Errc::invalid_argument, "frame: vectors have non-finite entries");
}

ComplexMatrix Frame::gram() const {
    ComplexMatrix g(n_, n_);
    for (int j = 0; j < n_; ++j) {
        for (int l = j; l < n_; ++l) {
            cdouble acc{0.0, 0.0};
            for (int t = 0; t < m_; ++t) acc += std::conj(synth_(t, j)) * synth_(t, l);
            g(j, l) = acc;
            g(l, j) = std::conj(acc);
        }
    }
    return g;
}

Frame build_frame(const GramMatrix& r) {
    const int n = r.order();
    const auto sys = eig_hermitian(r.matrix());
    const double scale =
        std::max(std::abs(sys.eigenvalues.front()), std::abs(sys.eigenvalues.back()));
    const double atol = kClusterTol * scale;

    int m = 0;
    while (m < n && std::abs(sys.eigenvalues[m] - sys.eigenvalues[0]) <= atol) ++m;
    if (m == n)
        throw Error(Errc::spectrum_mismatch, "build_frame: spectrum has a single cluster");
    const double top = static_cast<double>(n) / m;
    for (int i = 0; i < n; ++i) {
        const double expected = i < m ? top : 0.0;
        if (std::abs(sys.eigenvalues[i] - expected) > atol)
            throw Error(Errc::spectrum_mismatch,
                        "build_frame: spectrum is not {n/m, 0} with multiplicities {m, n-m}");
    }

    // f_j = conjugate of row j of the top-cluster eigenbasis; equivalently the
    // synthesis matrix is the adjoint of W's first m columns, giving
    // F*F = (m/n) R and F F* = I exactly in exact arithmetic.
    ComplexMatrix synth(m, n);
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < m; ++t) synth(t, j) = std::conj(sys.eigenvectors(j, t));
    return Frame(n, m, r.real_field() ? FieldTag::real : FieldTag::complex, std::move(synth));
}

double welch_bound(int n, int m) {
    if (m < 1 || n < m) throw Error(Errc::invalid_argument, "welch_bound: need n >= m >= 1");
    if (n == 1) throw Error(Errc::invalid_argument, "welch_bound: need at least two vectors");
    return std::sqrt(static_cast<double>(n - m) / (static_cast<double>(m) * (n - 1)));
}

double max_frame_correlation(const Frame& f) {
    const int n = f.size();
    if (n < 2)
        throw Error(Errc::invalid_argument, "max_frame_correlation: need at least two vectors");
    const int m = f.dimension();
    std::vector<double> norms(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int t = 0; t < m; ++t) acc += std::norm(f.component(j, t));
        norms[j] = std::sqrt(acc);
        if (norms[j] == 0.0)
            throw Error(Errc::invalid_argument, "max_frame_correlation: zero vector in frame");
    }
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int l = j + 1; l < n; ++l) {
            cdouble acc{0.0, 0.0};
            for (int t = 0; t < m; ++t) acc += std::conj(f.component(j, t)) * f.component(l, t);
            worst = std::max(worst, std::abs(acc) / (norms[j] * norms[l]));
        }
    }
    return worst;
}

double tightness_residual(const Frame& f) {
    const int m = f.dimension();
    ComplexMatrix sum(m, m);
    for (int j = 0; j < f.size(); ++j)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t)
                sum(s, t) += f.component(j, s) * std::conj(f.component(j, t));
    return max_abs_diff(sum, ComplexMatrix::identity(m));
}

double equiangularity_residual(const Frame& f) {
    const int n = f.size();
    const int m = f.dimension();
    const double target = f.delta() * welch_bound(n, m);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int l = j + 1; l < n; ++l) {
            cdouble acc{0.0, 0.0};
            for (int t = 0; t < m; ++t) acc += std::conj(f.component(j, t)) * f.component(l, t);
            worst = std::max(worst, std::abs(std::abs(acc) - target));
        }
    }
    return worst;
}

WelchReport verify_welch_equality(const Frame& f) {
    WelchReport rep;
    rep.bound = welch_bound(f.size(), f.dimension());
    rep.correlation = max_frame_correlation(f);
    rep.residual = std::abs(rep.correlation - rep.bound);
    rep.is_etf = rep.residual <= kWelchTol;
    return rep;
}

} // namespace etf
