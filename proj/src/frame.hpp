#pragma once

#include "gram.hpp"
#include "linalg.hpp"

namespace etf {

enum class FieldTag { real, complex };

/// Finite frame of n vectors in dimension m, stored as the m x n synthesis
/// matrix whose column j is f_j. Frames produced by build_frame satisfy the
/// tight-frame identity sum_j f_j f_j* = I and have ||f_j||^2 = m/n.
class Frame {
public:
    Frame(int n, int m, FieldTag field, ComplexMatrix synthesis);

    [[nodiscard]] int size() const noexcept { return n_; }      // number of vectors
    [[nodiscard]] int dimension() const noexcept { return m_; } // ambient dimension
    [[nodiscard]] FieldTag field() const noexcept { return field_; }
    [[nodiscard]] double delta() const noexcept { return static_cast<double>(m_) / n_; }

    [[nodiscard]] const ComplexMatrix& synthesis() const noexcept { return synth_; }
    [[nodiscard]] cdouble component(int vector, int coord) const { return synth_(coord, vector); }

    /// n x n Gram matrix F*F of pairwise inner products <f_j, f_l>.
    [[nodiscard]] ComplexMatrix gram() const;

private:
    int n_ = 0;
    int m_ = 0;
    FieldTag field_ = FieldTag::complex;
    ComplexMatrix synth_;
};

/// Extract the ETF from R: eigendecompose, pick the m eigenvectors of the
/// top cluster (eigenvalue n/m), and take the conjugated rows of that basis
/// as frame vectors, so that F*F = (m/n) R. Fails if the spectrum is not
/// two-valued {n/m, 0} within the grouping tolerance.
Frame build_frame(const GramMatrix& r);

/// sqrt((n-m)/(m(n-1))), the coherence floor for n unit vectors in dimension m.
double welch_bound(int n, int m);

/// max_{j != l} |<f_j, f_l>| over unit-normalized vectors.
double max_frame_correlation(const Frame& f);

/// max entry deviation of sum_j f_j f_j* from the identity.
double tightness_residual(const Frame& f);

/// max_{j != l} | |<f_j, f_l>| - (m/n)*welch_bound |.
double equiangularity_residual(const Frame& f);

struct WelchReport {
    bool is_etf = false;
    double correlation = 0.0;
    double bound = 0.0;
    double residual = 0.0;
};

/// Equality test in the Welch bound: the frame is an ETF iff the maximal
/// correlation meets the bound, checked within 1e-9.
WelchReport verify_welch_equality(const Frame& f);

} // namespace etf
