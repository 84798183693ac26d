#pragma once

#include "conference.hpp"
#include "linalg.hpp"

namespace etf {

/// Position of a recursive diagonal sub-block: depth d in [0, k], block
/// number q in [1, 2^d]. Depth 0 is the whole matrix; depth k the 1x1 blocks.
struct DiagonalBlockIndex {
    int d = 0;
    int q = 1;
};

/// Hermitian R = I + i*alpha*C for a skew-symmetric conference matrix C, or
/// R = I + alpha*C for a symmetric one. With alpha = 1/sqrt(n-1) the spectrum
/// is {2, 0}, each with multiplicity n/2, which is the input the frame
/// construction needs.
class GramMatrix {
public:
    static GramMatrix build(const ConferenceMatrix& c, double alpha);

    /// alpha = 1/sqrt(n-1), the value that puts the spectrum at {2, 0}.
    static double mss_alpha(int order);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] bool real_field() const noexcept { return real_field_; }

    /// Recursion depth k of the underlying conference matrix (0 for Paley).
    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] bool recursive() const noexcept { return depth_ >= 1; }

    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }

    /// ||R|| = 1 + alpha*sqrt(n-1) in closed form.
    [[nodiscard]] double norm_closed() const;

private:
    GramMatrix() = default;

    ComplexMatrix m_;
    int order_ = 0;
    int depth_ = 0;
    double alpha_ = 0.0;
    bool real_field_ = false;
};

/// Index set S_{d,q} = {(q-1)*2^(k-d)+1, ..., q*2^(k-d)}, 1-based.
std::vector<int> block_index_set(DiagonalBlockIndex idx, int k);

/// The principal submatrix of R on S_{d,q}. Equals R(k-d) or its conjugate.
ComplexMatrix diagonal_block(const GramMatrix& r, DiagonalBlockIndex idx);

/// Closed-form norm 1 + alpha*sqrt(2^(k-d)-1) of a diagonal sub-block.
/// Requires alpha = 1/sqrt(2^k-1).
double block_norm(const GramMatrix& r, DiagonalBlockIndex idx);

} // namespace etf
