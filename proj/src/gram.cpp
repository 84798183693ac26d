#include "gram.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace etf {

namespace {

void require_block_index(const GramMatrix& r, DiagonalBlockIndex idx) {
    if (!r.recursive())
        throw Error(Errc::invalid_argument,
                    "diagonal blocks are defined for the recursive construction only");
    if (idx.d < 0 || idx.d > r.depth())
        throw Error(Errc::invalid_argument, "block depth d out of [0, k]");
    if (idx.q < 1 || idx.q > (1 << idx.d))
        throw Error(Errc::invalid_argument, "block position q out of [1, 2^d]");
}

} // namespace

GramMatrix GramMatrix::build(const ConferenceMatrix& c, double alpha) {
    if (!(alpha > 0.0))
        throw Error(Errc::invalid_argument, "gram matrix alpha must be positive");
    const int n = c.order();
    GramMatrix g;
    g.order_ = n;
    g.depth_ = c.depth();
    g.alpha_ = alpha;
    g.real_field_ = c.symmetric();
    g.m_ = ComplexMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        g.m_(i, i) = 1.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double off = alpha * c.entry(i, j);
            g.m_(i, j) = c.symmetric() ? cdouble{off, 0.0} : cdouble{0.0, off};
        }
    }
    return g;
}

double GramMatrix::mss_alpha(int order) {
    if (order < 2) throw Error(Errc::invalid_argument, "mss_alpha: order must be >= 2");
    return 1.0 / std::sqrt(static_cast<double>(order - 1));
}

double GramMatrix::norm_closed() const {
    return 1.0 + alpha_ * std::sqrt(static_cast<double>(order_ - 1));
}

std::vector<int> block_index_set(DiagonalBlockIndex idx, int k) {
    if (k < 1 || k > 30) throw Error(Errc::invalid_argument, "block_index_set: bad depth k");
    if (idx.d < 0 || idx.d > k) throw Error(Errc::invalid_argument, "block depth d out of [0, k]");
    if (idx.q < 1 || idx.q > (1 << idx.d))
        throw Error(Errc::invalid_argument, "block position q out of [1, 2^d]");
    const int size = 1 << (k - idx.d);
    std::vector<int> s(size);
    std::iota(s.begin(), s.end(), (idx.q - 1) * size + 1);
    return s;
}

ComplexMatrix diagonal_block(const GramMatrix& r, DiagonalBlockIndex idx) {
    require_block_index(r, idx);
    return principal_submatrix(r.matrix(), block_index_set(idx, r.depth()));
}

double block_norm(const GramMatrix& r, DiagonalBlockIndex idx) {
    require_block_index(r, idx);
    if (std::abs(r.alpha() - GramMatrix::mss_alpha(r.order())) > 1e-12)
        throw Error(Errc::invalid_argument,
                    "block_norm closed form requires alpha = 1/sqrt(n-1)");
    const double sub = std::sqrt(static_cast<double>((1 << (r.depth() - idx.d)) - 1));
    return 1.0 + r.alpha() * sub;
}

} // namespace etf
