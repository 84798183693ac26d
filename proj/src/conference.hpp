#pragma once

#include <cstdint>
#include <vector>

#include "linalg.hpp"

namespace etf {

/// Square {0, +-1} matrix with zero diagonal satisfying C*C^T = (n-1)*I.
/// Two constructions are provided: the recursive skew-symmetric family of
/// order 2^k, and the symmetric Paley family of order q+1 for a small set
/// of primes q = 1 mod 4.
class ConferenceMatrix {
public:
    /// Skew-symmetric C(k) of order 2^k, 1 <= k <= 12.
    /// C(1) = [[0,-1],[1,0]], C(k) = [[C, C-I],[C+I, -C]] on C = C(k-1).
    static ConferenceMatrix recursive(int k);

    /// Symmetric conference matrix of order q+1 from quadratic residues,
    /// q in {5, 13, 17}.
    static ConferenceMatrix paley(int q);

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] bool symmetric() const noexcept { return symmetric_; }

    /// Recursion depth k; only meaningful for the recursive family (0 for Paley).
    [[nodiscard]] int depth() const noexcept { return depth_; }

    [[nodiscard]] int entry(int i, int j) const { return e_[static_cast<size_t>(i) * order_ + j]; }
    [[nodiscard]] const std::vector<int8_t>& entries() const noexcept { return e_; }

    [[nodiscard]] ComplexMatrix to_complex() const;

    /// Exact integer check of C*C^T = (order-1)*I. O(n^3); run on demand.
    [[nodiscard]] bool identity_holds() const;

    struct Spectrum {
        double magnitude; // eigenvalues are +-i*magnitude (skew) or +-magnitude (symmetric)
        int multiplicity; // order / 2 for each of the two values
        bool imaginary;
    };

    /// Closed-form spectrum {+-i*sqrt(n-1)} (skew) or {+-sqrt(n-1)} (symmetric),
    /// each value with multiplicity n/2.
    [[nodiscard]] Spectrum spectrum() const;

private:
    ConferenceMatrix(int order, int depth, bool symmetric, std::vector<int8_t> entries);
    void check_structure() const; // zero diagonal, +-1 off-diagonal, symmetry kind

    int order_ = 0;
    int depth_ = 0;
    bool symmetric_ = false;
    std::vector<int8_t> e_;
};

} // namespace etf
