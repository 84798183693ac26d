#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frame.hpp"
#include "gram.hpp"

namespace etf {

/// Ordered list of disjoint, nonempty index subsets covering {1, ..., n}.
/// Subsets keep their given order; each subset is stored sorted ascending.
class Partition {
public:
    Partition(int n, std::vector<std::vector<int>> subsets);

    [[nodiscard]] int ground_size() const noexcept { return n_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(subsets_.size()); }
    [[nodiscard]] const std::vector<int>& subset(int h) const { return subsets_.at(h); }
    [[nodiscard]] const std::vector<std::vector<int>>& subsets() const noexcept {
        return subsets_;
    }
    [[nodiscard]] int max_cardinality() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> subsets_;
};

/// Partition of [2^k] whose subsets are recursive diagonal blocks S_{d,q}.
struct DiagonalPartition {
    int k = 0;
    std::vector<DiagonalBlockIndex> blocks;

    [[nodiscard]] Partition to_partition() const;
};

/// The diagonal partition of [2^k] into exactly r subsets: with d = floor(log2 r)
/// the first 2(r - 2^d) subsets are blocks at depth d+1, the rest blocks at
/// depth d. Every cardinality is at most 2^(k - d). Requires 1 <= r <= 2^k.
DiagonalPartition diagonal_partition_algorithm(int k, int r);

/// Recognize a partition as diagonal: every subset must be a contiguous,
/// size-aligned power-of-two range of a power-of-two ground set.
std::optional<DiagonalPartition> classify_diagonal(const Partition& p);

enum class NormRoute { closed_form, gram_eig, outer_eig };

struct SubsetNorm {
    double value = 0.0;
    NormRoute route = NormRoute::gram_eig;
};

/// Largest eigenvalue of sum_{j in S} f_j f_j* (m x m, always applicable).
double subset_norm_outer(const Frame& f, const std::vector<int>& s);

/// (m/n) * ||R_S||, valid whenever the subset's vectors are linearly
/// independent. If the scaled Gram submatrix is numerically singular the
/// outer-product route is used instead and flagged in the result.
SubsetNorm subset_norm_gram(const Frame& f, const GramMatrix& r, const std::vector<int>& s);

/// Same computation driven by the frame's own Gram matrix F*F; used when no
/// R-matrix is at hand (frames loaded from files).
SubsetNorm subset_norm_gram(const Frame& f, const std::vector<int>& s);

/// Closed-form norm of a diagonal-block subset at depth d (Eq. independent
/// of the position q): 1/2 + (1/2) sqrt(2^(k-d)-1)/sqrt(2^k-1).
double diagonal_subset_norm_closed(int k, int d);

/// Closed-form norms for subsets of cardinality 2 or 3. Cardinality 2 and the
/// complex cardinality-3 case have one value; the real cardinality-3 case has
/// two candidates (the sign pattern decides which one is attained).
std::vector<double> small_subset_norm_closed(const Frame& f, int cardinality);

// Partition-level norm bounds.
double mss_bound(int r, double delta);            // (1/sqrt(r) + sqrt(delta))^2
double diagonal_bound(int r);                     // 1/2 + 1/sqrt(2r)
double small_subset_bound(int r, double delta, int max_cardinality, FieldTag field);

struct NormReport {
    std::vector<int> subset;
    double norm = 0.0;
    NormRoute route = NormRoute::gram_eig;
    double mss_bound = 0.0;
    bool mss_ok = false;
    std::optional<double> sharp_bound; // diagonal partitions only
    bool sharp_ok = false;
    std::optional<double> small_bound; // partitions with cardinalities <= 3 only
    bool small_ok = false;
};

/// Check a diagonal partition against the sharper diagonal bound and the MSS
/// bound; one report per subset.
std::vector<NormReport> verify_theorem_bound(const DiagonalPartition& p, const Frame& f,
                                             const GramMatrix& r);

/// Check a partition whose subsets all have cardinality <= 3 against the
/// small-subset bound (and the MSS bound). The real-field bound uses the
/// worst sign-pattern case.
std::vector<NormReport> verify_small_subset_bounds(const Partition& p, const Frame& f);

/// Norm reports for an arbitrary partition: MSS bound always, sharper bound
/// when the partition is diagonal, small-subset bound when cardinalities <= 3.
std::vector<NormReport> check_partition(const Partition& p, const Frame& f,
                                        const GramMatrix* r = nullptr);

struct ViolationSearch {
    bool found = false;
    uint64_t trial = 0; // index of the first violating trial
    std::vector<int> subset;
    double norm = 0.0;
    double bound = 0.0;
    std::optional<Partition> partition;
};

/// Random search for a partition violating the MSS bound: each trial draws a
/// uniform subset of cardinality n - r + 1 (the remaining subsets are
/// singletons) and tests its norm against (1/sqrt(r) + sqrt(delta))^2.
/// Deterministic for a fixed seed; the first violating trial wins.
ViolationSearch find_mss_violation(const Frame& f, int r, uint64_t trials, uint64_t seed);

} // namespace etf
