#include "partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "rng.hpp"

namespace etf {

namespace {

constexpr double kBoundSlack = 1e-9;       // slack added to every bound verdict
constexpr double kRankTol = 1e-10;         // smallest eigenvalue admitted as nonsingular

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(int x) { return std::countr_zero(static_cast<unsigned>(x)); }

void require_subset(const std::vector<int>& s, int n, const char* who) {
    if (s.empty()) throw Error(Errc::invalid_argument, std::string(who) + ": empty subset");
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > n)
            throw Error(Errc::invalid_argument, std::string(who) + ": index out of range");
        if (i > 0 && s[i] <= s[i - 1])
            throw Error(Errc::invalid_argument,
                        std::string(who) + ": subset must be strictly increasing");
    }
}

// |S| x |S| matrix of inner products <f_a, f_b>, a,b in S. Equals (m/n) R_S
// for frames built from R.
ComplexMatrix scaled_gram_submatrix(const Frame& f, const std::vector<int>& s) {
    const int q = static_cast<int>(s.size());
    const int m = f.dimension();
    ComplexMatrix g(q, q);
    for (int a = 0; a < q; ++a) {
        for (int b = a; b < q; ++b) {
            cdouble acc{0.0, 0.0};
            for (int t = 0; t < m; ++t)
                acc += std::conj(f.component(s[a] - 1, t)) * f.component(s[b] - 1, t);
            g(a, b) = acc;
            g(b, a) = std::conj(acc);
        }
    }
    return g;
}

SubsetNorm norm_from_scaled_gram(const Frame& f, ComplexMatrix scaled, const std::vector<int>& s) {
    const auto values = eig_hermitian_values(scaled);
    if (values.back() <= kRankTol)
        return {subset_norm_outer(f, s), NormRoute::outer_eig};
    return {values.front(), NormRoute::gram_eig};
}

} // namespace

Partition::Partition(int n, std::vector<std::vector<int>> subsets)
    : n_(n), subsets_(std::move(subsets)) {
    if (n < 1) throw Error(Errc::invalid_argument, "partition: ground set must be nonempty");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    int covered = 0;
    for (auto& s : subsets_) {
        if (s.empty()) throw Error(Errc::invalid_argument, "partition: empty subset");
        std::sort(s.begin(), s.end());
        for (int idx : s) {
            if (idx < 1 || idx > n)
                throw Error(Errc::invalid_argument, "partition: index out of range");
            if (seen[idx])
                throw Error(Errc::invalid_argument, "partition: subsets are not disjoint");
            seen[idx] = 1;
            ++covered;
        }
    }
    if (covered != n)
        throw Error(Errc::invalid_argument, "partition: subsets do not cover {1,...,n}");
}

int Partition::max_cardinality() const {
    size_t worst = 0;
    for (const auto& s : subsets_) worst = std::max(worst, s.size());
    return static_cast<int>(worst);
}

Partition DiagonalPartition::to_partition() const {
    std::vector<std::vector<int>> subsets;
    subsets.reserve(blocks.size());
    for (const auto& b : blocks) subsets.push_back(block_index_set(b, k));
    return Partition(1 << k, std::move(subsets));
}

DiagonalPartition diagonal_partition_algorithm(int k, int r) {
    if (k < 1 || k > 30)
        throw Error(Errc::invalid_argument, "diagonal partition: depth k out of range");
    const int n = 1 << k;
    if (r < 1 || r > n)
        throw Error(Errc::invalid_argument, "diagonal partition: need 1 <= r <= 2^k");

    const int d = log2_exact(std::bit_floor(static_cast<unsigned>(r)));
    const int rp = 1 << d; // largest power of two <= r
    DiagonalPartition p;
    p.k = k;
    p.blocks.reserve(r);
    for (int i = 1; i <= 2 * (r - rp); ++i) p.blocks.push_back({d + 1, i});
    for (int i = r - rp + 1; i <= rp; ++i) p.blocks.push_back({d, i});
    return p;
}

std::optional<DiagonalPartition> classify_diagonal(const Partition& p) {
    const int n = p.ground_size();
    if (!is_power_of_two(n) || n < 2) return std::nullopt;
    const int k = log2_exact(n);
    DiagonalPartition d;
    d.k = k;
    d.blocks.reserve(p.size());
    for (const auto& s : p.subsets()) {
        const int size = static_cast<int>(s.size());
        if (!is_power_of_two(size)) return std::nullopt;
        if (s.back() - s.front() + 1 != size) return std::nullopt; // not contiguous
        if ((s.front() - 1) % size != 0) return std::nullopt;      // not block-aligned
        d.blocks.push_back({k - log2_exact(size), (s.front() - 1) / size + 1});
    }
    return d;
}

double subset_norm_outer(const Frame& f, const std::vector<int>& s) {
    require_subset(s, f.size(), "subset_norm_outer");
    const int m = f.dimension();
    ComplexMatrix sum(m, m);
    for (int idx : s) {
        const int j = idx - 1;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                sum(a, b) += f.component(j, a) * std::conj(f.component(j, b));
    }
    return eig_hermitian_values(sum).front();
}

SubsetNorm subset_norm_gram(const Frame& f, const GramMatrix& r, const std::vector<int>& s) {
    if (f.size() != r.order())
        throw Error(Errc::invalid_argument, "subset_norm_gram: frame/gram order mismatch");
    require_subset(s, f.size(), "subset_norm_gram");
    ComplexMatrix sub = principal_submatrix(r.matrix(), s);
    const double delta = f.delta();
    for (int a = 0; a < sub.rows(); ++a)
        for (int b = 0; b < sub.cols(); ++b) sub(a, b) *= delta;
    return norm_from_scaled_gram(f, std::move(sub), s);
}

SubsetNorm subset_norm_gram(const Frame& f, const std::vector<int>& s) {
    require_subset(s, f.size(), "subset_norm_gram");
    return norm_from_scaled_gram(f, scaled_gram_submatrix(f, s), s);
}

double diagonal_subset_norm_closed(int k, int d) {
    if (k < 1 || k > 30)
        throw Error(Errc::invalid_argument, "diagonal_subset_norm_closed: bad depth k");
    if (d < 0 || d > k)
        throw Error(Errc::invalid_argument, "diagonal_subset_norm_closed: need 0 <= d <= k");
    const double sub = std::sqrt(std::pow(2.0, k - d) - 1.0);
    const double whole = std::sqrt(std::pow(2.0, k) - 1.0);
    return 0.5 + 0.5 * sub / whole;
}

std::vector<double> small_subset_norm_closed(const Frame& f, int cardinality) {
    const double w = welch_bound(f.size(), f.dimension());
    const double delta = f.delta();
    if (cardinality == 2) return {delta * (1.0 + w)};
    if (cardinality == 3) {
        if (f.field() == FieldTag::complex) return {delta * (1.0 + std::sqrt(3.0) * w)};
        return {delta * (1.0 + w), delta * (1.0 + 2.0 * w)};
    }
    throw Error(Errc::unsupported, "small_subset_norm_closed: cardinality must be 2 or 3");
}

double mss_bound(int r, double delta) {
    if (r < 1 || !(delta > 0.0)) throw Error(Errc::invalid_argument, "mss_bound: bad arguments");
    const double x = 1.0 / std::sqrt(static_cast<double>(r)) + std::sqrt(delta);
    return x * x;
}

double diagonal_bound(int r) {
    if (r < 1) throw Error(Errc::invalid_argument, "diagonal_bound: need r >= 1");
    return 0.5 + 1.0 / std::sqrt(2.0 * r);
}

double small_subset_bound(int r, double delta, int max_cardinality, FieldTag field) {
    if (r < 1 || !(delta > 0.0))
        throw Error(Errc::invalid_argument, "small_subset_bound: bad arguments");
    if (max_cardinality < 1 || max_cardinality > 3)
        throw Error(Errc::invalid_argument,
                    "small_subset_bound: applies to cardinalities 1..3 only");
    const double root = std::sqrt(delta / r);
    if (max_cardinality <= 2) return delta + root;
    return field == FieldTag::complex ? delta + std::sqrt(3.0 * delta / r)
                                      : delta + 2.0 * root;
}

namespace {

NormReport make_report(std::vector<int> subset, SubsetNorm sn, int r, const Frame& f) {
    NormReport rep;
    rep.subset = std::move(subset);
    rep.norm = sn.value;
    rep.route = sn.route;
    rep.mss_bound = mss_bound(r, f.delta());
    rep.mss_ok = rep.norm <= rep.mss_bound + kBoundSlack;
    return rep;
}

} // namespace

std::vector<NormReport> verify_theorem_bound(const DiagonalPartition& p, const Frame& f,
                                             const GramMatrix& r) {
    if (f.size() != r.order() || (1 << p.k) != r.order())
        throw Error(Errc::invalid_argument, "verify_theorem_bound: order mismatch");
    const int count = static_cast<int>(p.blocks.size());
    const double sharp = diagonal_bound(count);
    std::vector<NormReport> reports;
    reports.reserve(count);
    for (const auto& b : p.blocks) {
        auto s = block_index_set(b, p.k);
        auto sn = subset_norm_gram(f, r, s);
        auto rep = make_report(std::move(s), sn, count, f);
        rep.sharp_bound = sharp;
        rep.sharp_ok = rep.norm <= sharp + kBoundSlack;
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<NormReport> verify_small_subset_bounds(const Partition& p, const Frame& f) {
    if (p.ground_size() != f.size())
        throw Error(Errc::invalid_argument, "verify_small_subset_bounds: order mismatch");
    const int max_card = p.max_cardinality();
    if (max_card > 3)
        throw Error(Errc::invalid_argument,
                    "verify_small_subset_bounds: a subset exceeds cardinality 3");
    const double bound = small_subset_bound(p.size(), f.delta(), max_card, f.field());
    std::vector<NormReport> reports;
    reports.reserve(p.size());
    for (const auto& s : p.subsets()) {
        auto rep = make_report(s, subset_norm_gram(f, s), p.size(), f);
        rep.small_bound = bound;
        rep.small_ok = rep.norm <= bound + kBoundSlack;
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<NormReport> check_partition(const Partition& p, const Frame& f,
                                        const GramMatrix* r) {
    if (p.ground_size() != f.size())
        throw Error(Errc::invalid_argument, "check_partition: order mismatch");
    const auto diagonal = classify_diagonal(p);
    const int max_card = p.max_cardinality();
    const int count = p.size();
    std::optional<double> sharp;
    if (diagonal) sharp = diagonal_bound(count);
    std::optional<double> small;
    if (max_card <= 3) small = small_subset_bound(count, f.delta(), max_card, f.field());

    std::vector<NormReport> reports;
    reports.reserve(count);
    for (const auto& s : p.subsets()) {
        auto sn = r != nullptr ? subset_norm_gram(f, *r, s) : subset_norm_gram(f, s);
        auto rep = make_report(s, sn, count, f);
        rep.sharp_bound = sharp;
        rep.sharp_ok = sharp && rep.norm <= *sharp + kBoundSlack;
        rep.small_bound = small;
        rep.small_ok = small && rep.norm <= *small + kBoundSlack;
        reports.push_back(std::move(rep));
    }
    return reports;
}

ViolationSearch find_mss_violation(const Frame& f, int r, uint64_t trials, uint64_t seed) {
    const int n = f.size();
    if (r < 1 || r > n)
        throw Error(Errc::invalid_argument, "find_mss_violation: need 1 <= r <= n");
    const int big = n - r + 1; // one large subset, r-1 singletons
    ViolationSearch result;
    result.bound = mss_bound(r, f.delta());

    SplitMix64 rng(seed);
    std::vector<int> pool(n);
    for (uint64_t trial = 0; trial < trials; ++trial) {
        std::iota(pool.begin(), pool.end(), 1);
        for (int i = 0; i < big; ++i) {
            const int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
        }
        std::vector<int> subset(pool.begin(), pool.begin() + big);
        std::sort(subset.begin(), subset.end());
        const double norm = subset_norm_gram(f, subset).value;
        if (norm > result.bound) {
            result.found = true;
            result.trial = trial;
            result.norm = norm;
            std::vector<std::vector<int>> subsets;
            subsets.push_back(subset);
            std::vector<char> in_subset(static_cast<size_t>(n) + 1, 0);
            for (int idx : subset) in_subset[idx] = 1;
            for (int idx = 1; idx <= n; ++idx)
                if (!in_subset[idx]) subsets.push_back({idx});
            result.subset = std::move(subset);
            result.partition = Partition(n, std::move(subsets));
            return result;
        }
    }
    return result;
}

} // namespace etf
