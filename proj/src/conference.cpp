#include "conference.hpp"

#include <array>
#include <cmath>
#include <string>

namespace etf {

namespace {

constexpr int kMaxDepth = 12; // order 4096, the largest the dense solvers handle comfortably

// Quadratic residues mod q for the supported Paley orders.
struct PaleyTable {
    int q;
    std::array<int, 8> residues;
    int count;
};

constexpr PaleyTable kPaleyTables[] = {
    {5, {1, 4, 0, 0, 0, 0, 0, 0}, 2},
    {13, {1, 3, 4, 9, 10, 12, 0, 0}, 6},
    {17, {1, 2, 4, 8, 9, 13, 15, 16}, 8},
};

int legendre_from_table(const PaleyTable& t, int x) {
    x %= t.q;
    if (x < 0) x += t.q;
    if (x == 0) return 0;
    for (int i = 0; i < t.count; ++i)
        if (t.residues[i] == x) return 1;
    return -1;
}

} // namespace

ConferenceMatrix::ConferenceMatrix(int order, int depth, bool symmetric,
                                   std::vector<int8_t> entries)
    : order_(order), depth_(depth), symmetric_(symmetric), e_(std::move(entries)) {
    check_structure();
    // The full n^3 product identity is only affordable at small orders here;
    // larger orders are covered exhaustively by the test suite.
    if (order_ <= 256 && !identity_holds())
        throw Error(Errc::internal, "conference matrix construction violates C*C^T = (n-1)*I");
}

void ConferenceMatrix::check_structure() const {
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < order_; ++j) {
            const int v = entry(i, j);
            if (i == j && v != 0)
                throw Error(Errc::internal, "conference matrix diagonal must be zero");
            if (i != j && v != 1 && v != -1)
                throw Error(Errc::internal, "conference matrix off-diagonal must be +-1");
            const int expected = symmetric_ ? entry(j, i) : -entry(j, i);
            if (v != expected)
                throw Error(Errc::internal, "conference matrix symmetry kind violated");
        }
    }
}

bool ConferenceMatrix::identity_holds() const {
    const int n = order_;
    for (int i = 0; i < n; ++i) {
        const int8_t* ri = e_.data() + static_cast<size_t>(i) * n;
        for (int j = i; j < n; ++j) {
            const int8_t* rj = e_.data() + static_cast<size_t>(j) * n;
            int acc = 0;
            for (int t = 0; t < n; ++t) acc += static_cast<int>(ri[t]) * rj[t];
            if (acc != (i == j ? n - 1 : 0)) return false;
        }
    }
    return true;
}

ConferenceMatrix ConferenceMatrix::recursive(int k) {
    if (k < 1 || k > kMaxDepth)
        throw Error(Errc::invalid_argument,
                    "conference depth k must be in [1, " + std::to_string(kMaxDepth) + "]");
    std::vector<int8_t> c = {0, -1, 1, 0};
    int n = 2;
    for (int level = 2; level <= k; ++level) {
        const int half = n;
        n *= 2;
        std::vector<int8_t> next(static_cast<size_t>(n) * n);
        for (int i = 0; i < half; ++i) {
            for (int j = 0; j < half; ++j) {
                const int8_t v = c[static_cast<size_t>(i) * half + j];
                const int8_t diag = static_cast<int8_t>(i == j ? 1 : 0);
                next[static_cast<size_t>(i) * n + j] = v;
                next[static_cast<size_t>(i) * n + half + j] = static_cast<int8_t>(v - diag);
                next[static_cast<size_t>(half + i) * n + j] = static_cast<int8_t>(v + diag);
                next[static_cast<size_t>(half + i) * n + half + j] = static_cast<int8_t>(-v);
            }
        }
        c = std::move(next);
    }
    return ConferenceMatrix(n, k, /*symmetric=*/false, std::move(c));
}

ConferenceMatrix ConferenceMatrix::paley(int q) {
    const PaleyTable* table = nullptr;
    for (const auto& t : kPaleyTables)
        if (t.q == q) table = &t;
    if (table == nullptr)
        throw Error(Errc::unsupported, "paley conference matrix: supported q are 5, 13, 17");

    const int n = q + 1;
    std::vector<int8_t> e(static_cast<size_t>(n) * n, 0);
    for (int j = 1; j < n; ++j) {
        e[j] = 1;                        // first row
        e[static_cast<size_t>(j) * n] = 1; // first column
    }
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            e[static_cast<size_t>(1 + a) * n + (1 + b)] =
                static_cast<int8_t>(legendre_from_table(*table, a - b));
    return ConferenceMatrix(n, 0, /*symmetric=*/true, std::move(e));
}

ComplexMatrix ConferenceMatrix::to_complex() const {
    ComplexMatrix m(order_, order_);
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) m(i, j) = static_cast<double>(entry(i, j));
    return m;
}

ConferenceMatrix::Spectrum ConferenceMatrix::spectrum() const {
    return {std::sqrt(static_cast<double>(order_ - 1)), order_ / 2, !symmetric_};
}

} // namespace etf
