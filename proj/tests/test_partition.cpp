#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "conference.hpp"
#include "frame.hpp"
#include "gram.hpp"
#include "partition.hpp"
#include "rng.hpp"

using etf::ConferenceMatrix;
using etf::DiagonalPartition;
using etf::Frame;
using etf::GramMatrix;
using etf::Partition;

namespace {

GramMatrix mss_gram(int k) {
    const auto c = ConferenceMatrix::recursive(k);
    return GramMatrix::build(c, GramMatrix::mss_alpha(c.order()));
}

// The 16-element subset from the r=17 counterexample.
const std::vector<int> kViolatingSubset = {2,  5,  7,  8,  9,  10, 11, 13,
                                           14, 16, 17, 19, 21, 25, 27, 31};

std::vector<int> random_subset(etf::SplitMix64& rng, int n, int size) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    for (int i = 0; i < size; ++i)
        std::swap(pool[i], pool[i + static_cast<int>(rng.below(n - i))]);
    std::vector<int> s(pool.begin(), pool.begin() + size);
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

TEST_CASE("partition validation") {
    CHECK_NOTHROW(Partition(4, {{1, 2}, {4, 3}}));
    CHECK_THROWS_AS(Partition(4, {{1, 2}, {3}}), etf::Error);         // misses 4
    CHECK_THROWS_AS(Partition(4, {{1, 2}, {2, 3, 4}}), etf::Error);   // overlap
    CHECK_THROWS_AS(Partition(4, {{1, 2}, {}, {3, 4}}), etf::Error);  // empty subset
    CHECK_THROWS_AS(Partition(4, {{1, 2}, {3, 4, 5}}), etf::Error);   // out of range
    const Partition p(4, {{3, 4}, {1, 2}});
    CHECK(p.size() == 2);
    CHECK(p.subset(0) == std::vector<int>{3, 4});
}

TEST_CASE("diagonal partition algorithm: worked cases") {
    SUBCASE("r a power of two gives equal blocks") {
        const auto p = etf::diagonal_partition_algorithm(4, 8);
        REQUIRE(p.blocks.size() == 8);
        for (int i = 0; i < 8; ++i) {
            CHECK(p.blocks[i].d == 3);
            CHECK(p.blocks[i].q == i + 1);
        }
    }
    SUBCASE("k=4, r=5 splits the first power-of-two block") {
        const auto p = etf::diagonal_partition_algorithm(4, 5);
        const auto part = p.to_partition();
        REQUIRE(part.size() == 5);
        CHECK(part.subset(0) == std::vector<int>{1, 2});
        CHECK(part.subset(1) == std::vector<int>{3, 4});
        CHECK(part.subset(2) == std::vector<int>{5, 6, 7, 8});
        CHECK(part.subset(3) == std::vector<int>{9, 10, 11, 12});
        CHECK(part.subset(4) == std::vector<int>{13, 14, 15, 16});
    }
    SUBCASE("r=1 is the whole set") {
        const auto p = etf::diagonal_partition_algorithm(3, 1);
        REQUIRE(p.blocks.size() == 1);
        CHECK(p.blocks[0].d == 0);
        CHECK(p.blocks[0].q == 1);
    }
    SUBCASE("r=2^k is all singletons") {
        const auto p = etf::diagonal_partition_algorithm(3, 8);
        REQUIRE(p.blocks.size() == 8);
        for (const auto& b : p.blocks) CHECK(b.d == 3);
    }
    SUBCASE("out-of-range r is rejected") {
        CHECK_THROWS_AS((void)etf::diagonal_partition_algorithm(3, 0), etf::Error);
        CHECK_THROWS_AS((void)etf::diagonal_partition_algorithm(3, 9), etf::Error);
    }
}

TEST_CASE("diagonal partition algorithm: structure for every 1 <= r <= 2^k, k <= 6") {
    for (int k = 1; k <= 6; ++k) {
        for (int r = 1; r <= (1 << k); ++r) {
            CAPTURE(k);
            CAPTURE(r);
            const auto p = etf::diagonal_partition_algorithm(k, r);
            REQUIRE(static_cast<int>(p.blocks.size()) == r);
            const auto part = p.to_partition(); // validates cover/disjoint
            const int d = std::bit_width(static_cast<unsigned>(r)) - 1;
            const int rp = 1 << d;
            // first loop: 2(r - r') blocks at depth d+1, then 2r' - r at depth d
            int first_count = 0;
            int elements_first = 0;
            int elements_second = 0;
            for (int h = 0; h < r; ++h) {
                const auto& b = p.blocks[h];
                if (h < 2 * (r - rp)) {
                    REQUIRE(b.d == d + 1);
                    ++first_count;
                    elements_first += 1 << (k - d - 1);
                } else {
                    REQUIRE(b.d == d);
                    elements_second += 1 << (k - d);
                }
                REQUIRE(static_cast<int>(part.subset(h).size()) <= (1 << (k - d)));
            }
            CHECK(first_count == 2 * (r - rp));
            CHECK(elements_first == r * (1 << (k - d)) - (1 << k));
            CHECK(elements_second == (1 << (k + 1)) - r * (1 << (k - d)));
            CHECK(elements_first + elements_second == (1 << k));
        }
    }
}

TEST_CASE("classify_diagonal") {
    const auto p = etf::diagonal_partition_algorithm(4, 5).to_partition();
    const auto d = etf::classify_diagonal(p);
    REQUIRE(d.has_value());
    CHECK(d->k == 4);
    CHECK(d->blocks[0].d == 3);
    CHECK(d->blocks[2].d == 2);

    // the worked 16-vector example: {1,2},{3,4},{5..8},{9,10},{11,12},{13,14},{15},{16}
    const Partition manual(16, {{1, 2},
                                {3, 4},
                                {5, 6, 7, 8},
                                {9, 10},
                                {11, 12},
                                {13, 14},
                                {15},
                                {16}});
    const auto dm = etf::classify_diagonal(manual);
    REQUIRE(dm.has_value());
    CHECK(dm->blocks[2].d == 2);
    CHECK(dm->blocks[2].q == 2);
    CHECK(dm->blocks[6].d == 4);
    CHECK(dm->blocks[6].q == 15);

    CHECK_FALSE(etf::classify_diagonal(Partition(4, {{1, 3}, {2, 4}})).has_value());
    CHECK_FALSE(etf::classify_diagonal(Partition(4, {{2, 3}, {1}, {4}})).has_value());
    CHECK_FALSE(etf::classify_diagonal(Partition(6, {{1, 2, 3}, {4, 5, 6}})).has_value());
}

TEST_CASE("subset norms: anchors") {
    const auto r = mss_gram(4);
    const auto f = etf::build_frame(r);
    SUBCASE("singleton norm is 1/2") {
        const auto sn = etf::subset_norm_gram(f, r, {7});
        CHECK(sn.value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(sn.route == etf::NormRoute::gram_eig);
        CHECK(etf::subset_norm_outer(f, {7}) == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("whole frame has norm 1, via the outer fallback") {
        std::vector<int> all(16);
        for (int i = 0; i < 16; ++i) all[i] = i + 1;
        const auto sn = etf::subset_norm_gram(f, r, all);
        CHECK(sn.value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sn.route == etf::NormRoute::outer_eig); // R itself is singular
        CHECK(etf::subset_norm_outer(f, all) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("depth-2 block {5,6,7,8}") {
        const double expected = 0.5 + 0.5 * std::sqrt(3.0) / std::sqrt(15.0);
        CHECK(etf::subset_norm_gram(f, r, {5, 6, 7, 8}).value ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("dual routes agree on random subsets") {
    const auto r = mss_gram(5);
    const auto f = etf::build_frame(r);
    etf::SplitMix64 rng(20161111);
    for (int trial = 0; trial < 40; ++trial) {
        const int size = 1 + static_cast<int>(rng.below(32));
        const auto s = random_subset(rng, 32, size);
        CAPTURE(trial);
        const double via_gram = etf::subset_norm_gram(f, r, s).value;
        const double via_outer = etf::subset_norm_outer(f, s);
        CHECK(std::abs(via_gram - via_outer) < 1e-9);
        // frame-only Gram route agrees too
        CHECK(std::abs(etf::subset_norm_gram(f, s).value - via_outer) < 1e-9);
    }
}

TEST_CASE("dual routes agree on every subset of size <= 3, k=4") {
    const auto r = mss_gram(4);
    const auto f = etf::build_frame(r);
    for (int a = 1; a <= 16; ++a)
        for (int b = a + 1; b <= 16; ++b) {
            REQUIRE(std::abs(etf::subset_norm_gram(f, r, {a, b}).value -
                             etf::subset_norm_outer(f, {a, b})) < 1e-9);
            for (int c = b + 1; c <= 16; ++c)
                REQUIRE(std::abs(etf::subset_norm_gram(f, r, {a, b, c}).value -
                                 etf::subset_norm_outer(f, {a, b, c})) < 1e-9);
        }
}

TEST_CASE("subset norms stay within [delta, 1]") {
    const auto r = mss_gram(5);
    const auto f = etf::build_frame(r);
    etf::SplitMix64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const int size = 1 + static_cast<int>(rng.below(32));
        const auto s = random_subset(rng, 32, size);
        const double norm = etf::subset_norm_gram(f, r, s).value;
        CHECK(norm >= 0.5 - 1e-10);
        CHECK(norm <= 1.0 + 1e-10);
    }
}

TEST_CASE("diagonal_subset_norm_closed") {
    CHECK(etf::diagonal_subset_norm_closed(4, 0) == doctest::Approx(1.0));
    CHECK(etf::diagonal_subset_norm_closed(4, 4) == doctest::Approx(0.5));
    CHECK(etf::diagonal_subset_norm_closed(5, 1) ==
          doctest::Approx(0.5 + 0.5 * std::sqrt(15.0) / std::sqrt(31.0)));
    CHECK_THROWS_AS((void)etf::diagonal_subset_norm_closed(4, 5), etf::Error);
    CHECK_THROWS_AS((void)etf::diagonal_subset_norm_closed(4, -1), etf::Error);

    SUBCASE("strictly decreasing in d") {
        for (int k : {3, 6, 8})
            for (int d = 0; d < k; ++d)
                CHECK(etf::diagonal_subset_norm_closed(k, d) >
                      etf::diagonal_subset_norm_closed(k, d + 1));
    }
}

TEST_CASE("closed form matches the eigensolver on every block, k <= 6") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        const auto r = mss_gram(k);
        const auto f = etf::build_frame(r);
        for (int d = 0; d <= k; ++d) {
            const double expected = etf::diagonal_subset_norm_closed(k, d);
            for (int q = 1; q <= (1 << d); ++q) {
                const auto s = etf::block_index_set({d, q}, k);
                REQUIRE(std::abs(etf::subset_norm_gram(f, r, s).value - expected) < 1e-10);
            }
        }
    }
}

TEST_CASE("verify_theorem_bound") {
    const auto r = mss_gram(5);
    const auto f = etf::build_frame(r);
    SUBCASE("k=5, r=8: every norm at most 0.75") {
        const auto reports =
            etf::verify_theorem_bound(etf::diagonal_partition_algorithm(5, 8), f, r);
        REQUIRE(reports.size() == 8);
        for (const auto& rep : reports) {
            CHECK(rep.norm <= 0.75 + 1e-9);
            CHECK(rep.sharp_ok);
            CHECK(rep.mss_ok);
            CHECK(rep.sharp_bound.value() == doctest::Approx(0.75));
            CHECK(rep.mss_bound == doctest::Approx(1.125));
        }
    }
    SUBCASE("bound values for r=2 and r=4 match the table") {
        const auto rep2 =
            etf::verify_theorem_bound(etf::diagonal_partition_algorithm(5, 2), f, r);
        CHECK(rep2.front().sharp_bound.value() == doctest::Approx(1.0));
        CHECK(rep2.front().mss_bound == doctest::Approx(2.0));
        const auto rep4 =
            etf::verify_theorem_bound(etf::diagonal_partition_algorithm(5, 4), f, r);
        CHECK(rep4.front().sharp_bound.value() == doctest::Approx(0.853553).epsilon(1e-6));
        CHECK(rep4.front().mss_bound == doctest::Approx(1.45711).epsilon(1e-5));
    }
}

TEST_CASE("theorem bound holds for algorithm output across k and r") {
    for (int k : {4, 5, 6}) {
        CAPTURE(k);
        const auto r = mss_gram(k);
        const auto f = etf::build_frame(r);
        for (int rr = 1; rr <= (1 << k); rr += (rr < 8 ? 1 : 7)) {
            CAPTURE(rr);
            const auto reports =
                etf::verify_theorem_bound(etf::diagonal_partition_algorithm(k, rr), f, r);
            for (const auto& rep : reports) REQUIRE(rep.sharp_ok);
        }
    }
}

TEST_CASE("small_subset_norm_closed") {
    const auto f4 = etf::build_frame(mss_gram(4));
    SUBCASE("pairs: one value, matching both routes") {
        const auto candidates = etf::small_subset_norm_closed(f4, 2);
        REQUIRE(candidates.size() == 1);
        CHECK(candidates[0] == doctest::Approx(0.5 * (1.0 + 1.0 / std::sqrt(15.0))));
        CHECK(etf::subset_norm_outer(f4, {3, 11}) ==
              doctest::Approx(candidates[0]).epsilon(1e-9));
    }
    SUBCASE("complex triples: one value") {
        const auto candidates = etf::small_subset_norm_closed(f4, 3);
        REQUIRE(candidates.size() == 1);
        CHECK(candidates[0] ==
              doctest::Approx(0.5 * (1.0 + std::sqrt(3.0) / std::sqrt(15.0))));
    }
    SUBCASE("real triples: two candidates, every 3-subset matches one of them") {
        const auto c = ConferenceMatrix::paley(5);
        const auto f = etf::build_frame(GramMatrix::build(c, GramMatrix::mss_alpha(6)));
        const auto candidates = etf::small_subset_norm_closed(f, 3);
        REQUIRE(candidates.size() == 2);
        CHECK(candidates[0] == doctest::Approx(0.5 * (1.0 + 1.0 / std::sqrt(5.0))));
        CHECK(candidates[1] == doctest::Approx(0.5 * (1.0 + 2.0 / std::sqrt(5.0))));
        int matched = 0;
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b)
                for (int c3 = b + 1; c3 <= 6; ++c3) {
                    const double norm = etf::subset_norm_outer(f, {a, b, c3});
                    const bool hit = std::abs(norm - candidates[0]) < 1e-9 ||
                                     std::abs(norm - candidates[1]) < 1e-9;
                    if (hit) ++matched;
                }
        CHECK(matched == 20);
    }
    SUBCASE("unsupported cardinality") {
        CHECK_THROWS_AS((void)etf::small_subset_norm_closed(f4, 4), etf::Error);
    }
}

TEST_CASE("verify_small_subset_bounds") {
    const auto r = mss_gram(5);
    const auto f = etf::build_frame(r);
    SUBCASE("all singletons: every norm is delta") {
        std::vector<std::vector<int>> subsets;
        for (int i = 1; i <= 32; ++i) subsets.push_back({i});
        const auto reports = etf::verify_small_subset_bounds(Partition(32, subsets), f);
        for (const auto& rep : reports) {
            CHECK(rep.norm == doctest::Approx(0.5).epsilon(1e-10));
            CHECK(rep.small_ok);
        }
    }
    SUBCASE("16 pairs: norms (1/2)(1 + 1/sqrt(31)) below the pair bound") {
        std::vector<std::vector<int>> subsets;
        for (int i = 1; i <= 32; i += 2) subsets.push_back({i, i + 1});
        const auto reports = etf::verify_small_subset_bounds(Partition(32, subsets), f);
        const double expected = 0.5 * (1.0 + 1.0 / std::sqrt(31.0));
        for (const auto& rep : reports) {
            CHECK(rep.norm == doctest::Approx(expected).epsilon(1e-9));
            CHECK(rep.small_bound.value() ==
                  doctest::Approx(0.5 + std::sqrt(0.5 / 16.0)));
            CHECK(rep.norm <= 0.625); // comfortably below even 1/2 + 1/8
            CHECK(rep.small_ok);
            CHECK(rep.mss_ok);
        }
    }
    SUBCASE("a cardinality-4 subset is rejected") {
        std::vector<std::vector<int>> subsets = {{1, 2, 3, 4}};
        for (int i = 5; i <= 32; ++i) subsets.push_back({i});
        CHECK_THROWS_AS((void)etf::verify_small_subset_bounds(Partition(32, subsets), f),
                        etf::Error);
    }
}

TEST_CASE("bound formulas and their ordering") {
    CHECK(etf::mss_bound(17, 0.5) == doctest::Approx(0.901821).epsilon(1e-6));
    CHECK(etf::diagonal_bound(1) == doctest::Approx(1.20711).epsilon(1e-5));
    CHECK(etf::diagonal_bound(3) == doctest::Approx(0.908248).epsilon(1e-6));
    CHECK(etf::mss_bound(3, 0.5) == doctest::Approx(1.64983).epsilon(1e-5));
    CHECK(etf::small_subset_bound(16, 0.5, 2, etf::FieldTag::complex) ==
          doctest::Approx(0.5 + std::sqrt(0.5 / 16.0)));
    CHECK(etf::small_subset_bound(4, 0.5, 3, etf::FieldTag::real) ==
          doctest::Approx(0.5 + 2.0 * std::sqrt(0.125)));

    for (int r = 1; r <= 64; ++r) {
        CAPTURE(r);
        const double pair = etf::small_subset_bound(r, 0.5, 2, etf::FieldTag::complex);
        const double triple = etf::small_subset_bound(r, 0.5, 3, etf::FieldTag::complex);
        const double sharp = etf::diagonal_bound(r);
        const double mss = etf::mss_bound(r, 0.5);
        CHECK(pair <= triple + 1e-12);
        CHECK(pair <= sharp + 1e-12);
        CHECK(sharp <= mss + 1e-12);
        CHECK(triple <= mss + 1e-12);
    }
}

TEST_CASE("check_partition annotates applicable bounds") {
    const auto r = mss_gram(4);
    const auto f = etf::build_frame(r);
    SUBCASE("diagonal partition gets the sharp bound") {
        const auto p = etf::diagonal_partition_algorithm(4, 6).to_partition();
        const auto reports = etf::check_partition(p, f, &r);
        for (const auto& rep : reports) {
            CHECK(rep.sharp_bound.has_value());
            CHECK(rep.sharp_ok);
        }
    }
    SUBCASE("non-diagonal pair partition gets the small bound only") {
        std::vector<std::vector<int>> subsets;
        for (int i = 1; i <= 8; ++i) subsets.push_back({i, i + 8});
        const auto reports = etf::check_partition(Partition(16, subsets), f, &r);
        for (const auto& rep : reports) {
            CHECK_FALSE(rep.sharp_bound.has_value());
            CHECK(rep.small_bound.has_value());
            CHECK(rep.small_ok);
            CHECK(rep.mss_ok);
        }
    }
}

TEST_CASE("the explicit 16-element subset violates the MSS bound for r=17") {
    const auto r = mss_gram(5);
    const auto f = etf::build_frame(r);
    const double bound = etf::mss_bound(17, 0.5);
    const double norm = etf::subset_norm_gram(f, r, kViolatingSubset).value;
    CHECK(norm > bound + 1e-6);
    // derived regression value, first computed when this suite was written
    CHECK(norm == doctest::Approx(0.997832115742714).epsilon(1e-9));
    CHECK(etf::subset_norm_outer(f, kViolatingSubset) ==
          doctest::Approx(norm).epsilon(1e-9));

    // the same-cardinality diagonal block stays below the bound
    std::vector<int> block(16);
    for (int i = 0; i < 16; ++i) block[i] = i + 1;
    CHECK(etf::subset_norm_gram(f, r, block).value < bound);
}

TEST_CASE("find_mss_violation") {
    const auto r = mss_gram(5);
    const auto f = etf::build_frame(r);
    SUBCASE("a seeded search finds a violating partition quickly") {
        const auto res = etf::find_mss_violation(f, 17, 50, 12345);
        REQUIRE(res.found);
        CHECK(res.norm > res.bound);
        CHECK(res.subset.size() == 16);
        REQUIRE(res.partition.has_value());
        CHECK(res.partition->size() == 17);
        CHECK(res.partition->ground_size() == 32);
    }
    SUBCASE("same seed, same outcome") {
        const auto a = etf::find_mss_violation(f, 17, 20, 99);
        const auto b = etf::find_mss_violation(f, 17, 20, 99);
        CHECK(a.found == b.found);
        CHECK(a.trial == b.trial);
        CHECK(a.subset == b.subset);
        CHECK(a.norm == b.norm);
    }
    SUBCASE("r=1 never violates (norm 1 below the bound)") {
        const auto res = etf::find_mss_violation(f, 1, 5, 3);
        CHECK_FALSE(res.found);
    }
    SUBCASE("bad r is rejected") {
        CHECK_THROWS_AS((void)etf::find_mss_violation(f, 0, 1, 1), etf::Error);
        CHECK_THROWS_AS((void)etf::find_mss_violation(f, 33, 1, 1), etf::Error);
    }
}
