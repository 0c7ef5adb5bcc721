#include "oracle.hpp"

#include "pebble/combinatorics.hpp"
#include "pebble/distribution.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace pebble;

TEST(Distribution, Basics) {
    Distribution d{1, 0, 3};
    EXPECT_EQ(d.size(), 4u);
    EXPECT_EQ(d.vertex_count(), 3u);
    d.add(1, 2);
    EXPECT_EQ(d.size(), 6u);
    d.set(2, 0);
    EXPECT_EQ(d.to_string(), "[1,2,0]");
    EXPECT_FALSE(d.is_zero());
    EXPECT_TRUE(zero(path(3)).is_zero());
}

TEST(Distribution, Shorthands) {
    auto p = path(4);
    EXPECT_EQ(delta(p, 2, 3), (Distribution{0, 0, 3, 0}));
    EXPECT_THROW(delta(p, 4), std::invalid_argument);
    EXPECT_EQ(gamma_target(p), (Distribution{1, 1, 1, 1}));
    EXPECT_EQ(scale(Distribution{1, 2}, 3), (Distribution{3, 6}));

    auto s2 = s_t(p, 2);
    EXPECT_EQ(s2.size(), 4u);
    EXPECT_TRUE(s2.contains_member(delta(p, 3, 2)));

    auto d2 = d_t(p, 2);
    EXPECT_EQ(d2, (DistributionSet{delta(p, 0, 2), delta(p, 3, 2)}));
    EXPECT_THROW(d_t(cycle(4), 1), std::invalid_argument);
    EXPECT_EQ(d_t(trivial(), 2).size(), 1u);

    auto n = n2(p, 1);
    EXPECT_EQ(n, (DistributionSet{delta(p, 0, 2), delta(p, 2, 2)}));
    EXPECT_THROW(n2(trivial(), 0), std::invalid_argument);
}

TEST(Distribution, ProductAndSetProduct) {
    Distribution a{1, 2};
    Distribution b{3, 0, 1};
    EXPECT_EQ(product(a, b), (Distribution{3, 0, 1, 6, 0, 2}));

    DistributionSet sa{Distribution{1, 0}, Distribution{0, 1}};
    DistributionSet sb{Distribution{1}};
    auto prod = set_product(sa, sb);
    EXPECT_EQ(prod.size(), 2u);
    EXPECT_EQ(prod, sa);

    // {2 delta} times D_1 on a path is D_2.
    auto p = path(5);
    EXPECT_EQ(set_product(DistributionSet{delta(trivial(), 0, 2)}, d_t(p, 1)), d_t(p, 2));
}

TEST(Distribution, SetsDeduplicateAndCompareAsSets) {
    DistributionSet s{Distribution{1, 0}, Distribution{1, 0}, Distribution{0, 1}};
    EXPECT_EQ(s.size(), 2u);
    DistributionSet t{Distribution{0, 1}, Distribution{1, 0}};
    EXPECT_EQ(s, t);
    EXPECT_THROW((DistributionSet{Distribution{1}, Distribution{1, 0}}), std::invalid_argument);
    EXPECT_THROW(require_nonempty(DistributionSet{}), std::invalid_argument);
}

TEST(Contains, Examples) {
    EXPECT_TRUE(contains(Distribution{2, 1}, Distribution{1, 1}));
    EXPECT_FALSE(contains(Distribution{2, 0}, Distribution{1, 1}));
    EXPECT_TRUE(contains(Distribution{0, 0}, Distribution{0, 0}));
    EXPECT_THROW(contains(Distribution{1}, Distribution{1, 0}), std::invalid_argument);
}

TEST(Contains, IsAPartialOrder) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Count> c(0, 2);
    std::vector<Distribution> ds;
    for (int i = 0; i < 60; ++i)
        ds.push_back(Distribution{c(rng), c(rng), c(rng)});
    for (const auto& a : ds) {
        EXPECT_TRUE(contains(a, a));
        for (const auto& b : ds) {
            if (contains(a, b) && contains(b, a)) {
                EXPECT_EQ(a, b);
            }
            for (const auto& x : ds) {
                if (contains(a, b) && contains(b, x)) {
                    EXPECT_TRUE(contains(a, x));
                }
            }
        }
    }
}

TEST(Enumeration, CountsAndOrder) {
    for (std::size_t n = 1; n <= 5; ++n) {
        Graph g = path(n);
        for (Count total = 0; total <= 6; ++total) {
            std::vector<std::vector<Count>> seen;
            for (auto it = enumerate_distributions(g, total).begin(); it != std::default_sentinel; ++it) {
                const auto& c = it.counts();
                EXPECT_EQ(std::accumulate(c.begin(), c.end(), Count{0}), total);
                seen.push_back(c);
            }
            EXPECT_EQ(seen.size(), composition_count(total, n));
            EXPECT_EQ(seen.size(), binomial(total + n - 1, n - 1));
            for (std::size_t i = 1; i < seen.size(); ++i)
                EXPECT_GT(seen[i - 1], seen[i]);
            std::set<std::vector<Count>> unique(seen.begin(), seen.end());
            EXPECT_EQ(unique.size(), seen.size());
        }
    }
    EXPECT_EQ(composition_count(21, 9), 4292145u);
}

TEST(Enumeration, ExamplesOnTwoVertices) {
    std::vector<Distribution> got;
    for (auto d : enumerate_distributions(path(2), 2))
        got.push_back(d);
    EXPECT_EQ(got, (std::vector<Distribution>{{2, 0}, {1, 1}, {0, 2}}));
    std::vector<Distribution> none;
    for (auto d : enumerate_distributions(path(3), 0))
        none.push_back(d);
    EXPECT_EQ(none, (std::vector<Distribution>{{0, 0, 0}}));
}

TEST(Indexer, IsADenseBijection) {
    for (std::size_t n = 1; n <= 4; ++n) {
        CompositionIndexer idx(n, 2);
        idx.ensure(7);
        std::uint64_t expected = 0;
        for (Count total = 0; total <= 7; ++total)
            for (auto it = CompositionRange(n, total).begin(); it != std::default_sentinel; ++it)
                EXPECT_EQ(idx.index(it.counts()), expected++);
    }
}

TEST(Indexer, StableAcrossGrowth) {
    CompositionIndexer small(3, 4);
    CompositionIndexer large(3, 40);
    std::vector<Count> c{1, 2, 1};
    const auto before = small.index(c);
    small.ensure(30);
    EXPECT_EQ(small.index(c), before);
    EXPECT_EQ(large.index(c), before);
    EXPECT_THROW((void)small.index(std::vector<Count>{100, 0, 0}), std::out_of_range);
}

TEST(Binomial, SmallAndSaturating) {
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(3, 5), 0u);
    EXPECT_EQ(binomial(29, 8), 4292145u);
    EXPECT_EQ(binomial(200, 100), kSaturated);
}

TEST(CriticalDistribution, SizesMatchCycleValuesMinusOne) {
    // pi(C_m) for m = 3..11: 3, 4, 5, 8, 11, 16, 21, 32, 43.
    const std::vector<std::uint64_t> cycle_pi{0, 0, 0, 3, 4, 5, 8, 11, 16, 21, 32, 43};
    for (std::size_t n = 2; n <= 8; ++n)
        for (unsigned i = 0; i <= 2; ++i) {
            const auto m = n + 2 * i - 1;
            if (m < 3 || m >= cycle_pi.size())
                continue;
            EXPECT_EQ(critical_path_distribution(n, i).size() + 1, cycle_pi[m]) << n << "," << i;
        }
    EXPECT_EQ(critical_path_distribution(5, 0), (Distribution{0, 0, 3, 0, 0}));
    EXPECT_EQ(critical_path_distribution(6, 1), (Distribution{0, 0, 5, 5, 0, 0}));
    EXPECT_THROW(critical_path_distribution(1, 0), std::invalid_argument);
}
