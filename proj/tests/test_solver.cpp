#include "oracle.hpp"

#include "pebble/harness.hpp"
#include "pebble/solver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pebble;

namespace {

oracle::State state(const Distribution& d) { return {d.counts().begin(), d.counts().end()}; }

Distribution random_distribution(std::mt19937_64& rng, std::size_t n, Count total) {
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    Distribution d(n);
    for (Count i = 0; i < total; ++i)
        d.add(pick(rng));
    return d;
}

} // namespace

TEST(Moves, ApplyValidates) {
    auto p = path(3);
    Distribution d{3, 0, 0};
    auto after = apply_move(p, d, make_move(p, 0, 1));
    EXPECT_EQ(after, (Distribution{1, 1, 0}));
    EXPECT_THROW(apply_move(p, after, make_move(p, 0, 1)), std::invalid_argument);
    EXPECT_THROW(make_move(p, 0, 2), std::invalid_argument);
    EXPECT_THROW(apply_move(p, d, Move{0, 1, 3}), std::invalid_argument);
    EXPECT_THROW(apply_move(p, Distribution{1, 1}, make_move(p, 0, 1)), std::invalid_argument);
}

TEST(Moves, Replay) {
    auto p = path(3);
    MoveSequence seq{Distribution{4, 0, 0}, {make_move(p, 0, 1), make_move(p, 0, 1), make_move(p, 1, 2)}};
    EXPECT_EQ(replay(p, seq), (Distribution{0, 0, 1}));
}

TEST(Reach, SmallExamples) {
    auto p2 = path(2);
    EXPECT_TRUE(is_reachable(p2, Distribution{2, 0}, delta(p2, 1)).reachable);
    EXPECT_FALSE(is_reachable(p2, Distribution{1, 0}, delta(p2, 1)).reachable);
    EXPECT_FALSE(is_reachable(p2, Distribution{3, 0}, delta(p2, 1, 2)).reachable);
    EXPECT_TRUE(is_reachable(p2, Distribution{4, 0}, delta(p2, 1, 2)).reachable);

    auto p3 = path(3);
    EXPECT_TRUE(is_reachable(p3, Distribution{3, 0, 0}, zero(p3)).reachable);
    auto trivial_witness = is_reachable(p3, Distribution{0, 2, 1}, delta(p3, 2));
    ASSERT_TRUE(trivial_witness.witness);
    EXPECT_TRUE(trivial_witness.witness->moves.empty());
    EXPECT_FALSE(is_reachable(p3, Distribution{3, 0, 0}, delta(p3, 2)).reachable);
    EXPECT_FALSE(is_reachable(p3, Distribution{2, 0, 1}, delta(p3, 2, 2)).reachable);
    EXPECT_TRUE(is_reachable(p3, Distribution{4, 0, 1}, delta(p3, 2, 2)).reachable);
}

TEST(Reach, WeightedK4CoverFailsFromNineAndFour) {
    auto k4 = weighted_k4();
    EXPECT_FALSE(is_reachable(k4, Distribution{9, 4, 0, 0}, gamma_target(k4)).reachable);
    SearchOptions paranoid;
    paranoid.paranoid = true;
    EXPECT_FALSE(is_reachable(k4, Distribution{9, 4, 0, 0}, gamma_target(k4), paranoid).reachable);
    EXPECT_TRUE(is_reachable(k4, Distribution{13, 0, 0, 0}, gamma_target(k4)).reachable);
    EXPECT_FALSE(oracle::reachable(k4, {9, 4, 0, 0}, {1, 1, 1, 1}));
}

TEST(Reach, ReachAnyReportsAMember) {
    auto p = path(4);
    auto hit = reach_any(p, Distribution{0, 3, 0, 0}, d_t(p, 1));
    ASSERT_TRUE(hit);
    EXPECT_TRUE(contains(replay(p, hit->witness), hit->target));
    EXPECT_FALSE(reach_any(p, Distribution{0, 1, 0, 0}, d_t(p, 1)));
}

TEST(Reach, RejectsMismatchedInputs) {
    auto p = path(3);
    EXPECT_THROW(is_reachable(p, Distribution{1, 0}, delta(p, 0)), std::invalid_argument);
    EXPECT_THROW(ReachSearch(p, DistributionSet{Distribution{1, 0}}), std::invalid_argument);
    EXPECT_THROW(ReachSearch(p, DistributionSet{}), std::invalid_argument);
}

TEST(Reach, UnitWeightEdgesMovePebblesLosslessly) {
    Graph g(3, {{0, 1, 1}, {1, 2, 1}});
    EXPECT_TRUE(is_reachable(g, Distribution{3, 0, 0}, Distribution{0, 0, 3}).reachable);
    EXPECT_FALSE(is_reachable(g, Distribution{2, 0, 0}, Distribution{0, 0, 3}).reachable);
    Graph mixed(3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}});
    for (Count total = 0; total <= 6; ++total)
        for (auto start : enumerate_distributions(mixed, total))
            for (VertexId v = 0; v < 3; ++v)
                EXPECT_EQ(is_reachable(mixed, start, delta(mixed, v, 2)).reachable,
                          oracle::reachable(mixed, state(start), state(delta(mixed, v, 2))));
}

TEST(Reach, WitnessesReplayToTheTarget) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::uniform_int_distribution<Count> pebbles(0, 10);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = random_connected_graph(rng, size(rng));
        auto start = random_distribution(rng, g.vertex_count(), pebbles(rng));
        auto target = random_distribution(rng, g.vertex_count(), 1 + trial % 3);
        auto r = is_reachable(g, start, target);
        EXPECT_EQ(r.reachable, oracle::reachable(g, state(start), state(target)));
        if (r.reachable) {
            ASSERT_TRUE(r.witness);
            EXPECT_EQ(r.witness->start, start);
            EXPECT_TRUE(contains(replay(g, *r.witness), target));
        }
    }
}

TEST(Reach, PruningModesAgree) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(2, 5);
    std::uniform_int_distribution<Weight> weight(1, 3);
    SearchOptions paranoid;
    paranoid.paranoid = true;
    SearchOptions dominance;
    dominance.dominance_pruning = true;
    SearchOptions no_potential;
    no_potential.potential_pruning = false;
    for (int trial = 0; trial < 40; ++trial) {
        auto base = random_connected_graph(rng, size(rng));
        std::vector<Weight> w(base.edge_count());
        for (auto& x : w)
            x = weight(rng);
        auto g = reweighted(base, w);
        auto target = random_distribution(rng, g.vertex_count(), 2);
        ReachSearch a(g, DistributionSet{target});
        ReachSearch b(g, DistributionSet{target}, paranoid);
        ReachSearch c(g, DistributionSet{target}, dominance);
        ReachSearch d(g, DistributionSet{target}, no_potential);
        for (Count total = 0; total <= 7; ++total)
            for (const auto& start : enumerate_distributions(g, total)) {
                const bool expected = b.reachable(start);
                EXPECT_EQ(a.reachable(start), expected);
                EXPECT_EQ(c.reachable(start), expected);
                EXPECT_EQ(d.reachable(start), expected);
            }
    }
}

TEST(Reach, MonotoneInTheStart) {
    auto g = cartesian_product(path(2), path(3));
    ReachSearch search(g, DistributionSet{delta(g, 5, 2)});
    for (Count total = 0; total <= 6; ++total)
        for (const auto& start : enumerate_distributions(g, total)) {
            if (!search.reachable(start))
                continue;
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                auto more = start;
                more.add(v);
                EXPECT_TRUE(search.reachable(more));
            }
        }
}

TEST(Reach, MetricClosurePreservesAnswers) {
    std::vector<Graph> graphs;
    for (std::size_t n = 1; n <= 4; ++n)
        for (auto& g : all_connected_graphs(n))
            graphs.push_back(g);
    for (const auto& g : all_connected_graphs(3))
        for (auto& w : all_weightings(g, {2, 3}))
            graphs.push_back(w);

    std::size_t checked = 0;
    for (const auto& g : graphs) {
        auto closure = metric_closure(g);
        for (Count tsize = 1; tsize <= 2; ++tsize)
            for (const auto& target : enumerate_distributions(g, tsize)) {
                ReachSearch on_g(g, DistributionSet{target});
                ReachSearch on_closure(closure, DistributionSet{target});
                for (Count total = 0; total <= 6; ++total)
                    for (const auto& start : enumerate_distributions(g, total)) {
                        ASSERT_EQ(on_g.reachable(start), on_closure.reachable(start))
                            << canonical_text(g) << " " << start.to_string() << " -> " << target.to_string();
                        ++checked;
                    }
            }
    }
    EXPECT_GT(checked, 0u);
}
