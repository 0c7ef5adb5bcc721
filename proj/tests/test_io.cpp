#include "pebble/cache.hpp"
#include "pebble/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace pebble;

namespace {

std::string temp_path(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("pebble-test-" + name);
    std::filesystem::remove(p);
    return p.string();
}

} // namespace

TEST(ParseGraph, Shorthands) {
    EXPECT_EQ(parse_graph("path:3"), path(3));
    EXPECT_EQ(parse_graph(" cycle:5 "), cycle(5));
    EXPECT_EQ(parse_graph("complete:4"), complete(4));
    EXPECT_EQ(parse_graph("cube:3"), hypercube(3));
    EXPECT_EQ(parse_graph("trivial"), trivial());
    EXPECT_EQ(parse_graph("k4w"), weighted_k4());
    auto nested = parse_graph("product(path:2,product(path:2,cycle:3))");
    EXPECT_EQ(nested.vertex_count(), 12u);
    ASSERT_TRUE(nested.product_shape());
    EXPECT_EQ(nested.product_shape()->left, 2u);
    EXPECT_THROW(parse_graph("star:3"), std::invalid_argument);
    EXPECT_THROW(parse_graph("path:x"), std::invalid_argument);
    EXPECT_THROW(parse_graph("path:0"), std::invalid_argument);
    EXPECT_THROW(parse_graph(""), std::invalid_argument);
}

TEST(ParseGraph, JsonRoundTrip) {
    auto g = Graph(3, {{0, 1, 3}, {1, 2, 2}}, {"a", "b", "c"});
    auto j = to_json(g);
    EXPECT_EQ(graph_from_json(j), g);
    EXPECT_EQ(graph_from_json(j).labels(), g.labels());
    EXPECT_EQ(parse_graph(j.dump()), g);
    EXPECT_EQ(parse_graph(R"({"n": 2, "edges": [[0, 1]]})"), path(2));
    EXPECT_THROW(parse_graph(R"({"n": 2, "edges": [[0]]})"), std::invalid_argument);

    const auto file = temp_path("graph.json");
    std::ofstream(file) << j.dump();
    EXPECT_EQ(parse_graph(file), g);
    std::filesystem::remove(file);
}

TEST(ParseGraph, Families) {
    std::mt19937_64 rng(3);
    EXPECT_EQ(parse_graph_family("path:1..3;cycle:4", rng).size(), 4u);
    EXPECT_EQ(parse_graph_family("connected:3", rng).size(), 4u);
    auto random = parse_graph_family("random:5:4", rng);
    EXPECT_EQ(random.size(), 5u);
    for (const auto& g : random)
        EXPECT_TRUE(g.is_connected());
    std::mt19937_64 a(9), b(9);
    EXPECT_EQ(parse_graph_family("random:3:5", a), parse_graph_family("random:3:5", b));
    EXPECT_TRUE(parse_graph_family(" ", rng).empty());
    EXPECT_THROW(parse_graph_family("random:3", rng), std::invalid_argument);
}

TEST(ParseDistribution, Forms) {
    auto p = path(3);
    EXPECT_EQ(parse_distribution(p, "[1,0,2]"), (Distribution{1, 0, 2}));
    EXPECT_EQ(parse_distribution(p, "delta:2"), delta(p, 2));
    EXPECT_EQ(parse_distribution(p, "tdelta:1:4"), delta(p, 1, 4));
    EXPECT_EQ(parse_distribution(p, "gamma"), gamma_target(p));
    EXPECT_EQ(parse_distribution(p, "zero"), zero(p));
    EXPECT_THROW(parse_distribution(p, "[1,0]"), std::invalid_argument);
    EXPECT_THROW(parse_distribution(p, "delta:3"), std::invalid_argument);
    EXPECT_THROW(parse_distribution(p, "blob"), std::invalid_argument);

    auto grid = cartesian_product(path(2), path(3));
    EXPECT_EQ(parse_distribution(grid, "tdelta:(1,2):2"), delta(grid, 5, 2));
    EXPECT_EQ(parse_vertex(weighted_k4(), "x3"), 2u);
    EXPECT_THROW(parse_vertex(p, "(0,1)"), std::invalid_argument);
}

TEST(ParseDistribution, Sets) {
    auto p = path(4);
    EXPECT_EQ(parse_distribution_set(p, "S_t:2"), s_t(p, 2));
    EXPECT_EQ(parse_distribution_set(p, "D_t:1"), d_t(p, 1));
    EXPECT_EQ(parse_distribution_set(p, "N2:1"), n2(p, 1));
    EXPECT_EQ(parse_distribution_set(p, "[[1,0,0,0],[0,0,0,1]]"), d_t(p, 1));
    EXPECT_EQ(parse_distribution_set(p, "delta:0; delta:3"), d_t(p, 1));
    EXPECT_EQ(parse_distribution_set(p, "gamma").size(), 1u);
    EXPECT_THROW(parse_distribution_set(cycle(4), "D_t:1"), std::invalid_argument);
}

TEST(Json, WitnessAndNumber) {
    auto p = path(3);
    auto r = is_reachable(p, Distribution{4, 0, 0}, delta(p, 2));
    ASSERT_TRUE(r.witness);
    auto j = to_json(p, *r.witness);
    EXPECT_EQ(j["start"], Json::parse("[4,0,0]"));
    EXPECT_EQ(j["moves"].size(), 3u);
    EXPECT_EQ(j["end"], Json::parse("[0,0,1]"));

    auto n = pi_graph(p);
    auto nj = to_json(n);
    EXPECT_EQ(nj["value"], 4);
    EXPECT_EQ(nj["failing_witness"].size(), 3u);
    auto back = number_result_from_json(nj);
    EXPECT_EQ(back.value, n.value);
    EXPECT_EQ(back.witness_failure, n.witness_failure);
    EXPECT_EQ(back.fingerprint, n.fingerprint);

    EXPECT_EQ(to_json(Extended::infinity()), "inf");
    EXPECT_TRUE(extended_from_json(Json("inf")).is_infinite());
}

TEST(Cache, PersistsAndMerges) {
    const auto file = temp_path("cache.jsonl");
    NumberResult first;
    std::size_t stored = 0;
    {
        ResultCache cache(file);
        NumberOptions o;
        o.cache = &cache;
        first = pi_graph(cycle(5), o);
        EXPECT_FALSE(first.from_cache);
        stored = cache.size();
        EXPECT_GE(stored, 1u);
    }
    {
        std::ofstream(file, std::ios::app) << "{torn line\n";
        ResultCache cache(file);
        EXPECT_EQ(cache.size(), stored);
        NumberOptions o;
        o.cache = &cache;
        auto again = pi_graph(cycle(5), o);
        EXPECT_TRUE(again.from_cache);
        EXPECT_EQ(again.value, first.value);
        EXPECT_EQ(again.witness_failure, first.witness_failure);
        EXPECT_EQ(cache.hits(), 1u);

        // The cached number is the number a fresh computation gives.
        EXPECT_EQ(pi_graph(cycle(5)).value, again.value);
    }
    std::filesystem::remove(file);
}

TEST(Cache, EnvironmentOverridesPath) {
    ::setenv("PEBBLE_CACHE", "/tmp/elsewhere.jsonl", 1);
    EXPECT_EQ(ResultCache::default_path(), "/tmp/elsewhere.jsonl");
    ::unsetenv("PEBBLE_CACHE");
    EXPECT_EQ(ResultCache::default_path("x.jsonl"), "x.jsonl");
}
