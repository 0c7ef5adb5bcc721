#pragma once

#include "pebble/extended.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pebble {

using VertexId = std::size_t;
using Weight = std::uint64_t;

// Edge weight of ordinary (unweighted) pebbling: a move spends two pebbles.
inline constexpr Weight kUnweighted = 2;

struct Edge {
    VertexId u;
    VertexId v;
    Weight w;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Arc {
    VertexId to;
    Weight w;
};

// Shape of a Cartesian product: vertex (x, y) has index x * right + y.
struct ProductShape {
    std::size_t left;
    std::size_t right;

    [[nodiscard]] VertexId index(VertexId x, VertexId y) const { return x * right + y; }
    [[nodiscard]] std::pair<VertexId, VertexId> split(VertexId v) const { return {v / right, v % right}; }
};

// Immutable undirected graph with positive integer edge weights.
class Graph {
public:
    Graph() : Graph(1, {}) {}

    Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels = {},
          std::optional<ProductShape> shape = std::nullopt)
        : n_{n}, labels_{std::move(labels)}, shape_{shape} {
        if (n_ == 0)
            throw std::invalid_argument("graph must have at least one vertex");
        if (!labels_.empty() && labels_.size() != n_)
            throw std::invalid_argument("label count does not match vertex count");
        for (auto& e : edges) {
            if (e.u >= n_ || e.v >= n_)
                throw std::invalid_argument("edge endpoint out of range");
            if (e.u == e.v)
                throw std::invalid_argument("self-loops are not allowed");
            if (e.w == 0)
                throw std::invalid_argument("edge weights must be positive");
            if (e.u > e.v)
                std::swap(e.u, e.v);
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
                throw std::invalid_argument("duplicate edge");
        edges_ = std::move(edges);

        adjacency_.resize(n_);
        for (const auto& e : edges_) {
            adjacency_[e.u].push_back({e.v, e.w});
            adjacency_[e.v].push_back({e.u, e.w});
        }
        for (auto& arcs : adjacency_)
            std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
        if (shape_ && shape_->left * shape_->right != n_)
            throw std::invalid_argument("product shape does not match vertex count");
    }

    [[nodiscard]] std::size_t vertex_count() const { return n_; }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
    [[nodiscard]] std::span<const Arc> neighbors(VertexId v) const { return adjacency_.at(v); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::optional<ProductShape>& product_shape() const { return shape_; }

    [[nodiscard]] std::string label(VertexId v) const {
        return labels_.empty() ? std::to_string(v) : labels_.at(v);
    }

    [[nodiscard]] std::optional<Weight> weight(VertexId u, VertexId v) const {
        for (const auto& a : adjacency_.at(u))
            if (a.to == v)
                return a.w;
        return std::nullopt;
    }

    [[nodiscard]] bool has_unit_weights() const {
        return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1; });
    }

    [[nodiscard]] bool is_unweighted() const {
        return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == kUnweighted; });
    }

    // Component id per vertex, numbered in order of smallest member.
    [[nodiscard]] std::vector<std::size_t> components() const {
        constexpr auto unset = static_cast<std::size_t>(-1);
        std::vector<std::size_t> comp(n_, unset);
        std::size_t next = 0;
        for (VertexId s = 0; s < n_; ++s) {
            if (comp[s] != unset)
                continue;
            std::vector<VertexId> stack{s};
            comp[s] = next;
            while (!stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (const auto& a : adjacency_[v])
                    if (comp[a.to] == unset) {
                        comp[a.to] = next;
                        stack.push_back(a.to);
                    }
            }
            ++next;
        }
        return comp;
    }

    [[nodiscard]] bool is_connected() const {
        auto comp = components();
        return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adjacency_;
    std::vector<std::string> labels_;
    std::optional<ProductShape> shape_;
};

// --- standard families (all edge weights 2) ---

inline Graph trivial() { return Graph(1, {}); }

inline Graph path(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("path(0): a path needs at least one vertex");
    std::vector<Edge> edges;
    for (VertexId i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1, kUnweighted});
    return Graph(n, std::move(edges));
}

inline Graph cycle(std::size_t n) {
    if (n < 3)
        throw std::invalid_argument("cycle(n) requires n >= 3");
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n, kUnweighted});
    return Graph(n, std::move(edges));
}

inline Graph complete(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("complete(0): needs at least one vertex");
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            edges.push_back({u, v, kUnweighted});
    return Graph(n, std::move(edges));
}

inline Graph hypercube(std::size_t d) {
    if (d > 20)
        throw std::invalid_argument("hypercube dimension too large");
    const std::size_t n = std::size_t{1} << d;
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
        for (std::size_t b = 0; b < d; ++b) {
            VertexId v = u ^ (std::size_t{1} << b);
            if (u < v)
                edges.push_back({u, v, kUnweighted});
        }
    return Graph(n, std::move(edges));
}

// Same shape as g with every edge weight replaced.
inline Graph reweighted(const Graph& g, std::span<const Weight> weights) {
    if (weights.size() != g.edge_count())
        throw std::invalid_argument("reweighted: one weight per edge required");
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i].w = weights[i];
    return Graph(g.vertex_count(), std::move(edges), g.labels(), g.product_shape());
}

// Vertex (x, y) gets index x * |V(h)| + y; edge weights are copied from the
// factor edge that induced them.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
    const ProductShape shape{g.vertex_count(), h.vertex_count()};
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() * h.vertex_count() + h.edge_count() * g.vertex_count());
    for (VertexId x = 0; x < shape.left; ++x)
        for (const auto& e : h.edges())
            edges.push_back({shape.index(x, e.u), shape.index(x, e.v), e.w});
    for (const auto& e : g.edges())
        for (VertexId y = 0; y < shape.right; ++y)
            edges.push_back({shape.index(e.u, y), shape.index(e.v, y), e.w});

    std::vector<std::string> labels;
    if (!g.labels().empty() || !h.labels().empty()) {
        for (VertexId x = 0; x < shape.left; ++x)
            for (VertexId y = 0; y < shape.right; ++y)
                labels.push_back("(" + g.label(x) + "," + h.label(y) + ")");
    }
    return Graph(shape.left * shape.right, std::move(edges), std::move(labels), shape);
}

// Minimum over u-v paths of the product of edge weights: the number of pebbles
// on u that deliver exactly one pebble to v along a best path. Infinite across
// components.
inline std::vector<Extended> min_path_costs_from(const Graph& g, VertexId source) {
    const auto n = g.vertex_count();
    if (source >= n)
        throw std::invalid_argument("min_path_cost: vertex out of range");
    std::vector<Extended> cost(n, Extended::infinity());
    using Item = std::pair<std::uint64_t, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    cost[source] = 1;
    queue.push({1, source});
    while (!queue.empty()) {
        auto [c, v] = queue.top();
        queue.pop();
        if (Extended{c} != cost[v])
            continue;
        for (const auto& a : g.neighbors(v)) {
            Extended next{saturating_mul(c, a.w)};
            if (next < cost[a.to]) {
                cost[a.to] = next;
                queue.push({next.value(), a.to});
            }
        }
    }
    return cost;
}

inline Extended min_path_cost(const Graph& g, VertexId u, VertexId v) {
    if (v >= g.vertex_count())
        throw std::invalid_argument("min_path_cost: vertex out of range");
    return min_path_costs_from(g, u)[v];
}

// cost[u][v] for every ordered pair.
inline std::vector<std::vector<Extended>> all_min_path_costs(const Graph& g) {
    std::vector<std::vector<Extended>> out;
    out.reserve(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        out.push_back(min_path_costs_from(g, u));
    return out;
}

// Complete graph whose edge weights are the minimum path costs of g.
inline Graph metric_closure(const Graph& g) {
    if (!g.is_connected())
        throw std::invalid_argument("metric_closure requires a connected graph");
    auto costs = all_min_path_costs(g);
    std::vector<Edge> edges;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v = u + 1; v < g.vertex_count(); ++v)
            edges.push_back({u, v, costs[u][v].value()});
    return Graph(g.vertex_count(), std::move(edges), g.labels());
}

} // namespace pebble
