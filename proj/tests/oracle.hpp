#pragma once

// Slow reference implementations used to check the library. Nothing here
// shares code with the solver: states are plain vectors, the search is an
// exhaustive walk with a visited set, and thresholds are found by ascending N
// and testing every start.

#include "pebble/graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using State = std::vector<std::uint32_t>;

inline bool covers(const State& s, const State& t) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < t[i])
            return false;
    return true;
}

// Index of the first target contained in some state reachable from start.
inline std::optional<std::size_t> reach_any(const pebble::Graph& g, const State& start,
                                            const std::vector<State>& targets) {
    std::set<State> seen{start};
    std::vector<State> stack{start};
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (covers(s, targets[i]))
                return i;
        for (const auto& e : g.edges()) {
            for (int dir = 0; dir < 2; ++dir) {
                const auto from = dir ? e.v : e.u;
                const auto to = dir ? e.u : e.v;
                if (s[from] < e.w)
                    continue;
                State next = s;
                next[from] -= static_cast<std::uint32_t>(e.w);
                next[to] += 1;
                if (seen.insert(next).second)
                    stack.push_back(std::move(next));
            }
        }
    }
    return std::nullopt;
}

inline bool reachable(const pebble::Graph& g, const State& start, const State& target) {
    return reach_any(g, start, {target}).has_value();
}

inline void for_each_start(std::size_t n, std::uint32_t total, const std::function<void(const State&)>& f) {
    State s(n, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
        if (i + 1 == n) {
            s[i] = left;
            f(s);
            return;
        }
        for (std::uint32_t c = 0; c <= left; ++c) {
            s[i] = c;
            rec(i + 1, left - c);
        }
    };
    rec(0, total);
}

enum class Mode { all_members, some_member };

struct Threshold {
    std::uint64_t value = 0;
    std::optional<State> failing;
};

// Least N such that every start of N pebbles reaches every member (all_members)
// or some member (some_member) of targets. Gives up past `limit`.
inline Threshold threshold(const pebble::Graph& g, const std::vector<State>& targets, Mode mode,
                           std::uint32_t limit = 64) {
    const auto n = g.vertex_count();
    std::optional<State> last_failure;
    for (std::uint32_t total = 0; total <= limit; ++total) {
        std::optional<State> failure;
        for_each_start(n, total, [&](const State& s) {
            if (failure)
                return;
            bool ok = false;
            if (mode == Mode::some_member) {
                ok = reach_any(g, s, targets).has_value();
            } else {
                ok = true;
                for (const auto& t : targets)
                    ok = ok && reachable(g, s, t);
            }
            if (!ok)
                failure = s;
        });
        if (!failure)
            return {total, last_failure};
        last_failure = failure;
    }
    throw std::runtime_error("oracle threshold exceeded its limit");
}

// Minimum over simple paths of the product of weights, by enumerating paths.
inline std::optional<std::uint64_t> min_path_cost(const pebble::Graph& g, pebble::VertexId u, pebble::VertexId v) {
    if (u == v)
        return 1;
    std::optional<std::uint64_t> best;
    std::vector<bool> used(g.vertex_count(), false);
    std::function<void(pebble::VertexId, std::uint64_t)> walk = [&](pebble::VertexId at, std::uint64_t cost) {
        if (at == v) {
            if (!best || cost < *best)
                best = cost;
            return;
        }
        used[at] = true;
        for (const auto& a : g.neighbors(at))
            if (!used[a.to])
                walk(a.to, cost * a.w);
        used[at] = false;
    };
    walk(u, 1);
    return best;
}

} // namespace oracle
