#pragma once

#include "pebble/combinatorics.hpp"
#include "pebble/distribution.hpp"
#include "pebble/graph.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pebble {

// A pebbling move along an edge: `cost` pebbles leave `from`, one arrives at `to`.
struct Move {
    VertexId from;
    VertexId to;
    Weight cost;

    friend bool operator==(const Move&, const Move&) = default;
};

struct MoveSequence {
    Distribution start;
    std::vector<Move> moves;
};

inline Move make_move(const Graph& g, VertexId from, VertexId to) {
    auto w = from < g.vertex_count() && to < g.vertex_count() ? g.weight(from, to) : std::nullopt;
    if (!w)
        throw std::invalid_argument("no edge between " + std::to_string(from) + " and " + std::to_string(to));
    return Move{from, to, *w};
}

inline Distribution apply_move(const Graph& g, const Distribution& d, const Move& m) {
    require_on(g, d);
    auto w = m.from < g.vertex_count() && m.to < g.vertex_count() ? g.weight(m.from, m.to) : std::nullopt;
    if (!w)
        throw std::invalid_argument("move " + std::to_string(m.from) + "->" + std::to_string(m.to) +
                                    " is not along an edge");
    if (*w != m.cost)
        throw std::invalid_argument("move cost does not match the edge weight");
    if (d[m.from] < m.cost)
        throw std::invalid_argument("insufficient pebbles on vertex " + std::to_string(m.from));
    Distribution out = d;
    out.set(m.from, static_cast<Count>(d[m.from] - m.cost));
    out.add(m.to, 1);
    return out;
}

// End state of a witness; throws if any move is illegal when it fires.
inline Distribution replay(const Graph& g, const MoveSequence& seq) {
    Distribution d = seq.start;
    for (const auto& m : seq.moves)
        d = apply_move(g, d, m);
    return d;
}

struct SearchOptions {
    // Disables every pruning rule; the search is then a plain memoized
    // exhaustive exploration.
    bool paranoid = false;
    bool potential_pruning = true;
    // Off by default: the extra lookups cost more than the pruning saves on
    // the instances measured so far.
    bool dominance_pruning = false;
};

struct SearchStats {
    std::uint64_t expanded = 0;
    std::uint64_t pruned_potential = 0;
    std::uint64_t pruned_dominance = 0;
};

// Decides whether some member of a target set is reachable from a start.
// Results are memoized for the lifetime of the object, so one instance can
// answer many starts for the same targets cheaply.
class ReachSearch {
public:
    ReachSearch(const Graph& g, DistributionSet targets, SearchOptions options = {})
        : graph_{g}, targets_{std::move(targets)}, options_{options}, indexer_{g.vertex_count()} {
        require_nonempty(targets_);
        for (const auto& t : targets_)
            require_on(graph_, t);
        if (options_.paranoid) {
            options_.potential_pruning = false;
            options_.dominance_pruning = false;
        }
        unit_weights_ = graph_.has_unit_weights();

        const auto n = graph_.vertex_count();
        for (VertexId u = 0; u < n; ++u)
            for (const auto& a : graph_.neighbors(u))
                moves_.push_back({u, a.to, a.w});
        via_dominance_ = kViaMove + static_cast<std::uint32_t>(moves_.size());

        if (options_.potential_pruning)
            build_potentials();
    }

    [[nodiscard]] const Graph& graph() const { return graph_; }
    [[nodiscard]] const DistributionSet& targets() const { return targets_; }
    [[nodiscard]] const SearchStats& stats() const { return stats_; }
    [[nodiscard]] std::size_t memo_size() const { return memo_.size(); }

    bool reachable(const Distribution& start) {
        require_on(graph_, start);
        return search(start.counts());
    }
    bool reachable(std::span<const Count> start) { return search(start); }

    struct Witness {
        std::size_t target_index;
        MoveSequence sequence;
    };

    std::optional<Witness> witness(const Distribution& start) {
        require_on(graph_, start);
        if (!search(start.counts()))
            return std::nullopt;
        return reconstruct(start);
    }

private:
    static constexpr std::uint32_t kBad = 1;
    static constexpr std::uint32_t kTerminal = 2;
    static constexpr std::uint32_t kViaMove = 16;

    struct Frame {
        std::uint64_t key;
        std::size_t cursor;
    };

    // One weight-function check: sum_x D(x) * coef[x] >= threshold is necessary
    // for reaching the target (the weighted potential never increases).
    struct PotentialCheck {
        std::vector<std::uint64_t> coef;
        unsigned __int128 threshold;
    };

    enum class Outcome { good, bad, expand };

    void build_potentials() {
        const auto n = graph_.vertex_count();
        auto costs = all_min_path_costs(graph_);
        potentials_.resize(targets_.size());
        for (std::size_t j = 0; j < targets_.size(); ++j) {
            const auto& t = targets_[j];
            for (VertexId v = 0; v < n; ++v) {
                if (t[v] == 0)
                    continue;
                std::uint64_t lcm = 1;
                bool ok = true;
                for (VertexId x = 0; x < n && ok; ++x) {
                    if (costs[x][v].is_infinite())
                        continue;
                    lcm = std::lcm(lcm, costs[x][v].value());
                    ok = lcm <= (std::uint64_t{1} << 32);
                }
                if (!ok)
                    continue;
                PotentialCheck check{std::vector<std::uint64_t>(n, 0), 0};
                for (VertexId x = 0; x < n; ++x)
                    if (costs[x][v].is_finite())
                        check.coef[x] = lcm / costs[x][v].value();
                for (VertexId x = 0; x < n; ++x)
                    check.threshold += static_cast<unsigned __int128>(t[x]) * check.coef[x];
                potentials_[j].push_back(std::move(check));
            }
        }
    }

    [[nodiscard]] bool target_possible(std::size_t j) const {
        for (const auto& check : potentials_[j]) {
            unsigned __int128 sum = 0;
            for (std::size_t x = 0; x < state_.size(); ++x)
                sum += static_cast<unsigned __int128>(state_[x]) * check.coef[x];
            if (sum < check.threshold)
                return false;
        }
        return true;
    }

    [[nodiscard]] bool contains_target() const {
        for (const auto& t : targets_) {
            auto tc = t.counts();
            bool ok = true;
            for (std::size_t x = 0; x < tc.size() && ok; ++x)
                ok = state_[x] >= tc[x];
            if (ok)
                return true;
        }
        return false;
    }

    [[nodiscard]] std::uint64_t key() const { return indexer_.index(state_, total_); }

    [[nodiscard]] std::uint32_t lookup(std::uint64_t key) const {
        auto it = memo_.find(key);
        return it == memo_.end() ? 0 : it->second;
    }

    [[nodiscard]] static bool is_good(std::uint32_t v) { return v >= kTerminal; }

    Outcome visit(std::uint64_t k) {
        if (auto v = lookup(k))
            return v == kBad ? Outcome::bad : Outcome::good;
        if (contains_target()) {
            memo_[k] = kTerminal;
            return Outcome::good;
        }
        if (options_.potential_pruning) {
            bool any = false;
            for (std::size_t j = 0; j < targets_.size() && !any; ++j)
                any = target_possible(j);
            if (!any) {
                ++stats_.pruned_potential;
                memo_[k] = kBad;
                return Outcome::bad;
            }
        }
        if (options_.dominance_pruning && dominated(k))
            return is_good(memo_[k]) ? Outcome::good : Outcome::bad;
        return Outcome::expand;
    }

    // One-pebble dominance: D + delta_u failing means D fails, and D - delta_u
    // succeeding means D succeeds with the same moves.
    bool dominated(std::uint64_t k) {
        const auto n = state_.size();
        for (VertexId u = 0; u < n; ++u) {
            ++state_[u];
            ++total_;
            bool bad = total_ <= indexer_.covered_total() && lookup(key()) == kBad;
            --state_[u];
            --total_;
            if (bad) {
                ++stats_.pruned_dominance;
                memo_[k] = kBad;
                return true;
            }
        }
        for (VertexId u = 0; u < n; ++u) {
            if (state_[u] == 0)
                continue;
            --state_[u];
            --total_;
            bool good = is_good(lookup(key()));
            ++state_[u];
            ++total_;
            if (good) {
                ++stats_.pruned_dominance;
                memo_[k] = via_dominance_ + static_cast<std::uint32_t>(u);
                return true;
            }
        }
        return false;
    }

    void apply(const Move& m) {
        state_[m.from] -= static_cast<Count>(m.cost);
        state_[m.to] += 1;
        total_ = total_ - m.cost + 1;
    }

    void undo(const Move& m) {
        state_[m.from] += static_cast<Count>(m.cost);
        state_[m.to] -= 1;
        total_ = total_ + m.cost - 1;
    }

    void conclude_bad(std::uint64_t k) {
        if (unit_weights_)
            tentative_bad_.insert(k);
        else
            memo_[k] = kBad;
    }

    bool search(std::span<const Count> start) {
        if (start.size() != graph_.vertex_count())
            throw std::invalid_argument("start distribution does not match the graph");
        state_.assign(start.begin(), start.end());
        total_ = std::accumulate(start.begin(), start.end(), std::uint64_t{0});
        indexer_.ensure(total_);

        const auto root = key();
        switch (visit(root)) {
        case Outcome::good:
            return true;
        case Outcome::bad:
            return false;
        case Outcome::expand:
            break;
        }

        std::vector<Frame> stack;
        stack.push_back({root, 0});
        if (unit_weights_)
            on_stack_.insert(root);
        ++stats_.expanded;

        while (!stack.empty()) {
            Frame& f = stack.back();
            while (f.cursor < moves_.size() && state_[moves_[f.cursor].from] < moves_[f.cursor].cost)
                ++f.cursor;
            if (f.cursor == moves_.size()) {
                conclude_bad(f.key);
                if (unit_weights_)
                    on_stack_.erase(f.key);
                stack.pop_back();
                if (stack.empty())
                    break;
                undo(moves_[stack.back().cursor]);
                ++stack.back().cursor;
                continue;
            }

            const Move& m = moves_[f.cursor];
            apply(m);
            const auto child = key();
            if (unit_weights_ && (on_stack_.contains(child) || tentative_bad_.contains(child))) {
                undo(m);
                ++f.cursor;
                continue;
            }
            switch (visit(child)) {
            case Outcome::good:
                // Every frame on the stack is now good via the move it is exploring.
                for (auto it = stack.rbegin(); it != stack.rend(); ++it)
                    memo_[it->key] = kViaMove + static_cast<std::uint32_t>(it->cursor);
                finish_search();
                return true;
            case Outcome::bad:
                undo(m);
                ++f.cursor;
                break;
            case Outcome::expand:
                ++stats_.expanded;
                if (unit_weights_)
                    on_stack_.insert(child);
                stack.push_back({child, 0});
                break;
            }
        }

        if (unit_weights_)
            for (auto k : tentative_bad_)
                memo_[k] = kBad;
        finish_search();
        return false;
    }

    void finish_search() {
        tentative_bad_.clear();
        on_stack_.clear();
    }

    Witness reconstruct(const Distribution& start) {
        Witness out{0, MoveSequence{start, {}}};
        state_.assign(start.counts().begin(), start.counts().end());
        total_ = start.size();
        for (;;) {
            auto v = lookup(key());
            if (v == kTerminal)
                break;
            if (v >= via_dominance_) {
                auto u = v - via_dominance_;
                --state_[u];
                --total_;
                continue;
            }
            if (v < kViaMove)
                throw std::logic_error("witness chain reached a state not known to succeed");
            const Move& m = moves_[v - kViaMove];
            out.sequence.moves.push_back(m);
            apply(m);
        }
        for (std::size_t j = 0; j < targets_.size(); ++j) {
            auto tc = targets_[j].counts();
            bool ok = true;
            for (std::size_t x = 0; x < tc.size() && ok; ++x)
                ok = state_[x] >= tc[x];
            if (ok) {
                out.target_index = j;
                break;
            }
        }
        return out;
    }

    Graph graph_;
    DistributionSet targets_;
    SearchOptions options_;
    CompositionIndexer indexer_;
    bool unit_weights_ = false;

    std::vector<Move> moves_;  // ordered by (source, target)
    std::uint32_t via_dominance_ = 0;
    std::vector<std::vector<PotentialCheck>> potentials_;

    absl::flat_hash_map<std::uint64_t, std::uint32_t> memo_;
    absl::flat_hash_set<std::uint64_t> tentative_bad_;
    absl::flat_hash_set<std::uint64_t> on_stack_;
    SearchStats stats_;

    std::vector<Count> state_;
    std::uint64_t total_ = 0;
};

struct ReachResult {
    bool reachable = false;
    std::optional<MoveSequence> witness;
};

inline ReachResult is_reachable(const Graph& g, const Distribution& start, const Distribution& target,
                                SearchOptions options = {}) {
    require_on(g, start);
    ReachSearch search(g, DistributionSet{target}, options);
    auto w = search.witness(start);
    if (!w)
        return {};
    return {true, std::move(w->sequence)};
}

struct ReachAnyResult {
    std::size_t target_index;
    Distribution target;
    MoveSequence witness;
};

inline std::optional<ReachAnyResult> reach_any(const Graph& g, const Distribution& start,
                                               const DistributionSet& targets, SearchOptions options = {}) {
    require_on(g, start);
    ReachSearch search(g, targets, options);
    auto w = search.witness(start);
    if (!w)
        return std::nullopt;
    return ReachAnyResult{w->target_index, targets[w->target_index], std::move(w->sequence)};
}

} // namespace pebble
