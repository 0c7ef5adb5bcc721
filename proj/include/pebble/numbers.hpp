#pragma once

#include "pebble/distribution.hpp"
#include "pebble/extended.hpp"
#include "pebble/graph.hpp"
#include "pebble/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pebble {

// Budget of start distributions a single number query may examine.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two independent routes disagreed, or a result contradicts a certified bound.
class InternalInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Quantifier { pi_set, pi_dist, rho_set };

inline std::string to_string(Quantifier q) {
    switch (q) {
    case Quantifier::pi_set:
        return "pi_set";
    case Quantifier::pi_dist:
        return "pi_dist";
    case Quantifier::rho_set:
        return "rho_set";
    }
    return "?";
}

struct NumberResult {
    Extended value;
    // A failing start of size value - 1 (absent when value is 0 or infinite).
    std::optional<Distribution> witness_failure;
    Quantifier quantifier = Quantifier::pi_set;
    std::string fingerprint;
    std::uint64_t candidates = 0;
    bool from_cache = false;
};

// Store for finished number queries, keyed by fingerprint.
class NumberCache {
public:
    virtual ~NumberCache() = default;
    virtual std::optional<NumberResult> lookup(const std::string& fingerprint) = 0;
    virtual void store(const NumberResult& result) = 0;
};

enum class Method {
    // Explore the down-closed family of failing starts (default).
    failing_set,
    // Ascend N and test every start of size N.
    ascending_scan,
};

struct NumberOptions {
    SearchOptions search;
    Method method = Method::failing_set;
    std::uint64_t budget = kDefaultBudget;
    // Compute pi over a set both directly and as the max over its members.
    bool cross_check = false;
    // Ascending scan only: also test size value + 1 and fail loudly if any
    // start there fails.
    bool verify_frontier = false;
    NumberCache* cache = nullptr;
};

// --- fingerprints ---

inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string canonical_text(const Graph& g) {
    std::string out = "n=" + std::to_string(g.vertex_count());
    for (const auto& e : g.edges())
        out += ";" + std::to_string(e.u) + "-" + std::to_string(e.v) + ":" + std::to_string(e.w);
    return out;
}

inline std::string canonical_text(const DistributionSet& s) {
    std::vector<std::string> parts;
    for (const auto& d : s)
        parts.push_back(d.to_string());
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts)
        out += p + ";";
    return out;
}

inline std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4)
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return out;
}

inline std::string query_fingerprint(Quantifier q, const Graph& g, const DistributionSet& s) {
    return hex64(fnv1a(canonical_text(g))) + "-" + hex64(fnv1a(canonical_text(s))) + "-" + to_string(q);
}

// --- bounds ---

inline Extended max_pair_cost(const std::vector<std::vector<Extended>>& costs, const std::vector<VertexId>& within) {
    Extended best{1};
    for (auto u : within)
        for (auto v : within)
            best = std::max(best, costs[u][v]);
    return best;
}

// B = n * (P - 1) + 1 with P = max |D| * (largest pairwise path cost): some
// vertex then holds at least P pebbles, enough to send every target pebble
// along a cheapest path. Infinite on a disconnected graph with a nonzero target.
inline Extended certified_upper_bound(const Graph& g, const DistributionSet& s) {
    require_nonempty(s);
    std::uint64_t largest = 0;
    for (const auto& d : s)
        largest = std::max(largest, d.size());
    if (largest == 0)
        return Extended{0};
    if (!g.is_connected())
        return Extended::infinity();
    auto costs = all_min_path_costs(g);
    std::vector<VertexId> all(g.vertex_count());
    for (VertexId v = 0; v < all.size(); ++v)
        all[v] = v;
    const Extended p = Extended{largest} * max_pair_cost(costs, all);
    if (p.is_infinite())
        return p;
    const Extended spread = Extended{g.vertex_count()} * Extended{p.value() - 1};
    return spread.is_infinite() ? spread : Extended{spread.value() + 1};
}

// Upper bound for the target-selectable number: every component must contain
// the support of some member; the per-component bounds then add up by
// pigeonhole over components.
inline Extended selectable_upper_bound(const Graph& g, const DistributionSet& s) {
    require_nonempty(s);
    if (std::any_of(s.begin(), s.end(), [](const Distribution& d) { return d.is_zero(); }))
        return Extended{0};
    auto comp = g.components();
    const std::size_t k = *std::max_element(comp.begin(), comp.end()) + 1;
    auto costs = all_min_path_costs(g);
    std::uint64_t total = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (comp[v] == c)
                members.push_back(v);
        std::optional<std::uint64_t> smallest;
        for (const auto& d : s) {
            bool inside = true;
            for (VertexId v = 0; v < g.vertex_count() && inside; ++v)
                inside = d[v] == 0 || comp[v] == c;
            if (inside)
                smallest = std::min(smallest.value_or(d.size()), d.size());
        }
        if (!smallest)
            return Extended::infinity();
        const Extended p = Extended{*smallest} * max_pair_cost(costs, members);
        if (p.is_infinite())
            return p;
        total += members.size() * (p.value() - 1);
    }
    return Extended{total};
}

namespace detail {

using FailPredicate = std::function<bool(std::span<const Count>)>;

struct Threshold {
    std::uint64_t value = 0;
    std::optional<Distribution> witness;
    std::uint64_t candidates = 0;
};

inline void charge(std::uint64_t& candidates, std::uint64_t budget) {
    if (++candidates > budget)
        throw BudgetExceeded("budget of " + std::to_string(budget) + " start distributions exceeded");
}

// Largest failing start, found by walking the down-closed family of failing
// starts. Each member is generated once, from its parent with one pebble
// removed at the highest occupied vertex, so the descendants of a start only
// add pebbles at or after the vertex it was grown at.
//
// Subtrees that cannot beat the best failure so far are cut: if k_v is the
// most pebbles that can be added at v alone while the start keeps failing,
// every failing descendant adds at most k_v at v.
inline Threshold failing_set_threshold(std::size_t n, const FailPredicate& fails, std::uint64_t bound,
                                       std::uint64_t budget) {
    Threshold out;
    std::vector<Count> counts(n, 0);
    charge(out.candidates, budget);
    if (!fails(counts))
        return out;
    out.witness = Distribution(counts);
    std::uint64_t best = 0;
    std::uint64_t total = 0;

    auto test = [&] {
        charge(out.candidates, budget);
        if (!fails(counts))
            return false;
        if (total >= bound)
            throw InternalInconsistency("a start of " + std::to_string(total) +
                                        " pebbles fails, contradicting the certified bound " +
                                        std::to_string(bound));
        return true;
    };

    std::function<void(VertexId)> grow = [&](VertexId first) {
        // suffix[v] = sum of k_w over w >= v, exact for v >= known_from. Probing
        // runs from the top down and stops once the sum is too large to cut.
        std::vector<std::uint64_t> suffix(n + 1, 0);
        std::vector<std::optional<bool>> child_fails(n);
        VertexId known_from = n;
        const std::uint64_t slack = best - total;
        for (VertexId v = n; v-- > first;) {
            std::uint64_t k = 0;
            bool exact = false;
            while (suffix[v + 1] + k <= slack) {
                ++counts[v];
                ++total;
                const bool f = test();
                if (k == 0)
                    child_fails[v] = f;
                if (!f) {
                    --counts[v];
                    --total;
                    exact = true;
                    break;
                }
                if (total > best) {
                    best = total;
                    out.witness = Distribution(counts);
                }
                ++k;
            }
            counts[v] -= static_cast<Count>(k);
            total -= k;
            if (!exact)
                break;
            suffix[v] = suffix[v + 1] + k;
            known_from = v;
        }

        for (VertexId u = first; u < n; ++u) {
            if (u >= known_from && total + suffix[u] <= best)
                break;
            ++counts[u];
            ++total;
            const bool f = child_fails[u] ? *child_fails[u] : test();
            if (f) {
                if (total > best) {
                    best = total;
                    out.witness = Distribution(counts);
                }
                grow(u);
            }
            --counts[u];
            --total;
        }
    };
    grow(0);
    out.value = best + 1;
    return out;
}

inline Threshold ascending_scan_threshold(std::size_t n, const FailPredicate& fails, std::uint64_t bound,
                                          std::uint64_t budget, bool verify_frontier) {
    Threshold out;
    for (std::uint64_t size = 0;; ++size) {
        if (size > bound)
            throw InternalInconsistency("ascending scan passed the certified bound " + std::to_string(bound));
        bool failed = false;
        for (auto it = CompositionRange(n, static_cast<Count>(size)).begin(); it != std::default_sentinel; ++it) {
            charge(out.candidates, budget);
            if (fails(it.counts())) {
                out.witness = Distribution(it.counts());
                failed = true;
                break;
            }
        }
        if (failed)
            continue;
        out.value = size;
        if (verify_frontier) {
            for (auto it = CompositionRange(n, static_cast<Count>(size + 1)).begin(); it != std::default_sentinel;
                 ++it) {
                charge(out.candidates, budget);
                if (fails(it.counts()))
                    throw InternalInconsistency("every start of size " + std::to_string(size) +
                                                " succeeds but " + Distribution(it.counts()).to_string() +
                                                " fails");
            }
        }
        return out;
    }
}

inline NumberResult compute(const Graph& g, const DistributionSet& s, Quantifier q, const NumberOptions& options,
                            const std::function<FailPredicate()>& make_predicate, Extended bound) {
    NumberResult result;
    result.quantifier = q;
    result.fingerprint = query_fingerprint(q, g, s);
    if (options.cache) {
        if (auto hit = options.cache->lookup(result.fingerprint)) {
            hit->from_cache = true;
            return *hit;
        }
    }
    if (bound.is_infinite()) {
        result.value = Extended::infinity();
    } else {
        auto fails = make_predicate();
        auto t = options.method == Method::failing_set
                     ? failing_set_threshold(g.vertex_count(), fails, bound.value(), options.budget)
                     : ascending_scan_threshold(g.vertex_count(), fails, bound.value(), options.budget,
                                                options.verify_frontier);
        result.value = t.value;
        result.witness_failure = t.value == 0 ? std::nullopt : t.witness;
        result.candidates = t.candidates;
    }
    if (options.cache)
        options.cache->store(result);
    return result;
}

} // namespace detail

// pi(G, D): least N such that D is reachable from every start of N pebbles.
inline NumberResult pi_dist(const Graph& g, const Distribution& d, const NumberOptions& options = {}) {
    require_on(g, d);
    DistributionSet s{d};
    return detail::compute(
        g, s, Quantifier::pi_dist, options,
        [&] {
            auto search = std::make_shared<ReachSearch>(g, s, options.search);
            return detail::FailPredicate(
                [search](std::span<const Count> start) { return !search->reachable(start); });
        },
        certified_upper_bound(g, s));
}

// pi over a set computed directly: a start fails if any member is unreachable.
inline NumberResult pi_set_direct(const Graph& g, const DistributionSet& s, const NumberOptions& options = {}) {
    require_nonempty(s);
    for (const auto& d : s)
        require_on(g, d);
    NumberOptions uncached = options;
    uncached.cache = nullptr;
    auto out = detail::compute(
        g, s, Quantifier::pi_set, uncached,
        [&] {
            auto searches = std::make_shared<std::vector<ReachSearch>>();
            for (const auto& d : s)
                searches->emplace_back(g, DistributionSet{d}, options.search);
            return detail::FailPredicate([searches](std::span<const Count> start) {
                for (auto& search : *searches)
                    if (!search.reachable(start))
                        return true;
                return false;
            });
        },
        certified_upper_bound(g, s));
    return out;
}

// pi(G, S): least N such that every member of S is reachable from every start
// of N pebbles, computed as the maximum of pi_dist over the members.
inline NumberResult pi_set(const Graph& g, const DistributionSet& s, const NumberOptions& options = {}) {
    require_nonempty(s);
    for (const auto& d : s)
        require_on(g, d);
    const auto fingerprint = query_fingerprint(Quantifier::pi_set, g, s);
    if (options.cache) {
        if (auto hit = options.cache->lookup(fingerprint)) {
            hit->from_cache = true;
            return *hit;
        }
    }
    NumberResult best;
    bool first = true;
    std::uint64_t candidates = 0;
    for (const auto& d : s) {
        auto r = pi_dist(g, d, options);
        candidates += r.candidates;
        if (first || r.value > best.value) {
            best = r;
            first = false;
        }
    }
    best.quantifier = Quantifier::pi_set;
    best.fingerprint = fingerprint;
    best.candidates = candidates;
    best.from_cache = false;

    if (options.cross_check) {
        auto direct = pi_set_direct(g, s, options);
        if (direct.value != best.value)
            throw InternalInconsistency("pi over a set is " + direct.value.to_string() +
                                        " directly but the member maximum is " + best.value.to_string());
    }
    if (options.cache)
        options.cache->store(best);
    return best;
}

// rho(G, S): least N such that from every start of N pebbles some member of S
// is reachable.
inline NumberResult rho_set(const Graph& g, const DistributionSet& s, const NumberOptions& options = {}) {
    require_nonempty(s);
    for (const auto& d : s)
        require_on(g, d);
    return detail::compute(
        g, s, Quantifier::rho_set, options,
        [&] {
            auto search = std::make_shared<ReachSearch>(g, s, options.search);
            return detail::FailPredicate(
                [search](std::span<const Count> start) { return !search->reachable(start); });
        },
        selectable_upper_bound(g, s));
}

inline NumberResult pi_t_vertex(const Graph& g, VertexId v, Count t, const NumberOptions& options = {}) {
    if (t == 0)
        throw std::invalid_argument("t must be positive");
    return pi_dist(g, delta(g, v, t), options);
}

inline NumberResult pi_vertex(const Graph& g, VertexId v, const NumberOptions& options = {}) {
    return pi_t_vertex(g, v, 1, options);
}

inline NumberResult pi_t_graph(const Graph& g, Count t, const NumberOptions& options = {}) {
    if (t == 0)
        throw std::invalid_argument("t must be positive");
    return pi_set(g, s_t(g, t), options);
}

inline NumberResult pi_graph(const Graph& g, const NumberOptions& options = {}) { return pi_t_graph(g, 1, options); }

inline NumberResult cover_number(const Graph& g, const NumberOptions& options = {}) {
    return pi_dist(g, gamma_target(g), options);
}

inline NumberResult rho_t(const Graph& g, Count t, const NumberOptions& options = {}) {
    if (t == 0)
        throw std::invalid_argument("t must be positive");
    return rho_set(g, s_t(g, t), options);
}

inline NumberResult rho_vertex(const Graph& g, VertexId v, const NumberOptions& options = {}) {
    return rho_set(g, DistributionSet{delta(g, v)}, options);
}

// Least N such that N pebbles on any single vertex reach d.
inline Extended single_vertex_threshold(const Graph& g, const Distribution& d, SearchOptions search_options = {}) {
    require_on(g, d);
    if (d.is_zero())
        return Extended{0};
    if (!g.is_connected())
        return Extended::infinity();
    ReachSearch search(g, DistributionSet{d}, search_options);
    std::uint64_t worst = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        // Sending every target pebble along a cheapest path from u suffices.
        auto costs = min_path_costs_from(g, u);
        std::uint64_t enough = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            enough += static_cast<std::uint64_t>(d[v]) * costs[v].value();
        // Only the maximum over u matters, so start where the previous vertices left off.
        if (enough <= worst)
            continue;
        std::uint64_t n = worst;
        while (n <= enough && !search.reachable(delta(g, u, static_cast<Count>(n))))
            ++n;
        if (n > enough)
            throw InternalInconsistency("single-vertex start of " + std::to_string(enough) +
                                        " pebbles misses the target");
        worst = std::max(worst, n);
    }
    return Extended{worst};
}

} // namespace pebble
