#pragma once

#include "pebble/constructions.hpp"
#include "pebble/distribution.hpp"
#include "pebble/graph.hpp"
#include "pebble/numbers.hpp"
#include "pebble/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pebble {

// --- graph families used by sweeps and checks ---

// Every connected labeled graph on n vertices (all weights 2), ordered by the
// bitmask of present edges over the pairs (0,1), (0,2), ..., (n-2,n-1).
inline std::vector<Graph> all_connected_graphs(std::size_t n) {
    if (n == 0 || n > 6)
        throw std::invalid_argument("all_connected_graphs: 1 <= n <= 6");
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1)
                edges.push_back({pairs[b].first, pairs[b].second, kUnweighted});
        Graph g(n, std::move(edges));
        if (g.is_connected())
            out.push_back(std::move(g));
    }
    return out;
}

// Every assignment of weights from `weights` to the edges of g.
inline std::vector<Graph> all_weightings(const Graph& g, const std::vector<Weight>& weights) {
    std::vector<Graph> out;
    const std::size_t m = g.edge_count();
    std::vector<std::size_t> digits(m, 0);
    for (;;) {
        std::vector<Weight> w(m);
        for (std::size_t i = 0; i < m; ++i)
            w[i] = weights[digits[i]];
        out.push_back(reweighted(g, w));
        std::size_t i = 0;
        while (i < m && ++digits[i] == weights.size())
            digits[i++] = 0;
        if (i == m)
            break;
    }
    return out;
}

// Random spanning tree plus each remaining pair with probability 1/2.
template <class Rng>
Graph random_connected_graph(Rng& rng, std::size_t n) {
    std::vector<Edge> edges;
    for (VertexId v = 1; v < n; ++v) {
        std::uniform_int_distribution<VertexId> pick(0, v - 1);
        edges.push_back({pick(rng), v, kUnweighted});
    }
    std::bernoulli_distribution coin(0.5);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
            bool present = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
                return (e.u == u && e.v == v) || (e.u == v && e.v == u);
            });
            if (!present && coin(rng))
                edges.push_back({u, v, kUnweighted});
        }
    return Graph(n, std::move(edges));
}

// K_4 where x1x2 and x3x4 have weight 2 and the other four edges weight 5.
inline Graph weighted_k4() {
    return Graph(4, {{0, 1, 2}, {2, 3, 2}, {0, 2, 5}, {0, 3, 5}, {1, 2, 5}, {1, 3, 5}}, {"x1", "x2", "x3", "x4"});
}

// --- conjecture instances ---

enum class ConjectureKind {
    sets,
    distributions,
    st_vertices,
    vertices,
    st_graphs,
    graham,
    odd,
    powers_of_two,
    weighted_st,
    weighted_vertices,
    rho_analog,
};

inline const std::vector<std::pair<ConjectureKind, std::string>>& conjecture_kind_names() {
    static const std::vector<std::pair<ConjectureKind, std::string>> names = {
        {ConjectureKind::sets, "sets"},
        {ConjectureKind::distributions, "distributions"},
        {ConjectureKind::st_vertices, "st-vertices"},
        {ConjectureKind::vertices, "vertices"},
        {ConjectureKind::st_graphs, "st-graphs"},
        {ConjectureKind::graham, "graham"},
        {ConjectureKind::odd, "odd"},
        {ConjectureKind::powers_of_two, "powers-of-two"},
        {ConjectureKind::weighted_st, "weighted-st"},
        {ConjectureKind::weighted_vertices, "weighted-vertices"},
        {ConjectureKind::rho_analog, "rho-analog"},
    };
    return names;
}

inline std::string to_string(ConjectureKind k) {
    for (const auto& [kind, name] : conjecture_kind_names())
        if (kind == k)
            return name;
    return "?";
}

inline ConjectureKind parse_conjecture_kind(const std::string& text) {
    for (const auto& [kind, name] : conjecture_kind_names())
        if (name == text)
            return kind;
    throw std::invalid_argument("unknown conjecture kind '" + text + "'");
}

inline bool is_vertex_kind(ConjectureKind k) {
    return k == ConjectureKind::st_vertices || k == ConjectureKind::vertices || k == ConjectureKind::odd ||
           k == ConjectureKind::powers_of_two || k == ConjectureKind::weighted_st ||
           k == ConjectureKind::weighted_vertices;
}

struct ConjectureSpec {
    ConjectureKind kind = ConjectureKind::graham;
    Graph g;
    Graph h;
    VertexId x = 0;
    VertexId y = 0;
    Count s = 1;
    Count t = 1;
    unsigned a = 0;
    unsigned b = 0;
    // Target sets for sets / distributions / rho-analog (a single member for
    // distributions).
    std::optional<DistributionSet> sg;
    std::optional<DistributionSet> sh;
};

enum class Status { holds, violation, too_large };

inline std::string to_string(Status s) {
    switch (s) {
    case Status::holds:
        return "holds";
    case Status::violation:
        return "violation";
    case Status::too_large:
        return "too_large";
    }
    return "?";
}

// What is known about an instance before it is computed.
enum class Expectation {
    proven,      // a theorem says the inequality holds
    conjectured, // an open conjecture says it holds
    open,        // no claim either way
};

inline std::string to_string(Expectation e) {
    switch (e) {
    case Expectation::proven:
        return "proven";
    case Expectation::conjectured:
        return "conjectured";
    case Expectation::open:
        return "open";
    }
    return "?";
}

struct ConjectureInstance {
    ConjectureSpec spec;
    Extended lhs;
    Extended rhs;
    Status status = Status::holds;
    Expectation expectation = Expectation::conjectured;
    bool reconfirmed = false;
    std::map<std::string, Extended> values;
    std::optional<Distribution> lhs_witness;
    std::vector<std::string> notes;
    std::string lhs_fingerprint;

    [[nodiscard]] bool holds() const { return status == Status::holds; }
    // A violation where a theorem rules one out: the solver is wrong.
    [[nodiscard]] bool impossible() const { return status == Status::violation && expectation == Expectation::proven; }
};

namespace detail {

inline bool everywhere_positive(const DistributionSet& s) {
    return std::all_of(s.begin(), s.end(), [](const Distribution& d) {
        return std::all_of(d.counts().begin(), d.counts().end(), [](Count c) { return c >= 1; });
    });
}

inline void require_unweighted(const ConjectureSpec& spec) {
    if (!spec.g.is_unweighted() || !spec.h.is_unweighted())
        throw std::invalid_argument(to_string(spec.kind) + " is stated for unweighted graphs; use the weighted kinds");
}

struct Sides {
    Extended lhs;
    Extended rhs;
    std::map<std::string, Extended> values;
    std::optional<Distribution> lhs_witness;
    std::string lhs_fingerprint;
};

inline Sides evaluate(const ConjectureSpec& spec, const NumberOptions& options) {
    const auto gh = cartesian_product(spec.g, spec.h);
    const auto& shape = *gh.product_shape();
    Sides out;
    auto take_lhs = [&](const NumberResult& r) {
        out.lhs = r.value;
        out.lhs_witness = r.witness_failure;
        out.lhs_fingerprint = r.fingerprint;
        out.values["lhs"] = r.value;
    };
    auto vertex_numbers = [&](Count st, Count s, Count t) {
        if (spec.x >= spec.g.vertex_count() || spec.y >= spec.h.vertex_count())
            throw std::invalid_argument("conjecture vertex out of range");
        take_lhs(pi_t_vertex(gh, shape.index(spec.x, spec.y), st, options));
        const auto left = pi_t_vertex(spec.g, spec.x, s, options).value;
        const auto right = pi_t_vertex(spec.h, spec.y, t, options).value;
        out.values["G"] = left;
        out.values["H"] = right;
        out.rhs = left * right;
    };
    auto set_numbers = [&](bool selectable) {
        if (!spec.sg || !spec.sh)
            throw std::invalid_argument(to_string(spec.kind) + " needs target sets for both factors");
        const auto product_set = set_product(*spec.sg, *spec.sh);
        const auto number = selectable ? rho_set : pi_set;
        take_lhs(number(gh, product_set, options));
        const auto left = number(spec.g, *spec.sg, options).value;
        const auto right = number(spec.h, *spec.sh, options).value;
        out.values["G"] = left;
        out.values["H"] = right;
        out.rhs = left * right;
    };

    switch (spec.kind) {
    case ConjectureKind::sets:
    case ConjectureKind::distributions:
        set_numbers(false);
        break;
    case ConjectureKind::rho_analog:
        set_numbers(true);
        break;
    case ConjectureKind::st_vertices:
    case ConjectureKind::odd:
    case ConjectureKind::weighted_st:
        vertex_numbers(spec.s * spec.t, spec.s, spec.t);
        break;
    case ConjectureKind::vertices:
    case ConjectureKind::weighted_vertices:
        vertex_numbers(1, 1, 1);
        break;
    case ConjectureKind::powers_of_two:
        if (spec.a + spec.b > 24)
            throw std::invalid_argument("powers-of-two: a + b too large");
        vertex_numbers(Count{1} << (spec.a + spec.b), Count{1} << spec.a, Count{1} << spec.b);
        break;
    case ConjectureKind::st_graphs:
    case ConjectureKind::graham: {
        const Count s = spec.kind == ConjectureKind::graham ? 1 : spec.s;
        const Count t = spec.kind == ConjectureKind::graham ? 1 : spec.t;
        take_lhs(pi_t_graph(gh, s * t, options));
        const auto left = pi_t_graph(spec.g, s, options).value;
        const auto right = pi_t_graph(spec.h, t, options).value;
        out.values["G"] = left;
        out.values["H"] = right;
        out.rhs = left * right;
        break;
    }
    }
    out.values["rhs"] = out.rhs;
    return out;
}

} // namespace detail

// Computes both sides of one conjecture instance exactly. A violation is
// recomputed with every pruning rule disabled before it is reported.
inline ConjectureInstance check_conjecture(const ConjectureSpec& spec, const NumberOptions& options = {}) {
    ConjectureInstance out;
    out.spec = spec;

    switch (spec.kind) {
    case ConjectureKind::distributions:
        if (!spec.sg || !spec.sh || spec.sg->size() != 1 || spec.sh->size() != 1)
            throw std::invalid_argument("distributions needs exactly one target per factor");
        break;
    case ConjectureKind::odd:
        if (spec.s % 2 == 0 || spec.t % 2 == 0)
            throw std::invalid_argument("odd requires odd s and t");
        break;
    default:
        break;
    }
    if (spec.kind != ConjectureKind::weighted_st && spec.kind != ConjectureKind::weighted_vertices &&
        spec.kind != ConjectureKind::rho_analog && spec.kind != ConjectureKind::sets &&
        spec.kind != ConjectureKind::distributions)
        detail::require_unweighted(spec);

    if (spec.kind == ConjectureKind::rho_analog)
        out.expectation = Expectation::open;
    else if ((spec.kind == ConjectureKind::distributions || spec.kind == ConjectureKind::sets) &&
             spec.sg && spec.sh && spec.g.is_unweighted() && spec.h.is_unweighted() &&
             detail::everywhere_positive(*spec.sg) && detail::everywhere_positive(*spec.sh))
        out.expectation = Expectation::proven;  // cover-type targets on both factors
    else
        out.expectation = Expectation::conjectured;

    detail::Sides sides;
    try {
        sides = detail::evaluate(spec, options);
    } catch (const BudgetExceeded& e) {
        out.status = Status::too_large;
        out.notes.emplace_back(e.what());
        return out;
    }
    out.lhs = sides.lhs;
    out.rhs = sides.rhs;
    out.values = sides.values;
    out.lhs_witness = sides.lhs_witness;
    out.lhs_fingerprint = sides.lhs_fingerprint;
    out.status = out.lhs <= out.rhs ? Status::holds : Status::violation;

    if (out.status == Status::violation) {
        NumberOptions careful = options;
        careful.search.paranoid = true;
        careful.cache = nullptr;
        detail::Sides again;
        try {
            again = detail::evaluate(spec, careful);
        } catch (const BudgetExceeded& e) {
            out.notes.emplace_back(std::string{"paranoid reconfirmation exceeded the budget: "} + e.what());
            return out;
        }
        if (again.lhs != sides.lhs || again.rhs != sides.rhs)
            throw InternalInconsistency("paranoid recomputation of a " + to_string(spec.kind) +
                                        " instance disagrees with the pruned solver");
        out.reconfirmed = true;
    }
    if (spec.g.has_unit_weights() || spec.h.has_unit_weights())
        out.notes.emplace_back("factor has weight-1 edges");
    return out;
}

inline ConjectureInstance check_rho_analog(const Graph& g, const Graph& h, const DistributionSet& sg,
                                           const DistributionSet& sh, const NumberOptions& options = {}) {
    ConjectureSpec spec;
    spec.kind = ConjectureKind::rho_analog;
    spec.g = g;
    spec.h = h;
    spec.sg = sg;
    spec.sh = sh;
    auto out = check_conjecture(spec, options);
    if (g.vertex_count() == 1 && h.vertex_count() >= 2 && is_path_graph(h) && sh == d_t(h, 1))
        out.notes.emplace_back("trivial-factor instance: the product set is taken as the explicit set product, "
                               "which equals " + set_product(sg, sh).to_string());
    return out;
}

// --- counterexample reproduction ---

struct ClaimCheck {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
};

// Per-vertex thresholds behind single_vertex_threshold.
inline std::vector<Extended> single_vertex_thresholds(const Graph& g, const Distribution& d,
                                                      SearchOptions search_options = {}) {
    std::vector<Extended> out;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto costs = min_path_costs_from(g, u);
        bool reachable_everywhere = true;
        std::uint64_t enough = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (d[v] == 0)
                continue;
            if (costs[v].is_infinite()) {
                reachable_everywhere = false;
                break;
            }
            enough += static_cast<std::uint64_t>(d[v]) * costs[v].value();
        }
        if (!reachable_everywhere) {
            out.push_back(Extended::infinity());
            continue;
        }
        ReachSearch search(g, DistributionSet{d}, search_options);
        std::uint64_t n = 0;
        while (n < enough && !search.reachable(delta(g, u, static_cast<Count>(n))))
            ++n;
        out.push_back(Extended{n});
    }
    return out;
}

inline std::vector<ClaimCheck> reproduce_counterexamples(const NumberOptions& options = {}) {
    std::vector<ClaimCheck> out;
    const auto k4 = weighted_k4();
    const auto cover = gamma_target(k4);

    {
        auto per_vertex = single_vertex_thresholds(k4, cover, options.search);
        std::string observed;
        bool all13 = true;
        for (const auto& v : per_vertex) {
            observed += (observed.empty() ? "" : ",") + v.to_string();
            all13 = all13 && v == Extended{13};
        }
        out.push_back({"weighted K4: 13 pebbles on any single vertex cover the graph, 12 do not", "13,13,13,13",
                       observed, all13 && single_vertex_threshold(k4, cover, options.search) == Extended{13}});
    }
    {
        SearchOptions careful = options.search;
        careful.paranoid = true;
        const Distribution start{9, 4, 0, 0};
        const bool fast = is_reachable(k4, start, cover, options.search).reachable;
        const bool slow = is_reachable(k4, start, cover, careful).reachable;
        if (fast != slow)
            throw InternalInconsistency("weighted K4 cover check: pruned and paranoid solvers disagree");
        out.push_back({"weighted K4: (9,4,0,0) cannot cover the graph", "unreachable",
                       fast ? "reachable" : "unreachable", !fast});
    }
    {
        auto gamma = cover_number(k4, options);
        out.push_back({"weighted K4: cover number exceeds the single-vertex threshold 13", "> 13",
                       gamma.value.to_string(), gamma.value > Extended{13}});
    }
    {
        auto inst = check_rho_analog(trivial(), path(6), DistributionSet{delta(trivial(), 0, 2)}, d_t(path(6), 1),
                                     options);
        out.push_back({"rho(T x P_6, {2 delta} . D_1) = 11 exceeds rho(T, {2 delta}) rho(P_6, D_1) = 10",
                       "11 > 10", inst.lhs.to_string() + (inst.holds() ? " <= " : " > ") + inst.rhs.to_string(),
                       inst.status == Status::violation && inst.reconfirmed && inst.lhs == Extended{11} &&
                           inst.rhs == Extended{10}});
    }
    {
        auto inst = check_rho_analog(path(2), path(3), s_t(path(2), 2), s_t(path(3), 1), options);
        out.push_back({"rho_2(P_2 x P_3) = 7 exceeds rho_2(P_2) rho_1(P_3) = 3", "7 > 3",
                       inst.lhs.to_string() + (inst.holds() ? " <= " : " > ") + inst.rhs.to_string(),
                       inst.status == Status::violation && inst.reconfirmed && inst.lhs == Extended{7} &&
                           inst.rhs == Extended{3}});
    }
    {
        auto inst = check_rho_analog(path(2), path(3), s_t(path(2), 1), s_t(path(3), 1), options);
        out.push_back({"rho_1(P_2 x P_3) = rho_1(P_2) rho_1(P_3) = 1", "1 = 1",
                       inst.lhs.to_string() + " vs " + inst.rhs.to_string(),
                       inst.lhs == Extended{1} && inst.rhs == Extended{1}});
    }
    return out;
}

// --- sweeps ---

struct SweepSpec {
    std::vector<Graph> left;
    std::vector<Graph> right;
    std::vector<ConjectureKind> kinds;
    Count s = 1;
    Count t = 1;
    unsigned workers = 1;
    std::uint64_t seed = 0;
};

struct SweepSummary {
    std::uint64_t seed = 0;
    std::size_t holds = 0;
    std::size_t violations = 0;
    std::size_t too_large = 0;
    std::size_t impossible = 0;
};

// Instances in deterministic order: left graph, right graph, kind, then vertex
// pairs for the vertex kinds.
inline std::vector<ConjectureSpec> expand_sweep(const SweepSpec& sweep) {
    std::vector<ConjectureSpec> out;
    for (const auto& g : sweep.left)
        for (const auto& h : sweep.right)
            for (auto kind : sweep.kinds) {
                ConjectureSpec spec;
                spec.kind = kind;
                spec.g = g;
                spec.h = h;
                spec.s = sweep.s;
                spec.t = sweep.t;
                switch (kind) {
                case ConjectureKind::sets:
                case ConjectureKind::rho_analog:
                    spec.sg = s_t(g, sweep.s);
                    spec.sh = s_t(h, sweep.t);
                    break;
                case ConjectureKind::distributions:
                    spec.sg = DistributionSet{gamma_target(g)};
                    spec.sh = DistributionSet{gamma_target(h)};
                    break;
                case ConjectureKind::powers_of_two:
                    spec.a = static_cast<unsigned>(std::countr_zero(sweep.s));
                    spec.b = static_cast<unsigned>(std::countr_zero(sweep.t));
                    break;
                default:
                    break;
                }
                if (is_vertex_kind(kind)) {
                    for (VertexId x = 0; x < g.vertex_count(); ++x)
                        for (VertexId y = 0; y < h.vertex_count(); ++y) {
                            spec.x = x;
                            spec.y = y;
                            out.push_back(spec);
                        }
                } else {
                    out.push_back(spec);
                }
            }
    return out;
}

// Runs every instance of the sweep, `workers` at a time, and hands results to
// `sink` in expansion order.
inline SweepSummary sweep(const SweepSpec& spec, const NumberOptions& options,
                          const std::function<void(const ConjectureInstance&)>& sink) {
    const auto specs = expand_sweep(spec);
    SweepSummary summary;
    summary.seed = spec.seed;
    std::vector<std::optional<ConjectureInstance>> results(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                results[i] = check_conjecture(specs[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, spec.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }

    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        const auto& r = *results[i];
        switch (r.status) {
        case Status::holds:
            ++summary.holds;
            break;
        case Status::violation:
            ++summary.violations;
            break;
        case Status::too_large:
            ++summary.too_large;
            break;
        }
        if (r.impossible())
            ++summary.impossible;
        if (sink)
            sink(r);
    }
    return summary;
}

} // namespace pebble
