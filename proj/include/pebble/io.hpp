#pragma once

#include "pebble/distribution.hpp"
#include "pebble/graph.hpp"
#include "pebble/harness.hpp"
#include "pebble/numbers.hpp"
#include "pebble/solver.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pebble {

using Json = nlohmann::json;

// --- numbers and distributions ---

inline Json to_json(const Extended& e) { return e.is_finite() ? Json(e.value()) : Json("inf"); }

inline Extended extended_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return Extended::infinity();
    return Extended{j.get<std::uint64_t>()};
}

inline Json to_json(const Distribution& d) { return Json(std::vector<Count>(d.counts().begin(), d.counts().end())); }

inline Json to_json(const DistributionSet& s) {
    Json out = Json::array();
    for (const auto& d : s)
        out.push_back(to_json(d));
    return out;
}

inline Distribution distribution_from_json(const Json& j) { return Distribution(j.get<std::vector<Count>>()); }

// --- graphs ---

inline Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.u, e.v, e.w});
    Json out{{"n", g.vertex_count()}, {"edges", edges}};
    if (!g.labels().empty())
        out["labels"] = g.labels();
    return out;
}

// {"n": 3, "labels": [...], "edges": [[u, v, w], ...]}; a missing weight is 2.
inline Graph graph_from_json(const Json& j) {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.value("edges", Json::array())) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3)
            throw std::invalid_argument("graph JSON: each edge is [u, v] or [u, v, w]");
        edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e.size() == 3 ? e[2].get<Weight>() : kUnweighted});
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j["labels"].get<std::vector<std::string>>();
    return Graph(n, std::move(edges), std::move(labels));
}

namespace detail {

inline std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    const auto t = trim(s);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("expected a nonnegative integer for " + std::string(what) + ", got '" + t + "'");
    return std::stoull(t);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{')
            ++depth;
        if (c == ')' || c == ']' || c == '}')
            --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

} // namespace detail

// Graph designators: path:N, cycle:N, complete:N, cube:D, trivial, k4w (the
// weighted K_4), product(A,B), inline JSON, or a path to a JSON file.
inline Graph parse_graph(std::string_view text) {
    const auto s = detail::trim(text);
    if (s.empty())
        throw std::invalid_argument("empty graph designator");
    if (s.front() == '{')
        return graph_from_json(Json::parse(s));
    if (s == "trivial")
        return trivial();
    if (s == "k4w")
        return weighted_k4();
    if (s.starts_with("product(") && s.back() == ')') {
        auto parts = detail::split(std::string_view(s).substr(8, s.size() - 9), ',');
        if (parts.size() != 2)
            throw std::invalid_argument("product(A,B) takes exactly two graphs");
        return cartesian_product(parse_graph(parts[0]), parse_graph(parts[1]));
    }
    if (auto colon = s.find(':'); colon != std::string::npos) {
        const auto family = s.substr(0, colon);
        const auto n = detail::parse_uint(std::string_view(s).substr(colon + 1), family);
        if (family == "path")
            return path(n);
        if (family == "cycle")
            return cycle(n);
        if (family == "complete")
            return complete(n);
        if (family == "cube")
            return hypercube(static_cast<unsigned>(n));
        throw std::invalid_argument("unknown graph family '" + family + "'");
    }
    if (detail::file_exists(s))
        return graph_from_json(Json::parse(detail::read_file(s)));
    throw std::invalid_argument("cannot parse graph '" + s + "'");
}

// A list of graphs for sweeps, separated by ';'. Each item is a graph
// designator, a range such as path:1..5, connected:N (every connected graph on N
// vertices) or random:COUNT:N (seeded random connected graphs).
inline std::vector<Graph> parse_graph_family(std::string_view text, std::mt19937_64& rng) {
    std::vector<Graph> out;
    for (const auto& item : detail::split(text, ';')) {
        if (item.empty())
            continue;
        if (item.starts_with("connected:")) {
            auto graphs = all_connected_graphs(detail::parse_uint(std::string_view(item).substr(10), "connected"));
            out.insert(out.end(), graphs.begin(), graphs.end());
            continue;
        }
        if (item.starts_with("random:")) {
            auto parts = detail::split(std::string_view(item).substr(7), ':');
            if (parts.size() != 2)
                throw std::invalid_argument("random family is random:COUNT:N");
            const auto count = detail::parse_uint(parts[0], "random count");
            const auto n = detail::parse_uint(parts[1], "random size");
            if (n == 0)
                throw std::invalid_argument("random graphs need at least one vertex");
            for (std::uint64_t i = 0; i < count; ++i)
                out.push_back(random_connected_graph(rng, n));
            continue;
        }
        if (auto dots = item.find(".."); dots != std::string::npos && !item.starts_with("product(")) {
            const auto colon = item.find(':');
            if (colon == std::string::npos || colon > dots)
                throw std::invalid_argument("range must look like family:LO..HI");
            const auto lo = detail::parse_uint(std::string_view(item).substr(colon + 1, dots - colon - 1), "range");
            const auto hi = detail::parse_uint(std::string_view(item).substr(dots + 2), "range");
            for (auto n = lo; n <= hi; ++n)
                out.push_back(parse_graph(item.substr(0, colon + 1) + std::to_string(n)));
            continue;
        }
        out.push_back(parse_graph(item));
    }
    return out;
}

// A vertex as an index, a label, or (x,y) on a product graph.
inline VertexId parse_vertex(const Graph& g, std::string_view text) {
    const auto s = detail::trim(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        const auto shape = g.product_shape();
        if (!shape)
            throw std::invalid_argument("(x,y) vertices need a product graph");
        auto parts = detail::split(std::string_view(s).substr(1, s.size() - 2), ',');
        if (parts.size() != 2)
            throw std::invalid_argument("vertex pair must be (x,y)");
        const auto x = detail::parse_uint(parts[0], "x");
        const auto y = detail::parse_uint(parts[1], "y");
        if (x >= shape->left || y >= shape->right)
            throw std::invalid_argument("vertex pair out of range");
        return shape->index(x, y);
    }
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
        const auto v = std::stoull(s);
        if (v >= g.vertex_count())
            throw std::invalid_argument("vertex " + s + " out of range");
        return v;
    }
    const auto& labels = g.labels();
    if (auto it = std::find(labels.begin(), labels.end(), s); it != labels.end())
        return static_cast<VertexId>(it - labels.begin());
    throw std::invalid_argument("unknown vertex '" + s + "'");
}

// Distribution designators: [c0,c1,...], delta:v, tdelta:v:t, gamma, zero.
inline Distribution parse_distribution(const Graph& g, std::string_view text) {
    const auto s = detail::trim(text);
    Distribution d;
    if (!s.empty() && s.front() == '[') {
        d = distribution_from_json(Json::parse(s));
    } else if (s == "gamma") {
        d = gamma_target(g);
    } else if (s == "zero") {
        d = zero(g);
    } else if (s.starts_with("delta:")) {
        d = delta(g, parse_vertex(g, std::string_view(s).substr(6)));
    } else if (s.starts_with("tdelta:")) {
        const auto rest = s.substr(7);
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("tdelta:v:t needs a vertex and a multiplicity");
        d = delta(g, parse_vertex(g, rest.substr(0, colon)),
                  static_cast<Count>(detail::parse_uint(rest.substr(colon + 1), "t")));
    } else {
        throw std::invalid_argument("cannot parse distribution '" + s + "'");
    }
    require_on(g, d);
    return d;
}

// Set designators: a JSON array of distributions, S_t:t, D_t:t (paths only),
// N2:v, a file holding a JSON array, or distribution designators joined by ';'.
inline DistributionSet parse_distribution_set(const Graph& g, std::string_view text) {
    const auto s = detail::trim(text);
    DistributionSet out;
    if (s.starts_with("[[")) {
        for (const auto& m : Json::parse(s))
            out.insert(distribution_from_json(m));
    } else if (s.starts_with("S_t:")) {
        out = s_t(g, static_cast<Count>(detail::parse_uint(std::string_view(s).substr(4), "t")));
    } else if (s.starts_with("D_t:")) {
        out = d_t(g, static_cast<Count>(detail::parse_uint(std::string_view(s).substr(4), "t")));
    } else if (s.starts_with("N2:")) {
        out = n2(g, parse_vertex(g, std::string_view(s).substr(3)));
    } else if (!s.empty() && s.front() != '[' && detail::file_exists(s)) {
        for (const auto& m : Json::parse(detail::read_file(s)))
            out.insert(distribution_from_json(m));
    } else {
        for (const auto& item : detail::split(s, ';'))
            out.insert(parse_distribution(g, item));
    }
    require_nonempty(out);
    for (const auto& d : out)
        require_on(g, d);
    return out;
}

// --- results ---

inline Json to_json(const Graph& g, const MoveSequence& seq) {
    Json moves = Json::array();
    for (const auto& m : seq.moves)
        moves.push_back({m.from, m.to});
    return Json{{"start", to_json(seq.start)}, {"moves", moves}, {"end", to_json(replay(g, seq))}};
}

inline Json to_json(const NumberResult& r) {
    return Json{{"value", to_json(r.value)},
                {"failing_witness", r.witness_failure ? to_json(*r.witness_failure) : Json(nullptr)},
                {"quantifier", to_string(r.quantifier)},
                {"fingerprint", r.fingerprint},
                {"candidates", r.candidates},
                {"from_cache", r.from_cache}};
}

inline NumberResult number_result_from_json(const Json& j) {
    NumberResult r;
    r.value = extended_from_json(j.at("value"));
    if (j.contains("failing_witness") && !j["failing_witness"].is_null())
        r.witness_failure = distribution_from_json(j["failing_witness"]);
    const auto q = j.value("quantifier", std::string{"pi_set"});
    r.quantifier = q == "pi_dist" ? Quantifier::pi_dist : q == "rho_set" ? Quantifier::rho_set : Quantifier::pi_set;
    r.fingerprint = j.at("fingerprint").get<std::string>();
    r.candidates = j.value("candidates", std::uint64_t{0});
    return r;
}

inline Json to_json(const ConjectureInstance& c) {
    Json values = Json::object();
    for (const auto& [k, v] : c.values)
        values[k] = to_json(v);
    Json out{{"kind", to_string(c.spec.kind)},
             {"G", to_json(c.spec.g)},
             {"H", to_json(c.spec.h)},
             {"lhs", to_json(c.lhs)},
             {"rhs", to_json(c.rhs)},
             {"status", to_string(c.status)},
             {"expectation", to_string(c.expectation)},
             {"reconfirmed", c.reconfirmed},
             {"values", values},
             {"notes", c.notes}};
    if (is_vertex_kind(c.spec.kind)) {
        out["x"] = c.spec.x;
        out["y"] = c.spec.y;
    }
    if (c.spec.kind == ConjectureKind::st_vertices || c.spec.kind == ConjectureKind::odd ||
        c.spec.kind == ConjectureKind::weighted_st || c.spec.kind == ConjectureKind::st_graphs) {
        out["s"] = c.spec.s;
        out["t"] = c.spec.t;
    }
    if (c.spec.kind == ConjectureKind::powers_of_two) {
        out["a"] = c.spec.a;
        out["b"] = c.spec.b;
    }
    if (c.spec.sg)
        out["S_G"] = to_json(*c.spec.sg);
    if (c.spec.sh)
        out["S_H"] = to_json(*c.spec.sh);
    if (c.lhs_witness)
        out["lhs_failing_witness"] = to_json(*c.lhs_witness);
    return out;
}

inline Json to_json(const VerifyReport& r) {
    Json values = Json::object();
    for (const auto& [k, v] : r.values)
        values[k] = to_json(v);
    Json witnesses = Json::object();
    for (const auto& [k, v] : r.witnesses)
        witnesses[k] = to_json(v);
    return Json{{"claim", r.claim}, {"lhs", to_json(r.lhs)},   {"rhs", to_json(r.rhs)},        {"holds", r.holds},
                {"values", values}, {"witnesses", witnesses}, {"notes", r.notes}};
}

} // namespace pebble
