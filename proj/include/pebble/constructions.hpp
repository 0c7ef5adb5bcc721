#pragma once

#include "pebble/distribution.hpp"
#include "pebble/graph.hpp"
#include "pebble/numbers.hpp"
#include "pebble/solver.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pebble {

// G plus one pendant vertex (index |V(G)|) joined to `attach` by an edge of
// weight `weight`. With weight 2 this is the unweighted construction.
struct AugmentedGraph {
    Graph base;
    Graph graph;
    VertexId attach;
    VertexId new_vertex;
    Weight weight;
};

inline AugmentedGraph augment(const Graph& g, VertexId attach, Weight s = kUnweighted) {
    if (attach >= g.vertex_count())
        throw std::invalid_argument("augment: vertex out of range");
    if (s == 0)
        throw std::invalid_argument("augment: weight must be positive");
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    const VertexId fresh = g.vertex_count();
    edges.push_back({attach, fresh, s});
    std::vector<std::string> labels = g.labels();
    if (!labels.empty())
        labels.push_back(g.label(attach) + "'");
    return AugmentedGraph{g, Graph(fresh + 1, std::move(edges), std::move(labels)), attach, fresh, s};
}

// An augmented factor times another graph, together with the product of the
// unaugmented factor. Rows x < |V(G)| have identical indices in both products;
// the pendant row comes last.
struct AugmentedProduct {
    AugmentedGraph factor;
    Graph other;
    Graph augmented;
    Graph base;

    [[nodiscard]] std::size_t rows() const { return factor.base.vertex_count(); }
    [[nodiscard]] std::size_t columns() const { return other.vertex_count(); }
    [[nodiscard]] bool on_pendant_row(VertexId v) const { return v / columns() == factor.new_vertex; }
    [[nodiscard]] VertexId fold(VertexId v) const {
        return on_pendant_row(v) ? factor.attach * columns() + v % columns() : v;
    }
};

inline AugmentedProduct augmented_product(const AugmentedGraph& factor, const Graph& h) {
    return AugmentedProduct{factor, h, cartesian_product(factor.graph, h), cartesian_product(factor.base, h)};
}

// Replaces every pebble on (x', y) by `weight` pebbles on (x_i, y).
inline Distribution project_distribution(const AugmentedProduct& ap, const Distribution& d) {
    require_on(ap.augmented, d);
    Distribution out(ap.base.vertex_count());
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
        if (d[v] == 0)
            continue;
        const auto mult = ap.on_pendant_row(v) ? static_cast<Count>(ap.factor.weight) : Count{1};
        out.add(ap.fold(v), d[v] * mult);
    }
    return out;
}

// Carries a witness on the augmented product over to G x H. The result starts
// at the projected start and ends in a distribution containing the projected
// end state.
inline MoveSequence project_move_sequence(const AugmentedProduct& ap, const MoveSequence& seq) {
    MoveSequence out{project_distribution(ap, seq.start), {}};
    Distribution current = seq.start;
    const auto s = ap.factor.weight;
    for (const auto& m : seq.moves) {
        current = apply_move(ap.augmented, current, m);  // validates the input witness
        const bool from_pendant = ap.on_pendant_row(m.from);
        const bool to_pendant = ap.on_pendant_row(m.to);
        if (!from_pendant && !to_pendant) {
            out.moves.push_back(m);
        } else if (from_pendant && to_pendant) {
            // One move between pendant copies becomes s moves between the
            // corresponding attach copies, each with the same cost.
            const Move folded{ap.fold(m.from), ap.fold(m.to), m.cost};
            for (Weight k = 0; k < s; ++k)
                out.moves.push_back(folded);
        }
        // Moves between (x_i, y) and (x', y) have no image: towards the pendant
        // the projection is unchanged, back from it the projection only shrinks.
    }
    return out;
}

// --- verifiers ---

struct VerifyReport {
    std::string claim;
    Extended lhs;
    Extended rhs;
    bool holds = false;
    std::map<std::string, Extended> values;
    std::map<std::string, Distribution> witnesses;
    std::vector<std::string> notes;
};

inline void record_witness(VerifyReport& report, const std::string& name, const NumberResult& r) {
    if (r.witness_failure)
        report.witnesses.emplace(name, *r.witness_failure);
}

// pi_{st}(G, x_i) against pi_t of the pendant vertex in G augmented at x_i
// with an edge of weight s. Weight 2 gives the doubling identity.
inline VerifyReport verify_prop_2s(const Graph& g, VertexId attach, Weight s, Count t,
                                   const NumberOptions& options = {}) {
    if (t == 0 || s == 0)
        throw std::invalid_argument("verify_prop_2s: s and t must be positive");
    auto aug = augment(g, attach, s);
    auto lhs = pi_t_vertex(g, attach, static_cast<Count>(s * t), options);
    auto rhs = pi_t_vertex(aug.graph, aug.new_vertex, t, options);
    VerifyReport report;
    report.claim = "pi_" + std::to_string(s * t) + "(G, x) = pi_" + std::to_string(t) + "(G' with weight " +
                   std::to_string(s) + " pendant, x')";
    report.lhs = lhs.value;
    report.rhs = rhs.value;
    report.holds = lhs.value == rhs.value;
    record_witness(report, "lhs", lhs);
    record_witness(report, "rhs", rhs);
    if (aug.graph.has_unit_weights())
        report.notes.emplace_back("graph has weight-1 edges");
    return report;
}

// pi_{2st}(G x H, (x, y)) against pi_{2s}(G, x) pi_t(H, y) and
// pi_s(G, x) pi_{2t}(H, y).
inline VerifyReport verify_doubling_instance(const Graph& g, const Graph& h, VertexId x, VertexId y, Count s,
                                             Count t, const NumberOptions& options = {}) {
    if (s == 0 || t == 0)
        throw std::invalid_argument("verify_doubling_instance: s and t must be positive");
    auto gh = cartesian_product(g, h);
    const VertexId xy = gh.product_shape()->index(x, y);
    auto product = pi_t_vertex(gh, xy, 2 * s * t, options);
    auto g2s = pi_t_vertex(g, x, 2 * s, options);
    auto ht = pi_t_vertex(h, y, t, options);
    auto gs = pi_t_vertex(g, x, s, options);
    auto h2t = pi_t_vertex(h, y, 2 * t, options);

    VerifyReport report;
    report.claim = "pi_2st(GxH,(x,y)) <= pi_2s(G,x) pi_t(H,y) and <= pi_s(G,x) pi_2t(H,y)";
    const Extended first = g2s.value * ht.value;
    const Extended second = gs.value * h2t.value;
    report.lhs = product.value;
    report.rhs = std::min(first, second);
    report.values = {{"pi_2st(GxH,(x,y))", product.value},
                     {"pi_2s(G,x)", g2s.value},
                     {"pi_t(H,y)", ht.value},
                     {"pi_s(G,x)", gs.value},
                     {"pi_2t(H,y)", h2t.value},
                     {"pi_2s(G,x)*pi_t(H,y)", first},
                     {"pi_s(G,x)*pi_2t(H,y)", second}};
    report.holds = product.value <= first && product.value <= second;
    record_witness(report, "product", product);
    return report;
}

// Pebbling number of the cycle C_m in closed form.
inline std::uint64_t cycle_pebbling_closed_form(std::size_t m) {
    if (m < 3 || m > 60)
        throw std::invalid_argument("cycle_pebbling_closed_form: 3 <= m <= 60");
    if (m % 2 == 0)
        return std::uint64_t{1} << (m / 2);
    if (m % 4 == 3) {
        const std::size_t q = (m + 1) / 4;  // m = 4q - 1
        return ((std::uint64_t{1} << (2 * q + 1)) + 1) / 3;
    }
    const std::size_t q = (m - 1) / 4;  // m = 4q + 1
    return ((std::uint64_t{1} << (2 * q + 2)) - 1) / 3;
}

// rho(P_n, D_{2^i}) against pi(C_{n+2i-1}), plus the closed form and the
// critical distribution that certifies the lower bound.
inline VerifyReport verify_g_of_p(std::size_t n, unsigned i, const NumberOptions& options = {}) {
    if (n < 2)
        throw std::invalid_argument("verify_g_of_p requires n >= 2");
    const std::size_t m = n + 2 * i - 1;
    if (m < 3)
        throw std::invalid_argument("verify_g_of_p: n + 2i - 1 = " + std::to_string(m) +
                                    " is not a cycle length; only n + 2i - 1 >= 3 is checked");
    const auto p = path(n);
    const auto c = cycle(m);
    const Count t = Count{1} << i;
    const auto targets = d_t(p, t);

    auto lhs = rho_set(p, targets, options);
    auto rhs = pi_graph(c, options);
    const auto closed = cycle_pebbling_closed_form(m);
    const auto critical = critical_path_distribution(n, i);
    const bool critical_fails = !reach_any(p, critical, targets, options.search).has_value();
    const bool critical_size = rhs.value.is_finite() && critical.size() + 1 == rhs.value.value();

    VerifyReport report;
    report.claim = "rho(P_" + std::to_string(n) + ", D_" + std::to_string(t) + ") = pi(C_" + std::to_string(m) + ")";
    report.lhs = lhs.value;
    report.rhs = rhs.value;
    report.values = {{"rho(P_n,D_2^i)", lhs.value}, {"pi(C_m)", rhs.value}, {"closed_form", Extended{closed}}};
    report.witnesses.emplace("critical", critical);
    record_witness(report, "lhs", lhs);
    record_witness(report, "rhs", rhs);
    if (!critical_fails)
        report.notes.emplace_back("critical distribution reaches a target");
    if (!critical_size)
        report.notes.emplace_back("critical distribution size is not pi(C_m) - 1");
    if (Extended{closed} != rhs.value)
        report.notes.emplace_back("closed form disagrees with the computed cycle value");
    report.holds = lhs.value == rhs.value && Extended{closed} == rhs.value && critical_fails && critical_size;
    return report;
}

} // namespace pebble
