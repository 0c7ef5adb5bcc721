#pragma once

#include "pebble/combinatorics.hpp"
#include "pebble/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pebble {

// Pebble counts per vertex; size() is the total number of pebbles.
class Distribution {
public:
    Distribution() = default;
    explicit Distribution(std::size_t n) : counts_(n, 0) {}
    explicit Distribution(std::vector<Count> counts) : counts_{std::move(counts)} { recount(); }
    Distribution(std::initializer_list<Count> counts) : counts_{counts} { recount(); }

    [[nodiscard]] std::size_t vertex_count() const { return counts_.size(); }
    [[nodiscard]] std::uint64_t size() const { return size_; }
    [[nodiscard]] std::span<const Count> counts() const { return counts_; }
    [[nodiscard]] Count operator[](VertexId v) const { return counts_.at(v); }
    [[nodiscard]] bool is_zero() const { return size_ == 0; }

    void set(VertexId v, Count c) {
        size_ = size_ - counts_.at(v) + c;
        counts_[v] = c;
    }
    void add(VertexId v, Count c = 1) { set(v, counts_.at(v) + c); }

    [[nodiscard]] std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(counts_[i]);
        }
        return out + "]";
    }

    friend bool operator==(const Distribution& a, const Distribution& b) { return a.counts_ == b.counts_; }
    friend auto operator<=>(const Distribution& a, const Distribution& b) { return a.counts_ <=> b.counts_; }

private:
    void recount() { size_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}); }

    std::vector<Count> counts_;
    std::uint64_t size_ = 0;
};

inline void require_on(const Graph& g, const Distribution& d) {
    if (d.vertex_count() != g.vertex_count())
        throw std::invalid_argument("distribution has " + std::to_string(d.vertex_count()) +
                                    " entries but the graph has " + std::to_string(g.vertex_count()) +
                                    " vertices");
}

inline Distribution zero(const Graph& g) { return Distribution(g.vertex_count()); }

inline Distribution delta(const Graph& g, VertexId v, Count t = 1) {
    if (v >= g.vertex_count())
        throw std::invalid_argument("delta: vertex out of range");
    Distribution d(g.vertex_count());
    d.set(v, t);
    return d;
}

inline Distribution scale(const Distribution& d, Count t) {
    std::vector<Count> counts(d.counts().begin(), d.counts().end());
    for (auto& c : counts)
        c *= t;
    return Distribution(std::move(counts));
}

// True iff outer(v) >= inner(v) at every vertex.
inline bool contains(const Distribution& outer, const Distribution& inner) {
    if (outer.vertex_count() != inner.vertex_count())
        throw std::invalid_argument("contains: distributions live on different graphs");
    auto a = outer.counts();
    auto b = inner.counts();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i])
            return false;
    return true;
}

// (dg . dh)(x, y) = dg(x) * dh(y), indexed as in cartesian_product.
inline Distribution product(const Distribution& dg, const Distribution& dh) {
    std::vector<Count> counts;
    counts.reserve(dg.vertex_count() * dh.vertex_count());
    for (auto a : dg.counts())
        for (auto b : dh.counts())
            counts.push_back(a * b);
    return Distribution(std::move(counts));
}

// Finite, nonempty list of distributions on one graph, without duplicates.
class DistributionSet {
public:
    DistributionSet() = default;

    DistributionSet(std::vector<Distribution> members) {  // NOLINT(implicit)
        for (auto& d : members)
            insert(std::move(d));
    }
    DistributionSet(std::initializer_list<Distribution> members) : DistributionSet(std::vector<Distribution>(members)) {}

    void insert(Distribution d) {
        if (!members_.empty() && d.vertex_count() != members_.front().vertex_count())
            throw std::invalid_argument("DistributionSet: members must share one graph");
        if (std::find(members_.begin(), members_.end(), d) == members_.end())
            members_.push_back(std::move(d));
    }

    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] const Distribution& operator[](std::size_t i) const { return members_.at(i); }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }
    [[nodiscard]] const std::vector<Distribution>& members() const { return members_; }

    [[nodiscard]] bool contains_member(const Distribution& d) const {
        return std::find(members_.begin(), members_.end(), d) != members_.end();
    }

    [[nodiscard]] bool is_subset_of(const DistributionSet& other) const {
        return std::all_of(members_.begin(), members_.end(), [&](const auto& d) { return other.contains_member(d); });
    }

    [[nodiscard]] std::string to_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i)
                out += ',';
            out += members_[i].to_string();
        }
        return out + "]";
    }

    friend bool operator==(const DistributionSet& a, const DistributionSet& b) {
        return a.size() == b.size() && a.is_subset_of(b);
    }

private:
    std::vector<Distribution> members_;
};

inline void require_nonempty(const DistributionSet& s) {
    if (s.empty())
        throw std::invalid_argument("distribution set must be nonempty");
}

inline DistributionSet set_product(const DistributionSet& sg, const DistributionSet& sh) {
    DistributionSet out;
    for (const auto& a : sg)
        for (const auto& b : sh)
            out.insert(product(a, b));
    return out;
}

// Gamma_G: one pebble on every vertex.
inline Distribution gamma_target(const Graph& g) {
    return Distribution(std::vector<Count>(g.vertex_count(), 1));
}

// S_t(G) = { t * delta_v : v in V(G) }.
inline DistributionSet s_t(const Graph& g, Count t) {
    DistributionSet out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out.insert(delta(g, v, t));
    return out;
}

inline bool is_path_graph(const Graph& g) {
    const auto n = g.vertex_count();
    if (g.edge_count() + 1 != n)
        return false;
    for (VertexId i = 0; i + 1 < n; ++i)
        if (!g.weight(i, i + 1))
            return false;
    return true;
}

// D_t = { t * delta at the first vertex, t * delta at the last vertex } on a path.
inline DistributionSet d_t(const Graph& path_graph, Count t) {
    if (!is_path_graph(path_graph))
        throw std::invalid_argument("d_t is defined on path graphs only");
    return DistributionSet{delta(path_graph, 0, t), delta(path_graph, path_graph.vertex_count() - 1, t)};
}

// N_2(v) = { 2 * delta_w : w adjacent to v }.
inline DistributionSet n2(const Graph& g, VertexId v) {
    if (v >= g.vertex_count())
        throw std::invalid_argument("n2: vertex out of range");
    if (g.neighbors(v).empty())
        throw std::invalid_argument("n2: vertex has no neighbors");
    DistributionSet out;
    for (const auto& a : g.neighbors(v))
        out.insert(delta(g, a.to, 2));
    return out;
}

// Every distribution of exactly `total` pebbles on n vertices, in descending
// lexicographic order: (N,0,..,0), (N-1,1,0,..), ..., (0,..,0,N).
class CompositionRange {
public:
    class iterator {
    public:
        using value_type = Distribution;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(std::size_t n, Count total) : counts_(n, 0), done_{false} { counts_[0] = total; }

        const std::vector<Count>& counts() const { return counts_; }
        Distribution operator*() const { return Distribution(counts_); }

        iterator& operator++() {
            const auto n = counts_.size();
            // Last position before the tail that still holds pebbles.
            std::size_t j = n >= 2 ? n - 1 : 0;
            while (j > 0 && counts_[j - 1] == 0)
                --j;
            if (j == 0) {
                done_ = true;
                return *this;
            }
            --j;
            Count tail = 0;
            for (std::size_t k = j + 1; k < n; ++k) {
                tail += counts_[k];
                counts_[k] = 0;
            }
            --counts_[j];
            counts_[j + 1] = tail + 1;
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

    private:
        std::vector<Count> counts_;
        bool done_ = true;
    };

    CompositionRange(std::size_t n, Count total) : n_{n}, total_{total} {
        if (n == 0)
            throw std::invalid_argument("enumerate_distributions: graph has no vertices");
    }

    [[nodiscard]] iterator begin() const { return iterator(n_, total_); }
    [[nodiscard]] std::default_sentinel_t end() const { return {}; }

private:
    std::size_t n_;
    Count total_;
};

inline CompositionRange enumerate_distributions(const Graph& g, Count total) {
    return CompositionRange(g.vertex_count(), total);
}

// Extremal start on P_n holding one pebble fewer than the pebbling number of
// C_{n+2i-1}, from which 2^i pebbles reach neither endpoint.
inline Distribution critical_path_distribution(std::size_t n, unsigned i) {
    if (n < 2)
        throw std::invalid_argument("critical_path_distribution requires n >= 2");
    if (i > 28 || n > 56)
        throw std::invalid_argument("critical_path_distribution: parameters too large");
    Distribution d(n);
    const std::size_t k = n / 2;
    if (n % 2 == 1) {
        d.set(k, static_cast<Count>((std::uint64_t{1} << (k + i)) - 1));
        return d;
    }
    const std::size_t ki = k + i;
    Count each = 0;
    if (ki % 2 == 0) {
        const std::size_t m = ki / 2;
        each = static_cast<Count>(((std::uint64_t{1} << (2 * m)) - 1) / 3);
    } else {
        const std::size_t m = (ki - 1) / 2;
        each = static_cast<Count>(((std::uint64_t{1} << (2 * m + 1)) - 2) / 3);
    }
    d.set(k - 1, each);
    d.set(k, each);
    return d;
}

} // namespace pebble
